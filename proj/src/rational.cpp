#include "rigid/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "rigid/error.hpp"

namespace rigid {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::parse, "empty rational literal");
  auto fail = [&] { throw Error(ErrorKind::parse, "bad rational literal '" + text + "'"); };

  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string::npos && dot != std::string::npos) fail();

  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };

  try {
    if (slash != std::string::npos) {
      std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      if (!is_int(num) || !is_int(den)) fail();
      Int n(num), d(den);
      if (d == 0) throw Error(ErrorKind::parse, "zero denominator in '" + text + "'");
      Rat q{n, d};
      q.canonicalize();
      return q;
    }
    if (dot != std::string::npos) {
      std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
      bool neg = !ip.empty() && ip[0] == '-';
      if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip = ip.substr(1);
      if (ip.empty()) ip = "0";
      if (!is_int(ip) || (!fp.empty() && !is_int(fp))) fail();
      Int scale = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
      Rat q(Int(ip) * scale + (fp.empty() ? Int(0) : Int(fp)), scale);
      q.canonicalize();
      return neg ? Rat(-q) : q;
    }
    if (!is_int(text)) fail();
    return Rat(Int(text));
  } catch (const std::invalid_argument&) {
    fail();
  }
  return Rat(0);  // unreachable
}

bool is_perfect_square(const Rat& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
         mpz_perfect_square_p(q.get_den().get_mpz_t());
}

std::string rat_decimal(const Rat& q, int digits) {
  if (digits < 0) digits = 0;
  bool neg = sgn(q) < 0;
  Rat a = abs(q);
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round(a * scale): floor(a*scale + 1/2)
  Rat scaled = a * scale + Rat(1, 2);
  Int units = scaled.get_num() / scaled.get_den();
  Int ip = units / scale, fp = units % scale;
  std::string out = ip.get_str();
  if (digits > 0) {
    std::string frac = fp.get_str();
    out += "." + std::string(digits - frac.size(), '0') + frac;
  }
  if (neg && units != 0) out = "-" + out;
  return out;
}

}  // namespace rigid
