#include "rigid/tower.hpp"

#include <bit>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "rigid/error.hpp"

namespace rigid {

namespace {

const Tower* pick_tower(const TowerElement& a, const TowerElement& b) {
  const Tower *ta = a.tower(), *tb = b.tower();
  if (ta && tb && ta != tb)
    throw Error(ErrorKind::internal, "arithmetic on elements of different towers");
  return ta ? ta : tb;
}

}  // namespace

void TowerElement::add_term(Mono m, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void TowerElement::bind(const Tower* t) {
  if (!t) return;
  if (tower_ && tower_ != t)
    throw Error(ErrorKind::internal, "element already bound to another tower");
  tower_ = t;
}

TowerElement TowerElement::from_monomials(const Tower* tower,
                                          const std::vector<std::pair<Mono, Rat>>& terms) {
  TowerElement e;
  e.tower_ = tower;
  for (const auto& [m, c] : terms) e.add_term(m, c);
  return e;
}

Rat TowerElement::rational_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_rational())
    throw Error(ErrorKind::internal, "rational_value on a non-rational element");
  return terms_.begin()->second;
}

Mono TowerElement::used_roots() const {
  Mono m = 0;
  for (const auto& [mask, c] : terms_) m |= mask;
  return m;
}

int TowerElement::compare(const TowerElement& o) const {
  if (tower_ && o.tower_ && tower_ != o.tower_)
    throw Error(ErrorKind::internal, "comparing elements of different towers");
  auto a = terms_.begin(), b = o.terms_.begin();
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first ? -1 : 1;
    if (int c = cmp(a->second, b->second); c != 0) return c;
  }
  if (a != terms_.end()) return 1;
  if (b != o.terms_.end()) return -1;
  return 0;
}

std::string TowerElement::json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [m, c] : terms_) {
    std::ostringstream key;
    key << "0x" << std::hex << m;
    doc[key.str()] = rat_str(c);
  }
  return doc.dump();
}

TowerElement operator+(const TowerElement& a, const TowerElement& b) {
  TowerElement out = a;
  out.tower_ = pick_tower(a, b);
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) {
  TowerElement out = a;
  out.tower_ = pick_tower(a, b);
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

TowerElement operator-(const TowerElement& a) {
  TowerElement out;
  out.tower_ = a.tower_;
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
  return out;
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
  TowerElement out;
  out.tower_ = pick_tower(a, b);

  // Monomial product with reduction: shared roots square away through the
  // defining relations, recursing on the product of their radicands. The
  // highest shared bit strictly decreases, so the recursion terminates.
  std::function<void(Mono, const Rat&, Mono, const Rat&)> mul_mono =
      [&](Mono ma, const Rat& ca, Mono mb, const Rat& cb) {
        Mono common = ma & mb;
        Rat c = ca * cb;
        if (common == 0) {
          out.add_term(ma | mb, c);
          return;
        }
        if (!out.tower_)
          throw Error(ErrorKind::internal, "monomial reduction without a tower");
        const TowerElement& red = out.tower_->radicand_product(common);
        for (const auto& [mr, cr] : red.terms_) mul_mono(ma ^ mb, c, mr, cr);
      };

  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) mul_mono(ma, ca, mb, cb);
  return out;
}

TowerElement TowerElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::division_by_zero, "division by zero");
  if (is_rational()) {
    TowerElement out(Rat(Rat(1) / rational_value()));
    out.tower_ = tower_;
    return out;
  }
  int t = 63 - std::countl_zero(used_roots());
  Mono bit = Mono(1) << t;

  TowerElement lo, hi;  // *this = lo + hi * r_t
  lo.tower_ = hi.tower_ = tower_;
  for (const auto& [m, c] : terms_)
    (m & bit ? hi : lo).add_term(m & ~bit, c);

  TowerElement rt = tower_->root_element(t);
  TowerElement conj = lo - hi * rt;
  TowerElement denom = (*this) * conj;  // lo^2 - hi^2 * d_t, free of r_t
  if (denom.used_roots() & bit)
    throw Error(ErrorKind::internal, "conjugate reduction failed to eliminate root");
  if (denom.is_zero())
    throw Error(ErrorKind::genericity,
                "zero divisor hit during inversion; some adjunction is not a genuine "
                "degree-2 extension");
  return conj * denom.inverse();
}

TowerElement operator/(const TowerElement& a, const TowerElement& b) {
  return a * b.inverse();
}

// ---------------------------------------------------------------------------
// Tower
// ---------------------------------------------------------------------------

int Tower::adjoin_sqrt(const TowerElement& d) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  if (d.is_zero()) throw Error(ErrorKind::zero_radicand, "cannot adjoin sqrt(0)");
  if (d.tower() && d.tower() != this)
    throw Error(ErrorKind::internal, "radicand belongs to a different tower");
  if (root_count() >= kMaxRoots)
    throw Error(ErrorKind::degree_too_large, "tower supports at most 64 roots");
  if (d.used_roots() >> root_count())
    throw Error(ErrorKind::internal, "radicand references roots not yet adjoined");

  TowerElement bound = d;
  bound.bind(this);

  // Pick and pin the numeric branch: principal square root of a certified
  // enclosure of the radicand, tightened until it clearly excludes zero.
  Rat delta(1, 16);
  std::complex<double> branch;
  for (int iter = 0;; ++iter) {
    if (iter > 200)
      throw Error(ErrorKind::genericity, "radicand numerically indistinguishable from zero");
    ComplexBall b = eval(bound, delta);
    if (b.center_abs_lb() > 4 * b.rad) {
      branch = std::sqrt(b.to_complex());
      break;
    }
    delta /= 65536;
  }

  roots_.push_back({std::move(bound), branch});
  approx_.push_back({});
  return root_count() - 1;
}

int Tower::adjoin_sqrt_cached(const TowerElement& d) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  TowerElement key = d;
  key.bind(this);
  auto it = radicand_cache_.find(key);
  if (it != radicand_cache_.end()) return it->second;
  int t = adjoin_sqrt(key);
  radicand_cache_.emplace(std::move(key), t);
  return t;
}

TowerElement Tower::rational(const Rat& q) const {
  TowerElement e(q);
  e.tower_ = this;
  return e;
}

TowerElement Tower::root_element(int t) const {
  if (t < 0 || t >= root_count())
    throw Error(ErrorKind::internal, "root index out of range");
  TowerElement e;
  e.tower_ = this;
  e.add_term(Mono(1) << t, Rat(1));
  return e;
}

const TowerElement& Tower::radicand(int t) const {
  if (t < 0 || t >= root_count())
    throw Error(ErrorKind::internal, "root index out of range");
  return roots_[t].radicand;
}

std::complex<double> Tower::branch_ref(int t) const {
  if (t < 0 || t >= root_count())
    throw Error(ErrorKind::internal, "root index out of range");
  return roots_[t].branch;
}

const TowerElement& Tower::radicand_product(Mono mask) const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  auto it = product_memo_.find(mask);
  if (it != product_memo_.end()) return it->second;

  int t = std::countr_zero(mask);
  Mono rest = mask & (mask - 1);
  TowerElement result = rest == 0 ? roots_[t].radicand
                                  : radicand_product(rest) * roots_[t].radicand;
  return product_memo_.emplace(mask, std::move(result)).first->second;
}

ComplexBall numeric_eval(const TowerElement& a, const Rat& precision) {
  if (a.tower()) return a.tower()->eval(a, precision);
  if (precision <= 0) throw Error(ErrorKind::parse, "precision must be positive");
  return {a.is_zero() ? Rat(0) : a.rational_value(), Rat(0), Rat(0)};
}

}  // namespace rigid
