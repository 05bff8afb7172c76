#ifndef RIGID_RATIONAL_HPP
#define RIGID_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rigid {

// Exact rational scalar. All coefficient arithmetic in the project runs on
// this type; doubles appear only in the floating-point sampler.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "p/q" or a plain decimal like "-2.5". Throws rigid::Error on
// malformed input or a zero denominator.
Rat parse_rat(const std::string& text);

inline std::string rat_str(const Rat& q) { return q.get_str(); }

bool is_perfect_square(const Rat& q);

// Decimal expansion of q rounded to `digits` fractional digits (half-away
// rounding, exact integer arithmetic, no floating point involved).
std::string rat_decimal(const Rat& q, int digits);

// Deterministic 64-bit generator (splitmix64) plus rejection-free-enough
// bounded sampling; std::uniform_int_distribution is implementation-defined,
// which would break the byte-identical-report contract across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0, via rejection on the top multiple of n.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ull) / n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [1, n].
  std::uint64_t one_to(std::uint64_t n) { return below(n) + 1; }

  // Uniform double in (0, 1].
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53 + 0x1.0p-53; }

private:
  std::uint64_t state_;
};

}  // namespace rigid

#endif
