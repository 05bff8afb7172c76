#ifndef RIGID_TOWER_HPP
#define RIGID_TOWER_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rigid/numeric.hpp"
#include "rigid/rational.hpp"

namespace rigid {

class Tower;

// Subset-of-roots monomial: bit t set means the adjoined root r_t appears
// (exponent 1; squares reduce through the defining relation r_t^2 = d_t).
using Mono = std::uint64_t;

// Element of an iterated quadratic extension of Q, held in canonical form:
// a sparse map monomial -> nonzero rational coefficient, every monomial
// square-free in the roots. Equal canonical forms are equal field elements
// whenever every adjunction is a genuine degree-2 extension; the genericity
// protocol certifies that assumption for pipeline towers.
class TowerElement {
public:
  TowerElement() = default;  // zero
  TowerElement(const Rat& q) { add_term(0, q); }
  TowerElement(long v) { add_term(0, Rat(v)); }

  // Canonical accumulation of raw monomials: duplicates merge, zeros drop.
  static TowerElement from_monomials(const Tower* tower,
                                     const std::vector<std::pair<Mono, Rat>>& terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  Rat rational_value() const;  // requires is_rational()

  const Tower* tower() const { return tower_; }
  const std::map<Mono, Rat>& terms() const { return terms_; }
  Mono used_roots() const;

  TowerElement inverse() const;

  int compare(const TowerElement& o) const;
  bool operator==(const TowerElement& o) const { return compare(o) == 0; }
  bool operator<(const TowerElement& o) const { return compare(o) < 0; }

  // Debug dump: {"0x<monomial>": "p/q", ...}
  std::string json() const;

  friend TowerElement operator+(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator/(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator-(const TowerElement& a);

private:
  friend class Tower;

  void add_term(Mono m, const Rat& c);
  void bind(const Tower* t);  // adopt tower pointer, check compatibility

  const Tower* tower_ = nullptr;  // null for pure rationals
  std::map<Mono, Rat> terms_;
};

inline TowerElement sq(const TowerElement& a) { return a * a; }

// Append-only tower of square roots over Q. Elements keep pointers into the
// tower, so a Tower is pinned in memory (no copy, no move). Adjunction is a
// build-phase operation; afterwards reads (including numeric evaluation,
// which refines an internal cache under a mutex) are safe from any thread.
class Tower {
public:
  Tower() = default;
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  static constexpr int kMaxRoots = 64;

  int root_count() const { return static_cast<int>(roots_.size()); }

  // Adjoins a fresh root r with r^2 = d. Throws Error(zero_radicand) on
  // d = 0. Always creates a new root; pipeline code wanting one root per
  // distinct radicand goes through adjoin_sqrt_cached.
  int adjoin_sqrt(const TowerElement& d);

  // Returns the existing root for a canonically equal radicand, otherwise
  // adjoins. Keeps the tower at one root per distinct placement radicand.
  int adjoin_sqrt_cached(const TowerElement& d);

  TowerElement rational(const Rat& q) const;
  TowerElement root_element(int t) const;  // the monomial r_t
  const TowerElement& radicand(int t) const;
  std::complex<double> branch_ref(int t) const;

  // Certified evaluation: ball of radius <= precision around the exact value
  // (branches fixed at adjoin time). Adaptive; throws Error(genericity) when
  // refinement cannot separate a radicand from zero, which indicates a
  // degenerate tower.
  ComplexBall eval(const TowerElement& a, const Rat& precision) const;

  // Product of the defining elements of the roots in `mask`, memoized.
  const TowerElement& radicand_product(Mono mask) const;

private:
  friend class TowerElement;

  struct Root {
    TowerElement radicand;
    std::complex<double> branch;
  };
  struct RootApprox {
    Rat re{0}, im{0}, err{0};
    bool valid = false;
  };

  void refine_root(int t, const Rat& eps) const;
  ComplexBall root_ball(int t) const;

  std::vector<Root> roots_;
  std::map<TowerElement, int> radicand_cache_;
  mutable std::map<Mono, TowerElement> product_memo_;
  mutable std::vector<RootApprox> approx_;
  mutable std::recursive_mutex mutex_;
};

// Free-function spelling used throughout: certified complex enclosure of a.
ComplexBall numeric_eval(const TowerElement& a, const Rat& precision);

}  // namespace rigid

#endif
