#include "rigid/numeric.hpp"

#include <complex>

#include "rigid/error.hpp"
#include "rigid/tower.hpp"

namespace rigid {

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b) {
  return {a.re + b.re, a.im + b.im, a.rad + b.rad};
}

ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b) {
  return {a.re - b.re, a.im - b.im, a.rad + b.rad};
}

ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re,
          a.center_abs_ub() * b.rad + b.center_abs_ub() * a.rad + a.rad * b.rad};
}

ComplexBall ball_scale(const Rat& c, const ComplexBall& a) {
  return {c * a.re, c * a.im, abs(c) * a.rad};
}

namespace {

// Round to the dyadic grid of spacing 2^-bits (nearest, half up).
Rat round_to_bits(const Rat& q, long bits) {
  Rat shifted = q;
  mpq_mul_2exp(shifted.get_mpq_t(), shifted.get_mpq_t(), bits);
  Int two_num = 2 * shifted.get_num() + shifted.get_den();
  Int n;
  mpz_fdiv_q(n.get_mpz_t(), two_num.get_mpz_t(), Int(2 * shifted.get_den()).get_mpz_t());
  Rat out(n);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

struct CRat {  // complex rational, exact
  Rat re, im;
};

CRat cmul(const CRat& a, const CRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CRat cdiv(const CRat& a, const CRat& b) {
  Rat n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Rat ub_abs(const CRat& a) { return abs(a.re) + abs(a.im); }
Rat lb_abs(const CRat& a) { return std::max(abs(a.re), abs(a.im)); }

}  // namespace

// Refine the cached enclosure of root t down to radius eps. Newton iteration
// for the square root in exact rational arithmetic, components rounded to a
// dyadic grid each step; the final radius certificate is
//   |z - r_t| <= |z^2 - c|/|z| + 2*delta/|z|
// valid once |z^2 - c| <= |z|^2/4, where (c, delta) encloses the radicand.
void Tower::refine_root(int t, const Rat& eps) const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  RootApprox& cached = approx_[t];
  if (cached.valid && cached.err <= eps) return;

  CRat z;
  if (cached.valid) {
    z = {cached.re, cached.im};
  } else {
    z = {Rat(roots_[t].branch.real()), Rat(roots_[t].branch.imag())};
  }

  Rat m = lb_abs(z);
  Rat delta = m > 0 ? Rat(eps * m / 8) : Rat(eps / 8);
  if (delta > Rat(1, 16)) delta = Rat(1, 16);
  long bits = 128;

  for (int outer = 0; outer < 64; ++outer) {
    ComplexBall enc = eval(roots_[t].radicand, delta);
    Rat lbc = enc.center_abs_lb() - enc.rad;
    if (lbc <= 0) {
      delta /= 65536;
      continue;
    }
    CRat c{enc.re, enc.im};
    if (lb_abs(z) == 0) {
      std::complex<double> seed = std::sqrt(enc.to_complex());
      z = {Rat(seed.real()), Rat(seed.imag())};
      if (lb_abs(z) == 0) z = {Rat(1), Rat(0)};  // last-resort seed
    }

    for (int pass = 0; pass < 10; ++pass) {
      Rat prev_residual(-1);
      for (int step = 0; step < 80; ++step) {
        CRat zz = cmul(z, z);
        Rat residual = ub_abs({zz.re - c.re, zz.im - c.im});
        Rat lbz = lb_abs(z);
        if (lbz > 0 && residual <= lbz * lbz / 4) {
          Rat total = residual / lbz + 2 * enc.rad / lbz;
          if (total <= eps) {
            cached = {z.re, z.im, total, true};
            return;
          }
          // Converged as far as the radicand enclosure allows.
          if (residual / lbz <= eps / 4) break;
        }
        if (prev_residual >= 0 && residual * 2 > prev_residual) break;  // stalled
        prev_residual = residual;
        CRat next = cdiv(c, z);
        next = {(z.re + next.re) / 2, (z.im + next.im) / 2};
        z = {round_to_bits(next.re, bits), round_to_bits(next.im, bits)};
      }
      CRat zz = cmul(z, z);
      Rat residual = ub_abs({zz.re - c.re, zz.im - c.im});
      Rat lbz = lb_abs(z);
      if (lbz > 0 && residual / lbz <= eps / 4) break;  // radicand term dominates
      bits *= 2;
      if (bits > (1l << 22))
        throw Error(ErrorKind::internal, "square-root refinement failed to converge");
    }
    delta /= 65536;  // tighten the radicand enclosure and retry
  }
  throw Error(ErrorKind::genericity,
              "cannot certify a root enclosure; radicand may be degenerate");
}

ComplexBall Tower::root_ball(int t) const {
  const RootApprox& a = approx_[t];
  if (!a.valid) throw Error(ErrorKind::internal, "root not refined");
  return {a.re, a.im, a.err};
}

ComplexBall Tower::eval(const TowerElement& a, const Rat& precision) const {
  if (precision <= 0) throw Error(ErrorKind::parse, "precision must be positive");
  if (a.tower() && a.tower() != this)
    throw Error(ErrorKind::internal, "evaluating an element of a different tower");
  if (a.is_rational()) return {a.is_zero() ? Rat(0) : a.rational_value(), Rat(0), Rat(0)};

  std::lock_guard<std::recursive_mutex> lock(mutex_);

  Rat coeff_sum(1);
  for (const auto& [m, c] : a.terms()) coeff_sum += abs(c);
  Rat target = precision / (4 * coeff_sum);

  for (int attempt = 0; attempt < 60; ++attempt) {
    Mono used = a.used_roots();
    for (int t = 0; t < root_count(); ++t)
      if (used >> t & 1) refine_root(t, target);

    ComplexBall sum;
    for (const auto& [mask, coeff] : a.terms()) {
      ComplexBall term{coeff, Rat(0), Rat(0)};
      for (int t = 0; t < root_count(); ++t)
        if (mask >> t & 1) term = ball_mul(term, root_ball(t));
      sum = ball_add(sum, term);
    }
    if (sum.rad <= precision) return sum;
    target /= 16;
  }
  throw Error(ErrorKind::internal, "ball evaluation failed to reach requested precision");
}

}  // namespace rigid
