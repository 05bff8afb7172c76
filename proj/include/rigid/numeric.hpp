#ifndef RIGID_NUMERIC_HPP
#define RIGID_NUMERIC_HPP

#include <complex>
#include <string>

#include "rigid/rational.hpp"

namespace rigid {

// Complex ball with exact rational center and radius: the represented value
// lies within `rad` of re + im*i. Addition and multiplication produce exact
// enclosures (radii are over-approximated upward, never rounded down).
struct ComplexBall {
  Rat re, im, rad;

  ComplexBall() : re(0), im(0), rad(0) {}
  ComplexBall(Rat r, Rat i, Rat d) : re(std::move(r)), im(std::move(i)), rad(std::move(d)) {}

  // |center| bounds. ub >= |c| >= lb, both exact rationals.
  Rat center_abs_ub() const { return abs(re) + abs(im); }
  Rat center_abs_lb() const { return std::max(abs(re), abs(im)); }

  bool contains_zero() const { return re * re + im * im <= rad * rad; }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_scale(const Rat& c, const ComplexBall& a);

}  // namespace rigid

#endif
