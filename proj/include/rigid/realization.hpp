#ifndef RIGID_REALIZATION_HPP
#define RIGID_REALIZATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rigid/graph.hpp"
#include "rigid/tower.hpp"

namespace rigid {

struct ExactPoint {
  TowerElement x, y;
};

// Signed area of the triangle (p1, p2, p3):
//   a = 1/2 ((x2-x3)(y1-y3) - (x1-x3)(y2-y3))
// implemented verbatim; antisymmetric in p1 <-> p2.
TowerElement signed_area(const ExactPoint& p1, const ExactPoint& p2, const ExactPoint& p3);

// The 4x4 Cayley-Menger determinant in the squared lengths (l12, l13, l23);
// equals -16 A^2 for the triangle area A.
TowerElement cayley_menger_det(const TowerElement& l12, const TowerElement& l13,
                               const TowerElement& l23);

inline TowerElement cayley_menger_sq_area(const TowerElement& l12, const TowerElement& l13,
                                          const TowerElement& l23) {
  return cayley_menger_det(l12, l13, l23) / TowerElement(Rat(-16));
}

struct Placement {
  ExactPoint point;
  TowerElement area;   // signed area of (p_i, p_j, point)
  TowerElement beta2;  // radicand of the placement root (zero when collinear)
};

// Intersects the circles |v - p_i|^2 = lam_in, |v - p_j|^2 = lam_jn:
// with d = p_j - p_i and L = |d|^2,
//   alpha = (lam_in + L - lam_jn) / (2L),  beta^2 = lam_in/L - alpha^2,
//   v = p_i + alpha d + branch * beta * (-d_y, d_x).
// The root beta is adjoined through the tower's radicand cache, so every
// placement sharing the same beta^2 shares one root. beta^2 = 0 places the
// vertex on the line (no adjunction, area 0). Throws Error(genericity) when
// p_i = p_j.
Placement place_vertex(const ExactPoint& p_i, const ExactPoint& p_j, const Rat& lam_in,
                       const Rat& lam_jn, int branch, Tower& tower);

// One compatible realization: sign vector (bit l-1 is the step-l branch,
// 0 = +1, 1 = -1), exact coordinates, and the per-step lambda / area data.
struct Realization {
  std::uint32_t signs = 0;
  std::map<int, ExactPoint> coords;
  std::vector<TowerElement> step_lambda;  // squared base-pair distance before step l
  std::vector<TowerElement> step_area;    // signed area of the step-l triangle
};

struct RealizationSet {
  Graph graph;
  HennebergSequence seq;
  Labelling labelling;
  std::vector<Realization> items;  // 2^(n-2) entries, indexed by sign bitmask

  int steps() const { return static_cast<int>(seq.size()); }
};

// Enumerates all 2^(n-2) realizations by DFS over sign vectors, sharing
// prefixes. Post-checks each step: beta^2 nonzero and not a rational square,
// lambda-equality classes coincide with squared-area classes, and the tower
// gained exactly sum(k_l) roots. Violations raise Error(genericity).
RealizationSet enumerate_realizations(const Graph& g, const HennebergSequence& seq,
                                      const Labelling& lab, Tower& tower);

// Full structural audit used by tests and the acceptance suite: exact label
// reproduction on every edge, final-bit pairing with negated areas, the
// 16*area^2 + CM-determinant identity per step triangle, and prefix sharing.
// Throws Error(internal) with a description on the first violation.
void verify_realization_set(const RealizationSet& rs);

// JSON dump with numeric coordinates and per-step areas at the requested
// precision (decimal digits follow the precision).
std::string realization_set_json(const RealizationSet& rs, const Rat& precision);

}  // namespace rigid

#endif
