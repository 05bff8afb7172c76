#include "rigid/realization.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

#include "rigid/error.hpp"

namespace rigid {

TowerElement signed_area(const ExactPoint& p1, const ExactPoint& p2, const ExactPoint& p3) {
  TowerElement half(Rat(1, 2));
  return half * ((p2.x - p3.x) * (p1.y - p3.y) - (p1.x - p3.x) * (p2.y - p3.y));
}

TowerElement cayley_menger_det(const TowerElement& l12, const TowerElement& l13,
                               const TowerElement& l23) {
  TowerElement zero, one(Rat(1));
  TowerElement m[4][4] = {{zero, l12, l13, one},
                          {l12, zero, l23, one},
                          {l13, l23, zero, one},
                          {one, one, one, zero}};

  // Cofactor expansion along the first row.
  auto det3 = [](const TowerElement a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  TowerElement det;
  for (int c = 0; c < 4; ++c) {
    TowerElement minor[3][3];
    for (int r = 1; r < 4; ++r)
      for (int cc = 0, k = 0; cc < 4; ++cc) {
        if (cc == c) continue;
        minor[r - 1][k++] = m[r][cc];
      }
    TowerElement term = m[0][c] * det3(minor);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

Placement place_vertex(const ExactPoint& p_i, const ExactPoint& p_j, const Rat& lam_in,
                       const Rat& lam_jn, int branch, Tower& tower) {
  TowerElement dx = p_j.x - p_i.x, dy = p_j.y - p_i.y;
  TowerElement big_l = dx * dx + dy * dy;
  if (big_l.is_zero())
    throw Error(ErrorKind::genericity, "coincident base points: the step pair has distance 0");

  TowerElement alpha = (tower.rational(lam_in) + big_l - tower.rational(lam_jn)) /
                       (TowerElement(Rat(2)) * big_l);
  TowerElement beta2 = tower.rational(lam_in) / big_l - alpha * alpha;

  Placement out;
  out.beta2 = beta2;
  TowerElement off_x = alpha * dx, off_y = alpha * dy;
  if (beta2.is_zero()) {
    out.point = {p_i.x + off_x, p_i.y + off_y};
  } else {
    TowerElement beta = tower.root_element(tower.adjoin_sqrt_cached(beta2));
    if (branch < 0) beta = -beta;
    out.point = {p_i.x + off_x - beta * dy, p_i.y + off_y + beta * dx};
  }
  out.area = signed_area(p_i, p_j, out.point);
  return out;
}

namespace {

// Canonical partition of 0..n-1 by exact element equality: sorted blocks of
// sorted indices.
std::vector<std::vector<std::uint32_t>> group_by_element(const std::vector<TowerElement>& vals) {
  std::map<TowerElement, std::vector<std::uint32_t>> groups;
  for (std::uint32_t i = 0; i < vals.size(); ++i) groups[vals[i]].push_back(i);
  std::vector<std::vector<std::uint32_t>> blocks;
  for (auto& [v, idx] : groups) blocks.push_back(idx);
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace

RealizationSet enumerate_realizations(const Graph& g, const HennebergSequence& seq,
                                      const Labelling& lab, Tower& tower) {
  if (replay_sequence(g, seq) != g.edges)
    throw Error(ErrorKind::internal, "sequence does not replay to the graph's edge set");
  const int m = static_cast<int>(seq.size());
  if (m > 30) throw Error(ErrorKind::degree_too_large, "too many steps for 32-bit sign vectors");

  RealizationSet rs;
  rs.graph = g;
  rs.seq = seq;
  rs.labelling = lab;
  rs.items.resize(std::size_t(1) << m);

  struct StepRec {
    TowerElement lambda, beta2, sq_area;
  };
  std::vector<std::vector<StepRec>> recs(m);

  std::map<int, ExactPoint> coords;
  coords[g.base.first] = {tower.rational(Rat(0)), tower.rational(Rat(0))};
  coords[g.base.second] = {tower.rational(Rat(1)), tower.rational(Rat(0))};
  std::vector<TowerElement> lambdas, areas;

  std::function<void(int, std::uint32_t)> dfs = [&](int l, std::uint32_t prefix) {
    if (l == m) {
      rs.items[prefix] = {prefix, coords, lambdas, areas};
      return;
    }
    const HennebergMove& mv = seq[l];
    const ExactPoint& pi = coords.at(mv.i);
    const ExactPoint& pj = coords.at(mv.j);
    const Rat& lam_in = lab.at(mv.i, mv.fresh);
    const Rat& lam_jn = lab.at(mv.j, mv.fresh);

    Placement plus = place_vertex(pi, pj, lam_in, lam_jn, +1, tower);
    if (plus.beta2.is_zero())
      throw Error(ErrorKind::genericity,
                  "beta^2 = 0 at step " + std::to_string(l + 1) + "; labelling is degenerate");
    if (plus.beta2.is_rational() && is_perfect_square(plus.beta2.rational_value()))
      throw Error(ErrorKind::genericity,
                  "beta^2 is a rational square at step " + std::to_string(l + 1) +
                      "; adjunction would collapse");
    Placement minus = place_vertex(pi, pj, lam_in, lam_jn, -1, tower);

    TowerElement dx = pj.x - pi.x, dy = pj.y - pi.y;
    TowerElement lambda = dx * dx + dy * dy;
    recs[l].push_back({lambda, plus.beta2, plus.area * plus.area});

    const Placement* branches[2] = {&plus, &minus};
    for (int bit = 0; bit < 2; ++bit) {
      coords[mv.fresh] = branches[bit]->point;
      lambdas.push_back(lambda);
      areas.push_back(branches[bit]->area);
      dfs(l + 1, prefix | (std::uint32_t(bit) << l));
      lambdas.pop_back();
      areas.pop_back();
    }
    coords.erase(mv.fresh);
  };
  dfs(0, 0);

  // Per-step genericity audit: lambda classes must match squared-area classes
  // exactly, and distinct lambdas must yield distinct placement radicands,
  // per step and across steps (one tower root per lambda-block).
  std::size_t sum_k = 0;
  std::set<TowerElement> all_beta2;
  for (int l = 0; l < m; ++l) {
    std::vector<TowerElement> ls, b2s, sqas;
    for (const auto& r : recs[l]) {
      ls.push_back(r.lambda);
      b2s.push_back(r.beta2);
      sqas.push_back(r.sq_area);
      all_beta2.insert(r.beta2);
    }
    auto by_lambda = group_by_element(ls);
    auto by_sq_area = group_by_element(sqas);
    if (by_lambda != by_sq_area)
      throw Error(ErrorKind::genericity,
                  "lambda/area correspondence fails at step " + std::to_string(l + 1));
    auto by_beta2 = group_by_element(b2s);
    if (by_beta2 != by_lambda)
      throw Error(ErrorKind::genericity,
                  "distinct lambda-blocks share a radicand at step " + std::to_string(l + 1));
    sum_k += by_lambda.size();
  }
  if (all_beta2.size() != sum_k)
    throw Error(ErrorKind::genericity,
                "placement radicands collide across steps; labelling is degenerate");

  return rs;
}

void verify_realization_set(const RealizationSet& rs) {
  const int m = rs.steps();
  auto fail = [](const std::string& what) { throw Error(ErrorKind::internal, what); };

  for (const Realization& r : rs.items) {
    // Exact label reproduction on every edge.
    for (const auto& [u, v] : rs.graph.edges) {
      const ExactPoint& pu = r.coords.at(u);
      const ExactPoint& pv = r.coords.at(v);
      TowerElement d2 = sq(pu.x - pv.x) + sq(pu.y - pv.y);
      if (!(d2 - TowerElement(rs.labelling.at(u, v))).is_zero())
        fail("label not reproduced on edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    // 16 area^2 + CM-determinant = 0 for every step triangle.
    for (int l = 0; l < m; ++l) {
      const HennebergMove& mv = rs.seq[l];
      TowerElement det = cayley_menger_det(r.step_lambda[l],
                                           TowerElement(rs.labelling.at(mv.i, mv.fresh)),
                                           TowerElement(rs.labelling.at(mv.j, mv.fresh)));
      if (!(TowerElement(Rat(16)) * sq(r.step_area[l]) + det).is_zero())
        fail("Cayley-Menger identity fails at step " + std::to_string(l + 1));
    }
  }

  // Sign-bit pairing: realizations differing in exactly bit b share every
  // vertex added before step b+1, and their step-(b+1) areas are exact
  // negatives. For the final bit they agree on all but the last vertex.
  for (std::uint32_t mask = 0; mask < rs.items.size(); ++mask) {
    for (int b = 0; b < m; ++b) {
      std::uint32_t other = mask ^ (std::uint32_t(1) << b);
      if (other < mask) continue;
      const Realization& r1 = rs.items[mask];
      const Realization& r2 = rs.items[other];
      if (!(r1.step_area[b] + r2.step_area[b]).is_zero())
        fail("paired realizations do not have opposite areas at step " + std::to_string(b + 1));
      auto same_point = [&](int v) {
        return (r1.coords.at(v).x - r2.coords.at(v).x).is_zero() &&
               (r1.coords.at(v).y - r2.coords.at(v).y).is_zero();
      };
      if (!same_point(rs.graph.base.first) || !same_point(rs.graph.base.second))
        fail("base vertices moved");
      for (int l = 0; l < b; ++l)
        if (!same_point(rs.seq[l].fresh)) fail("shared prefix differs before the flipped bit");
      if (b == m - 1) {
        for (int l = 0; l + 1 < m; ++l)
          if (!same_point(rs.seq[l].fresh))
            fail("final-bit pair differs on a vertex other than the last");
      }
    }
  }
}

std::string realization_set_json(const RealizationSet& rs, const Rat& precision) {
  int digits = 1;
  {
    Rat p(1, 10);
    while (p > precision && digits < 60) {
      p /= 10;
      ++digits;
    }
  }
  auto ball_json = [&](const TowerElement& e) {
    ComplexBall b = numeric_eval(e, precision);
    nlohmann::ordered_json j;
    j["re"] = rat_decimal(b.re, digits);
    j["im"] = rat_decimal(b.im, digits);
    return j;
  };

  nlohmann::ordered_json doc;
  doc["n"] = rs.graph.n;
  doc["count"] = rs.items.size();
  auto& seq = doc["sequence"] = nlohmann::ordered_json::array();
  for (const auto& mv : rs.seq) seq.push_back({mv.i, mv.j, mv.fresh});
  auto& out = doc["realizations"] = nlohmann::ordered_json::array();
  for (const Realization& r : rs.items) {
    nlohmann::ordered_json item;
    std::string signs;
    for (int l = 0; l < rs.steps(); ++l) signs += (r.signs >> l & 1) ? '-' : '+';
    item["signs"] = signs;
    auto& cs = item["coordinates"] = nlohmann::ordered_json::object();
    for (const auto& [v, p] : r.coords) {
      nlohmann::ordered_json pt;
      pt["x"] = ball_json(p.x);
      pt["y"] = ball_json(p.y);
      cs[std::to_string(v)] = pt;
    }
    auto& as = item["step_areas"] = nlohmann::ordered_json::array();
    for (const TowerElement& a : r.step_area) as.push_back(ball_json(a));
    out.push_back(item);
  }
  return doc.dump(2);
}

}  // namespace rigid
