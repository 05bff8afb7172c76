#include "rigid/galois.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "rigid/error.hpp"

namespace rigid {

std::vector<StepPartition> step_partitions(const RealizationSet& rs) {
  const int m = rs.steps();
  std::vector<StepPartition> parts;
  for (int l = 0; l < m; ++l) {
    // Leaf with mask p < 2^l has all later sign bits zero, so it extends
    // prefix p; its recorded lambda is the prefix value.
    std::map<TowerElement, std::vector<std::uint32_t>> groups;
    for (std::uint32_t p = 0; p < (std::uint32_t(1) << l); ++p)
      groups[rs.items[p].step_lambda[l]].push_back(p);
    StepPartition part;
    part.step = l + 1;
    part.base_pair = {rs.seq[l].i, rs.seq[l].j};
    for (auto& [v, blk] : groups) part.blocks.push_back(blk);
    std::sort(part.blocks.begin(), part.blocks.end());
    parts.push_back(std::move(part));
  }
  if (!parts.empty() && parts[0].k() != 1)
    throw Error(ErrorKind::internal, "k_1 must be 1: F_0 is a single placement");
  return parts;
}

std::vector<AreaClasses> step_area_classes(const RealizationSet& rs) {
  const int m = rs.steps();
  std::vector<AreaClasses> out(m);
  for (int l = 0; l < m; ++l) {
    std::map<TowerElement, std::vector<std::uint32_t>> groups;
    for (std::uint32_t i = 0; i < rs.items.size(); ++i)
      groups[rs.items[i].step_area[l]].push_back(i);
    AreaClasses& ac = out[l];
    ac.class_of.assign(rs.items.size(), -1);
    for (auto& [v, cls] : groups) ac.classes.push_back(cls);
    std::sort(ac.classes.begin(), ac.classes.end());
    for (std::size_t c = 0; c < ac.classes.size(); ++c)
      for (std::uint32_t i : ac.classes[c]) ac.class_of[i] = static_cast<int>(c);
  }
  return out;
}

namespace {

// Checks that `g` (acting on l-bit prefixes) maps every block of `part` onto
// a block of `part`.
bool maps_blocks_onto_blocks(const Perm& g, const StepPartition& part) {
  std::map<std::uint32_t, int> block_of;
  for (std::size_t b = 0; b < part.blocks.size(); ++b)
    for (std::uint32_t p : part.blocks[b]) block_of[p] = static_cast<int>(b);
  for (const auto& blk : part.blocks) {
    int target = block_of.at(g[blk[0]]);
    for (std::uint32_t p : blk)
      if (block_of.at(g[p]) != target) return false;
    if (part.blocks[target].size() != blk.size()) return false;
  }
  return true;
}

}  // namespace

PermGroup build_galois(const RealizationSet& rs, const std::vector<StepPartition>& parts) {
  const int m = rs.steps();
  if (static_cast<int>(parts.size()) != m)
    throw Error(ErrorKind::internal, "partition list does not match the sequence length");

  std::vector<Perm> gens;  // act on F_l after iteration l; degree 2^l before lifting
  int sum_k = 0;
  for (int l = 0; l < m; ++l) {
    const StepPartition& part = parts[l];
    // Level-(l-1) generators must permute the lambda-blocks of this step.
    for (const Perm& g : gens)
      if (!maps_blocks_onto_blocks(g, part))
        throw Error(ErrorKind::internal,
                    "a lift maps a lambda-block of step " + std::to_string(l + 1) +
                        " to a non-block; genericity failed upstream");

    const std::uint32_t prefix_mask = (std::uint32_t(1) << l) - 1;
    const std::uint32_t step_bit = std::uint32_t(1) << l;
    const int new_degree = 1 << (l + 1);

    std::vector<Perm> next;
    // Canonical lifts: act on the prefix, keep the step-l sign bit. Within a
    // block both branches use the same cached root, so the raw bit is the
    // per-block branch label.
    for (const Perm& g : gens) {
      std::vector<std::uint16_t> img(new_degree);
      for (int x = 0; x < new_degree; ++x)
        img[x] = static_cast<std::uint16_t>(g[x & prefix_mask] | (x & step_bit));
      next.emplace_back(std::move(img));
    }
    // One flip per lambda-block: toggle the step bit on realizations whose
    // prefix lies in the block.
    for (const auto& blk : part.blocks) {
      std::vector<bool> in_block(std::size_t(1) << l, false);
      for (std::uint32_t p : blk) in_block[p] = true;
      std::vector<std::uint16_t> img(new_degree);
      for (int x = 0; x < new_degree; ++x)
        img[x] = static_cast<std::uint16_t>(in_block[x & prefix_mask] ? x ^ step_bit : x);
      next.emplace_back(std::move(img));
    }
    gens = std::move(next);
    sum_k += part.k();
  }

  PermGroup pg;
  pg.degree = 1 << m;
  pg.generators = std::move(gens);
  pg.order_log2 = sum_k;
  if (sum_k <= 63) pg.order = 1ull << sum_k;
  pg.provenance = "recursive";
  return pg;
}

namespace {

// k-th permutation of 0..d-1 in lexicographic order (factorial number system).
std::vector<std::uint16_t> unrank_permutation(int d, unsigned long long rank) {
  std::vector<std::uint16_t> pool(d);
  for (int i = 0; i < d; ++i) pool[i] = static_cast<std::uint16_t>(i);
  std::vector<unsigned long long> fact(d, 1);
  for (int i = 1; i < d; ++i) fact[i] = fact[i - 1] * i;
  std::vector<std::uint16_t> out;
  for (int i = d - 1; i >= 0; --i) {
    unsigned long long f = fact[i];
    std::size_t idx = rank / f;
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
  }
  return out;
}

}  // namespace

PermGroup brute_force_galois(const RealizationSet& rs) {
  const std::size_t n = rs.items.size();
  if (n > 8)
    throw Error(ErrorKind::degree_too_large,
                "brute force is capped at 8 realizations (got " + std::to_string(n) + ")");
  const int d = static_cast<int>(n);
  const auto classes = step_area_classes(rs);

  auto satisfies = [&](const std::vector<std::uint16_t>& img) {
    for (const AreaClasses& ac : classes) {
      for (const auto& cls : ac.classes) {
        int target = ac.class_of[img[cls[0]]];
        for (std::uint32_t x : cls)
          if (ac.class_of[img[x]] != target) return false;
      }
    }
    return true;
  };

  unsigned long long total = 1;
  for (int i = 2; i <= d; ++i) total *= i;

  // Data-parallel filter over contiguous ranks; merged in chunk order.
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned chunks = (d >= 7) ? hw * 4 : 1;
  auto scan = [&](unsigned long long lo, unsigned long long hi) {
    std::vector<Perm> found;
    std::vector<std::uint16_t> img = unrank_permutation(d, lo);
    for (unsigned long long r = lo; r < hi; ++r) {
      if (satisfies(img)) found.emplace_back(img);
      std::next_permutation(img.begin(), img.end());
    }
    return found;
  };

  std::vector<Perm> kept;
  if (chunks == 1) {
    kept = scan(0, total);
  } else {
    unsigned long long per = (total + chunks - 1) / chunks;
    std::vector<std::future<std::vector<Perm>>> futs;
    for (unsigned long long lo = 0; lo < total; lo += per)
      futs.push_back(std::async(std::launch::async, scan, lo, std::min(total, lo + per)));
    for (auto& f : futs)
      for (Perm& p : f.get()) kept.push_back(std::move(p));
  }

  // A subset of a finite symmetric group closed under composition and
  // containing the identity is a subgroup; check both explicitly.
  std::set<Perm> member(kept.begin(), kept.end());
  if (!member.count(Perm(d)))
    throw Error(ErrorKind::internal, "brute-force filter lost the identity");
  for (const Perm& a : kept)
    for (const Perm& b : kept)
      if (!member.count(compose(a, b)))
        throw Error(ErrorKind::internal, "brute-force filter is not closed under composition");

  PermGroup pg;
  pg.degree = d;
  pg.elements = std::move(kept);
  pg.order = pg.elements.size();
  // Generators: the full element list serves; closure checks are trivial here.
  pg.generators = pg.elements;
  pg.provenance = "brute-force";
  return pg;
}

bool same_permutation_set(const PermGroup& a, const PermGroup& b) {
  if (a.elements.empty() || b.elements.empty())
    throw Error(ErrorKind::internal, "permutation-set comparison needs enumerated elements");
  std::set<Perm> sa(a.elements.begin(), a.elements.end());
  std::set<Perm> sb(b.elements.begin(), b.elements.end());
  return sa == sb;
}

GroupReport analyze(PermGroup& pg, const std::vector<AreaClasses>* area_classes,
                    std::size_t cap) {
  GroupReport rep;
  rep.degree = pg.degree;
  rep.order_log2 = pg.order_log2;
  rep.order = pg.order;

  if (pg.elements.empty() && pg.order && *pg.order <= cap) {
    auto closed = close_generators(pg.generators, pg.degree, cap);
    if (!closed || closed->size() != *pg.order)
      throw Error(ErrorKind::internal,
                  "generator closure disagrees with the order formula 2^(sum k_l)");
    pg.elements = std::move(*closed);
    rep.closure_checked = true;
  } else if (!pg.elements.empty()) {
    rep.closure_checked = true;  // enumerated at construction time
  }
  const std::vector<Perm>& elements = pg.elements;

  if (pg.order) {
    rep.is_power_of_two = (*pg.order & (*pg.order - 1)) == 0;
  } else {
    rep.is_power_of_two = pg.order_log2 >= 0;  // order known only as 2^(sum k_l)
  }

  if (area_classes) {
    bool ok = true;
    for (const Perm& g : pg.generators) {
      for (const AreaClasses& ac : *area_classes) {
        for (const auto& cls : ac.classes) {
          std::vector<std::uint32_t> image;
          for (std::uint32_t x : cls) image.push_back(g[x]);
          std::sort(image.begin(), image.end());
          int target = ac.class_of[image[0]];
          if (image != ac.classes[target]) ok = false;
        }
      }
    }
    rep.block_invariance = ok;
  }

  if (!elements.empty()) {
    rep.elements_enumerated = true;
    for (const Perm& g : elements) rep.order_profile[g.order()] += 1;

    int center = 0;
    for (const Perm& g : elements) {
      bool central = true;
      for (const Perm& h : pg.generators)
        if (compose(g, h) != compose(h, g)) {
          central = false;
          break;
        }
      center += central;
    }
    rep.center_size = center;

    // Dihedral-times-Z2 presentation search for order-16 groups.
    if (elements.size() == 16) {
      for (const Perm& h1 : elements) {
        if (h1.order() != 4) continue;
        Perm h1_inv = h1.inverse();
        for (const Perm& h2 : elements) {
          if (h2.order() != 2) continue;
          if (compose(compose(h2, h1), h2) != h1_inv) continue;
          for (const Perm& h3 : elements) {
            if (h3.order() != 2) continue;
            if (compose(h3, h1) != compose(h1, h3)) continue;
            if (compose(h3, h2) != compose(h2, h3)) continue;
            auto gen = close_generators({h1, h2, h3}, pg.degree, 16);
            if (gen && gen->size() == 16) {
              rep.relation_triple = RelationTriple{h1, h2, h3};
              break;
            }
          }
          if (rep.relation_triple) break;
        }
        if (rep.relation_triple) break;
      }
    }
  }
  return rep;
}

std::set<int> real_count_spectrum(const PermGroup& pg) {
  if (pg.elements.empty())
    throw Error(ErrorKind::degree_too_large,
                "spectrum requires enumerated elements; order exceeds the cap");
  std::set<int> out;
  for (const Perm& g : pg.elements)
    if (compose(g, g).is_identity()) out.insert(g.fixed_points());
  return out;
}

}  // namespace rigid
