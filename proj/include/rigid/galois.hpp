#ifndef RIGID_GALOIS_HPP
#define RIGID_GALOIS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rigid/perm.hpp"
#include "rigid/realization.hpp"

namespace rigid {

// Partition of the prefix realizations F_{l-1} by the exact squared distance
// between the step's base pair. Blocks hold sign-vector prefixes (l-1 bits),
// each sorted, blocks ordered by smallest member; this normal form is what
// the genericity protocol compares across seeds.
struct StepPartition {
  int step = 0;  // l, 1-based
  std::pair<int, int> base_pair{0, 0};
  std::vector<std::vector<std::uint32_t>> blocks;

  int k() const { return static_cast<int>(blocks.size()); }
  bool operator==(const StepPartition&) const = default;
};

std::vector<StepPartition> step_partitions(const RealizationSet& rs);

// Per-step partition of the full realization set by exact step-area value
// (2 k_l classes per step under a generic labelling).
struct AreaClasses {
  std::vector<int> class_of;                        // per realization index
  std::vector<std::vector<std::uint32_t>> classes;  // sorted blocks
};

std::vector<AreaClasses> step_area_classes(const RealizationSet& rs);

struct PermGroup {
  int degree = 1;
  std::vector<Perm> generators;
  int order_log2 = -1;                       // exact exponent (recursive builds)
  std::optional<unsigned long long> order;   // exact order when it fits / enumerated
  std::vector<Perm> elements;                // full list when enumerated
  std::string provenance;                    // "recursive" | "brute-force"
};

// Recursive construction: level l extends the level-(l-1) group by lifting
// its generators (acting on the prefix bits, preserving the step-l sign bit)
// and by one flip per lambda-block (toggling the step-l sign bit on that
// block). Order is 2^(sum k_l). Throws Error(internal) when a lifted
// generator fails to map lambda-blocks onto lambda-blocks, which indicates a
// genericity failure upstream.
PermGroup build_galois(const RealizationSet& rs, const std::vector<StepPartition>& parts);

// Direct form: filters all of S_|F| by the condition that, for every step,
// realizations with equal step areas keep equal step areas after the
// permutation. Degree capped at 8 (8! candidates). The filtered set is
// checked to contain the identity and to be closed under composition.
PermGroup brute_force_galois(const RealizationSet& rs);

bool same_permutation_set(const PermGroup& a, const PermGroup& b);

struct RelationTriple {
  Perm h1, h2, h3;  // h1^4 = h2^2 = h3^2 = e, h2 h1 h2 = h1^-1, h3 central
};

struct GroupReport {
  int degree = 1;
  int order_log2 = -1;
  std::optional<unsigned long long> order;
  bool is_power_of_two = false;
  bool elements_enumerated = false;
  bool closure_checked = false;  // generator closure matched the order formula
  std::map<long, int> order_profile;          // element order -> count
  std::optional<int> center_size;
  std::optional<bool> block_invariance;       // generators map area classes onto classes
  std::optional<RelationTriple> relation_triple;  // searched when order = 16
};

// Enumerates pg.elements when the order fits under `cap` (closure is
// verified against the order formula; disagreement raises Error(internal))
// and fills the profile/center/relation fields. Block invariance is checked
// when the area classes are supplied.
GroupReport analyze(PermGroup& pg, const std::vector<AreaClasses>* area_classes,
                    std::size_t cap);

// If the group was analyzed, pg.elements hold the enumeration; callers pass
// the analyzed group here. Returns the fixed-point counts of the identity
// and all involutions. Throws Error(degree_too_large) when elements are not
// enumerated.
std::set<int> real_count_spectrum(const PermGroup& pg);

}  // namespace rigid

#endif
