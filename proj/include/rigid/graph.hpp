#ifndef RIGID_GRAPH_HPP
#define RIGID_GRAPH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rigid/rational.hpp"

namespace rigid {

// Unordered vertex pair, stored with u < v.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple graph on vertices 1..n with a distinguished base edge. The base
// edge is the one pinned to (0,0)-(1,0) by every realization.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;  // sorted, unique, u < v
  Edge base{0, 0};

  bool has_edge(int u, int v) const;
  int degree(int v) const;
  std::vector<int> neighbors(int v) const;

  // Throws Error(parse) if an invariant fails (ids out of range, self-loop,
  // duplicate edge, base not an edge).
  void validate() const;
};

// One Henneberg 1-step: vertex `fresh` is joined to existing vertices i, j.
struct HennebergMove {
  int i = 0, j = 0, fresh = 0;
  bool operator==(const HennebergMove&) const = default;
};

using HennebergSequence = std::vector<HennebergMove>;

// Squared edge lengths, base edge fixed to 1.
struct Labelling {
  std::map<Edge, Rat> value;

  const Rat& at(int u, int v) const;
  bool operator==(const Labelling&) const = default;
};

// Parses either the edge-list text format ("u v" per line, '#' comments,
// optional "base: u v" line) or the JSON document {"n":., "edges":[[u,v],..],
// "base":[u,v]}. Dispatch is on a leading '{'.
Graph parse_graph(const std::string& text);
Graph load_graph(const std::string& path);

std::string graph_to_json(const Graph& g);

// Laman count test: |E| = 2n-3 and every subgraph satisfies |E'| <= 2|V'|-3.
// Runs the (2,3)-pebble game, O(n^2) at this scale.
bool is_laman(const Graph& g);

enum class TieBreak {
  highest,  // default: strips the highest-index degree-2 vertex first
  lowest,   // alternative used to produce a second valid sequence in tests
};

// Reverse Henneberg decomposition: repeatedly removes a degree-2 vertex
// distinct from the base endpoints, then returns the moves in construction
// order. Throws Error(not_type1) when stuck or when the residue is not the
// base edge. Precondition: g is Laman.
HennebergSequence henneberg1_sequence(const Graph& g, TieBreak tb = TieBreak::highest);

// Replays a sequence from the base edge; returns the resulting edge set
// (sorted). Used by the replay-soundness checks.
std::vector<Edge> replay_sequence(const Graph& g, const HennebergSequence& seq);

// Deterministic random labelling: base edge = 1, every other label p/q with
// p, q uniform in [1, range].
Labelling random_labelling(const Graph& g, std::uint64_t seed, std::uint64_t range);

}  // namespace rigid

#endif
