#include "rigid/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rigid/error.hpp"

namespace rigid {

bool Graph::has_edge(int u, int v) const {
  return std::binary_search(edges.begin(), edges.end(), make_edge(u, v));
}

int Graph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) d += (e.first == v) + (e.second == v);
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.first == v) out.push_back(e.second);
    if (e.second == v) out.push_back(e.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Graph::validate() const {
  if (n < 2) throw Error(ErrorKind::parse, "graph needs at least 2 vertices");
  for (const auto& [u, v] : edges) {
    if (u == v) throw Error(ErrorKind::parse, "self-loop at vertex " + std::to_string(u));
    if (u < 1 || v > n || u > v)
      throw Error(ErrorKind::parse, "edge endpoint out of range 1.." + std::to_string(n));
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i] == edges[i + 1])
      throw Error(ErrorKind::parse, "duplicate edge " + std::to_string(edges[i].first) + "-" +
                                        std::to_string(edges[i].second));
  if (!has_edge(base.first, base.second))
    throw Error(ErrorKind::parse, "base edge " + std::to_string(base.first) + "-" +
                                      std::to_string(base.second) + " is not in the edge set");
}

const Rat& Labelling::at(int u, int v) const {
  auto it = value.find(make_edge(u, v));
  if (it == value.end())
    throw Error(ErrorKind::internal,
                "no label for edge " + std::to_string(u) + "-" + std::to_string(v));
  return it->second;
}

namespace {

Graph finish_graph(int n, std::vector<Edge> edges, std::pair<int, int> base, bool base_given,
                   bool require_contiguous) {
  std::sort(edges.begin(), edges.end());
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  if (g.edges.empty()) throw Error(ErrorKind::parse, "graph has no edges");
  g.base = base_given ? make_edge(base.first, base.second) : g.edges.front();
  g.validate();
  if (require_contiguous) {
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (const auto& [u, v] : g.edges) seen[u] = seen[v] = true;
    for (int v = 1; v <= n; ++v)
      if (!seen[v])
        throw Error(ErrorKind::parse, "vertex ids must cover 1..n contiguously; " +
                                          std::to_string(v) + " is unused");
  }
  return g;
}

Graph parse_edge_list(const std::string& text) {
  std::vector<Edge> edges;
  std::pair<int, int> base{0, 0};
  bool base_given = false;
  int max_v = 0;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    auto bad = [&] {
      throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected 'u v'");
    };
    if (first == "base:") {
      if (!(ls >> base.first >> base.second)) bad();
      base_given = true;
    } else {
      int u = 0, v = 0;
      try {
        u = std::stoi(first);
      } catch (...) {
        bad();
      }
      if (!(ls >> v)) bad();
      std::string extra;
      if (ls >> extra) bad();
      if (u < 1 || v < 1)
        throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": ids are 1-based");
      if (u == v)
        throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": self-loop");
      edges.push_back(make_edge(u, v));
      max_v = std::max({max_v, u, v});
    }
  }
  return finish_graph(max_v, std::move(edges), base, base_given, /*require_contiguous=*/true);
}

Graph parse_json_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("bad JSON: ") + e.what());
  }
  try {
    int n = doc.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw Error(ErrorKind::parse, "each edge must be a pair [u, v]");
      edges.push_back(make_edge(e[0].get<int>(), e[1].get<int>()));
    }
    std::pair<int, int> base{0, 0};
    bool base_given = doc.contains("base");
    if (base_given) {
      const auto& b = doc.at("base");
      if (!b.is_array() || b.size() != 2)
        throw Error(ErrorKind::parse, "base must be a pair [u, v]");
      base = {b[0].get<int>(), b[1].get<int>()};
    }
    return finish_graph(n, std::move(edges), base, base_given, /*require_contiguous=*/false);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("bad graph JSON: ") + e.what());
  }
}

}  // namespace

Graph parse_graph(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw Error(ErrorKind::parse, "empty graph description");
  return text[first] == '{' ? parse_json_graph(text) : parse_edge_list(text);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string graph_to_json(const Graph& g) {
  nlohmann::ordered_json doc;
  doc["n"] = g.n;
  auto& es = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : g.edges) es.push_back({u, v});
  doc["base"] = {g.base.first, g.base.second};
  return doc.dump();
}

// ---------------------------------------------------------------------------
// (2,3)-pebble game. Every vertex starts with two pebbles; an edge may be
// inserted once four pebbles sit on its endpoints, and insertion consumes one
// pebble from the tail. All 2n-3 edges insert iff the graph is Laman.
// ---------------------------------------------------------------------------

namespace {

class PebbleGame {
public:
  explicit PebbleGame(int n) : pebbles_(n + 1, 2), out_(n + 1) {}

  bool insert_edge(int u, int v) {
    while (pebbles_[u] + pebbles_[v] < 4) {
      if (!pull_pebble(u, v) && !pull_pebble(v, u)) return false;
    }
    pebbles_[u] -= 1;
    out_[u].push_back(v);
    return true;
  }

private:
  // Looks for a directed path from `src` to a vertex outside {src, other}
  // holding a pebble; reverses the path and moves the pebble to `src`.
  bool pull_pebble(int src, int other) {
    std::vector<int> parent(out_.size(), -1);
    std::vector<int> stack{src};
    parent[src] = src;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : out_[x]) {
        if (parent[y] != -1) continue;
        parent[y] = x;
        if (y != other && pebbles_[y] > 0) {
          pebbles_[y] -= 1;
          pebbles_[src] += 1;
          reverse_path(src, y, parent);
          return true;
        }
        stack.push_back(y);
      }
    }
    return false;
  }

  void reverse_path(int src, int dst, const std::vector<int>& parent) {
    int cur = dst;
    while (cur != src) {
      int p = parent[cur];
      auto it = std::find(out_[p].begin(), out_[p].end(), cur);
      out_[p].erase(it);
      out_[cur].push_back(p);
      cur = p;
    }
  }

  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;
};

}  // namespace

bool is_laman(const Graph& g) {
  if (g.n < 2) return false;
  if (static_cast<int>(g.edges.size()) != 2 * g.n - 3) return false;
  PebbleGame game(g.n);
  for (const auto& [u, v] : g.edges)
    if (!game.insert_edge(u, v)) return false;
  return true;
}

HennebergSequence henneberg1_sequence(const Graph& g, TieBreak tb) {
  std::set<Edge> edges(g.edges.begin(), g.edges.end());
  std::set<int> present;
  for (int v = 1; v <= g.n; ++v) present.insert(v);

  auto degree_of = [&](int v) {
    int d = 0;
    for (const auto& e : edges) d += (e.first == v) + (e.second == v);
    return d;
  };

  HennebergSequence removal;
  while (present.size() > 2) {
    int pick = 0;
    for (int v : present) {
      if (v == g.base.first || v == g.base.second) continue;
      if (degree_of(v) != 2) continue;
      if (pick == 0 || (tb == TieBreak::highest ? v > pick : v < pick)) pick = v;
    }
    if (pick == 0)
      throw Error(ErrorKind::not_type1, "no removable degree-2 vertex; graph is not type-1");
    std::vector<int> nb;
    for (auto it = edges.begin(); it != edges.end();) {
      if (it->first == pick || it->second == pick) {
        nb.push_back(it->first == pick ? it->second : it->first);
        it = edges.erase(it);
      } else {
        ++it;
      }
    }
    std::sort(nb.begin(), nb.end());
    removal.push_back({nb[0], nb[1], pick});
    present.erase(pick);
  }
  if (edges.size() != 1 || *edges.begin() != g.base)
    throw Error(ErrorKind::not_type1, "residue after stripping is not the base edge");
  std::reverse(removal.begin(), removal.end());
  return removal;
}

std::vector<Edge> replay_sequence(const Graph& g, const HennebergSequence& seq) {
  std::vector<Edge> edges{g.base};
  std::set<int> present{g.base.first, g.base.second};
  for (const auto& m : seq) {
    if (present.count(m.fresh))
      throw Error(ErrorKind::internal, "replay: vertex added twice");
    if (!present.count(m.i) || !present.count(m.j))
      throw Error(ErrorKind::internal, "replay: attachment vertex missing");
    edges.push_back(make_edge(m.i, m.fresh));
    edges.push_back(make_edge(m.j, m.fresh));
    present.insert(m.fresh);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

Labelling random_labelling(const Graph& g, std::uint64_t seed, std::uint64_t range) {
  if (range == 0) throw Error(ErrorKind::parse, "range must be positive");
  Rng rng(seed);
  Labelling lab;
  for (const auto& e : g.edges) {
    if (e == g.base) {
      lab.value[e] = 1;
    } else {
      Rat q(static_cast<unsigned long>(rng.one_to(range)),
            static_cast<unsigned long>(rng.one_to(range)));
      q.canonicalize();
      lab.value[e] = q;
    }
  }
  return lab;
}

}  // namespace rigid
