#include "rigid/pipeline.hpp"

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "rigid/error.hpp"
#include "rigid/mqdeg.hpp"

namespace rigid {

using Json = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (range == 0) throw Error(ErrorKind::parse, "range must be positive");
  if (trials <= 0) throw Error(ErrorKind::parse, "trials must be positive");
  if (precision <= 0) throw Error(ErrorKind::parse, "precision must be positive");
  if (cap == 0) throw Error(ErrorKind::parse, "cap must be positive");
}

AnalysisRun run_enumeration(const Graph& g, const HennebergSequence& seq, const Labelling& lab) {
  AnalysisRun run;
  run.tower = std::make_unique<Tower>();
  run.labelling = lab;
  run.rs = enumerate_realizations(g, seq, lab, *run.tower);
  run.parts = step_partitions(run.rs);
  return run;
}

ProtocolOutcome genericity_protocol(const Graph& g, const HennebergSequence& seq,
                                    std::uint64_t seed, std::uint64_t range,
                                    const LabellingSource* source) {
  constexpr int kAttempts = 5;
  std::string last_reason = "partition structures never agreed";
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::uint64_t seed_a = seed + 2 * attempt, seed_b = seed + 2 * attempt + 1;
    Labelling lab_a = source ? (*source)(g, attempt, 0) : random_labelling(g, seed_a, range);
    Labelling lab_b = source ? (*source)(g, attempt, 1) : random_labelling(g, seed_b, range);
    try {
      AnalysisRun run_a = run_enumeration(g, seq, lab_a);
      AnalysisRun run_b = run_enumeration(g, seq, lab_b);
      if (run_a.parts == run_b.parts) {
        ProtocolOutcome out;
        out.certified = std::move(run_a);
        out.attempts = attempt + 1;
        if (!source) out.seeds = {seed_a, seed_b};
        return out;
      }
      last_reason = "step-partition structures differ between the paired runs";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::genericity) throw;
      last_reason = e.what();
    }
  }
  throw Error(ErrorKind::genericity,
              "genericity certification failed after " + std::to_string(kAttempts) +
                  " attempts; last failure: " + last_reason);
}

namespace {

Json graph_json(const Graph& g) {
  Json j;
  j["n"] = g.n;
  auto& es = j["edges"] = Json::array();
  for (const auto& [u, v] : g.edges) es.push_back({u, v});
  j["base"] = {g.base.first, g.base.second};
  return j;
}

Json sequence_json(const HennebergSequence& seq) {
  Json j = Json::array();
  for (const auto& mv : seq) j.push_back({mv.i, mv.j, mv.fresh});
  return j;
}

Json labelling_json(const Labelling& lab) {
  Json j = Json::array();
  for (const auto& [e, v] : lab.value) {
    Json item;
    item["edge"] = {e.first, e.second};
    item["value"] = rat_str(v);
    j.push_back(item);
  }
  return j;
}

Json partitions_json(const std::vector<StepPartition>& parts) {
  Json j = Json::array();
  for (const auto& p : parts) {
    Json item;
    item["step"] = p.step;
    item["base_pair"] = {p.base_pair.first, p.base_pair.second};
    item["k"] = p.k();
    item["blocks"] = p.blocks;
    j.push_back(item);
  }
  return j;
}

Json perm_json(const Perm& p) {
  Json j;
  j["images"] = p.images();
  j["cycles"] = p.cycle_string();
  return j;
}

Json group_json(const PermGroup& pg) {
  Json j;
  j["degree"] = pg.degree;
  if (pg.order)
    j["order"] = *pg.order;
  else
    j["order"] = "2^" + std::to_string(pg.order_log2);
  if (pg.order_log2 >= 0) j["order_log2"] = pg.order_log2;
  j["provenance"] = pg.provenance;
  auto& gens = j["generators"] = Json::array();
  for (const Perm& g : pg.generators) gens.push_back(perm_json(g));
  return j;
}

Json analysis_json(const GroupReport& rep) {
  Json j;
  j["is_power_of_two"] = rep.is_power_of_two;
  j["elements_enumerated"] = rep.elements_enumerated;
  j["closure_checked"] = rep.closure_checked;
  if (rep.elements_enumerated) {
    Json prof = Json::object();
    for (const auto& [ord, count] : rep.order_profile) prof[std::to_string(ord)] = count;
    j["order_profile"] = prof;
    j["center_size"] = *rep.center_size;
  }
  if (rep.block_invariance) j["block_invariance"] = *rep.block_invariance;
  Json triple;
  if (rep.relation_triple) {
    triple["found"] = true;
    triple["h1"] = rep.relation_triple->h1.cycle_string();
    triple["h2"] = rep.relation_triple->h2.cycle_string();
    triple["h3"] = rep.relation_triple->h3.cycle_string();
  } else {
    triple["found"] = false;
  }
  j["relation_triple"] = triple;
  return j;
}

struct PreparedGraph {
  Graph graph;
  HennebergSequence seq;
};

PreparedGraph prepare_graph(const RunConfig& cfg) {
  Graph g = load_graph(cfg.graph_path);
  if (cfg.base_override) {
    g.base = make_edge(cfg.base_override->first, cfg.base_override->second);
    g.validate();
  }
  if (!is_laman(g))
    throw Error(ErrorKind::not_laman,
                "graph is not minimally rigid (|E| = 2n-3 + subgraph counts fail)");
  return {g, henneberg1_sequence(g)};
}

struct FullAnalysis {
  PreparedGraph pg;
  ProtocolOutcome protocol;
  std::vector<int> k_sequence;
  PermGroup group;
  GroupReport report;
  std::optional<PermGroup> brute;
  std::optional<bool> brute_matches;
  std::optional<std::set<int>> spectrum;
};

FullAnalysis full_analysis(const RunConfig& cfg) {
  FullAnalysis fa;
  fa.pg = prepare_graph(cfg);
  fa.protocol = genericity_protocol(fa.pg.graph, fa.pg.seq, cfg.seed, cfg.range);

  const AnalysisRun& run = fa.protocol.certified;
  for (const auto& p : run.parts) fa.k_sequence.push_back(p.k());

  fa.group = build_galois(run.rs, run.parts);
  auto classes = step_area_classes(run.rs);
  fa.report = analyze(fa.group, &classes, cfg.cap);

  if (run.rs.items.size() <= 8) {
    fa.brute = brute_force_galois(run.rs);
    fa.brute_matches = same_permutation_set(*fa.brute, fa.group);
  }
  if (!fa.group.elements.empty()) fa.spectrum = real_count_spectrum(fa.group);
  return fa;
}

std::string spectrum_str(const std::set<int>& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int v : s) {
    out << (first ? "" : ", ") << v;
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace

CommandOutput cmd_analyze(const RunConfig& cfg) {
  cfg.validate();
  FullAnalysis fa = full_analysis(cfg);
  const AnalysisRun& run = fa.protocol.certified;

  Json doc;
  doc["command"] = "analyze";
  doc["graph"] = graph_json(fa.pg.graph);
  doc["sequence"] = sequence_json(fa.pg.seq);
  doc["seed"] = cfg.seed;
  doc["range"] = cfg.range;
  Json gen;
  gen["attempts"] = fa.protocol.attempts;
  gen["seeds"] = fa.protocol.seeds;
  gen["certified"] = true;
  doc["genericity"] = gen;
  doc["labelling"] = labelling_json(run.labelling);
  doc["realizations"] = run.rs.items.size();
  doc["k_sequence"] = fa.k_sequence;
  doc["partitions"] = partitions_json(run.parts);
  doc["group"] = group_json(fa.group);
  doc["analysis"] = analysis_json(fa.report);
  Json brute;
  if (fa.brute) {
    brute["ran"] = true;
    brute["order"] = *fa.brute->order;
    brute["matches_recursive"] = *fa.brute_matches;
  } else {
    brute["ran"] = false;
    brute["reason"] = "degree exceeds 8";
  }
  doc["brute_force"] = brute;
  if (fa.spectrum)
    doc["real_count_spectrum"] = std::vector<int>(fa.spectrum->begin(), fa.spectrum->end());
  else
    doc["real_count_spectrum"] = nullptr;

  std::ostringstream sum;
  sum << "graph: n=" << fa.pg.graph.n << ", " << fa.pg.graph.edges.size() << " edges, base "
      << fa.pg.graph.base.first << "-" << fa.pg.graph.base.second << "\n";
  sum << "sequence:";
  for (const auto& mv : fa.pg.seq) sum << " (" << mv.i << "," << mv.j << "," << mv.fresh << ")";
  sum << "\nrealizations: " << run.rs.items.size() << "\nk-sequence:";
  for (int k : fa.k_sequence) sum << " " << k;
  sum << "  (order ";
  if (fa.group.order)
    sum << *fa.group.order;
  else
    sum << "2^" << fa.group.order_log2;
  sum << ")\n";
  if (fa.brute)
    sum << "brute-force oracle: " << (*fa.brute_matches ? "match" : "MISMATCH") << "\n";
  if (fa.report.elements_enumerated) {
    sum << "order profile: {";
    bool first = true;
    for (const auto& [ord, cnt] : fa.report.order_profile) {
      sum << (first ? "" : ", ") << ord << ":" << cnt;
      first = false;
    }
    sum << "}, center " << *fa.report.center_size << "\n";
  }
  if (fa.spectrum) sum << "real-count spectrum: " << spectrum_str(*fa.spectrum) << "\n";

  return {doc.dump(2) + "\n", sum.str()};
}

CommandOutput cmd_sample(const RunConfig& cfg) {
  cfg.validate();
  FullAnalysis fa = full_analysis(cfg);
  if (!fa.spectrum)
    throw Error(ErrorKind::degree_too_large,
                "sampler needs the enumerated group; order exceeds the cap");

  SampleReport rep = sample_real_counts(fa.pg.graph, fa.pg.seq, *fa.spectrum, cfg.trials,
                                        cfg.seed, cfg.range);

  Json doc;
  doc["command"] = "sample";
  doc["graph"] = graph_json(fa.pg.graph);
  doc["trials"] = rep.trials;
  doc["seed"] = cfg.seed;
  doc["range"] = cfg.range;
  doc["tolerance"] = "1e-9";
  doc["spectrum"] = rep.spectrum;
  Json hist = Json::object();
  for (const auto& [count, times] : rep.histogram) hist[std::to_string(count)] = times;
  doc["histogram"] = hist;
  doc["degenerate_skipped"] = rep.degenerate_skipped;
  Json viol = Json::array();
  for (const auto& v : rep.violations) {
    Json item;
    item["trial"] = v.trial;
    item["count"] = v.count;
    viol.push_back(item);
  }
  doc["violations"] = viol;

  std::ostringstream sum;
  sum << "trials: " << rep.trials << " (skipped " << rep.degenerate_skipped << " degenerate)\n";
  sum << "predicted spectrum: " << spectrum_str(*fa.spectrum) << "\nhistogram:";
  for (const auto& [count, times] : rep.histogram)
    sum << " " << count << "x" << times;
  sum << "\nviolations: " << rep.violations.size() << "\n";
  return {doc.dump(2) + "\n", sum.str()};
}

CommandOutput cmd_realize(const RunConfig& cfg) {
  cfg.validate();
  PreparedGraph pg = prepare_graph(cfg);
  ProtocolOutcome protocol = genericity_protocol(pg.graph, pg.seq, cfg.seed, cfg.range);
  std::string json = realization_set_json(protocol.certified.rs, cfg.precision);

  std::ostringstream sum;
  sum << "realizations: " << protocol.certified.rs.items.size() << " (numeric dump at precision "
      << rat_str(cfg.precision) << ")\n";
  return {json + "\n", sum.str()};
}

CommandOutput cmd_mqdeg(const std::vector<Rat>& inputs) {
  if (inputs.empty()) throw Error(ErrorKind::parse, "mqdeg needs at least one rational");
  for (const Rat& q : inputs)
    if (sgn(q) == 0) throw Error(ErrorKind::parse, "mqdeg inputs must be nonzero");

  MqRankResult gf2 = mq_degree_gf2(inputs);
  Int degree = multiquadratic_degree(inputs);  // includes the dual-route check

  Json doc;
  doc["command"] = "mqdeg";
  Json ins = Json::array();
  for (const Rat& q : inputs) ins.push_back(rat_str(q));
  doc["inputs"] = ins;
  doc["k"] = gf2.k;
  doc["rank"] = gf2.rank;
  doc["degree"] = degree.get_str();

  std::ostringstream sum;
  sum << "k = " << gf2.k << ", GF(2) rank = " << gf2.rank << ", degree = " << degree.get_str()
      << "\n";
  if (inputs.size() <= 12) {
    MqBruteResult brute = mq_degree_bruteforce(inputs);
    Int full;
    mpz_ui_pow_ui(full.get_mpz_t(), 2, gf2.k);
    if (degree < full && brute.witness) {
      Json w = Json::array();
      std::ostringstream ws;
      for (int idx : *brute.witness) {
        w.push_back(rat_str(inputs[idx]));
        ws << " " << rat_str(inputs[idx]);
      }
      doc["witness"] = w;
      sum << "square-product witness:" << ws.str() << "\n";
    } else {
      doc["witness"] = nullptr;
      sum << "no subset product is a square\n";
    }
  }
  return {doc.dump(2) + "\n", sum.str()};
}

std::uint64_t default_seed_from_env() {
  const char* env = std::getenv("RIGID_GALOIS_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw Error(ErrorKind::parse, "RIGID_GALOIS_SEED must be a nonnegative integer");
  return v;
}

}  // namespace rigid
