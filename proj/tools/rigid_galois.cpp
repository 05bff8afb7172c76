// rigid-galois: exact Galois groups of Henneberg-1-constructible minimally
// rigid graphs, plus the floating-point real-realization sampler and the
// multiquadratic degree helper.
//
// Output policy: the JSON report goes to stdout (summary to stderr); with
// --out FILE the JSON goes to the file and the summary to stdout.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigid/error.hpp"
#include "rigid/pipeline.hpp"

namespace {

struct CommonOpts {
  std::string graph_path;
  std::vector<int> base;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts, rigid::RunConfig& cfg) {
  cmd->add_option("graph", opts.graph_path, "graph file (edge list or JSON)")->required();
  cmd->add_option("--base", opts.base, "base edge endpoints u v")->expected(2);
  cmd->add_option("--seed", cfg.seed, "labelling seed");
  cmd->add_option("--range", cfg.range, "rational label range bound");
  cmd->add_option("--cap", cfg.cap, "element enumeration cap");
  cmd->add_option("--out", opts.out_path, "write the JSON report to this file");
}

void finish(const rigid::CommandOutput& out, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << out.json;
    std::cerr << out.summary;
  } else {
    std::ofstream f(out_path);
    if (!f) throw rigid::Error(rigid::ErrorKind::parse, "cannot write '" + out_path + "'");
    f << out.json;
    std::cout << out.summary;
  }
}

rigid::RunConfig make_config(const CommonOpts& opts, rigid::RunConfig cfg) {
  cfg.graph_path = opts.graph_path;
  if (!opts.base.empty()) cfg.base_override = rigid::make_edge(opts.base[0], opts.base[1]);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois groups of type-1 minimally rigid graphs"};
  app.require_subcommand(1);

  rigid::RunConfig base_cfg;
  try {
    base_cfg.seed = rigid::default_seed_from_env();
  } catch (const rigid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rigid::exit_code(e.kind());
  }

  CommonOpts analyze_opts, sample_opts, realize_opts;
  rigid::RunConfig analyze_cfg = base_cfg, sample_cfg = base_cfg, realize_cfg = base_cfg;

  CLI::App* analyze = app.add_subcommand("analyze", "compute the Galois group and its report");
  add_common(analyze, analyze_opts, analyze_cfg);

  CLI::App* sample = app.add_subcommand("sample", "sample real-realization counts");
  add_common(sample, sample_opts, sample_cfg);
  sample->add_option("--trials", sample_cfg.trials, "number of random real labellings");

  CLI::App* realize = app.add_subcommand("realize", "dump all realizations numerically");
  add_common(realize, realize_opts, realize_cfg);
  std::string precision_str = "1/1000000000000";
  realize->add_option("--precision", precision_str, "certified numeric precision (rational)");

  CLI::App* mqdeg = app.add_subcommand("mqdeg", "degree of Q(sqrt a_1, ..., sqrt a_k) over Q");
  std::vector<std::string> mq_inputs;
  mqdeg->add_option("values", mq_inputs, "nonzero rationals")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      finish(rigid::cmd_analyze(make_config(analyze_opts, analyze_cfg)), analyze_opts.out_path);
    } else if (sample->parsed()) {
      finish(rigid::cmd_sample(make_config(sample_opts, sample_cfg)), sample_opts.out_path);
    } else if (realize->parsed()) {
      rigid::RunConfig cfg = make_config(realize_opts, realize_cfg);
      cfg.precision = rigid::parse_rat(precision_str);
      finish(rigid::cmd_realize(cfg), realize_opts.out_path);
    } else if (mqdeg->parsed()) {
      std::vector<rigid::Rat> values;
      for (const std::string& s : mq_inputs) values.push_back(rigid::parse_rat(s));
      finish(rigid::cmd_mqdeg(values), "");
    }
  } catch (const rigid::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rigid::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return rigid::exit_code(rigid::ErrorKind::internal);
  }
  return 0;
}
