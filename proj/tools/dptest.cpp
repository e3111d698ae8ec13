#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "dpt/compiler.hpp"
#include "dpt/decomposition.hpp"
#include "dpt/harness.hpp"
#include "dpt/oracles.hpp"

namespace {

using namespace dpt;

struct LoadedInput {
  Graph graph;
  std::optional<Instance> generated;
};

LoadedInput load_input(const std::string& graph, const std::string& gen, std::uint64_t seed) {
  if (graph.empty() == gen.empty()) throw ConfigError("exactly one of --graph and --gen is required");
  LoadedInput in;
  if (!gen.empty()) {
    in.generated = generate_instance(gen, seed);
    in.graph = in.generated->generated.graph;
  } else {
    try {
      in.graph = load_edge_list_file(graph);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  return in;
}

Rational parse_epsilon(const std::string& s) {
  Rational eps;
  try {
    eps = Rational::parse(s);
  } catch (const std::exception&) {
    throw ConfigError("invalid epsilon '" + s + "'");
  }
  if (!eps.in_unit_interval()) throw ConfigError("epsilon must lie in (0, 1]");
  return eps;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

int cmd_test(const std::map<std::string, CLI::Option*>& opts, const std::map<std::string, std::string>& values,
             const std::string& config_path) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config '" + config_path + "'");
    cfg = parse_config(in);
  }
  for (const auto& [key, opt] : opts) {
    if (opt->count() == 0) continue;
    const auto it = values.find(key);
    apply_config_value(cfg, key, it == values.end() ? "true" : it->second);
  }
  const auto rep = run_experiment(cfg);
  std::cout << "property=" << rep.property << " epsilon=" << rep.epsilon.str() << " n=" << rep.n << " m=" << rep.m
            << " trials=" << rep.rows.size() << " rejects=" << rep.reject_count << " reject_fraction=" << std::fixed
            << std::setprecision(4) << rep.reject_fraction() << " mean_rounds=" << rep.mean_rounds
            << " max_rounds=" << rep.max_rounds << " max_bits=" << rep.max_bits
            << " expect=" << expectation_name(rep.expectation) << " gate=" << (rep.gate_passed() ? "PASS" : "FAIL")
            << '\n';
  return rep.gate_passed() ? 0 : 1;
}

int cmd_correct(const std::string& graph, const std::string& gen, const std::string& eps_text, std::uint64_t seed,
                std::size_t trials, const std::string& out_path, const std::string& report_path) {
  const auto eps = parse_epsilon(eps_text);
  if (trials == 0) throw ConfigError("trials must be at least 1");
  const auto in = load_input(graph, gen, seed);
  const auto& g = in.graph;
  std::optional<std::ofstream> out;
  std::optional<std::ofstream> report;
  if (!out_path.empty()) out = open_out(out_path);
  if (!report_path.empty()) {
    report = open_out(report_path);
    *report << "seed,deleted,kept,distance,acyclic,within_deletion_bound,within_kept_bound\n";
  }
  std::size_t acyclic = 0;
  std::size_t within = 0;
  std::size_t kept_ok = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto s = trials == 1 ? seed : derive_trial_seed(seed, i);
    const auto c = cyclefree_corrector(g, eps, s);
    const auto check = check_correction(g, c, eps);
    acyclic += check.consistent && check.acyclic;
    within += check.within_deletion_bound();
    kept_ok += check.within_kept_bound();
    if (out) {
      if (trials > 1) *out << "# seed " << s << '\n';
      write_corrector_output(*out, c);
    }
    if (report) {
      *report << s << ',' << check.deleted << ',' << check.kept << ',' << check.distance << ',' << check.acyclic
              << ',' << check.within_deletion_bound() << ',' << check.within_kept_bound() << '\n';
    }
    if (trials == 1) {
      std::cout << "n=" << g.n() << " m=" << g.m() << " deleted=" << check.deleted << " kept=" << check.kept
                << " distance=" << check.distance << " deletion_bound=" << check.deletion_bound
                << " clusters=" << c.cluster_count << " rounds=" << c.rounds_used
                << " acyclic=" << (check.acyclic ? "yes" : "no") << '\n';
    }
  }
  const double rate = static_cast<double>(trials - within) / static_cast<double>(trials);
  std::cout << "runs=" << trials << " acyclic=" << acyclic << " within_bound=" << within
            << " violation_rate=" << rate << " within_kept_budget=" << kept_ok << '\n';
  const bool pass = acyclic == trials && kept_ok == trials && rate <= 0.05;
  return pass ? 0 : 1;
}

int cmd_decompose(const std::string& graph, const std::string& gen, const std::string& eps_text, std::uint64_t seed,
                  const std::string& out_path) {
  const auto eps = parse_epsilon(eps_text);
  const auto in = load_input(graph, gen, seed);
  const auto d = decompose(in.graph, eps, seed);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_decomposition(out, d);
  }
  const auto rep = verify_decomposition(in.graph, d, eps);
  for (const auto& v : rep.violations) std::cerr << "violation: " << v << '\n';
  std::cout << "n=" << in.graph.n() << " m=" << in.graph.m() << " clusters=" << rep.cluster_count
            << " cut_edges=" << d.cut_edges.size() << " cut_fraction=" << rep.cut_fraction
            << " max_diameter=" << rep.max_cluster_diameter << " diameter_bound=" << d.cluster_diameter_bound
            << " rounds=" << d.rounds_used << " attempts=" << d.attempts << " violations=" << rep.violations.size()
            << '\n';
  return rep.ok() ? 0 : 1;
}

int cmd_generate(const std::string& gen, std::uint64_t seed, const std::string& out_path,
                 const std::string& certs_path) {
  const auto inst = generate_instance(gen, seed);
  if (out_path.empty()) {
    write_edge_list(std::cout, inst.generated.graph);
  } else {
    auto out = open_out(out_path);
    write_edge_list(out, inst.generated.graph);
  }
  const auto certs = certs_path.empty() && !out_path.empty() ? out_path + ".cert" : certs_path;
  if (!certs.empty()) {
    auto out = open_out(certs);
    write_certificates(out, inst.generated);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed property testing harness"};
  app.require_subcommand(1);

  auto* test = app.add_subcommand("test", "Run seeded trials of a tester and gate the verdicts");
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  std::string config_path;
  test->add_option("--config", config_path, "key=value file; flags override it");
  auto value_opt = [&](const std::string& key, const std::string& help) {
    opts[key] = test->add_option("--" + key, values[key], help);
  };
  value_opt("property", "triangle | c4 | h4:<alias> | bipartite | cyclefree | tree:<path:k|star:k|file>");
  value_opt("epsilon", "proximity parameter, e.g. 1/3 or 0.25");
  value_opt("graph", "edge-list file");
  value_opt("gen", "generator spec, e.g. copies:triangle:30, gnm:100:400, property:c4:50");
  value_opt("trials", "number of trials");
  value_opt("seed", "base seed");
  value_opt("bandwidth", "bits per message (0 = default)");
  value_opt("out", "CSV output");
  value_opt("expect", "auto | far | member | none");
  value_opt("threads", "worker threads (0 = all cores)");
  value_opt("phase-cap", "phase cap of the distributed tree tester");
  value_opt("pi-weights", "deg-1 | deg");
  opts["early-exit"] = test->add_flag("--early-exit", "stop a trial at the first REJECT");
  opts["tree-global"] = test->add_flag("--tree-global", "use the query-model tree tester");

  auto* correct = app.add_subcommand("correct", "Run the cycle-freeness corrector");
  std::string c_graph, c_gen, c_eps = "1/5", c_out, c_report;
  std::uint64_t c_seed = 0;
  std::size_t c_trials = 1;
  correct->add_option("--graph", c_graph, "edge-list file");
  correct->add_option("--gen", c_gen, "generator spec");
  correct->add_option("--epsilon", c_eps, "proximity parameter");
  correct->add_option("--seed", c_seed, "seed");
  correct->add_option("--trials", c_trials, "independent runs");
  correct->add_option("--out", c_out, "deleted-edge list");
  correct->add_option("--report", c_report, "per-run CSV of checks");

  auto* dec = app.add_subcommand("decompose", "Run the low-diameter decomposition");
  std::string d_graph, d_gen, d_eps = "1/5", d_out;
  std::uint64_t d_seed = 0;
  dec->add_option("--graph", d_graph, "edge-list file");
  dec->add_option("--gen", d_gen, "generator spec");
  dec->add_option("--epsilon", d_eps, "proximity parameter");
  dec->add_option("--seed", d_seed, "seed");
  dec->add_option("--out", d_out, "decomposition dump");

  auto* gen = app.add_subcommand("generate", "Write a generated instance and its certificates");
  std::string g_spec, g_out, g_certs;
  std::uint64_t g_seed = 0;
  gen->add_option("--gen", g_spec, "generator spec")->required();
  gen->add_option("--seed", g_seed, "seed");
  gen->add_option("--out", g_out, "edge-list output (default stdout)");
  gen->add_option("--certs", g_certs, "certificate output (default <out>.cert)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*test) return cmd_test(opts, values, config_path);
    if (*correct) return cmd_correct(c_graph, c_gen, c_eps, c_seed, c_trials, c_out, c_report);
    if (*dec) return cmd_decompose(d_graph, d_gen, d_eps, d_seed, d_out);
    if (*gen) return cmd_generate(g_spec, g_seed, g_out, g_certs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
