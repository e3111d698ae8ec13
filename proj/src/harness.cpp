#include "dpt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <mutex>
#include <thread>

#include "dpt/compiler.hpp"
#include "dpt/oracles.hpp"
#include "dpt/tree_tester.hpp"

namespace dpt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(value, &used);
    if (used != value.size() || value.front() == '-') throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid value for " + key + ": '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw ConfigError("invalid value for " + key + ": '" + value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (property.empty()) throw ConfigError("no property given");
  try {
    (void)PropertyId::parse(property);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!epsilon.in_unit_interval()) throw ConfigError("epsilon must lie in (0, 1]");
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (graph.empty() == gen.empty()) throw ConfigError("exactly one of graph and gen is required");
}

void apply_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "property") {
    c.property = value;
  } else if (key == "epsilon") {
    try {
      c.epsilon = Rational::parse(value);
    } catch (const std::exception&) {
      throw ConfigError("invalid epsilon '" + value + "'");
    }
    if (!c.epsilon.in_unit_interval()) throw ConfigError("epsilon must lie in (0, 1]");
  } else if (key == "trials") {
    c.trials = to_uint(key, value);
  } else if (key == "seed") {
    c.seed = to_uint(key, value);
  } else if (key == "graph") {
    c.graph = value;
  } else if (key == "gen") {
    c.gen = value;
  } else if (key == "bandwidth") {
    c.bandwidth = to_uint(key, value);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "expect") {
    c.expect = parse_expectation(value);
  } else if (key == "threads") {
    c.threads = to_uint(key, value);
  } else if (key == "early-exit") {
    c.early_exit = to_bool(key, value);
  } else if (key == "phase-cap") {
    c.phase_cap = to_uint(key, value);
  } else if (key == "tree-global") {
    c.tree_global = to_bool(key, value);
  } else if (key == "pi-weights") {
    if (value == "deg-1") {
      c.pi_weights = PiWeights::DegreeMinusOne;
    } else if (value == "deg") {
      c.pi_weights = PiWeights::Degree;
    } else {
      throw ConfigError("pi-weights must be deg-1 or deg");
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    apply_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

Expectation parse_expectation(const std::string& s) {
  if (s == "auto") return Expectation::Auto;
  if (s == "far") return Expectation::Far;
  if (s == "member") return Expectation::Member;
  if (s == "none" || s == "unknown") return Expectation::Unknown;
  throw ConfigError("expect must be auto, far, member or none");
}

std::string expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Auto: return "auto";
    case Expectation::Far: return "far";
    case Expectation::Member: return "member";
    case Expectation::Unknown: return "none";
  }
  return "none";
}

Instance generate_instance(const std::string& spec, std::uint64_t seed) {
  const auto parts = split(spec, ':');
  auto bad = [&] { return ConfigError("bad generator spec '" + spec + "'"); };
  Instance inst;
  try {
    const auto& kind = parts.front();
    if (kind == "copies" && parts.size() == 3) {
      inst.generated = gen_disjoint_copies(named_pattern(parts[1]), to_uint("copies", parts[2]));
    } else if (kind == "gnm" && parts.size() == 3) {
      inst.generated.graph = gen_gnm(to_uint("n", parts[1]), to_uint("m", parts[2]), seed);
    } else if (kind == "property" && parts.size() >= 3) {
      const auto name = spec.substr(9, spec.rfind(':') - 9);
      inst.generated.graph = gen_property_instance(PropertyId::parse(name), to_uint("n", parts.back()), seed);
      inst.member = true;
    } else if (kind == "path" && parts.size() == 2) {
      inst.generated.graph = path_graph(to_uint("n", parts[1]));
    } else if (kind == "star" && parts.size() == 2) {
      inst.generated.graph = star_graph(to_uint("r", parts[1]));
    } else if (kind == "cycle" && parts.size() == 2) {
      inst.generated.graph = cycle_graph(to_uint("n", parts[1]));
    } else {
      throw bad();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("generator '" + spec + "': " + e.what());
  }
  return inst;
}

std::shared_ptr<const VertexProgram> make_tester(const PropertyId& property, const Rational& epsilon,
                                                 const ExperimentConfig& config) {
  LocalTesterOptions local;
  local.weights = config.pi_weights;
  switch (property.kind()) {
    case PropertyKind::TriangleFree: return std::make_shared<TriangleTesterProgram>(epsilon, local);
    case PropertyKind::C4Free: return std::make_shared<C4TesterProgram>(epsilon, local);
    case PropertyKind::HFree: return std::make_shared<H4TesterProgram>(property.pattern(), epsilon, local);
    case PropertyKind::Bipartite: return std::make_shared<CompiledTesterProgram>(VerifierKind::Bipartite, epsilon);
    case PropertyKind::CycleFree: return std::make_shared<CompiledTesterProgram>(VerifierKind::CycleFree, epsilon);
    case PropertyKind::TreeFree: {
      DistributedTreeOptions opts;
      opts.phase_cap = config.phase_cap;
      return std::make_shared<TreeTesterProgram>(property.tree(), epsilon, opts);
    }
  }
  throw ConfigError("no tester for " + property.name());
}

double AggregateReport::reject_fraction() const {
  return rows.empty() ? 0.0 : static_cast<double>(reject_count) / static_cast<double>(rows.size());
}

bool AggregateReport::gate_passed() const {
  switch (expectation) {
    case Expectation::Far: return soundness_gate(*this);
    case Expectation::Member: return reject_count == 0;
    default: return true;
  }
}

double soundness_margin(std::size_t trials, double threshold) {
  return 3.0 * std::sqrt(threshold * (1.0 - threshold) / static_cast<double>(trials));
}

bool soundness_gate(std::size_t rejects, std::size_t trials, double threshold) {
  if (trials == 0) return false;
  const auto fraction = static_cast<double>(rejects) / static_cast<double>(trials);
  return fraction >= threshold - soundness_margin(trials, threshold);
}

bool soundness_gate(const AggregateReport& report, double threshold) {
  return soundness_gate(report.reject_count, report.rows.size(), threshold);
}

namespace {

TrialReport run_with(const Graph& g, const PropertyId& property, const VertexProgram* program,
                     const ExperimentConfig& config, std::uint64_t seed) {
  if (property.kind() == PropertyKind::TreeFree && config.tree_global) {
    RandomStream rng(seed);
    const auto res = global_tree_tester(g, property.tree(), config.epsilon, rng);
    TrialReport rep;
    rep.verdicts = {res.verdict};
    rep.rounds_used = res.attempts;
    rep.seed = seed;
    return rep;
  }
  RunConfig rc;
  rc.seed = seed;
  rc.bandwidth_limit = config.bandwidth;
  rc.early_exit = config.early_exit;
  return run(g, *program, rc);
}

Expectation resolve_expectation(const Graph& g, const PropertyId& property, const Rational& epsilon,
                                const Instance* inst) {
  if (inst) {
    if (inst->member) return Expectation::Member;
    if (const auto* cert = inst->generated.certificate_for(property)) {
      return epsilon <= cert->epsilon ? Expectation::Far : Expectation::Unknown;
    }
  }
  try {
    const auto d = dist_to_property(g, property);
    if (d == 0) return Expectation::Member;
    if (g.m() > 0 && epsilon <= Rational(static_cast<std::int64_t>(d), static_cast<std::int64_t>(g.m()))) {
      return Expectation::Far;
    }
  } catch (const GuardError&) {
  }
  return Expectation::Unknown;
}

}  // namespace

TrialReport run_trial(const Graph& g, const PropertyId& property, const ExperimentConfig& config, std::uint64_t seed) {
  std::shared_ptr<const VertexProgram> program;
  if (!(property.kind() == PropertyKind::TreeFree && config.tree_global)) {
    program = make_tester(property, config.epsilon, config);
  }
  return run_with(g, property, program.get(), config, seed);
}

AggregateReport run_trials(const Graph& g, const PropertyId& property, const ExperimentConfig& config,
                           Expectation expectation) {
  std::shared_ptr<const VertexProgram> program;
  if (!(property.kind() == PropertyKind::TreeFree && config.tree_global)) {
    program = make_tester(property, config.epsilon, config);
  }
  AggregateReport rep;
  rep.property = property.name();
  rep.epsilon = config.epsilon;
  rep.n = g.n();
  rep.m = g.m();
  rep.expectation = expectation;
  rep.rows.resize(config.trials);

  const auto hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = std::min<std::size_t>(config.threads ? config.threads : hw, config.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const auto i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        const auto seed = derive_trial_seed(config.seed, i);
        const auto tr = run_with(g, property, program.get(), config, seed);
        rep.rows[i] = TrialRow{seed, tr.verdict(), tr.rounds_used, tr.max_bits_per_edge_round};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  double total_rounds = 0;
  for (const auto& row : rep.rows) {
    (row.verdict == Verdict::Reject ? rep.reject_count : rep.accept_count)++;
    total_rounds += static_cast<double>(row.rounds);
    rep.max_rounds = std::max(rep.max_rounds, row.rounds);
    rep.max_bits = std::max(rep.max_bits, row.max_bits);
  }
  rep.mean_rounds = total_rounds / static_cast<double>(rep.rows.size());
  return rep;
}

AggregateReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto property = PropertyId::parse(config.property);
  std::optional<Instance> inst;
  Graph g;
  if (!config.gen.empty()) {
    inst = generate_instance(config.gen, config.seed);
    g = inst->generated.graph;
  } else {
    try {
      g = load_edge_list_file(config.graph);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  auto expectation = config.expect;
  if (expectation == Expectation::Auto) {
    expectation = resolve_expectation(g, property, config.epsilon, inst ? &*inst : nullptr);
  }
  auto rep = run_trials(g, property, config, expectation);
  if (!config.out.empty()) {
    std::ofstream out(config.out);
    if (!out) throw ConfigError("cannot write '" + config.out + "'");
    write_csv(out, rep);
  }
  return rep;
}

void write_csv(std::ostream& out, const AggregateReport& report) {
  out << "seed,verdict,rounds,max_bits,property,epsilon,n,m\n";
  for (const auto& row : report.rows) {
    out << row.seed << ',' << (row.verdict == Verdict::Reject ? "REJECT" : "ACCEPT") << ',' << row.rounds << ','
        << row.max_bits << ',' << report.property << ',' << report.epsilon.str() << ',' << report.n << ','
        << report.m << '\n';
  }
}

}  // namespace dpt
