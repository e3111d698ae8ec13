#pragma once

// Batched seeded trials, verdict aggregation and CSV output.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dpt/congest.hpp"
#include "dpt/generators.hpp"
#include "dpt/property.hpp"
#include "dpt/rational.hpp"
#include "dpt/subgraph_testers.hpp"

namespace dpt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What the instance is known to be: far (soundness gate), a member
/// (completeness gate), unknown (no gate). Auto resolves from certificates
/// or, for small inputs, the distance oracle.
enum class Expectation { Auto, Far, Member, Unknown };

struct ExperimentConfig {
  std::string property;
  Rational epsilon{1, 3};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string graph;  // edge-list path
  std::string gen;    // generator spec
  std::size_t bandwidth = 0;
  std::string out;
  Expectation expect = Expectation::Auto;
  std::size_t threads = 0;  // 0 = hardware concurrency
  bool early_exit = false;
  std::size_t phase_cap = 1024;
  bool tree_global = false;  // query-model tree tester instead of the distributed one
  PiWeights pi_weights = PiWeights::DegreeMinusOne;

  /// Throws ConfigError on an invalid combination.
  void validate() const;
};

/// Applies "key=value" lines (blank lines and '#' comments skipped) on top of `base`.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
/// Sets one key; throws ConfigError on unknown keys or bad values.
void apply_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

Expectation parse_expectation(const std::string& s);
std::string expectation_name(Expectation e);

/// Generator specs: copies:<alias>:<t>, gnm:<n>:<m>, property:<name>:<n>,
/// path:<n>, star:<r>, cycle:<n>. `property:` instances carry no
/// certificates but are members by construction.
struct Instance {
  GeneratedInstance generated;
  bool member = false;
};
Instance generate_instance(const std::string& spec, std::uint64_t seed);

/// The tester for a property: local testers for triangle / C4 / H, the
/// compiled tester for bipartiteness and cycle-freeness, the distributed
/// tree tester for trees.
std::shared_ptr<const VertexProgram> make_tester(const PropertyId& property, const Rational& epsilon,
                                                 const ExperimentConfig& config = {});

struct TrialRow {
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::Accept;
  std::size_t rounds = 0;
  std::size_t max_bits = 0;
};

struct AggregateReport {
  std::string property;
  Rational epsilon{1, 1};
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<TrialRow> rows;
  std::size_t accept_count = 0;
  std::size_t reject_count = 0;
  double mean_rounds = 0;
  std::size_t max_rounds = 0;
  std::size_t max_bits = 0;
  Expectation expectation = Expectation::Unknown;

  [[nodiscard]] double reject_fraction() const;
  /// Soundness gate for far instances, zero rejects for members, pass otherwise.
  [[nodiscard]] bool gate_passed() const;
};

double soundness_margin(std::size_t trials, double threshold = 2.0 / 3.0);
bool soundness_gate(std::size_t rejects, std::size_t trials, double threshold = 2.0 / 3.0);
bool soundness_gate(const AggregateReport& report, double threshold = 2.0 / 3.0);

/// Runs the trials (seeded derive_trial_seed(seed, i), in parallel) and
/// writes the CSV to config.out when set.
AggregateReport run_experiment(const ExperimentConfig& config);

/// Same, on an already loaded graph.
AggregateReport run_trials(const Graph& g, const PropertyId& property, const ExperimentConfig& config,
                           Expectation expectation);

/// One trial exactly as run_experiment runs trial `seed`.
TrialReport run_trial(const Graph& g, const PropertyId& property, const ExperimentConfig& config, std::uint64_t seed);

/// Header "seed,verdict,rounds,max_bits,property,epsilon,n,m", one row per trial.
void write_csv(std::ostream& out, const AggregateReport& report);

}  // namespace dpt
