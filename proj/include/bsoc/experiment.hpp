#ifndef BSOC_EXPERIMENT_HPP
#define BSOC_EXPERIMENT_HPP

#include "bsoc/closed_loop.hpp"
#include "bsoc/cv_design.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bsoc {

/// A test population: scenarios drawn with the design seed but their own
/// range and perturbed set.
struct TestSetSpec {
  std::string label;
  double fraction = 0.10;
  std::vector<std::string> perturbed_params;
};

struct ExperimentConfig {
  ReactorConfig process;
  UncertaintySpec uncertainty;
  int design_size = 100;
  int test_size = 100;
  std::vector<StructureTag> structures = {StructureTag::const_diag};
  std::vector<DesignMethod> methods = {DesignMethod::ldsoc, DesignMethod::gdsoc,
                                       DesignMethod::gdsocsc};
  std::vector<TestSetSpec> test_sets;
  std::string output_dir = "out";
  unsigned threads = 0;
  OptimizerOptions optimizer;
  NumericalDesignOptions gdsoc;

  /// Throws ConfigError on unknown keys, bad types or invalid values.
  static ExperimentConfig parse(const std::string& json_text);
  static ExperimentConfig load(const std::string& path);

  /// Normalized JSON (defaults filled in) without output_dir and threads.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;
  void validate() const;
};

std::uint64_t fnv1a64(const std::string& text);

/// Scenario sets of an experiment.  `design` starts with the nominal
/// scenario; design scenarios have ids 1..design_size and test scenarios
/// design_size+1..design_size+test_size.
struct ExperimentScenarios {
  std::vector<Scenario> design;
  std::map<std::string, std::vector<Scenario>> tests;
};

ExperimentScenarios make_scenarios(const ExperimentConfig& cfg, const BatchProcess& process);

/// One scenario set with its optima.
struct TrajectoryArchive {
  std::vector<Scenario> scenarios;
  BatchSolveReport report;
  /// Disturbance sensitivity of the nominal optimum (design set only).
  Eigen::MatrixXd optimum_sensitivity;
  std::vector<int> sensitivity_params;
};

void write_archive(const std::string& dir, const TrajectoryArchive& archive,
                   const BatchProcess& process, const std::string& config_hash,
                   std::uint64_t seed);
TrajectoryArchive read_archive(const std::string& dir, const BatchProcess& process);

/// Subcommands.  Each returns normally on success and throws ConfigError or
/// NumericalError otherwise; progress goes to `log`.
void run_optimize(const ExperimentConfig& cfg, std::ostream& log);
void run_design(const ExperimentConfig& cfg, std::ostream& log);
void run_evaluate(const ExperimentConfig& cfg, std::ostream& log);
/// Prints the loss tables written by run_evaluate.
void run_report(const ExperimentConfig& cfg, std::ostream& out);

std::string design_label(DesignMethod m, StructureTag s);

/// Every design under output_dir/designs named by the config's structures
/// and methods.  Throws ConfigError when none exists.
std::vector<LabeledDesign> load_designs(const ExperimentConfig& cfg);

}  // namespace bsoc

#endif  // BSOC_EXPERIMENT_HPP
