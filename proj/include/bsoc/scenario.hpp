#ifndef BSOC_SCENARIO_HPP
#define BSOC_SCENARIO_HPP

#include "bsoc/process_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bsoc {

enum class ScenarioRole { nominal, design, test };

/// One disturbance realization plus the noise sequences used in closed loop.
struct Scenario {
  int id = 0;
  ScenarioRole role = ScenarioRole::nominal;
  Eigen::VectorXd x0;
  /// Relative deviation of every process parameter (zero for unperturbed ones).
  Eigen::VectorXd param_offsets;
  /// Absolute parameter values, nominal .* (1 + param_offsets).
  Eigen::VectorXd parameters;
  /// [n_y(0); ...; n_y(L-1)]
  Eigen::VectorXd noise_y;
  /// [n_u(0); ...; n_u(L-1)]
  Eigen::VectorXd noise_u;

  /// [0; n_y(0); n_u(0); ...] aligned with the augmented extended measurements.
  Eigen::VectorXd stacked_noise(const Dims& d) const;
};

struct UncertaintySpec {
  std::vector<std::string> perturbed_params = {"c_A0", "c_B0", "V0", "k1", "k2"};
  double fraction = 0.10;
  double noise_std_conc = 0.03;
  double noise_std_vol = 0.1;
  double noise_std_u = 2.5e-5;
  std::uint64_t seed = 0;

  void validate() const;

  /// Standard deviations per measurement channel of `process`.
  Eigen::VectorXd output_std(const BatchProcess& process) const;
  Eigen::VectorXd input_std(const BatchProcess& process) const;
};

/// The unperturbed reference point, id 0, without noise.
Scenario nominal_scenario(const BatchProcess& process);

/// Builds a scenario from explicit offsets and noise (used by CSV import).
Scenario make_scenario(const BatchProcess& process, int id, ScenarioRole role,
                       Eigen::VectorXd param_offsets, Eigen::VectorXd noise_y,
                       Eigen::VectorXd noise_u);

/// Draws `count` scenarios with ids 1..count from a single stream seeded by
/// `spec.seed`.  Per scenario the stream yields one uniform number for every
/// process parameter (in parameter order, whether perturbed or not), then
/// standard normals for the measurement and input noise, stage by stage.
/// Changing `fraction` or the perturbed set therefore keeps the underlying
/// draws identical.  All scenarios are tagged `design`.
std::vector<Scenario> sample_scenarios(const UncertaintySpec& spec, int count,
                                       const BatchProcess& process);

/// Tags the first `design_size` scenarios as design and the rest as test.
struct ScenarioSplit {
  std::vector<Scenario> design;
  std::vector<Scenario> test;
};
ScenarioSplit split_scenarios(std::vector<Scenario> scenarios, int design_size);

/// Diagonal of the augmented noise covariance: a leading zero followed by L
/// copies of (output variances, input variances).
Eigen::VectorXd noise_covariance(const UncertaintySpec& spec, const BatchProcess& process);

/// Flat CSV, one row per scenario: id, role, offsets, noise_y, noise_u.
void write_scenarios_csv(std::ostream& os, const std::vector<Scenario>& scenarios,
                         const BatchProcess& process);
std::vector<Scenario> read_scenarios_csv(std::istream& is, const BatchProcess& process);

std::string to_string(ScenarioRole role);
ScenarioRole role_from_string(const std::string& s);

}  // namespace bsoc

#endif  // BSOC_SCENARIO_HPP
