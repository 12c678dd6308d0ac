#ifndef BSOC_TRAJECTORY_OPT_HPP
#define BSOC_TRAJECTORY_OPT_HPP

#include "bsoc/process_model.hpp"
#include "bsoc/scenario.hpp"

#include <limits>
#include <string>
#include <vector>

namespace bsoc {

struct OptimizerOptions {
  /// Convergence on the infinity norm of the projected gradient.
  double gradient_tol = 1e-9;
  int max_iterations = 500;
  /// Finite-difference steps relative to the input range (u_max - u_min).
  double hessian_rel_step = 1e-4;
  double sensitivity_rel_step = 1e-4;
  /// Relative parameter step for the disturbance sensitivity of the optimum.
  double parameter_rel_step = 1e-3;
  /// Worker threads for batch solves (0 = hardware concurrency).
  unsigned threads = 0;
};

/// Per-scenario optimum and the second-order data used by the loss model.
struct OptimalTrajectory {
  int scenario_id = 0;
  Eigen::VectorXd u;            // stacked optimal inputs
  Eigen::VectorXd xi;           // augmented stacked extended measurements, xi(0) == 1
  double cost = 0.0;            // J*
  Eigen::MatrixXd hessian;      // d2J/du2, n_u L x n_u L
  Eigen::MatrixXd sensitivity;  // d xi / d u, xi_size x n_u L
  bool converged = false;
  double kkt_residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  /// Coordinates within a finite-difference step of a bound; their second
  /// derivatives were taken on a shifted stencil.
  std::vector<int> one_sided;

  bool has_second_order() const { return hessian.size() > 0 && sensitivity.size() > 0; }
};

/// Gradient of J with respect to the stacked inputs by complex-step
/// differentiation (exact to rounding; no subtractive cancellation).
Eigen::VectorXd cost_gradient(const BatchProcess& process, const Eigen::VectorXd& params,
                              const Eigen::VectorXd& u);

/// Infinity norm of P(u - g) - u with P the projection onto the box.
double projected_gradient_norm(const Eigen::VectorXd& g, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

/// Noise-free augmented extended measurements for given inputs.
Eigen::VectorXd extended_measurements(const BatchProcess& process, const Eigen::VectorXd& params,
                                      const Eigen::VectorXd& u);

/// Bound-constrained minimization of J(u, d) by projected BFGS.  Never throws
/// on non-convergence: the best iterate is returned with `converged == false`.
OptimalTrajectory optimize_trajectory(const BatchProcess& process, const Scenario& scenario,
                                      const Eigen::VectorXd& init,
                                      const OptimizerOptions& options = {});

struct HessianResult {
  Eigen::MatrixXd hessian;
  std::vector<int> one_sided;
  double step = 0.0;
};

/// Central-difference Hessian of J, symmetrized.
HessianResult hessian_J(const BatchProcess& process, const Scenario& scenario,
                        const Eigen::VectorXd& u, const OptimizerOptions& options = {});

/// Central-difference sensitivity of the stacked extended measurements to
/// the stacked inputs, with the causal block pattern imposed exactly.
Eigen::MatrixXd sensitivity_G(const BatchProcess& process, const Scenario& scenario,
                              const Eigen::VectorXd& u, const OptimizerOptions& options = {});

/// Fills hessian, sensitivity and one_sided of an optimized trajectory.
void attach_second_order(const BatchProcess& process, const Scenario& scenario,
                         OptimalTrajectory& trajectory, const OptimizerOptions& options = {});

struct ScenarioFailure {
  int scenario_id = 0;
  std::string message;
};

struct BatchSolveReport {
  /// Ordered like the input scenarios; entries for scenarios that threw are
  /// missing (see `failures`).
  std::vector<OptimalTrajectory> trajectories;
  std::vector<ScenarioFailure> failures;
  double max_kkt_residual = 0.0;

  const OptimalTrajectory* find(int scenario_id) const;
};

/// Optimizes every scenario and attaches second-order data.  The nominal
/// scenario (id 0, solved internally when absent from the list) starts from
/// `nominal_init`; every other scenario is warm-started from the nominal
/// optimum.  Throws NumericalError only when the nominal solve fails.
BatchSolveReport solve_scenario_batch(const BatchProcess& process,
                                      const std::vector<Scenario>& scenarios,
                                      const Eigen::VectorXd& nominal_init,
                                      const OptimizerOptions& options = {});

/// d xi*(d) / d d at the nominal point for the listed parameters, by central
/// differences of re-optimized trajectories.  Column j corresponds to an
/// absolute change of parameter `param_indices[j]`.
Eigen::MatrixXd optimum_sensitivity(const BatchProcess& process,
                                    const OptimalTrajectory& nominal,
                                    const std::vector<int>& param_indices,
                                    const OptimizerOptions& options = {},
                                    double rel_step_override = 0.0);

}  // namespace bsoc

#endif  // BSOC_TRAJECTORY_OPT_HPP
