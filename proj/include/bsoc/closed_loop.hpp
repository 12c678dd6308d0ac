#ifndef BSOC_CLOSED_LOOP_HPP
#define BSOC_CLOSED_LOOP_HPP

#include "bsoc/cv_design.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bsoc {

/// Unclipped u(k) solving row k of H xi = 0 given the measured history
/// [1; xi_m(0); ...; xi_m(k-1)] and the measurement y_m(k).
Eigen::VectorXd feedback_input(const CombinationMatrix& cm, int k,
                               const Eigen::VectorXd& history, const Eigen::VectorXd& y_m);

struct ClosedLoopRun {
  int scenario_id = 0;
  Eigen::VectorXd u_command;  // after clipping, before implementation noise
  Eigen::VectorXd u_applied;  // what entered the plant
  Eigen::MatrixXd states;     // x(0..L)
  Eigen::VectorXd xi_measured;
  double cost = 0.0;
  double reference_cost = 0.0;
  double loss = 0.0;
  int clip_events = 0;
  /// max over unclipped stages of |H_k [history; y_m(k); u(k)]|.
  double cv_residual = 0.0;
};

struct ClosedLoopOptions {
  bool noise = true;
  bool clip = true;
};

ClosedLoopRun simulate_closed_loop(const BatchProcess& process, const CombinationMatrix& cm,
                                   const Scenario& scenario, double reference_cost,
                                   const ClosedLoopOptions& options = {});

/// One method/structure column of a loss table.
struct LossColumn {
  std::string label;
  std::vector<int> scenario_ids;
  std::vector<double> simulated;  // closed-loop J - J*
  std::vector<double> quadratic;  // quadratic loss with the scenario's own noise draw
  std::vector<double> expected;   // L^d + L^n
  std::vector<int> clip_events;
  std::vector<std::string> failures;

  double mean_simulated() const;
  double std_simulated() const;
  double mean_quadratic() const;
  double mean_expected() const;
};

struct LossReport {
  std::vector<LossColumn> columns;
  const LossColumn& column(const std::string& label) const;
};

struct LabeledDesign {
  std::string label;
  CombinationMatrix cm;
};

/// Closed-loop and quadratic losses of every design on every test scenario.
/// `references` must hold an optimized trajectory with second-order data for
/// each scenario id.  Per-cell failures are recorded, not thrown.
LossReport evaluate(const BatchProcess& process, const std::vector<LabeledDesign>& designs,
                    const std::vector<Scenario>& scenarios, const BatchSolveReport& references,
                    const Eigen::VectorXd& w2, const ClosedLoopOptions& options = {},
                    unsigned threads = 0);

/// Rows: scenario; columns: one simulated and one quadratic loss per design.
void write_loss_csv(std::ostream& os, const LossReport& report);

double mean(const std::vector<double>& v);
/// Sample standard deviation (0 for fewer than two entries).
double stddev(const std::vector<double>& v);

}  // namespace bsoc

#endif  // BSOC_CLOSED_LOOP_HPP
