#ifndef BSOC_CV_DESIGN_HPP
#define BSOC_CV_DESIGN_HPP

#include "bsoc/structure.hpp"
#include "bsoc/trajectory_opt.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bsoc {

enum class DesignMethod { gdsoc, gdsocsc, ldsoc };

std::string to_string(DesignMethod m);
DesignMethod method_from_string(const std::string& s);
/// "gdSOC", "gdSOCsc", "ldSOC"
std::string display_name(DesignMethod m);

/// What the loss model needs from one optimized scenario.
struct DesignSample {
  int scenario_id = 0;
  Eigen::VectorXd xi;   // xi*_i
  Eigen::MatrixXd Juu;  // J_uu,i
  Eigen::MatrixXd G;    // G_xi,i
};

DesignSample to_sample(const OptimalTrajectory& t);
std::vector<DesignSample> to_samples(const std::vector<OptimalTrajectory>& ts);

struct LossTerms {
  double disturbance = 0.0;  // L^d
  double noise = 0.0;        // L^n
  double total() const { return disturbance + noise; }
};

/// L^d and L^n with the exact J_cc = (H G)^-T J_uu (H G)^-1.  `w2` is the
/// diagonal of the noise covariance.  Throws NumericalError when H G is
/// singular.
LossTerms loss_terms(const Eigen::MatrixXd& H, const Eigen::VectorXd& xi,
                     const Eigen::MatrixXd& Juu, const Eigen::MatrixXd& G,
                     const Eigen::VectorXd& w2);
LossTerms loss_terms(const Eigen::MatrixXd& H, const DesignSample& s, const Eigen::VectorXd& w2);

/// Quadratic loss for one realization of the noise, n = stacked noise.
double quadratic_loss(const Eigen::MatrixXd& H, const DesignSample& s, const Eigen::VectorXd& n);

/// (1/N) sum (L^d_i + L^n_i)
double average_loss(const Eigen::MatrixXd& H, const std::vector<DesignSample>& samples,
                    const Eigen::VectorXd& w2);

/// Average loss and its gradient with respect to H.
double average_loss_gradient(const Eigen::MatrixXd& H, const std::vector<DesignSample>& samples,
                             const Eigen::VectorXd& w2, Eigen::MatrixXd& grad);

/// How J_cc,i is approximated in the convex surrogate.
enum class CurvatureModel {
  gentle,  // V^T J_uu,i V with V = J_uu,0^{-1/2}
  frozen,  // identity for every scenario
};

/// Normal matrix of the convex surrogate (1/2N)||[Xi; W] vec(H)||^2:
/// A = sum_i (xi_i xi_i^T) (x) (V J_i V) + W^2 (x) V^T (sum_i J_i) V.
struct SurrogateModel {
  Dims dims;
  Eigen::MatrixXd V;  // J_uu,0^{-1/2}
  Eigen::MatrixXd A;
  int samples = 0;
  int floored_eigenvalues = 0;

  /// (1/2N) v^T A v
  double objective(const Eigen::VectorXd& vecH) const;
};

SurrogateModel build_surrogate(const Dims& dims, const std::vector<DesignSample>& samples,
                               const Eigen::MatrixXd& nominal_Juu, const Eigen::VectorXd& w2,
                               CurvatureModel model = CurvatureModel::gentle);

/// Per-scenario surrogate loss for one noise realization n:
/// (1/2) |M^{1/2} H (xi + n)|^2 with M = V J_uu,i V (gentle) or I (frozen).
double surrogate_loss(const Eigen::MatrixXd& H, const DesignSample& s, const Eigen::VectorXd& n,
                      const Eigen::MatrixXd& V, CurvatureModel model);

/// Data matrix Xi with row blocks xi_i^T (x) (J_i^{1/2} V); used for checks.
Eigen::MatrixXd data_matrix(const std::vector<DesignSample>& samples, const Eigen::MatrixXd& V);

struct KktSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd multipliers;
  double ridge = 0.0;
  double constraint_residual = 0.0;
  double stationarity_residual = 0.0;
  int refinement_steps = 0;
};

/// min (1/2) x^T A x s.t. Q^T x = b, with A regularized by
/// eps = rel_ridge * trace(A) / dim.  Solved by a block factorization of the
/// KKT matrix [[A, Q], [Q^T, 0]] followed by iterative refinement.
KktSolution solve_equality_qp(const Eigen::MatrixXd& A, const ConstraintSet& cs,
                              double rel_ridge = 1e-10);

struct DesignResult {
  DesignMethod method = DesignMethod::gdsocsc;
  CombinationMatrix cm;
  /// Objective of the problem the method solved.
  double objective = 0.0;
  double constraint_residual = 0.0;
  /// Exact average quadratic loss on the design samples.
  double design_loss = 0.0;
  // solver diagnostics
  double ridge = 0.0;
  double stationarity_residual = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = true;
  int free_parameters = 0;
  int constraint_count = 0;
  std::string note;
};

/// Analytical shortcut with the gentle curvature approximation.
DesignResult solve_gdsoc_shortcut(const Dims& dims, const std::vector<DesignSample>& samples,
                                  const DesignSample& nominal, const Eigen::VectorXd& w2,
                                  const ConstraintSet& cs,
                                  CurvatureModel model = CurvatureModel::gentle);

struct NumericalDesignOptions {
  double gradient_tol = 1e-8;
  int max_iterations = 300;
};

/// Descent on the exact average loss over the feasible affine set.  `init`
/// is projected onto the set first.
DesignResult solve_gdsoc_numerical(const Dims& dims, const std::vector<DesignSample>& samples,
                                   const Eigen::VectorXd& w2, const ConstraintSet& cs,
                                   const Eigen::MatrixXd& init,
                                   const NumericalDesignOptions& options = {});

/// Linearized optimal measurements xi*_0 + F (p_i - p_0) per design scenario.
std::vector<DesignSample> linearized_samples(const OptimalTrajectory& nominal,
                                             const Eigen::MatrixXd& F,
                                             const std::vector<int>& param_indices,
                                             const std::vector<Scenario>& design,
                                             const Eigen::VectorXd& nominal_params);

/// Local baseline: shortcut machinery on linearized data with J_uu frozen at
/// the nominal Hessian.
DesignResult solve_ldsoc_baseline(const Dims& dims, const OptimalTrajectory& nominal,
                                  const Eigen::MatrixXd& F, const std::vector<int>& param_indices,
                                  const std::vector<Scenario>& design,
                                  const Eigen::VectorXd& nominal_params, const Eigen::VectorXd& w2,
                                  const ConstraintSet& cs);

/// Static shortcut H^T = (Y~^T Y~)^-1 G (G^T (Y~^T Y~)^-1 G)^-1 J^{1/2} with
/// Y~ = [Y / sqrt(N); W].  Y has a leading column of ones, G a leading zero
/// row and `w` holds the noise standard deviations (0 first).
Eigen::MatrixXd static_shortcut(const Eigen::MatrixXd& Y, const Eigen::VectorXd& w,
                                const Eigen::MatrixXd& G, const Eigen::MatrixXd& Juu);

void write_design_json(std::ostream& os, const DesignResult& r, const std::string& config_hash,
                       std::uint64_t seed);

}  // namespace bsoc

#endif  // BSOC_CV_DESIGN_HPP
