#ifndef BSOC_PROCESS_MODEL_HPP
#define BSOC_PROCESS_MODEL_HPP

#include "bsoc/common.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bsoc {

/// Measurement channel classes; the noise model assigns one standard
/// deviation per class.
enum class OutputKind { concentration, volume, other };

/// A discrete-time batch process x(k+1) = f^k(x(k), u(k), d), y(k) = g^k(x(k)),
/// with total cost phi(x(L)) + sum_k psi^k(x(k), u(k)).
///
/// `params` is the full disturbable parameter vector of a scenario (initial
/// conditions included); `initial_state` maps it to x(0).
///
/// Every model evaluation comes in a real and a complex overload so that
/// first derivatives can be taken by complex-step differentiation.
class BatchProcess {
 public:
  virtual ~BatchProcess() = default;

  const Dims& dims() const { return dims_; }
  double stage_duration() const { return stage_duration_; }
  const std::vector<std::string>& parameter_names() const { return parameter_names_; }
  const Eigen::VectorXd& nominal_parameters() const { return nominal_parameters_; }
  const Eigen::VectorXd& input_lower() const { return input_lower_; }
  const Eigen::VectorXd& input_upper() const { return input_upper_; }
  const std::vector<OutputKind>& output_kinds() const { return output_kinds_; }

  /// Index of a named parameter; throws ConfigError for unknown names.
  int parameter_index(const std::string& name) const;

  /// Stacked lower/upper bounds over all L stages.
  Eigen::VectorXd stacked_lower() const;
  Eigen::VectorXd stacked_upper() const;

  virtual Eigen::VectorXd initial_state(const Eigen::VectorXd& params) const = 0;

  virtual Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& params, int k) const = 0;
  virtual Eigen::VectorXcd step(const Eigen::VectorXcd& x, const Eigen::VectorXcd& u,
                                const Eigen::VectorXd& params, int k) const = 0;

  virtual Eigen::VectorXd measure(const Eigen::VectorXd& x, int k) const = 0;
  virtual Eigen::VectorXcd measure(const Eigen::VectorXcd& x, int k) const = 0;

  virtual double stage_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& u, int k) const = 0;
  virtual Complex stage_cost(const Eigen::VectorXcd& x, const Eigen::VectorXcd& u, int k) const = 0;

  virtual double terminal_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& params) const = 0;
  virtual Complex terminal_cost(const Eigen::VectorXcd& x, const Eigen::VectorXd& params) const = 0;

 protected:
  BatchProcess(Dims dims, double stage_duration, std::vector<std::string> parameter_names,
               Eigen::VectorXd nominal_parameters, Eigen::VectorXd input_lower,
               Eigen::VectorXd input_upper, std::vector<OutputKind> output_kinds);

 private:
  Dims dims_;
  double stage_duration_;
  std::vector<std::string> parameter_names_;
  Eigen::VectorXd nominal_parameters_;
  Eigen::VectorXd input_lower_;
  Eigen::VectorXd input_upper_;
  std::vector<OutputKind> output_kinds_;
};

/// Adapts a model with templated member functions to the BatchProcess
/// interface.  `Model` must provide
///   describe() -> ModelDescription,
///   initial_state(params),
///   template <class S> step(x, u, params, k), measure(x, k),
///                      stage_cost(x, u, k), terminal_cost(x, params).
struct ModelDescription {
  Dims dims;
  double stage_duration = 1.0;
  std::vector<std::string> parameter_names;
  Eigen::VectorXd nominal_parameters;
  Eigen::VectorXd input_lower;
  Eigen::VectorXd input_upper;
  std::vector<OutputKind> output_kinds;
};

template <class Model>
class ModelProcess final : public BatchProcess {
 public:
  explicit ModelProcess(Model model) : ModelProcess(model.describe(), std::move(model)) {}

  const Model& model() const { return model_; }

  Eigen::VectorXd initial_state(const Eigen::VectorXd& params) const override {
    return model_.initial_state(params);
  }
  Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& params, int k) const override {
    return model_.template step<double>(x, u, params, k);
  }
  Eigen::VectorXcd step(const Eigen::VectorXcd& x, const Eigen::VectorXcd& u,
                        const Eigen::VectorXd& params, int k) const override {
    return model_.template step<Complex>(x, u, params, k);
  }
  Eigen::VectorXd measure(const Eigen::VectorXd& x, int k) const override {
    return model_.template measure<double>(x, k);
  }
  Eigen::VectorXcd measure(const Eigen::VectorXcd& x, int k) const override {
    return model_.template measure<Complex>(x, k);
  }
  double stage_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& u, int k) const override {
    return model_.template stage_cost<double>(x, u, k);
  }
  Complex stage_cost(const Eigen::VectorXcd& x, const Eigen::VectorXcd& u, int k) const override {
    return model_.template stage_cost<Complex>(x, u, k);
  }
  double terminal_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& params) const override {
    return model_.template terminal_cost<double>(x, params);
  }
  Complex terminal_cost(const Eigen::VectorXcd& x, const Eigen::VectorXd& params) const override {
    return model_.template terminal_cost<Complex>(x, params);
  }

 private:
  ModelProcess(const ModelDescription& d, Model model)
      : BatchProcess(d.dims, d.stage_duration, d.parameter_names, d.nominal_parameters,
                     d.input_lower, d.input_upper, d.output_kinds),
        model_(std::move(model)) {}

  Model model_;
};

// ---------------------------------------------------------------------------
// Rollout

/// States x(0..L) (column k is x(k)), true measurements y(0..L-1) and cost.
template <typename Scalar>
struct Rollout {
  MatrixX<Scalar> states;
  MatrixX<Scalar> outputs;
  Scalar cost{};

  /// [x(1); ...; x(L)]
  VectorX<Scalar> stacked_states() const {
    const auto n_x = states.rows();
    const auto L = states.cols() - 1;
    VectorX<Scalar> out(n_x * L);
    for (Eigen::Index k = 0; k < L; ++k) out.segment(k * n_x, n_x) = states.col(k + 1);
    return out;
  }

  /// [y(0); ...; y(L-1)]
  VectorX<Scalar> stacked_outputs() const {
    return Eigen::Map<const VectorX<Scalar>>(outputs.data(), outputs.size());
  }
};

template <typename Scalar>
Rollout<Scalar> rollout(const BatchProcess& process, const VectorX<Scalar>& u_stacked,
                        const Eigen::VectorXd& params) {
  const Dims& d = process.dims();
  if (u_stacked.size() != d.stacked_inputs())
    throw Error("rollout: stacked input has length " + std::to_string(u_stacked.size()) +
                ", expected " + std::to_string(d.stacked_inputs()));

  Rollout<Scalar> r;
  r.states.resize(d.n_x, d.L + 1);
  r.outputs.resize(d.n_y, d.L);
  r.states.col(0) = process.initial_state(params).template cast<Scalar>();
  Scalar cost(0.0);
  for (int k = 0; k < d.L; ++k) {
    const VectorX<Scalar> x = r.states.col(k);
    const VectorX<Scalar> u = u_stacked.segment(k * d.n_u, d.n_u);
    r.outputs.col(k) = process.measure(x, k);
    cost += process.stage_cost(x, u, k);
    r.states.col(k + 1) = process.step(x, u, params, k);
  }
  const VectorX<Scalar> x_final = r.states.col(d.L);
  r.cost = cost + process.terminal_cost(x_final, params);
  return r;
}

/// Augmented stacked extended measurements [1; y(0); u(0); ...; y(L-1); u(L-1)].
template <typename Scalar>
VectorX<Scalar> stack_extended(const Dims& d, const MatrixX<Scalar>& outputs,
                               const VectorX<Scalar>& u_stacked) {
  VectorX<Scalar> xi(d.xi_size());
  xi(0) = Scalar(1.0);
  for (int k = 0; k < d.L; ++k) {
    xi.segment(d.xi_index(k, 0), d.n_y) = outputs.col(k);
    xi.segment(d.xi_index(k, d.n_y), d.n_u) = u_stacked.segment(k * d.n_u, d.n_u);
  }
  return xi;
}

/// Total cost J(u, d) of a noise-free rollout.
double rollout_cost(const BatchProcess& process, const Eigen::VectorXd& u_stacked,
                    const Eigen::VectorXd& params);

// ---------------------------------------------------------------------------
// Fed-batch reactor: A + B -> C, 2B -> D, feed of B as the input.

struct ReactorParams {
  double c_A0 = 0.72;    // mol/l
  double c_B0 = 0.0614;  // mol/l
  double V0 = 1.0;       // l
  double k1 = 0.053;     // l/(mol min)
  double k2 = 0.128;     // l/(mol min)
  double c_B_in = 5.0;   // mol/l
  double t_f = 250.0;    // min

  void validate() const;

  /// Disturbable parameters in the order of FedBatchReactor::parameter_names().
  Eigen::VectorXd disturbable() const;
  /// Copy with the disturbable parameters replaced.
  ReactorParams with_disturbable(const Eigen::VectorXd& values) const;
};

/// (c_A, c_B, V)
template <typename Scalar>
using ReactorState = Eigen::Matrix<Scalar, 3, 1>;

enum ReactorChannel : int { kConcA = 0, kConcB = 1, kVolume = 2 };

/// Mass balances of the semi-batch reactor.  Kinetic parameters may be zero
/// (used to switch the reactions off in tests).
template <typename Scalar>
ReactorState<Scalar> reactor_rhs(const ReactorState<Scalar>& x, const Scalar& u,
                                 const ReactorParams& p) {
  const Scalar& cA = x(kConcA);
  const Scalar& cB = x(kConcB);
  const Scalar& V = x(kVolume);
  const Scalar r1 = p.k1 * cA * cB;
  const Scalar dilution = u / V;
  ReactorState<Scalar> dx;
  dx(kConcA) = -r1 - cA * dilution;
  dx(kConcB) = -r1 - 2.0 * p.k2 * cB * cB - (cB - p.c_B_in) * dilution;
  dx(kVolume) = u;
  return dx;
}

/// Product and byproduct amounts (mol) from the stoichiometric balances.
template <typename Scalar>
std::pair<Scalar, Scalar> reactor_amounts(const ReactorState<Scalar>& x, const ReactorParams& p) {
  const Scalar& cA = x(kConcA);
  const Scalar& cB = x(kConcB);
  const Scalar& V = x(kVolume);
  const Scalar n_C = p.c_A0 * p.V0 - cA * V;
  const Scalar n_D = ((cA + p.c_B_in - cB) * V - (p.c_A0 + p.c_B_in - p.c_B0) * p.V0) / 2.0;
  return {n_C, n_D};
}

/// (c_C, c_D) in mol/l.  Throws NumericalError for V <= 0.
std::pair<double, double> derived_concentrations(const ReactorState<double>& x,
                                                 const ReactorParams& p);

/// Process description loaded from config.
struct ReactorConfig {
  ReactorParams params;
  int L = 20;
  int n_sub = 10;
  double u_min = 0.0;
  double u_max = 0.005;

  void validate() const;
  double stage_duration() const { return params.t_f / L; }
};

/// Clamps concentrations in [-tol, 0) to zero; anything below -tol or a
/// nonpositive volume is a model violation.
inline constexpr double kNegativeConcentrationTol = 1e-9;

class FedBatchReactor {
 public:
  explicit FedBatchReactor(ReactorConfig config);

  static const std::vector<std::string>& parameter_names();

  const ReactorConfig& config() const { return config_; }
  ModelDescription describe() const;

  Eigen::VectorXd initial_state(const Eigen::VectorXd& params) const;

  /// One control interval of explicit RK4 with n_sub substeps and the input
  /// held constant.
  template <typename Scalar>
  VectorX<Scalar> step(const VectorX<Scalar>& x, const VectorX<Scalar>& u,
                       const Eigen::VectorXd& params, int k) const {
    const ReactorParams p = config_.params.with_disturbable(params);
    const double h = config_.stage_duration() / config_.n_sub;
    ReactorState<Scalar> s = x;
    const Scalar uk = u(0);
    for (int sub = 0; sub < config_.n_sub; ++sub) {
      const ReactorState<Scalar> k1 = reactor_rhs<Scalar>(s, uk, p);
      const ReactorState<Scalar> k2 = reactor_rhs<Scalar>(s + (h / 2) * k1, uk, p);
      const ReactorState<Scalar> k3 = reactor_rhs<Scalar>(s + (h / 2) * k2, uk, p);
      const ReactorState<Scalar> k4 = reactor_rhs<Scalar>(s + h * k3, uk, p);
      s += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      guard(s, k, sub);
    }
    return s;
  }

  template <typename Scalar>
  VectorX<Scalar> measure(const VectorX<Scalar>& x, int /*k*/) const {
    return x;
  }

  template <typename Scalar>
  Scalar stage_cost(const VectorX<Scalar>& /*x*/, const VectorX<Scalar>& /*u*/, int /*k*/) const {
    return Scalar(0.0);
  }

  /// [c_D(L) - c_C(L)] V(L), i.e. byproduct minus product amount.
  template <typename Scalar>
  Scalar terminal_cost(const VectorX<Scalar>& x, const Eigen::VectorXd& params) const {
    const ReactorParams p = config_.params.with_disturbable(params);
    const ReactorState<Scalar> s = x;
    const auto [n_C, n_D] = reactor_amounts<Scalar>(s, p);
    return n_D - n_C;
  }

 private:
  template <typename Scalar>
  static void guard(ReactorState<Scalar>& s, int stage, int substep) {
    for (int c : {kConcA, kConcB}) {
      const double v = real_part(s(c));
      if (v < -kNegativeConcentrationTol)
        throw NumericalError("negative concentration (" + std::to_string(v) + ") at stage " +
                             std::to_string(stage) + ", substep " + std::to_string(substep));
      if (v < 0.0) s(c) = Scalar(0.0);
    }
    if (!(real_part(s(kVolume)) > 0.0))
      throw NumericalError("nonpositive volume at stage " + std::to_string(stage) +
                           ", substep " + std::to_string(substep));
  }

  ReactorConfig config_;
};

using ReactorProcess = ModelProcess<FedBatchReactor>;

ReactorProcess make_reactor(const ReactorConfig& config = {});

}  // namespace bsoc

#endif  // BSOC_PROCESS_MODEL_HPP
