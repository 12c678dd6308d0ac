#ifndef BSOC_LINALG_HPP
#define BSOC_LINALG_HPP

#include "bsoc/common.hpp"

#include <Eigen/Eigenvalues>

namespace bsoc {

/// Column-major stacking of a matrix into a vector.
template <typename Derived>
VectorX<typename Derived::Scalar> vec(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> tmp = m;
  return Eigen::Map<const VectorX<Scalar>>(tmp.data(), tmp.size());
}

/// Inverse of vec().
template <typename Derived>
MatrixX<typename Derived::Scalar> unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index rows,
                                        Eigen::Index cols) {
  using Scalar = typename Derived::Scalar;
  if (v.cols() != 1 || v.rows() != rows * cols)
    throw Error("unvec: vector of length " + std::to_string(v.size()) + " cannot form a " +
                std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  const VectorX<Scalar> tmp = v;
  return Eigen::Map<const MatrixX<Scalar>>(tmp.data(), rows, cols);
}

/// Kronecker product A (x) B.
template <typename DA, typename DB>
MatrixX<typename DA::Scalar> kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  MatrixX<typename DA::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Eigenvalues of a symmetric matrix floored at rel_floor * max|lambda|
/// (at least the absolute floor `abs_floor`).
struct RepairedEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int floored = 0;
};

inline RepairedEigen repaired_eigen(const Eigen::MatrixXd& a, double rel_floor = 1e-10) {
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigendecomposition failed");
  RepairedEigen r;
  r.vectors = es.eigenvectors();
  r.values = es.eigenvalues();
  const double scale = r.values.cwiseAbs().maxCoeff();
  const double floor = rel_floor * scale;
  for (Eigen::Index i = 0; i < r.values.size(); ++i) {
    if (r.values(i) < floor) {
      r.values(i) = floor;
      ++r.floored;
    }
  }
  return r;
}

/// Symmetric square root of a (repaired) positive semidefinite matrix.
inline Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a, double rel_floor = 1e-10) {
  if (a.size() == 0) return a;
  if (a.cwiseAbs().maxCoeff() == 0.0) return Eigen::MatrixXd::Zero(a.rows(), a.cols());
  const RepairedEigen r = repaired_eigen(a, rel_floor);
  return r.vectors * r.values.cwiseSqrt().asDiagonal() * r.vectors.transpose();
}

/// Inverse symmetric square root; requires a nonzero matrix.
inline Eigen::MatrixXd psd_inv_sqrt(const Eigen::MatrixXd& a, double rel_floor = 1e-10) {
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0)
    throw NumericalError("inverse square root of a zero matrix");
  const RepairedEigen r = repaired_eigen(a, rel_floor);
  return r.vectors * r.values.cwiseSqrt().cwiseInverse().asDiagonal() * r.vectors.transpose();
}

/// ||A - A^T||_F / ||A||_F (0 for the zero matrix).
inline double symmetry_residual(const Eigen::MatrixXd& a) {
  const double n = a.norm();
  return n == 0.0 ? 0.0 : (a - a.transpose()).norm() / n;
}

}  // namespace bsoc

#endif  // BSOC_LINALG_HPP
