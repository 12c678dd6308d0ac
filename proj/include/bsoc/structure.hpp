#ifndef BSOC_STRUCTURE_HPP
#define BSOC_STRUCTURE_HPP

#include "bsoc/common.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bsoc {

/// Patterns for the stacked combination matrix.
///   lbt           H_j(k) = 0 for j > k
///   varying_diag  H_j(k) = 0 for j != k
///   const_diag    varying_diag with H_k(k) and the setpoints equal for all k
enum class StructureTag { lbt, varying_diag, const_diag };

std::string to_string(StructureTag tag);
StructureTag structure_from_string(const std::string& s);
/// 1, 2, 3
int structure_number(StructureTag tag);

/// One column of Q: either e_m (value fixed to b) or e_m1 - e_m2 (b = 0).
struct ConstraintColumn {
  enum class Kind { specified, repetitive };
  Kind kind = Kind::specified;
  Eigen::Index m1 = 0;
  Eigen::Index m2 = -1;
};

/// Affine feasible set vec(M) = base + Z z.  Z has one column per free
/// group of tied entries, with ones on the group's members; the columns have
/// disjoint support.
struct AffineParameterization {
  Eigen::VectorXd base;
  std::vector<std::vector<Eigen::Index>> groups;

  Eigen::Index free_count() const { return static_cast<Eigen::Index>(groups.size()); }
  Eigen::VectorXd expand(const Eigen::VectorXd& z) const;
  /// Z^T g
  Eigen::VectorXd reduce(const Eigen::VectorXd& g) const;
  /// Least-squares coordinates of a feasible point (group means).
  Eigen::VectorXd coordinates(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd basis() const;
};

/// Q^T vec(M) = b for an l x w matrix M, with columns e_m and e_m1 - e_m2.
/// Indices are column-major: entry (a, c) has m = c * l + a.
class ConstraintSet {
 public:
  ConstraintSet(Eigen::Index rows, Eigen::Index cols);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  Eigen::Index dim() const { return rows_ * cols_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(columns_.size()); }
  Eigen::Index index(Eigen::Index a, Eigen::Index c) const { return c * rows_ + a; }

  void add_specified(Eigen::Index a, Eigen::Index c, double value);
  void add_repetitive(Eigen::Index a1, Eigen::Index c1, Eigen::Index a2, Eigen::Index c2);
  void add_specified_index(Eigen::Index m, double value);
  void add_repetitive_index(Eigen::Index m1, Eigen::Index m2);
  void append(const ConstraintSet& other);

  const std::vector<ConstraintColumn>& columns() const { return columns_; }
  const Eigen::VectorXd& b() const { return b_; }

  Eigen::MatrixXd dense_Q() const;
  /// Q^T v
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& v) const;
  /// Q y
  Eigen::VectorXd apply(const Eigen::VectorXd& y) const;
  /// ||Q^T v - b||_inf
  double residual(const Eigen::VectorXd& v) const;
  bool satisfied_by(const Eigen::MatrixXd& m, double tol = 0.0) const;

  /// rank(Q), computed from the tie graph.
  Eigen::Index rank() const;
  /// Throws NumericalError when b is contradictory.
  AffineParameterization parameterize() const;

  /// kind,m1,m2,b (0-based indices, m2 = -1 for specified entries).
  void write_csv(std::ostream& os) const;

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<ConstraintColumn> columns_;
  Eigen::VectorXd b_;
};

/// Stacked CV combination matrix, n_u L x ((n_y + n_u) L + 1).  Column 0
/// holds -c_s so that the closed-loop condition is H xi = 0.
struct CombinationMatrix {
  Dims dims;
  StructureTag tag = StructureTag::lbt;
  Eigen::MatrixXd H;

  CombinationMatrix() = default;
  CombinationMatrix(const Dims& d, StructureTag t);
  CombinationMatrix(const Dims& d, StructureTag t, Eigen::MatrixXd h);

  /// -c_s(k)
  auto setpoint(int k) { return H.block(k * dims.n_u, 0, dims.n_u, 1); }
  auto setpoint(int k) const { return H.block(k * dims.n_u, 0, dims.n_u, 1); }
  /// H_j(k), n_u x (n_y + n_u)
  auto block(int k, int j) {
    return H.block(k * dims.n_u, dims.xi_index(j, 0), dims.n_u, dims.block_width());
  }
  auto block(int k, int j) const {
    return H.block(k * dims.n_u, dims.xi_index(j, 0), dims.n_u, dims.block_width());
  }
  auto Hy(int k) const { return H.block(k * dims.n_u, dims.xi_index(k, 0), dims.n_u, dims.n_y); }
  auto Hu(int k) const {
    return H.block(k * dims.n_u, dims.xi_index(k, dims.n_y), dims.n_u, dims.n_u);
  }
  /// [-c_s(k) H_0(k) ... H_{k-1}(k)]
  auto history(int k) const { return H.block(k * dims.n_u, 0, dims.n_u, dims.xi_index(k, 0)); }
  auto row(int k) const { return H.middleRows(k * dims.n_u, dims.n_u); }
};

/// Constraint set for a structure on the stacked matrix.  With fix_Huk every
/// H_{u,k}(k) is pinned to -I.
ConstraintSet compile_structure(StructureTag tag, const Dims& dims, bool fix_Huk);

/// Direct check of the structure definition, independent of the encoding.
bool satisfies_structure(const Eigen::MatrixXd& H, StructureTag tag, const Dims& dims,
                         bool fix_Huk, double tol = 0.0);

struct FeedbackBlocks {
  Eigen::MatrixXd history;  // n_u x xi_index(k, 0)
  Eigen::MatrixXd Hy;
  Eigen::MatrixXd Hu;
  double Hu_condition = 0.0;
};

/// Block partition used to recover u(k); throws NumericalError when
/// H_{u,k}(k) is singular.
FeedbackBlocks feedback_blocks(const CombinationMatrix& cm, int k);

}  // namespace bsoc

#endif  // BSOC_STRUCTURE_HPP
