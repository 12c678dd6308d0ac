#ifndef BSOC_COMMON_HPP
#define BSOC_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace bsoc {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration / input files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computation could not produce a meaningful result (singular system,
/// model invariant violated during integration, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Dimensions of a batch process in stacked form.
///
/// The extended measurement at stage k is xi(k) = [y(k); u(k)]; the stacked,
/// augmented history is [1; xi(0); ...; xi(L-1)].
struct Dims {
  int n_x = 1;
  int n_u = 1;
  int n_y = 1;
  int L = 1;

  int stacked_inputs() const { return n_u * L; }
  int block_width() const { return n_y + n_u; }
  int xi_size() const { return block_width() * L + 1; }
  /// Position of channel j (0 <= j < n_y + n_u) of xi(k) inside the stacked vector.
  int xi_index(int k, int j) const { return 1 + k * block_width() + j; }

  void validate() const;
};

inline double real_part(double v) { return v; }
inline double real_part(const Complex& v) { return v.real(); }

}  // namespace bsoc

#endif  // BSOC_COMMON_HPP
