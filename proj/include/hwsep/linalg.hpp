#pragma once

// Dense complex/real matrix kernel shared by every other hwsep header.
// Matrices are Eigen dynamic matrices; DensityMatrix adds subsystem
// dimensions and validates the quantum-state invariants on construction.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hwsep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

/// Input violates a documented precondition (bad index, non-Hermitian, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a finite, converged result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tolerance {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
}  // namespace tolerance

inline std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

/// Largest entrywise modulus of M - M^dagger.
inline double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ContractError("hermitian_defect: matrix is not square");
  }
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<
      typename DerivedA::Scalar, typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b;
    }
  }
  return out;
}

/// Kronecker product of a list of square matrices, left to right.
inline ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

/// Singular values, descending. Throws NumericalError on non-finite input
/// or if the Jacobi sweep does not return Success.
template <typename Derived>
RealVector singular_values(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  if (!m.allFinite()) {
    throw NumericalError("singular_values: matrix has non-finite entries");
  }
  if (m.size() == 0) return RealVector{};
  Eigen::JacobiSVD<Plain> svd(m.eval());
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw NumericalError("singular_values: SVD did not converge");
  }
  return svd.singularValues();
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  return singular_values(m).sum();
}

inline void require_hermitian(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || hermitian_defect(m) > tolerance::hermitian) {
    throw ContractError(std::string(who) + ": matrix is not Hermitian");
  }
}

/// Real spectrum of a Hermitian matrix in ascending order.
inline RealVector eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m, "eig_hermitian");
  if (m.size() == 0) return RealVector{};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  return es.eigenvalues();
}

/// Eigenvalues and eigenvectors (columns) of a Hermitian matrix.
inline std::pair<RealVector, ComplexMatrix> eigh(const ComplexMatrix& m) {
  require_hermitian(m, "eigh");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigh: eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

/// A validated quantum state: Hermitian, unit trace, positive semidefinite,
/// with the product of `dims` equal to the matrix size.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, Dims dims)
      : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    validate();
  }

  /// Single-system state.
  explicit DensityMatrix(ComplexMatrix matrix)
      : DensityMatrix(matrix, Dims{static_cast<std::size_t>(matrix.rows())}) {}

  const ComplexMatrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  std::size_t parties() const { return dims_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }

  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  void validate() const {
    if (dims_.empty()) throw ContractError("DensityMatrix: empty dims");
    for (auto d : dims_) {
      if (d == 0) throw ContractError("DensityMatrix: zero subsystem dimension");
    }
    if (matrix_.rows() != matrix_.cols()) {
      throw ContractError("DensityMatrix: matrix is not square");
    }
    if (product(dims_) != static_cast<std::size_t>(matrix_.rows())) {
      throw ContractError("DensityMatrix: dims product does not match size");
    }
    if (!matrix_.allFinite()) {
      throw ContractError("DensityMatrix: non-finite entries");
    }
    if (hermitian_defect(matrix_) > tolerance::hermitian) {
      throw ContractError("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > tolerance::trace) {
      throw ContractError("DensityMatrix: trace is not 1");
    }
    ComplexMatrix sym = 0.5 * (matrix_ + matrix_.adjoint());
    if (eig_hermitian(sym)(0) < -tolerance::psd) {
      throw ContractError("DensityMatrix: matrix is not positive semidefinite");
    }
  }

  ComplexMatrix matrix_;
  Dims dims_;
};

namespace detail {

inline Dims strides_of(const Dims& dims) {
  Dims strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * dims[k];
  }
  return strides;
}

}  // namespace detail

/// Transpose on the tensor factor `party` (zero-based) only.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const Dims& dims,
                                       std::size_t party) {
  if (party >= dims.size()) {
    throw ContractError("partial_transpose: subsystem index out of range");
  }
  const auto total = product(dims);
  if (static_cast<std::size_t>(m.rows()) != total || m.cols() != m.rows()) {
    throw ContractError("partial_transpose: dims do not match matrix");
  }
  const auto strides = detail::strides_of(dims);
  const auto stride = strides[party];
  const auto d = dims[party];
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t row = 0; row < total; ++row) {
    const auto ri = (row / stride) % d;
    for (std::size_t col = 0; col < total; ++col) {
      const auto ci = (col / stride) % d;
      // swap the chosen factor's row and column digits
      const auto new_row = row - ri * stride + ci * stride;
      const auto new_col = col - ci * stride + ri * stride;
      out(static_cast<Eigen::Index>(new_row), static_cast<Eigen::Index>(new_col)) =
          m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t party) {
  return partial_transpose(rho.matrix(), rho.dims(), party);
}

/// Reduced state on subsystem `keep` (zero-based); all other factors traced out.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
  const auto& dims = rho.dims();
  if (keep >= dims.size()) {
    throw ContractError("partial_trace: subsystem index out of range");
  }
  const auto total = product(dims);
  const auto strides = detail::strides_of(dims);
  const auto stride = strides[keep];
  const auto d = dims[keep];
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(d));
  const auto& m = rho.matrix();
  for (std::size_t row = 0; row < total; ++row) {
    const auto ri = (row / stride) % d;
    const auto rest = row - ri * stride;
    for (std::size_t cj = 0; cj < d; ++cj) {
      const auto col = rest + cj * stride;
      out(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(cj)) +=
          m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
  }
  return DensityMatrix(std::move(out), Dims{d});
}

}  // namespace hwsep
