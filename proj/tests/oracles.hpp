#pragma once

// Test-only reference computations. Nothing here calls into the hwsep
// numerical kernels so the checks stay independent of the code under test.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

/// (A (x) B)[i rB + k, j cB + l] = A[i,j] B[k,l]
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline CMat kron_all(const std::vector<CMat>& ops) {
  CMat out = CMat::Identity(1, 1);
  for (const auto& o : ops) out = kron(out, o);
  return out;
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(RMat a) {
  const auto n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalues of a complex Hermitian matrix through its real 2n x 2n
/// embedding [[Re, -Im], [Im, Re]] (each eigenvalue appears twice).
inline std::vector<double> hermitian_eigenvalues(const CMat& h) {
  const auto n = h.rows();
  RMat big(2 * n, 2 * n);
  big << h.real(), -h.imag(), h.imag(), h.real();
  auto ev = jacobi_eigenvalues(big);
  std::vector<double> out;
  for (std::size_t i = 0; i < ev.size(); i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

/// Trace norm from the symmetric embedding [[0, M], [M^t, 0]], whose
/// spectrum is {+-sigma_i} padded with zeros. Avoids squaring M.
inline double trace_norm(const RMat& m) {
  const auto r = m.rows();
  const auto c = m.cols();
  RMat big = RMat::Zero(r + c, r + c);
  big.topRightCorner(r, c) = m;
  big.bottomLeftCorner(c, r) = m.transpose();
  double sum = 0.0;
  for (double ev : jacobi_eigenvalues(big)) sum += std::abs(ev);
  return 0.5 * sum;
}

/// Tr(rho O_1 (x) ... (x) O_N) by explicit Kronecker product.
inline Complex expectation(const CMat& rho, const std::vector<CMat>& ops) {
  return (rho * kron_all(ops)).trace();
}

/// The eight d = 3 observables exactly as printed, keyed by (l, m).
inline std::map<std::pair<int, int>, CMat> printed_d3_observables() {
  const double s3 = std::sqrt(3.0);
  const double r2 = std::sqrt(2.0);
  auto e = [](double t) { return std::polar(1.0, std::numbers::pi * t); };
  const Complex i1(1, 1);
  const Complex i2(1, -1);
  std::map<std::pair<int, int>, CMat> q;
  CMat m(3, 3);
  m << 0, i1, i2, i2, 0, i1, i1, i2, 0;
  q[{0, 1}] = 0.5 * m;
  m << 0, i2, i1, i1, 0, i2, i2, i1, 0;
  q[{0, 2}] = 0.5 * m;
  m.setZero();
  m.diagonal() << 2, -1 - s3, s3 - 1;
  q[{1, 0}] = 0.5 * m;
  m << 0, e(0.25), e(5.0 / 12), e(-0.25), 0, e(11.0 / 12), e(-5.0 / 12), e(-11.0 / 12), 0;
  q[{1, 1}] = m / r2;
  m << 0, e(-11.0 / 12), e(0.25), e(11.0 / 12), 0, e(5.0 / 12), e(-0.25), e(-5.0 / 12), 0;
  q[{1, 2}] = m / r2;
  m.setZero();
  m.diagonal() << 2, s3 - 1, -1 - s3;
  q[{2, 0}] = 0.5 * m;
  m << 0, e(0.25), e(-11.0 / 12), e(-0.25), 0, e(-5.0 / 12), e(11.0 / 12), e(5.0 / 12), 0;
  q[{2, 1}] = m / r2;
  m << 0, e(5.0 / 12), e(0.25), e(-5.0 / 12), 0, e(-11.0 / 12), e(-0.25), e(11.0 / 12), 0;
  q[{2, 2}] = m / r2;
  return q;
}

}  // namespace oracle
