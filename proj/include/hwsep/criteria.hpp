#pragma once

// Trace-norm separability criteria built on HW Bloch coefficients.
//
// Each check returns a CriterionVerdict. A criterion is violated, and the
// state certified entangled, when value > bound + violation_epsilon;
// otherwise the result is inconclusive.

#include "hwsep/bloch.hpp"
#include "hwsep/linalg.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace hwsep {

inline constexpr double violation_epsilon = 1e-9;

enum class Verdict { entangled, inconclusive };

inline std::string_view to_string(Verdict v) {
  return v == Verdict::entangled ? "ENTANGLED" : "INCONCLUSIVE";
}

struct CriterionParams {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::vector<double> alphas;
  std::optional<std::size_t> m;
  Normalization normalization = Normalization::standard;
  std::vector<std::size_t> partition;  // zero-based parties on the row side
};

struct CriterionVerdict {
  std::string criterion;
  double value = 0.0;
  double bound = 0.0;
  Verdict verdict = Verdict::inconclusive;
  CriterionParams params;

  bool entangled() const { return verdict == Verdict::entangled; }
  /// value - bound; positive means the inequality is violated.
  double excess() const { return value - bound; }
};

inline CriterionVerdict make_verdict(std::string name, double value, double bound,
                                     CriterionParams params) {
  const auto v = value > bound + violation_epsilon ? Verdict::entangled
                                                   : Verdict::inconclusive;
  return {std::move(name), value, bound, v, std::move(params)};
}

/// Block matrix [[a b E_mm, b omega_m(s)^t], [a omega_m(r), T]].
struct SMatrix {
  RealMatrix matrix;
  std::size_t m = 0;

  auto corner() const { return matrix.topLeftCorner(m, m); }
  auto s_block() const { return matrix.topRightCorner(m, matrix.cols() - m); }
  auto r_block() const { return matrix.bottomLeftCorner(matrix.rows() - m, m); }
  auto t_block() const {
    return matrix.bottomRightCorner(matrix.rows() - m, matrix.cols() - m);
  }
};

inline SMatrix build_S(const BlochDecomposition& dec, double alpha, double beta,
                       std::size_t m) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ContractError("build_S: alpha and beta must be finite and nonnegative");
  }
  const auto rows = static_cast<Eigen::Index>(m) + dec.T.rows();
  const auto cols = static_cast<Eigen::Index>(m) + dec.T.cols();
  const auto mm = static_cast<Eigen::Index>(m);
  SMatrix out{RealMatrix(rows, cols), m};
  out.matrix.topLeftCorner(mm, mm).setConstant(alpha * beta);
  for (Eigen::Index i = 0; i < mm; ++i) {
    out.matrix.block(i, mm, 1, dec.T.cols()) = beta * dec.s.coeffs.transpose();
    out.matrix.block(mm, i, dec.T.rows(), 1) = alpha * dec.r.coeffs;
  }
  out.matrix.bottomRightCorner(dec.T.rows(), dec.T.cols()) = dec.T;
  return out;
}

/// Upper bound of ||S||_tr over separable states.
/// standard: sqrt((m b^2 + d1 - 1)(m a^2 + d2 - 1))
/// rescaled: (1/2) sqrt((2 m b^2 + d1^2 - d1)(2 m a^2 + d2^2 - d2))
inline double theorem1_bound(std::size_t d1, std::size_t d2, double alpha, double beta,
                             std::size_t m, Normalization norm = Normalization::standard) {
  const double a = static_cast<double>(d1);
  const double b = static_cast<double>(d2);
  const double mm = static_cast<double>(m);
  if (norm == Normalization::standard) {
    return std::sqrt((mm * beta * beta + a - 1.0) * (mm * alpha * alpha + b - 1.0));
  }
  return 0.5 * std::sqrt((2.0 * mm * beta * beta + a * a - a) *
                         (2.0 * mm * alpha * alpha + b * b - b));
}

inline CriterionVerdict check_S_criterion(std::string name, const DensityMatrix& rho,
                                          double alpha, double beta, std::size_t m,
                                          Normalization norm) {
  const auto dec = decompose_bipartite(rho, norm);
  const double value = trace_norm(build_S(dec, alpha, beta, m).matrix);
  const double bound = theorem1_bound(dec.d1, dec.d2, alpha, beta, m, norm);
  CriterionParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.m = m;
  p.normalization = norm;
  return make_verdict(std::move(name), value, bound, std::move(p));
}

/// HW-basis trace-norm criterion.
inline CriterionVerdict check_theorem1(const DensityMatrix& rho, double alpha,
                                       double beta, std::size_t m,
                                       Normalization norm = Normalization::standard) {
  return check_S_criterion("hw", rho, alpha, beta, m, norm);
}

/// Parameterised Bloch criterion with Tr = 2 delta normalization.
inline CriterionVerdict check_isc(const DensityMatrix& rho, double alpha, double beta,
                                  std::size_t m) {
  if (m == 0) throw ContractError("check_isc: m must be >= 1 (use check_vb for m = 0)");
  return check_S_criterion("isc", rho, alpha, beta, m, Normalization::rescaled);
}

/// ||T'||_tr <= sqrt(d1 d2 (d1-1)(d2-1)) / 2.
inline CriterionVerdict check_vb(const DensityMatrix& rho) {
  const auto dec = decompose_bipartite(rho, Normalization::rescaled);
  const double value = trace_norm(dec.T);
  const double bound = theorem1_bound(dec.d1, dec.d2, 0.0, 0.0, 0, Normalization::rescaled);
  CriterionParams p;
  p.m = 0;
  p.normalization = Normalization::rescaled;
  return make_verdict("vb", value, bound, std::move(p));
}

inline CriterionVerdict check_lb(const DensityMatrix& rho) {
  auto v = check_isc(rho, 1.0, 1.0, 1);
  v.criterion = "lb";
  return v;
}

/// value = -(smallest eigenvalue of the partial transpose), bound = 0.
inline CriterionVerdict check_ppt(const DensityMatrix& rho, std::size_t party = 1) {
  if (rho.parties() != 2) throw ContractError("check_ppt: state is not bipartite");
  const ComplexMatrix pt = partial_transpose(rho, party);
  const double min_eig = eig_hermitian(0.5 * (pt + pt.adjoint()))(0);
  CriterionParams p;
  p.partition = {party};
  return make_verdict("ppt", -min_eig, 0.0, std::move(p));
}

/// A|complement flattening. Rows run over the axes in `row_parties`
/// (ascending, row-major), columns over the remaining axes.
inline RealMatrix matricize(const CoefficientTensor& w,
                            const std::vector<std::size_t>& row_parties) {
  const auto n = w.parties();
  std::vector<bool> in_rows(n, false);
  for (auto p : row_parties) {
    if (p >= n) throw ContractError("matricize: party index out of range");
    in_rows[p] = true;
  }
  std::vector<std::size_t> rows_axes;
  std::vector<std::size_t> cols_axes;
  for (std::size_t k = 0; k < n; ++k) (in_rows[k] ? rows_axes : cols_axes).push_back(k);
  if (rows_axes.empty() || cols_axes.empty()) {
    throw ContractError("matricize: subset must be nonempty and proper");
  }
  std::size_t nrows = 1;
  for (auto k : rows_axes) nrows *= w.extents[k];
  std::size_t ncols = 1;
  for (auto k : cols_axes) ncols *= w.extents[k];

  RealMatrix out(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(ncols));
  Dims idx(n, 0);
  for (std::size_t flat = 0; flat < w.data.size(); ++flat) {
    std::size_t row = 0;
    for (auto k : rows_axes) row = row * w.extents[k] + idx[k];
    std::size_t col = 0;
    for (auto k : cols_axes) col = col * w.extents[k] + idx[k];
    out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = w.data[flat];
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < w.extents[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

/// The 2^(N-1) - 1 distinct bipartitions, each given by the side holding party 0.
inline std::vector<std::vector<std::size_t>> bipartitions(std::size_t parties) {
  if (parties < 2) throw ContractError("bipartitions: need at least two parties");
  std::vector<std::vector<std::size_t>> out;
  const std::size_t full = (std::size_t{1} << parties) - 1;
  for (std::size_t mask = 1; mask < full; mask += 2) {
    std::vector<std::size_t> side;
    for (std::size_t k = 0; k < parties; ++k) {
      if (mask & (std::size_t{1} << k)) side.push_back(k);
    }
    out.push_back(std::move(side));
  }
  return out;
}

/// prod_k sqrt(m alpha_k^2 + d_k - 1).
inline double theorem2_bound(const Dims& dims, const std::vector<double>& alphas,
                             std::size_t m) {
  double bound = 1.0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    bound *= std::sqrt(static_cast<double>(m) * alphas[k] * alphas[k] +
                       static_cast<double>(dims[k]) - 1.0);
  }
  return bound;
}

/// One verdict per requested bipartition (all of them when `partitions` is
/// empty). The state is not fully separable if any verdict is ENTANGLED.
inline std::vector<CriterionVerdict> check_theorem2(
    const DensityMatrix& rho, const std::vector<double>& alphas, std::size_t m,
    std::vector<std::vector<std::size_t>> partitions = {}) {
  if (rho.parties() < 2) throw ContractError("check_theorem2: need at least two parties");
  if (m == 0) throw ContractError("check_theorem2: m must be >= 1");
  if (partitions.empty()) partitions = bipartitions(rho.parties());
  const auto w = build_W(rho, alphas, m, Normalization::standard);
  const double bound = theorem2_bound(rho.dims(), alphas, m);
  std::vector<CriterionVerdict> out;
  out.reserve(partitions.size());
  for (auto& side : partitions) {
    const double value = trace_norm(matricize(w, side));
    CriterionParams p;
    p.alphas = alphas;
    p.m = m;
    p.partition = std::move(side);
    out.push_back(make_verdict("thm2", value, bound, std::move(p)));
  }
  return out;
}

inline bool any_entangled(const std::vector<CriterionVerdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (v.entangled()) return true;
  }
  return false;
}

}  // namespace hwsep
