#pragma once

// Bloch coefficients of density matrices in the HW observable basis.
//
// Everything here is derived from one quantity, the full coefficient tensor
//   c[a_1, ..., a_N] = Tr(rho O_{a_1} (x) ... (x) O_{a_N}),
// where per party O_0 = I and O_{1+j} is the j-th standard HW observable.
// Because {I, Q(l,m)} is orthogonal with Tr(O_a O_b) = d delta_ab,
//   rho = (1 / prod d_k) sum_a c[a] O_{a_1} (x) ... (x) O_{a_N}.
//
// Rescaled coefficients are the expansion coefficients in the basis
// Q' = sqrt(2/d) Q, i.e. rho = (1/d)(I + sum r' Q'), which gives
// r' = sqrt(d/2) r per party.

#include "hwsep/hw_basis.hpp"
#include "hwsep/linalg.hpp"

#include <cmath>
#include <vector>

namespace hwsep {

struct BlochVector {
  std::size_t dim = 0;
  Normalization normalization = Normalization::standard;
  RealVector coeffs;

  double norm() const { return coeffs.norm(); }
};

/// (r, s, T) of a bipartite state. T rows follow r's ordering, columns s's.
struct BlochDecomposition {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  Normalization normalization = Normalization::standard;
  BlochVector r;
  BlochVector s;
  RealMatrix T;
};

/// N-way real tensor, row-major, with axis k of extent m + d_k^2 - 1.
/// Slots [0, m) of each axis are identity slots (alpha_k I); slot m + j is the
/// j-th HW observable.
struct CoefficientTensor {
  Dims dims;
  std::vector<double> alphas;
  std::size_t m = 0;
  Normalization normalization = Normalization::standard;
  Dims extents;
  std::vector<double> data;

  std::size_t parties() const { return dims.size(); }

  std::size_t flat_index(const Dims& idx) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < extents.size(); ++k) {
      flat = flat * extents[k] + idx[k];
    }
    return flat;
  }
  double at(const Dims& idx) const { return data[flat_index(idx)]; }
};

namespace detail {

/// Operator list for one party: identity followed by the standard basis.
inline std::vector<ComplexMatrix> party_operators(std::size_t d) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(d * d);
  ops.push_back(ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                        static_cast<Eigen::Index>(d)));
  auto b = basis(d, Normalization::standard);
  for (auto& q : b.elements) ops.push_back(std::move(q));
  return ops;
}

/// Reorders rho[I, J] into a tensor over (i_1 j_1, i_2 j_2, ..., i_N j_N).
inline std::vector<Complex> to_pair_layout(const ComplexMatrix& rho,
                                           const Dims& dims) {
  const auto total = product(dims);
  const auto strides = strides_of(dims);
  std::vector<Complex> out(total * total);
  for (std::size_t row = 0; row < total; ++row) {
    for (std::size_t col = 0; col < total; ++col) {
      std::size_t pos = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        const auto i = (row / strides[k]) % dims[k];
        const auto j = (col / strides[k]) % dims[k];
        pos = pos * dims[k] * dims[k] + i * dims[k] + j;
      }
      out[pos] = rho(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
  }
  return out;
}

inline ComplexMatrix from_pair_layout(const std::vector<Complex>& pairs,
                                      const Dims& dims) {
  const auto total = product(dims);
  const auto strides = strides_of(dims);
  ComplexMatrix out(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t row = 0; row < total; ++row) {
    for (std::size_t col = 0; col < total; ++col) {
      std::size_t pos = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        const auto i = (row / strides[k]) % dims[k];
        const auto j = (col / strides[k]) % dims[k];
        pos = pos * dims[k] * dims[k] + i * dims[k] + j;
      }
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = pairs[pos];
    }
  }
  return out;
}

/// Applies, along axis k of extent d_k^2, the linear map given by `map`
/// (rows: output slot, cols: input slot).
inline std::vector<Complex> contract_axis(const std::vector<Complex>& in,
                                          const Dims& dims, std::size_t k,
                                          const ComplexMatrix& map) {
  std::size_t pre = 1;
  for (std::size_t p = 0; p < k; ++p) pre *= dims[p] * dims[p];
  std::size_t post = 1;
  for (std::size_t p = k + 1; p < dims.size(); ++p) post *= dims[p] * dims[p];
  const auto ext = dims[k] * dims[k];
  std::vector<Complex> out(in.size(), Complex{});
  for (std::size_t p = 0; p < pre; ++p) {
    for (std::size_t a = 0; a < ext; ++a) {
      for (std::size_t b = 0; b < ext; ++b) {
        const Complex w = map(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (w == Complex{}) continue;
        const auto* src = &in[(p * ext + b) * post];
        auto* dst = &out[(p * ext + a) * post];
        for (std::size_t q = 0; q < post; ++q) dst[q] += w * src[q];
      }
    }
  }
  return out;
}

}  // namespace detail

/// Full standard coefficient tensor c (extent d_k^2 per axis, slot 0 = I).
inline std::vector<double> full_coefficients(const ComplexMatrix& rho,
                                             const Dims& dims) {
  auto t = detail::to_pair_layout(rho, dims);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto d = dims[k];
    const auto ops = detail::party_operators(d);
    // Tr(rho_k O_a) = sum_ij rho_k[i,j] O_a[j,i]
    ComplexMatrix map(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
    for (std::size_t a = 0; a < d * d; ++a) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          map(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i * d + j)) =
              ops[a](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        }
      }
    }
    t = detail::contract_axis(t, dims, k, map);
  }
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].real();
  return out;
}

inline std::vector<double> full_coefficients(const DensityMatrix& rho) {
  return full_coefficients(rho.matrix(), rho.dims());
}

/// Inverse of full_coefficients: sum_a c[a] (x) O_a / prod d_k.
inline ComplexMatrix matrix_from_coefficients(const std::vector<double>& c,
                                              const Dims& dims) {
  std::vector<Complex> t(c.begin(), c.end());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto d = dims[k];
    const auto ops = detail::party_operators(d);
    ComplexMatrix map(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t a = 0; a < d * d; ++a) {
          map(static_cast<Eigen::Index>(i * d + j), static_cast<Eigen::Index>(a)) =
              ops[a](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) /
              static_cast<double>(d);
        }
      }
    }
    t = detail::contract_axis(t, dims, k, map);
  }
  return detail::from_pair_layout(t, dims);
}

/// Per-party factor turning standard coefficients into `norm` coefficients.
inline double coefficient_scale(std::size_t d, Normalization norm) {
  return norm == Normalization::standard ? 1.0 : std::sqrt(static_cast<double>(d) / 2.0);
}

inline BlochVector decompose_single(const DensityMatrix& rho,
                                    Normalization norm = Normalization::standard) {
  if (rho.parties() != 1) {
    throw ContractError("decompose_single: state has more than one subsystem");
  }
  const auto d = rho.dims()[0];
  const auto c = full_coefficients(rho);
  BlochVector out{d, norm, RealVector(static_cast<Eigen::Index>(d * d - 1))};
  const double scale = coefficient_scale(d, norm);
  for (std::size_t j = 1; j < d * d; ++j) {
    out.coeffs(static_cast<Eigen::Index>(j - 1)) = scale * c[j];
  }
  return out;
}

inline DensityMatrix reconstruct_single(const BlochVector& r) {
  const auto d = r.dim;
  if (static_cast<std::size_t>(r.coeffs.size()) != d * d - 1) {
    throw ContractError("reconstruct_single: coefficient count does not match dim");
  }
  std::vector<double> c(d * d, 1.0);
  const double scale = coefficient_scale(d, r.normalization);
  for (std::size_t j = 1; j < d * d; ++j) {
    c[j] = r.coeffs(static_cast<Eigen::Index>(j - 1)) / scale;
  }
  return DensityMatrix(matrix_from_coefficients(c, {d}), {d});
}

/// Tr(rho^2) = (1/d)(1 + |r|^2), standard normalization only.
inline double purity_from_bloch(const BlochVector& r) {
  if (r.normalization != Normalization::standard) {
    throw ContractError("purity_from_bloch: requires standard normalization");
  }
  const double d = static_cast<double>(r.dim);
  return (1.0 + r.coeffs.squaredNorm()) / d;
}

inline BlochDecomposition decompose_bipartite(
    const DensityMatrix& rho, Normalization norm = Normalization::standard) {
  if (rho.parties() != 2) {
    throw ContractError("decompose_bipartite: state is not bipartite");
  }
  const auto d1 = rho.dims()[0];
  const auto d2 = rho.dims()[1];
  const auto n1 = d1 * d1;
  const auto n2 = d2 * d2;
  const auto c = full_coefficients(rho);
  const double k1 = coefficient_scale(d1, norm);
  const double k2 = coefficient_scale(d2, norm);

  BlochDecomposition out;
  out.d1 = d1;
  out.d2 = d2;
  out.normalization = norm;
  out.r = {d1, norm, RealVector(static_cast<Eigen::Index>(n1 - 1))};
  out.s = {d2, norm, RealVector(static_cast<Eigen::Index>(n2 - 1))};
  out.T.resize(static_cast<Eigen::Index>(n1 - 1), static_cast<Eigen::Index>(n2 - 1));
  for (std::size_t i = 1; i < n1; ++i) {
    out.r.coeffs(static_cast<Eigen::Index>(i - 1)) = k1 * c[i * n2];
  }
  for (std::size_t j = 1; j < n2; ++j) {
    out.s.coeffs(static_cast<Eigen::Index>(j - 1)) = k2 * c[j];
  }
  for (std::size_t i = 1; i < n1; ++i) {
    for (std::size_t j = 1; j < n2; ++j) {
      out.T(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) =
          k1 * k2 * c[i * n2 + j];
    }
  }
  return out;
}

inline DensityMatrix reconstruct_bipartite(const BlochDecomposition& dec) {
  const auto d1 = dec.d1;
  const auto d2 = dec.d2;
  const auto n1 = d1 * d1;
  const auto n2 = d2 * d2;
  if (dec.r.dim != d1 || dec.s.dim != d2 ||
      static_cast<std::size_t>(dec.r.coeffs.size()) != n1 - 1 ||
      static_cast<std::size_t>(dec.s.coeffs.size()) != n2 - 1 ||
      static_cast<std::size_t>(dec.T.rows()) != n1 - 1 ||
      static_cast<std::size_t>(dec.T.cols()) != n2 - 1) {
    throw ContractError("reconstruct_bipartite: field dimensions are inconsistent");
  }
  const double k1 = coefficient_scale(d1, dec.normalization);
  const double k2 = coefficient_scale(d2, dec.normalization);
  std::vector<double> c(n1 * n2);
  c[0] = 1.0;
  for (std::size_t i = 1; i < n1; ++i) c[i * n2] = dec.r.coeffs(static_cast<Eigen::Index>(i - 1)) / k1;
  for (std::size_t j = 1; j < n2; ++j) c[j] = dec.s.coeffs(static_cast<Eigen::Index>(j - 1)) / k2;
  for (std::size_t i = 1; i < n1; ++i) {
    for (std::size_t j = 1; j < n2; ++j) {
      c[i * n2 + j] = dec.T(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) / (k1 * k2);
    }
  }
  return DensityMatrix(matrix_from_coefficients(c, {d1, d2}), {d1, d2});
}

/// Coefficient tensor W with entries Tr(rho delta_1 (x) ... (x) delta_N).
inline CoefficientTensor build_W(const DensityMatrix& rho,
                                 const std::vector<double>& alphas, std::size_t m,
                                 Normalization norm = Normalization::standard) {
  const auto& dims = rho.dims();
  if (alphas.size() != dims.size()) {
    throw ContractError("build_W: one alpha per subsystem is required");
  }
  for (double a : alphas) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw ContractError("build_W: alphas must be finite and nonnegative");
    }
  }
  const auto n = dims.size();
  CoefficientTensor w{dims, alphas, m, norm, {}, {}};
  w.extents.resize(n);
  for (std::size_t k = 0; k < n; ++k) w.extents[k] = m + dims[k] * dims[k] - 1;
  w.data.assign(product(w.extents), 0.0);

  const auto c = full_coefficients(rho);
  Dims idx(n, 0);
  for (std::size_t flat = 0; flat < w.data.size(); ++flat) {
    std::size_t src = 0;
    double factor = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto full_ext = dims[k] * dims[k];
      std::size_t slot = 0;
      if (idx[k] < m) {
        factor *= alphas[k];
      } else {
        slot = idx[k] - m + 1;
        factor *= coefficient_scale(dims[k], norm);
      }
      src = src * full_ext + slot;
    }
    w.data[flat] = factor * c[src];
    // odometer increment, last axis fastest
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < w.extents[k]) break;
      idx[k] = 0;
    }
  }
  return w;
}

/// Recovers rho from W. Needs m >= 1 and every alpha > 0 so the local and
/// identity terms are present.
inline DensityMatrix reconstruct(const CoefficientTensor& w) {
  const auto n = w.parties();
  if (w.m == 0) throw ContractError("reconstruct: tensor has no identity slots (m = 0)");
  for (double a : w.alphas) {
    if (!(a > 0.0)) throw ContractError("reconstruct: all alphas must be positive");
  }
  Dims full_ext(n);
  for (std::size_t k = 0; k < n; ++k) full_ext[k] = w.dims[k] * w.dims[k];
  std::vector<double> c(product(full_ext), 0.0);
  Dims idx(n, 0);
  for (std::size_t flat = 0; flat < c.size(); ++flat) {
    Dims widx(n);
    double factor = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (idx[k] == 0) {
        widx[k] = 0;
        factor *= w.alphas[k];
      } else {
        widx[k] = w.m + idx[k] - 1;
        factor *= coefficient_scale(w.dims[k], w.normalization);
      }
    }
    c[flat] = w.at(widx) / factor;
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < full_ext[k]) break;
      idx[k] = 0;
    }
  }
  return DensityMatrix(matrix_from_coefficients(c, w.dims), w.dims);
}

}  // namespace hwsep
