#pragma once

// Heisenberg-Weyl displacement operators and the Hermitian HW observable
// basis Q(l,m) for a d-level system.
//
// displacement(d, l, m) is the explicit matrix sum_k w^{kl} |k><(k+m) mod d|,
// w = exp(2 pi i / d). Taken literally for every (l, m), the Hermitian
// combinations X D + X* D^dagger (X = (1+i)/2) are not mutually orthogonal
// once d >= 3: Q(l,m) and Q(-l,-m) overlap whenever D(l,m) D(-l,-m) carries a
// non-real phase. The observable basis therefore pairs each index with its
// negation and, for the member that is lexicographically larger, uses the
// adjoint of its partner's displacement operator. With that convention
// Tr(Q(l,m) Q(l',m')) = d delta delta holds for every d, and the lower member
// of each pair (in particular Q(0,m), Q(l,0) and, for d = 3, Q(1,1), Q(1,2))
// is exactly the explicit formula.

#include "hwsep/linalg.hpp"

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

namespace hwsep {

enum class Normalization { standard, rescaled };

inline std::string_view to_string(Normalization n) {
  return n == Normalization::standard ? "standard" : "rescaled";
}

/// Scale applied to standard observables: 1, or sqrt(2/d) for rescaled.
inline double observable_scale(std::size_t d, Normalization n) {
  return n == Normalization::standard ? 1.0 : std::sqrt(2.0 / static_cast<double>(d));
}

/// Target of Tr(Q Q) for the given normalization (d or 2).
inline double gram_target(std::size_t d, Normalization n) {
  return n == Normalization::standard ? static_cast<double>(d) : 2.0;
}

namespace detail {

inline void check_indices(std::size_t d, std::size_t l, std::size_t m,
                          const char* who) {
  if (d < 2) throw ContractError(std::string(who) + ": dimension must be >= 2");
  if (l >= d || m >= d) {
    throw ContractError(std::string(who) + ": index out of range");
  }
}

}  // namespace detail

/// D(l,m) = sum_k exp(2 pi i k l / d) |k><(k+m) mod d|.
inline ComplexMatrix displacement(std::size_t d, std::size_t l, std::size_t m) {
  detail::check_indices(d, l, m, "displacement");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(d));
  const double dd = static_cast<double>(d);
  for (std::size_t k = 0; k < d; ++k) {
    // reduce k*l mod d first so the angle stays in [0, 2 pi)
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>((k * l) % d) / dd;
    out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((k + m) % d)) =
        std::polar(1.0, angle);
  }
  return out;
}

/// True when (l,m) is the lexicographically larger member of {(l,m), (-l,-m)}.
inline bool is_conjugate_partner(std::size_t d, std::size_t l, std::size_t m) {
  const std::size_t nl = (d - l) % d;
  const std::size_t nm = (d - m) % d;
  return std::pair{l, m} > std::pair{nl, nm};
}

/// Unitary paired with X in Q(l,m) = X U + X* U^dagger.
inline ComplexMatrix paired_displacement(std::size_t d, std::size_t l,
                                         std::size_t m) {
  if (is_conjugate_partner(d, l, m)) {
    return displacement(d, (d - l) % d, (d - m) % d).adjoint();
  }
  return displacement(d, l, m);
}

/// Hermitian HW observable; (0,0) yields the identity.
inline ComplexMatrix observable(std::size_t d, std::size_t l, std::size_t m,
                                Normalization norm = Normalization::standard) {
  detail::check_indices(d, l, m, "observable");
  const auto n = static_cast<Eigen::Index>(d);
  if (l == 0 && m == 0) return ComplexMatrix::Identity(n, n);
  const Complex chi(0.5, 0.5);
  const ComplexMatrix u = paired_displacement(d, l, m);
  ComplexMatrix q = chi * u + std::conj(chi) * u.adjoint();
  // exact Hermitian symmetrisation removes rounding asymmetry
  q = (0.5 * (q + q.adjoint())).eval();
  return q * observable_scale(d, norm);
}

/// The d^2 - 1 traceless observables ordered (0,1)..(0,d-1),(1,0)..(d-1,d-1).
struct HWObservableBasis {
  std::size_t dim = 0;
  Normalization normalization = Normalization::standard;
  std::vector<ComplexMatrix> elements;

  std::size_t size() const { return elements.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return elements[i]; }

  /// Position of (l,m) != (0,0) in the ordered list.
  static std::size_t index_of(std::size_t d, std::size_t l, std::size_t m) {
    return l * d + m - 1;
  }
  /// Inverse of index_of.
  static std::pair<std::size_t, std::size_t> label_of(std::size_t d,
                                                      std::size_t i) {
    return {(i + 1) / d, (i + 1) % d};
  }
};

inline HWObservableBasis basis(std::size_t d,
                               Normalization norm = Normalization::standard) {
  if (d < 2) throw ContractError("basis: dimension must be >= 2");
  HWObservableBasis out{d, norm, {}};
  out.elements.reserve(d * d - 1);
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t m = 0; m < d; ++m) {
      if (l == 0 && m == 0) continue;
      out.elements.push_back(observable(d, l, m, norm));
    }
  }
  return out;
}

/// max |Tr(Q Q') - target delta delta| over all ordered pairs of the basis.
inline double verify_orthogonality(std::size_t d,
                                   Normalization norm = Normalization::standard) {
  const auto b = basis(d, norm);
  const double target = gram_target(d, norm);
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Complex g = (b[i] * b[j]).trace();
      const double expected = i == j ? target : 0.0;
      worst = std::max(worst, std::abs(g - expected));
    }
  }
  return worst;
}

}  // namespace hwsep
