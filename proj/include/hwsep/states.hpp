#pragma once

// Named example states and seeded random test states.

#include "hwsep/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace hwsep {

using ComplexVector = Eigen::VectorXcd;

/// Seeded generator: std::mt19937_64, uniforms from the top 53 bits,
/// standard normals by the Box-Muller cosine branch. Output is fully
/// determined by the seed and the sequence of calls.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open() { return 1.0 - uniform(); }

  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_normal() { return {normal(), normal()}; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline DensityMatrix pure_state(const ComplexVector& ket, Dims dims) {
  const double n = ket.norm();
  if (!(n > 0.0)) throw ContractError("pure_state: zero vector");
  const ComplexVector v = ket / n;
  return DensityMatrix(v * v.adjoint(), std::move(dims));
}

inline DensityMatrix maximally_mixed(const Dims& dims) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

/// The 2x4 bound entangled state with parameter b in (0, 1); basis |i>|j> -> 4i + j.
inline DensityMatrix horodecki_2x4(double b) {
  if (!(b > 0.0 && b < 1.0)) throw ContractError("horodecki_2x4: b must lie in (0, 1)");
  RealMatrix m = RealMatrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i) m(i, i) = b;
  m(5, 5) = m(6, 6) = b;
  for (int i = 0; i < 3; ++i) m(i, i + 5) = m(i + 5, i) = b;
  m(4, 4) = m(7, 7) = 0.5 * (1.0 + b);
  m(4, 7) = m(7, 4) = 0.5 * std::sqrt(1.0 - b * b);
  m /= 7.0 * b + 1.0;
  return DensityMatrix(m.cast<Complex>(), {2, 4});
}

/// (|0>|0> + |1>|1>)/sqrt(2) in C^2 (x) C^4.
inline DensityMatrix xi_state() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(5) = 1.0;
  return pure_state(v, {2, 4});
}

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
inline DensityMatrix ghz(std::size_t n) {
  if (n < 2) throw ContractError("ghz: need at least two qubits");
  const auto size = static_cast<Eigen::Index>(std::size_t{1} << n);
  ComplexVector v = ComplexVector::Zero(size);
  v(0) = v(size - 1) = 1.0;
  return pure_state(v, Dims(n, 2));
}

inline DensityMatrix bell_state() { return ghz(2); }

/// x sigma + (1 - x) rho.
inline DensityMatrix mix(double x, const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (!(x >= 0.0 && x <= 1.0)) throw ContractError("mix: x must lie in [0, 1]");
  if (sigma.dims() != rho.dims()) throw ContractError("mix: dimension mismatch");
  return DensityMatrix(x * sigma.matrix() + (1.0 - x) * rho.matrix(), rho.dims());
}

inline DensityMatrix product(const std::vector<DensityMatrix>& factors) {
  if (factors.empty()) throw ContractError("product: no factors");
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  Dims dims;
  for (const auto& f : factors) {
    m = kron(m, f.matrix());
    dims.insert(dims.end(), f.dims().begin(), f.dims().end());
  }
  return DensityMatrix(std::move(m), std::move(dims));
}

/// Normalised complex Gaussian vector.
inline ComplexVector random_ket(std::size_t d, Rng& rng) {
  if (d < 1) throw ContractError("random_ket: dimension must be positive");
  ComplexVector v(static_cast<Eigen::Index>(d));
  for (auto& z : v) z = rng.complex_normal();
  return v / v.norm();
}

inline DensityMatrix random_pure(const Dims& dims, Rng& rng) {
  for (auto d : dims) {
    if (d < 2) throw ContractError("random_pure: dimensions must be >= 2");
  }
  return pure_state(random_ket(product(dims), rng), dims);
}

inline DensityMatrix random_pure(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(Dims{d}, rng);
}

/// G G^dagger / Tr(G G^dagger) with a square complex Gaussian G.
inline DensityMatrix random_density(const Dims& dims, Rng& rng) {
  for (auto d : dims) {
    if (d < 2) throw ContractError("random_density: dimensions must be >= 2");
  }
  const auto n = static_cast<Eigen::Index>(product(dims));
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(std::move(rho), dims);
}

inline DensityMatrix random_density(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(Dims{d}, rng);
}

/// sum_i p_i |psi_i^(1) ... psi_i^(N)><...| with pure factors.
struct SeparableEnsemble {
  Dims dims;
  std::vector<double> weights;
  std::vector<std::vector<ComplexVector>> factors;  // [term][party]

  DensityMatrix assemble() const {
    const auto n = static_cast<Eigen::Index>(product(dims));
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (std::size_t t = 0; t < weights.size(); ++t) {
      ComplexVector ket = ComplexVector::Ones(1);
      for (const auto& f : factors[t]) ket = kron(ket, f).eval();
      rho += weights[t] * (ket * ket.adjoint());
    }
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(std::move(rho), dims);
  }
};

/// k random pure product terms with Dirichlet(1,...,1) weights
/// (normalised -log of uniform draws).
inline std::pair<SeparableEnsemble, DensityMatrix> random_separable(const Dims& dims,
                                                                    std::size_t k_terms,
                                                                    Rng& rng) {
  if (dims.empty()) throw ContractError("random_separable: empty dims");
  for (auto d : dims) {
    if (d < 2) throw ContractError("random_separable: dimensions must be >= 2");
  }
  if (k_terms < 1) throw ContractError("random_separable: need at least one term");
  SeparableEnsemble ens{dims, {}, {}};
  double total = 0.0;
  for (std::size_t t = 0; t < k_terms; ++t) {
    const double w = -std::log(rng.uniform_open());
    ens.weights.push_back(w);
    total += w;
    std::vector<ComplexVector> term;
    for (auto d : dims) term.push_back(random_ket(d, rng));
    ens.factors.push_back(std::move(term));
  }
  if (total <= 0.0) {
    // every draw hit u = 1; fall back to uniform weights
    ens.weights.assign(k_terms, 1.0);
    total = static_cast<double>(k_terms);
  }
  for (auto& w : ens.weights) w /= total;
  auto rho = ens.assemble();
  return {std::move(ens), std::move(rho)};
}

inline std::pair<SeparableEnsemble, DensityMatrix> random_separable(const Dims& dims,
                                                                    std::size_t k_terms,
                                                                    std::uint64_t seed) {
  Rng rng(seed);
  return random_separable(dims, k_terms, rng);
}

/// One-parameter family x -> state, x in [0, 1].
struct StateFamily {
  std::string name;
  std::map<std::string, double> parameters;
  std::function<DensityMatrix(double)> generate;

  DensityMatrix operator()(double x) const { return generate(x); }
};

/// x |xi><xi| + (1 - x) horodecki_2x4(b).
inline StateFamily horodecki_mix_family(double b) {
  auto base = horodecki_2x4(b);
  auto xi = xi_state();
  return {"horodecki-mix",
          {{"b", b}},
          [base = std::move(base), xi = std::move(xi)](double x) { return mix(x, xi, base); }};
}

/// Mixture of two fixed states; separable whenever both endpoints are.
inline StateFamily mixture_family(std::string name, DensityMatrix sigma, DensityMatrix rho) {
  return {std::move(name),
          {},
          [sigma = std::move(sigma), rho = std::move(rho)](double x) { return mix(x, sigma, rho); }};
}

}  // namespace hwsep
