#include "hwsep/criteria.hpp"
#include "hwsep/states.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace hwsep;
using Catch::Approx;

TEST_CASE("Horodecki 2x4 entries", "[states]") {
  const auto h = horodecki_2x4(0.9);
  const auto& m = h.matrix();
  REQUIRE(h.dims() == Dims{2, 4});
  CHECK(m(0, 0).real() == Approx(0.9 / 7.3));
  CHECK(m(0, 5).real() == Approx(0.9 / 7.3));
  CHECK(m(2, 7).real() == Approx(0.9 / 7.3));
  CHECK(m(4, 4).real() == Approx(0.95 / 7.3));
  CHECK(m(7, 7).real() == Approx(0.95 / 7.3));
  CHECK(m(4, 7).real() == Approx(0.5 * std::sqrt(1 - 0.81) / 7.3));
  CHECK(m(3, 3).real() == Approx(0.9 / 7.3));
  CHECK(m(4, 0) == Complex(0.0));
  CHECK(m(3, 4) == Complex(0.0));
  CHECK(std::abs(m.trace() - Complex(1.0)) < 1e-14);
  CHECK(m.imag().cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(horodecki_2x4(0.0), ContractError);
  CHECK_THROWS_AS(horodecki_2x4(1.0), ContractError);
}

TEST_CASE("Horodecki states are PPT for every b", "[states][property]") {
  for (int k = 1; k < 20; ++k) {
    const double b = 0.05 * k;
    const auto pt = partial_transpose(horodecki_2x4(b), 1);
    INFO("b = " << b);
    CHECK(oracle::hermitian_eigenvalues(pt).front() >= -1e-10);
  }
}

TEST_CASE("xi, Bell and GHZ", "[states]") {
  const auto xi = xi_state();
  CHECK(xi.matrix()(0, 0).real() == Approx(0.5));
  CHECK(xi.matrix()(0, 5).real() == Approx(0.5));
  CHECK(xi.matrix()(5, 5).real() == Approx(0.5));
  CHECK(xi.purity() == Approx(1.0));

  const auto g = ghz(3);
  REQUIRE(g.dims() == Dims{2, 2, 2});
  CHECK(g.matrix()(0, 7).real() == Approx(0.5));
  CHECK(g.matrix()(7, 7).real() == Approx(0.5));
  CHECK(std::abs(g.matrix()(3, 3)) < 1e-15);

  CHECK(bell_state().matrix()(0, 3).real() == Approx(0.5));
  CHECK_THROWS_AS(ghz(1), ContractError);
}

TEST_CASE("mix endpoints and product", "[states]") {
  const auto a = horodecki_2x4(0.5);
  const auto b = xi_state();
  CHECK(mix(0.0, b, a).matrix() == a.matrix());
  CHECK(mix(1.0, b, a).matrix() == b.matrix());
  CHECK_THROWS_AS(mix(1.5, b, a), ContractError);
  CHECK_THROWS_AS(mix(0.5, bell_state(), a), ContractError);

  const auto p = product({maximally_mixed({2}), maximally_mixed({3})});
  CHECK(p.dims() == Dims{2, 3});
  CHECK((p.matrix() - maximally_mixed({2, 3}).matrix()).cwiseAbs().maxCoeff() < 1e-16);

  const auto fam = horodecki_mix_family(0.9);
  CHECK(fam.name == "horodecki-mix");
  CHECK(fam.parameters.at("b") == 0.9);
  CHECK((fam(0.25).matrix() - mix(0.25, xi_state(), horodecki_2x4(0.9)).matrix()).norm() == 0.0);
}

TEST_CASE("seeded generators are deterministic", "[states][rng]") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(random_density(4, 7).matrix() == random_density(4, 7).matrix());
  CHECK(random_pure(3, 9).matrix() == random_pure(3, 9).matrix());
  CHECK(random_density(4, 7).matrix() != random_density(4, 8).matrix());
  CHECK(random_separable({2, 3}, 4, 5).second.matrix() ==
        random_separable({2, 3}, 4, 5).second.matrix());
}

TEST_CASE("uniform and normal draws", "[states][rng]") {
  Rng rng(3);
  double mean = 0.0;
  double sq = 0.0;
  constexpr int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    mean += z;
    sq += z * z;
  }
  CHECK(std::abs(mean / n) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("random states are valid", "[states][property]") {
  Rng rng(4);
  for (const Dims& dims : {Dims{2}, Dims{5}, Dims{2, 4}, Dims{2, 2, 2}}) {
    const auto pure = random_pure(dims, rng);
    CHECK(pure.purity() == Approx(1.0));
    const auto mixed = random_density(dims, rng);
    CHECK(mixed.purity() < 1.0);
    CHECK(oracle::hermitian_eigenvalues(mixed.matrix()).front() >= -1e-12);
  }
  CHECK_THROWS_AS(random_density(Dims{1, 2}, rng), ContractError);
}

TEST_CASE("random separable ensembles", "[states]") {
  Rng rng(5);
  const auto [ens, rho] = random_separable({2, 4}, 6, rng);
  REQUIRE(ens.weights.size() == 6);
  double total = 0.0;
  for (double w : ens.weights) {
    CHECK(w >= 0.0);
    total += w;
  }
  CHECK(total == Approx(1.0));
  CHECK((ens.assemble().matrix() - rho.matrix()).norm() == 0.0);
  CHECK(check_ppt(rho).verdict == Verdict::inconclusive);
  CHECK_THROWS_AS(random_separable({2, 2}, 0, rng), ContractError);
}
