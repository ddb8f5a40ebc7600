#include "hwsep/analysis.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace hwsep;
using Catch::Approx;

namespace {

const double beta_example = std::sqrt(2.0 / 11.0);

CriterionSpec hw_spec() {
  CriterionSpec s;
  s.kind = CriterionKind::hw;
  s.alpha = 0.5;
  s.beta = beta_example;
  s.m = 1;
  return s;
}

CriterionSpec kind_spec(CriterionKind k) {
  CriterionSpec s;
  s.kind = k;
  return s;
}

}  // namespace

TEST_CASE("criterion names", "[analysis]") {
  for (auto k : {CriterionKind::hw, CriterionKind::isc, CriterionKind::vb, CriterionKind::lb,
                 CriterionKind::ppt, CriterionKind::thm2}) {
    CHECK(parse_criterion(to_string(k)) == k);
  }
  CHECK_FALSE(parse_criterion("nope"));
}

TEST_CASE("threshold scan on the Horodecki mixture", "[analysis][scan]") {
  const auto fam = horodecki_mix_family(0.9);

  SECTION("correlation-only criterion") {
    const auto r = scan_threshold(fam, kind_spec(CriterionKind::vb));
    REQUIRE(r.threshold);
    CHECK(std::abs(*r.threshold - 0.2293) < 2e-4);
    CHECK(r.interval <= 1e-6);
    CHECK_FALSE(r.non_monotone);
    CHECK(r.sign_changes == 1);
    REQUIRE(r.at_threshold);
    CHECK(r.at_threshold->entangled());
  }
  SECTION("standard criterion brackets the onset") {
    const auto r = scan_threshold(fam, hw_spec(), 64, 1e-7);
    REQUIRE(r.threshold);
    CHECK(*r.threshold == Approx(0.226213).margin(1e-5));
    CHECK(evaluate(hw_spec(), fam(*r.threshold)).entangled());
    CHECK_FALSE(evaluate(hw_spec(), fam(*r.threshold - 2e-7)).entangled());
  }
  SECTION("PPT fires immediately above zero") {
    const auto r = scan_threshold(fam, kind_spec(CriterionKind::ppt), 32);
    REQUIRE(r.threshold);
    CHECK(*r.threshold < 0.05);
  }
}

TEST_CASE("no threshold on a separable family", "[analysis][scan]") {
  Rng rng(301);
  const auto a = random_separable({2, 4}, 3, rng).second;
  const auto b = random_separable({2, 4}, 3, rng).second;
  const auto fam = mixture_family("separable", a, b);
  const auto r = scan_threshold(fam, kind_spec(CriterionKind::lb), 32);
  CHECK_FALSE(r.threshold);
  CHECK(r.sign_changes == 0);
  CHECK(r.evaluations == 32);
}

TEST_CASE("entangled endpoint gives threshold zero", "[analysis][scan]") {
  const auto fam = mixture_family("bell", maximally_mixed({2, 2}), bell_state());
  const auto r = scan_threshold(fam, kind_spec(CriterionKind::ppt), 16);
  REQUIRE(r.threshold);
  CHECK(*r.threshold == 0.0);
}

TEST_CASE("scan preconditions", "[analysis][scan][error]") {
  const auto fam = horodecki_mix_family(0.9);
  CHECK_THROWS_AS(scan_threshold(fam, hw_spec(), 8), ContractError);
  CHECK_THROWS_AS(scan_threshold(fam, hw_spec(), 64, 1e-10), ContractError);
}

TEST_CASE("parameter optimisation", "[analysis][optimize]") {
  const auto rho = mix(0.3, xi_state(), horodecki_2x4(0.9));
  const auto grid = linspace(0.0, 1.5, 16);
  const auto best = optimize_params(rho, grid, grid, {1, 2, 3});
  CHECK(best.evaluations == 16 * 16 * 3);
  // the optimum must beat the fixed example parameters
  const auto fixed = check_theorem1(rho, 0.5, beta_example, 1);
  CHECK(best.excess() >= fixed.excess() - 1e-12);
  CHECK(best.excess() > 0.0);
  const auto again = check_theorem1(rho, best.alpha, best.beta, best.m);
  CHECK(again.value == Approx(best.value));
  CHECK(again.bound == Approx(best.bound));

  // single-point grid returns that point
  const auto one = optimize_params(rho, {0.5}, {0.25}, {2});
  CHECK(one.alpha == 0.5);
  CHECK(one.beta == 0.25);
  CHECK(one.m == 2);
  CHECK_THROWS_AS(optimize_params(rho, {}, {1.0}, {1}), ContractError);
}

TEST_CASE("linspace", "[analysis]") {
  const auto g = linspace(0.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g[1] == 0.25);
  CHECK(g.back() == 1.0);
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
}

TEST_CASE("comparison reports keep the requested order", "[analysis][compare]") {
  const std::vector<CriterionSpec> specs = {kind_spec(CriterionKind::lb),
                                            kind_spec(CriterionKind::vb), hw_spec()};
  const auto fam = horodecki_mix_family(0.9);
  const auto report = compare(fam, specs, 32, 1e-5);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.subject == "horodecki-mix");
  CHECK(report.rows[0].spec.kind == CriterionKind::lb);
  CHECK(report.rows[2].spec.kind == CriterionKind::hw);
  // L-B is the weakest of the three on this family
  CHECK(*report.rows[0].threshold->threshold > *report.rows[1].threshold->threshold);
  CHECK(*report.rows[0].threshold->threshold > *report.rows[2].threshold->threshold);

  const auto single = compare(bell_state(), "bell", {kind_spec(CriterionKind::ppt)});
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].verdict->entangled());
  CHECK_THROWS_AS(compare(bell_state(), "bell", {}), ContractError);
}

TEST_CASE("thm2 evaluation picks the worst bipartition", "[analysis]") {
  CriterionSpec s;
  s.kind = CriterionKind::thm2;
  s.alphas = {1, 1, 1};
  const auto v = evaluate(s, ghz(3));
  double best = -1e300;
  for (const auto& x : check_theorem2(ghz(3), {1, 1, 1}, 1)) best = std::max(best, x.excess());
  CHECK(v.excess() == best);
}
