#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blaschke/sequence_designer.hpp"

using namespace blaschke;

TEST_CASE("tangential_family direct substitution, x == 1") {
  const auto s = tangential_family(rules::one(), 3);
  REQUIRE(s.zeros.size() == 3);
  CHECK(s.zeros[0].delta == doctest::Approx(0.25));
  CHECK(s.zeros[0].theta == doctest::Approx(0.5));
  CHECK(s.zeros[1].delta == doctest::Approx(1.0 / 16));
  CHECK(s.zeros[1].theta == doctest::Approx(0.25));
  CHECK(s.zeros[2].delta == doctest::Approx(1.0 / 64));
  CHECK(s.zeros[2].theta == doctest::Approx(0.125));
  // certified tail for nonincreasing x: x_K 4^{-K} / 3
  CHECK(s.tail_delta_sum == doctest::Approx(std::exp2(-6.0) / 3.0));
}

TEST_CASE("tangential_family example rules") {
  const auto a = tangential_family(rules::inv_n(), 50);
  CHECK(a.zeros[9].delta == doctest::Approx(0.1 * std::exp2(-20.0)));
  CHECK(a.zeros[9].theta == doctest::Approx(std::exp2(-10.0)));

  // x_k = 1/(k log k) starts at k = 2
  const auto b = tangential_family(rules::inv_n_log_n(), 50);
  CHECK(b.zeros[0].delta ==
        doctest::Approx((1.0 / (2 * std::log(2.0))) * std::exp2(-4.0)));
}

TEST_CASE("tangential_family rejects nonpositive rules") {
  SequenceRule bad{[](std::int64_t n) { return 1.0 - double(n); }, 1.0, nullptr, 1, "bad"};
  CHECK_THROWS_AS(tangential_family(bad, 5), std::invalid_argument);
}

TEST_CASE("oricyclic_family direct substitution") {
  // theta_k = 1/k^2 needs k >= 2 to stay below 1
  SequenceRule r = rules::power(2.0);
  r.first_index = 2;
  const auto s = oricyclic_family(r, 2);
  REQUIRE(s.zeros.size() == 1);
  CHECK(s.zeros[0].delta == doctest::Approx(1.0 / 16));
  CHECK(s.zeros[0].theta == doctest::Approx(0.25));
}

TEST_CASE("oricyclic_family rejects theta outside (0,1)") {
  CHECK_THROWS_AS(oricyclic_family(rules::power(2.0), 3), std::invalid_argument);
  SequenceRule two{[](std::int64_t) { return 2.0; }, 1.0, nullptr, 1, "two"};
  CHECK_THROWS_AS(oricyclic_family(two, 3), std::invalid_argument);
}

TEST_CASE("design_from_growth: sigma_N = 2^{N/2} gives theta_k = k^-2") {
  GrowthSpec g;
  g.kind = GrowthKind::closed_form;
  g.form = GrowthForm::pow2_over_alpha;
  g.alpha = 2.0;
  g.beta = 0.5;
  const auto s = design_from_growth(g, 2000);
  // k0 = ceil(sigma_1) = ceil(2^{1/2}) = 2
  REQUIRE(s.zeros.size() == 1999);
  for (std::int64_t k = 2; k <= 2000; ++k) {
    const double want = std::pow(double(k), -2.0);
    CHECK(s.zeros[std::size_t(k - 2)].theta ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("design_from_growth: sigma_N = N^alpha gives theta_k = 2^{-k^{1/alpha}}") {
  GrowthSpec g;
  g.kind = GrowthKind::closed_form;
  g.form = GrowthForm::poly;
  g.alpha = 3.0;
  g.beta = 1.9;
  g.n_min = 2;  // ratio ((N+1)/N)^3 first drops below 2^1.9 at N = 2
  const auto s = design_from_growth(g, 100);
  // k0 = ceil(sigma(2)) = 8
  REQUIRE(s.zeros.size() == 93);
  for (std::int64_t k = 8; k <= 100; ++k)
    CHECK(s.zeros[std::size_t(k - 8)].theta ==
          doctest::Approx(std::exp2(-std::pow(double(k), 1.0 / 3.0))).epsilon(1e-12));
}

TEST_CASE("design_from_growth from nodes: manual segment inversion") {
  GrowthSpec g;
  g.kind = GrowthKind::nodes;
  g.nodes = {{1, 2.0}, {2, 3.0}, {3, 4.5}};
  g.beta = std::log2(1.5);
  const auto s = design_from_growth(g, 4);
  // k0 = 2; psi^{-1}(2) = 1, psi^{-1}(3) = 2, psi^{-1}(4) = 2 + 1/1.5
  REQUIRE(s.zeros.size() == 3);
  CHECK(s.zeros[0].theta == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.zeros[1].theta == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s.zeros[2].theta ==
        doctest::Approx(std::exp2(-(2.0 + 2.0 / 3.0))).epsilon(1e-14));
}

TEST_CASE("design round trip at nodes") {
  GrowthSpec g;
  g.kind = GrowthKind::nodes;
  g.nodes = {{1, 2.0}, {2, 3.0}, {3, 4.5}, {4, 6.0}};
  g.beta = std::log2(1.5);
  for (const auto& [N, sigma] : g.nodes) {
    CHECK(g.sigma(double(N)) == sigma);
    CHECK(g.sigma_inverse(sigma) == doctest::Approx(double(N)).epsilon(1e-15));
  }
}

TEST_CASE("design_from_growth rejects bad specs") {
  GrowthSpec g;
  g.kind = GrowthKind::nodes;
  g.nodes = {{1, 1.0}, {2, 5.0}};  // ratio 5 > 2^beta for any beta < 2
  g.beta = 1.9;
  CHECK_THROWS_AS(design_from_growth(g, 10), std::invalid_argument);

  GrowthSpec small;
  small.kind = GrowthKind::nodes;
  small.nodes = {{1, 0.5}, {2, 0.9}};
  small.beta = 1.0;
  CHECK_THROWS_AS(design_from_growth(small, 10), std::invalid_argument);
}

TEST_CASE("designed sequences are Blaschke: delta partial sums plateau") {
  GrowthSpec g;
  g.kind = GrowthKind::closed_form;
  g.form = GrowthForm::pow2_over_alpha;
  g.alpha = 2.0;
  g.beta = 0.5;
  const auto half = design_from_growth(g, 5000);
  const auto full = design_from_growth(g, 10000);
  double sum_half = 0.0, sum_full = 0.0;
  for (const auto& z : half.zeros) sum_half += z.delta;
  for (const auto& z : full.zeros) sum_full += z.delta;
  CHECK((sum_full - sum_half) / sum_full < 1e-3);
  CHECK(std::isfinite(full.tail_delta_sum));
  // the certified tail at K = 5000 covers everything the longer run added
  CHECK(sum_half + half.tail_delta_sum >= sum_full);
}

TEST_CASE("phi_from_sigma") {
  SUBCASE("x == 1: phi(rho_N) = N") {
    const auto g = growth_from_partial_sums(rules::one(), 40);
    const auto f = phi_from_sigma(g);
    for (int N : {1, 7, 23, 40})
      CHECK(f.phi_at_delta(std::exp2(-N)) == doctest::Approx(double(N)).epsilon(1e-12));
  }
  SUBCASE("x = 1/n: phi(rho_N) is the harmonic partial sum") {
    const auto g = growth_from_partial_sums(rules::inv_n(), 40);
    const auto f = phi_from_sigma(g);
    CHECK(f.phi_at_delta(std::exp2(-4.0)) ==
          doctest::Approx(25.0 / 12.0).epsilon(1e-13));
  }
  SUBCASE("midpoint interpolates the sigma average") {
    const auto g = growth_from_partial_sums(rules::inv_n(), 40);
    const auto f = phi_from_sigma(g);
    const double want = (sigma_partial(rules::inv_n(), 10) +
                         sigma_partial(rules::inv_n(), 11)) / 2.0;
    CHECK(f.phi_at_delta(std::exp2(-10.5)) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("domain error outside (0,1)") {
    const auto g = growth_from_partial_sums(rules::one(), 10);
    const auto f = phi_from_sigma(g);
    CHECK_THROWS_AS(f.phi_at_radius(1.0), std::domain_error);
    CHECK_THROWS_AS(f.phi_at_radius(-0.1), std::domain_error);
  }
}

TEST_CASE("phi0 is concave for nonincreasing x") {
  for (const auto& rule : {rules::one(), rules::inv_n()}) {
    const auto g = growth_from_partial_sums(rule, 30);
    double prev_slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i) {
      const double slope = (g.nodes[i + 1].second - g.nodes[i].second) /
                           (g.nodes[i + 1].first - g.nodes[i].first);
      CHECK(slope <= prev_slope + 1e-15);
      prev_slope = slope;
    }
  }
}

TEST_CASE("sigma_partial") {
  CHECK(sigma_partial(rules::one(), 7) == 7.0);
  CHECK(sigma_partial(rules::inv_n(), 4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  // x = 1/(n log n): slow growth, cross-checked against a direct sum
  long double want = 0.0L;
  for (int n = 2; n <= 1000; ++n) want += 1.0L / (n * std::log((long double)n));
  CHECK(sigma_partial(rules::inv_n_log_n(), 1000) ==
        doctest::Approx(double(want)).epsilon(1e-13));
}

TEST_CASE("weak_cond_check") {
  CHECK(weak_cond_check(rules::one(), 100).sup_ratio == 1.0);
  CHECK(weak_cond_check(rules::one(), 100).passes);
  const auto inv = weak_cond_check(rules::inv_n(), 100);
  CHECK(inv.sup_ratio < 1.0);
  CHECK(inv.passes);
  SequenceRule growing{[](std::int64_t n) { return std::pow(3.0, double(n % 50)); },
                       3.0, nullptr, 1, "pow3"};
  const auto res = weak_cond_check(growing, 40);
  CHECK(res.sup_ratio == doctest::Approx(3.0));
  CHECK_FALSE(res.passes);
}

TEST_CASE("piecewise affine inversion") {
  PiecewiseAffine f({{0.0, 1.0}, {1.0, 3.0}, {4.0, 5.0}});
  for (double x : {0.0, 0.4, 1.0, 2.5, 4.0, 6.0}) {
    CHECK(f.inverse(f(x)) == doctest::Approx(x).epsilon(1e-14));
  }
}
