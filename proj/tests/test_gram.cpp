#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blaschke/gram.hpp"

using namespace blaschke;

TEST_CASE("gram_matrix of a single kernel is [[1]]") {
  ZeroSequence s;
  s.zeros = {BoundaryPoint{0.5, 0.0}};
  s.family_tag = FamilyTag::explicit_list;
  const auto g = gram_matrix(s, {3});
  REQUIRE(g.entries.rows() == 1);
  CHECK(std::abs(g.entries(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-14);
}

TEST_CASE("gram_matrix for B(z) = z is all ones") {
  // one zero at the origin: k_a(b) = (1 - a b)/(1 - a b) = 1 on the real
  // axis, so every normalized inner product is exactly 1
  ZeroSequence s;
  s.zeros = {BoundaryPoint{1.0, 0.0}};
  s.family_tag = FamilyTag::explicit_list;
  const auto g = gram_matrix(s, {2, 4});
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      CHECK(g.entries(i, j).real() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(g.entries(i, j).imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("gram_matrix structural checks on a tangential family") {
  const auto s = tangential_family(rules::inv_n(), 2000);
  std::vector<int> levels;
  for (int N = 10; N <= 20; ++N) levels.push_back(N);
  const auto g = gram_matrix(s, levels);
  const auto m = g.entries.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    CHECK(std::abs(g.entries(i, i) - std::complex<double>(1.0, 0.0)) < 1e-10);
    for (Eigen::Index j = 0; j < m; ++j) {
      CHECK(std::abs(g.entries(i, j) - std::conj(g.entries(j, i))) < 1e-10);
      CHECK(std::abs(g.entries(i, j)) <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("gram_matrix reproduces witness values at the nodes") {
  // f = sum_j c_j k_{rho_{N_j}} / ||k_{rho_{N_j}}|| satisfies
  // f(rho_{N_i}) = ||k_{rho_{N_i}}|| (G c)_i
  const auto s = tangential_family(rules::inv_n(), 2000);
  const std::vector<int> levels = {10, 12, 14, 16};
  const auto g = gram_matrix(s, levels);
  Eigen::VectorXcd c(4);
  c << 1.0, -0.5, std::complex<double>(0.0, 2.0), 0.25;
  // entries(j, i) = k_{rho_j}(rho_i) / (norm_j norm_i), so evaluation at
  // rho_i contracts c against the transpose
  const Eigen::VectorXcd gc = g.entries.transpose() * c;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto zi = rho_point(levels[i]);
    const double norm_i = std::sqrt(kernel_norm_sq_exact(s, zi).value);
    std::complex<double> direct(0.0, 0.0);
    for (std::size_t j = 0; j < levels.size(); ++j) {
      const auto zj = rho_point(levels[j]);
      const double norm_j = std::sqrt(kernel_norm_sq_exact(s, zj).value);
      direct += c(Eigen::Index(j)) * kernel_eval(s, zj, zi) / norm_j;
    }
    const auto via_gram = norm_i * gc(Eigen::Index(i));
    CHECK(std::abs(direct - via_gram) <= 1e-8 * std::abs(direct));
  }
}

TEST_CASE("gram_matrix size limits") {
  ZeroSequence s;
  s.zeros = {BoundaryPoint{0.5, 0.0}};
  s.family_tag = FamilyTag::explicit_list;
  CHECK_THROWS_AS(gram_matrix(s, {}), std::invalid_argument);
  std::vector<int> big(65);
  for (int i = 0; i < 65; ++i) big[std::size_t(i)] = i + 1;
  CHECK_THROWS_AS(gram_matrix(s, big), std::invalid_argument);
}

TEST_CASE("unconditionality_diagnostic on synthetic beta sequences") {
  SUBCASE("geometric decay plateaus") {
    std::vector<double> betas;
    for (int N = 1; N <= 32; ++N) betas.push_back(std::exp2(-N));
    const auto d = unconditionality_diagnostic(betas);
    CHECK(d.verdict == Verdict::consistent_with_unconditional);
    CHECK(d.last_quarter_growth < 1e-10);
  }
  SUBCASE("beta = 1/log N keeps growing") {
    std::vector<double> betas;
    for (int N = 2; N <= 64; ++N) betas.push_back(1.0 / std::log(double(N)));
    const auto d = unconditionality_diagnostic(betas);
    CHECK(d.verdict == Verdict::inconsistent);
  }
  SUBCASE("beta = 1/N sits just under the threshold") {
    std::vector<double> betas;
    for (int N = 1; N <= 32; ++N) betas.push_back(1.0 / double(N));
    const auto d = unconditionality_diagnostic(betas);
    CHECK(d.verdict == Verdict::consistent_with_unconditional);
  }
  SUBCASE("too few levels") {
    CHECK_THROWS_AS(unconditionality_diagnostic({1, 1, 1, 1, 1, 1, 1}),
                    std::invalid_argument);
  }
}

TEST_CASE("beta_sequence wiring") {
  const auto w = make_thm_witness(rules::inv_n(), 1.0, 2000);
  const auto betas = beta_sequence(w, w.base, 8, 23);
  REQUIRE(betas.size() == 16);
  for (double b : betas) CHECK(b > 0.0);
  const auto d = unconditionality_diagnostic(betas);
  // partial sums of beta^2 for x = 1/n grow like log log: no plateau
  CHECK(d.verdict == Verdict::inconsistent);
}
