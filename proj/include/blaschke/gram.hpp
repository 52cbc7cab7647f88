#ifndef BLASCHKE_GRAM_HPP
#define BLASCHKE_GRAM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "blaschke/blaschke_core.hpp"
#include "blaschke/witness.hpp"

// Gram matrix of the normalized kernels at rho_N, the beta_N sequence, and
// the unconditionality plateau diagnostic.  The diagnostic is evidence at
// desk scale, not a proof: only finitely many levels are computable.

namespace blaschke {

struct GramMatrix {
  std::vector<int> levels;     // the N of each row/column
  Eigen::MatrixXcd entries;    // <x_n, x_k> for x_n = k_{rho_n} / ||k_{rho_n}||
};

inline constexpr int kGramSizeCap = 64;

// Entries via the reproducing property <k_lam, k_mu> = k_lam(mu); every
// entry is computed independently, so Hermitian symmetry and the unit
// diagonal are genuine checks downstream.
inline GramMatrix gram_matrix(const ZeroSequence& s, const std::vector<int>& N_list) {
  if (N_list.empty() || N_list.size() > kGramSizeCap)
    throw std::invalid_argument("gram_matrix: size must be in [1, 64]");
  const auto m = Eigen::Index(N_list.size());
  Eigen::VectorXd norms(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = kernel_norm_sq_exact(s, rho_point(N_list[std::size_t(i)])).value;
    if (!(v > 0.0)) throw std::invalid_argument("gram_matrix: zero kernel norm");
    norms(i) = std::sqrt(v);
  }
  GramMatrix g;
  g.levels = N_list;
  g.entries.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      g.entries(i, j) = kernel_eval(s, rho_point(N_list[std::size_t(i)]),
                                    rho_point(N_list[std::size_t(j)])) /
                        (norms(i) * norms(j));
  return g;
}

// beta_N = |f_alpha(rho_N)| / ||k_{rho_N}||
inline std::vector<double> beta_sequence(const WitnessFunction& w,
                                         const ZeroSequence& s,
                                         int N_min, int N_max) {
  if (N_min < 1 || N_max < N_min)
    throw std::invalid_argument("beta_sequence: bad level range");
  std::vector<double> betas;
  betas.reserve(std::size_t(N_max - N_min + 1));
  for (int N = N_min; N <= N_max; ++N) {
    const auto z = rho_point(N);
    const double norm_sq = kernel_norm_sq_exact(s, z).value;
    if (!(norm_sq > 0.0)) throw std::invalid_argument("beta_sequence: zero kernel norm");
    betas.push_back(std::abs(eval_witness(w, z)) / std::sqrt(norm_sq));
  }
  return betas;
}

enum class Verdict { consistent_with_unconditional, inconsistent };

struct UnconditionalityDiagnostic {
  std::vector<double> partial_l2;  // running sums of beta_N^2
  double last_quarter_growth;      // relative increase across the last quarter
  Verdict verdict;
};

// Plateau test on the partial l2 sums of beta: if the last quarter of the
// range still adds more than `threshold` of the total, the sums are not
// plateauing and the sequence behaves inconsistently with an unconditional
// basis.
inline UnconditionalityDiagnostic unconditionality_diagnostic(
    const std::vector<double>& betas, double threshold = 0.05) {
  if (betas.size() < 8)
    throw std::invalid_argument("unconditionality_diagnostic: need at least 8 values");
  UnconditionalityDiagnostic d;
  d.partial_l2.reserve(betas.size());
  double sum = 0.0;
  for (const double b : betas) {
    sum += b * b;
    d.partial_l2.push_back(sum);
  }
  const std::size_t quarter_start = betas.size() - betas.size() / 4;
  const double before = d.partial_l2[quarter_start - 1];
  d.last_quarter_growth = (sum - before) / sum;
  d.verdict = d.last_quarter_growth > threshold ? Verdict::inconsistent
                                                : Verdict::consistent_with_unconditional;
  return d;
}

}  // namespace blaschke

#endif
