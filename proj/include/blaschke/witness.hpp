#ifndef BLASCHKE_WITNESS_HPP
#define BLASCHKE_WITNESS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "blaschke/blaschke_core.hpp"
#include "blaschke/sequence_designer.hpp"
#include "blaschke/zero_sequence.hpp"

// Lower-bound witness functions f_alpha = sum alpha_n k_{lambda_n} /
// ||k_{lambda_n}||, with the coefficient choice alpha_n =
// sqrt(x_n / (sigma_n log^{1+eps} sigma_n)) and the telescoping
// optimality coefficients.

namespace blaschke {

enum class CoeffRule { thm_choice, optimality_choice, explicit_list };

struct WitnessFunction {
  ZeroSequence base;
  std::vector<double> coeffs;  // coeffs[k] pairs with base.zeros[k]
  double epsilon = 1.0;
  CoeffRule coeff_rule_tag = CoeffRule::explicit_list;
  std::int64_t start_index = 1;  // first index carrying a nonzero coefficient
};

struct WitnessCoeffs {
  std::vector<double> alpha;       // zero below start_index
  std::int64_t start_index = 1;    // first k with a nonzero coefficient
  std::int64_t anchor_index = 1;   // least n with sigma_n > 1 (telescope anchor)
  double sigma_anchor = 0.0;
};

// alpha_n = sqrt(x_n / (sigma_n ln^{1+eps} sigma_n)) for n > anchor, where
// anchor is the least n with sigma_n > 1.  Starting one step past the
// anchor keeps every telescoping term's ln sigma_{n-1} strictly positive,
// which makes the l2 bound below an exact inequality.
inline WitnessCoeffs thm_coeffs(const SequenceRule& x_rule, double epsilon,
                                std::int64_t K) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("thm_coeffs: epsilon > 0 required");
  if (K < x_rule.first_index) throw std::invalid_argument("thm_coeffs: K below first index");
  WitnessCoeffs out;
  out.alpha.assign(std::size_t(K - x_rule.first_index + 1), 0.0);
  double sigma = 0.0;
  std::int64_t anchor = -1;
  for (std::int64_t n = x_rule.first_index; n <= K; ++n) {
    const double x = x_rule.value(n);
    if (!(x > 0)) throw std::invalid_argument("thm_coeffs: rule must be positive");
    sigma += x;
    if (anchor < 0 && sigma > 1.0) {
      anchor = n;
      out.sigma_anchor = sigma;
      continue;  // coefficients begin at anchor + 1
    }
    if (anchor >= 0) {
      const double l = std::log(sigma);
      out.alpha[std::size_t(n - x_rule.first_index)] =
          std::sqrt(x / (sigma * std::pow(l, 1.0 + epsilon)));
    }
  }
  if (anchor < 0 || anchor >= K)
    throw std::invalid_argument("thm_coeffs: partial sums never exceed 1 within K");
  out.start_index = anchor + 1;
  out.anchor_index = anchor;
  return out;
}

// Telescoped l2 bound (1/eps) ln^{-eps} sigma_anchor; the computed
// sum of alpha_n^2 satisfies this inequality exactly.
inline double l2_tail_bound(const SequenceRule& x_rule, double epsilon,
                            std::int64_t K) {
  const auto c = thm_coeffs(x_rule, epsilon, K);
  return (1.0 / epsilon) * std::pow(std::log(c.sigma_anchor), -epsilon);
}

inline WitnessFunction make_thm_witness(const SequenceRule& x_rule, double epsilon,
                                        std::int64_t K) {
  const auto c = thm_coeffs(x_rule, epsilon, K);
  WitnessFunction w;
  w.base = tangential_family(x_rule, K);
  w.coeffs = c.alpha;
  // the family truncates once 1 - r underflows; the dropped terms carry
  // weights alpha_n sqrt(1 - r_n^2) far below double resolution
  if (w.coeffs.size() > w.base.zeros.size()) w.coeffs.resize(w.base.zeros.size());
  w.epsilon = epsilon;
  w.coeff_rule_tag = CoeffRule::thm_choice;
  w.start_index = c.start_index;
  return w;
}

// f_alpha(z) = sum alpha_n sqrt(1 - r_n^2) / (1 - conj(lambda_n) z);
// the zeros of the base are interpolating, so the normalized kernels there
// reduce to normalized Cauchy kernels.
inline std::complex<double> eval_witness(const WitnessFunction& w,
                                         const BoundaryPoint& z) {
  if (w.coeffs.size() != w.base.zeros.size())
    throw std::invalid_argument("eval_witness: coefficient/zero length mismatch");
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
    if (w.coeffs[k] == 0.0) continue;
    const auto& lam = w.base.zeros[k];
    sum += w.coeffs[k] * std::sqrt(lam.one_minus_mod_sq()) /
           one_minus_conj_mul(lam, z);
  }
  return sum;
}

struct LowerBoundRow {
  int level_N;
  double value;   // |f_alpha(rho_N)|
  double target;  // sqrt(sigma_N / ln^{1+eps} sigma_N)
  double ratio;
};

struct LowerBoundCheck {
  std::vector<LowerBoundRow> rows;
  double min_ratio;
  double fit_constant;  // ratio at the first level of the upper half
  bool passes;          // min over the upper half >= fit_constant / 2
};

// |f_alpha(rho_N)| against sqrt(sigma_N / ln^{1+eps} sigma_N) over a level
// range; the contract is ratio positivity with no decay to zero, measured
// on the upper half of the range.
inline LowerBoundCheck lower_bound_check(const WitnessFunction& w,
                                         const SequenceRule& x_rule,
                                         int N_min, int N_max) {
  if (w.coeff_rule_tag != CoeffRule::thm_choice)
    throw std::invalid_argument("lower_bound_check: witness must use the thm coefficient rule");
  if (N_min < 1 || N_max < N_min)
    throw std::invalid_argument("lower_bound_check: bad level range");
  LowerBoundCheck out;
  double sigma = 0.0;
  std::int64_t n = x_rule.first_index;
  for (int N = N_min; N <= N_max; ++N) {
    for (; n <= N; ++n) sigma += x_rule.value(n);
    const double v = std::abs(eval_witness(w, rho_point(N)));
    const double target =
        std::sqrt(sigma / std::pow(std::log(sigma), 1.0 + w.epsilon));
    out.rows.push_back({N, v, target, v / target});
  }
  out.min_ratio = out.rows.front().ratio;
  for (const auto& r : out.rows) out.min_ratio = std::min(out.min_ratio, r.ratio);
  const std::size_t half = out.rows.size() / 2;
  out.fit_constant = out.rows[half].ratio;
  double upper_min = out.rows[half].ratio;
  for (std::size_t i = half; i < out.rows.size(); ++i)
    upper_min = std::min(upper_min, out.rows[i].ratio);
  out.passes = upper_min >= out.fit_constant / 2.0;
  return out;
}

// alpha_n = eps_n sqrt(n) - eps_{n-1} sqrt(n-1) for a nonincreasing positive
// eps rule; partial sums telescope to eps_N sqrt(N) exactly.
inline std::vector<double> optimality_coeffs(const SequenceRule& eps_rule,
                                             std::int64_t K) {
  if (K < eps_rule.first_index)
    throw std::invalid_argument("optimality_coeffs: K below first index");
  std::vector<double> alpha;
  alpha.reserve(std::size_t(K - eps_rule.first_index + 1));
  double prev_term = 0.0;  // eps_{n-1} sqrt(n-1), zero before the first index
  double prev_eps = std::numeric_limits<double>::infinity();
  for (std::int64_t n = eps_rule.first_index; n <= K; ++n) {
    const double e = eps_rule.value(n);
    if (!(e > 0.0)) throw std::invalid_argument("optimality_coeffs: eps must be positive");
    if (e > prev_eps)
      throw std::invalid_argument("optimality_coeffs: eps must be nonincreasing");
    const double term = e * std::sqrt(double(n));
    alpha.push_back(term - prev_term);
    prev_term = term;
    prev_eps = e;
  }
  return alpha;
}

}  // namespace blaschke

#endif
