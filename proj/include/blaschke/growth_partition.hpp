#ifndef BLASCHKE_GROWTH_PARTITION_HPP
#define BLASCHKE_GROWTH_PARTITION_HPP

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "blaschke/blaschke_core.hpp"
#include "blaschke/disk_geometry.hpp"
#include "blaschke/zero_sequence.hpp"

// The pseudo-hyperbolic band partition at level N, the occupancy counts
// alpha_{N,n}, the growth parameter sigma_N^Lambda, and its two-sided
// comparison with kernel norms.

namespace blaschke {

struct BandHistogram {
  int level_N = 1;
  std::map<int, std::size_t> counts;  // band index n -> alpha_{N,n}
  std::size_t total_zeros = 0;
};

inline BandHistogram band_histogram(const ZeroSequence& s, int level_N) {
  if (level_N < 1) throw std::invalid_argument("band_histogram: level_N >= 1 required");
  BandHistogram h;
  h.level_N = level_N;
  h.total_zeros = s.zeros.size();
  for (const auto& z : s.zeros) ++h.counts[annulus_index(z, level_N)];
  return h;
}

struct GrowthParameter {
  int level_N;
  double sigma_lambda;
};

// sigma_N^Lambda = sum_n alpha_{N,n} / 2^n
inline GrowthParameter sigma_lambda(const BandHistogram& h) {
  double sum = 0.0;
  for (const auto& [n, count] : h.counts) sum += double(count) * std::ldexp(1.0, -n);
  return {h.level_N, sum};
}

struct RegularityResult {
  double m;  // min of consecutive ratios
  double M;  // max of consecutive ratios
  bool passes;
};

// Ratios sigma^Lambda_{N+1} / sigma^Lambda_N over consecutive levels; the
// regularity condition asks 0 < m <= M < cap.
inline RegularityResult regularity_check(const std::vector<GrowthParameter>& params,
                                         double cap = 1e6) {
  if (params.size() < 2)
    throw std::invalid_argument("regularity_check: need at least 2 levels");
  double m = std::numeric_limits<double>::infinity();
  double M = 0.0;
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if (params[i].sigma_lambda <= 0.0 || params[i + 1].sigma_lambda <= 0.0)
      throw std::invalid_argument("regularity_check: degenerate sigma_lambda = 0 in range");
    const double r = params[i + 1].sigma_lambda / params[i].sigma_lambda;
    m = std::min(m, r);
    M = std::max(M, r);
  }
  return {m, M, m > 0.0 && M < cap};
}

struct TwoSidedRow {
  int level_N;
  double kernel_sq;     // exact-method kernel norm squared
  double sigma_lambda;  // band-weighted count
  double ratio;         // kernel_sq / sigma_lambda
  double tail_bound;
};

// Per-level comparison kernel_norm_sq_exact vs sigma_N^Lambda over a range
// of levels; the two-sided estimate holds iff the ratios stay in a fixed
// window.
inline std::vector<TwoSidedRow> two_sided_verify(const ZeroSequence& s,
                                                 int N_min, int N_max) {
  if (N_min < 1 || N_max < N_min)
    throw std::invalid_argument("two_sided_verify: bad level range");
  std::vector<TwoSidedRow> rows;
  rows.reserve(std::size_t(N_max - N_min + 1));
  for (int N = N_min; N <= N_max; ++N) {
    const auto est = kernel_norm_sq_exact(s, rho_point(N));
    const double sl = sigma_lambda(band_histogram(s, N)).sigma_lambda;
    rows.push_back({N, est.value, sl, est.value / sl, est.tail_bound});
  }
  return rows;
}

}  // namespace blaschke

#endif
