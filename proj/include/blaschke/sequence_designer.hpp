#ifndef BLASCHKE_SEQUENCE_DESIGNER_HPP
#define BLASCHKE_SEQUENCE_DESIGNER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blaschke/zero_sequence.hpp"

// Construction of the two zero families (tangential x-rule, oricyclic
// theta-rule) and the inverse design: given a target growth sequence
// sigma_N, produce theta_k = 2^{-psi^{-1}(k)} realizing ||k_{rho_N}||^2
// comparable to sigma_N.

namespace blaschke {

// A positive integer-indexed sequence rule.  ratio_sup is a certified
// bound on sup x_{k+1}/x_k (1 for nonincreasing rules); tail_sq_after(K),
// when set, certifies sum_{k>K} value(k)^2 for theta-rules.
struct SequenceRule {
  std::function<double(std::int64_t)> value;
  double ratio_sup = 1.0;
  std::function<double(std::int64_t)> tail_sq_after;
  std::int64_t first_index = 1;
  std::string name;
};

namespace rules {

inline SequenceRule one() {
  return {[](std::int64_t) { return 1.0; }, 1.0, nullptr, 1, "one"};
}

inline SequenceRule inv_n() {
  return {[](std::int64_t n) { return 1.0 / double(n); }, 1.0, nullptr, 1, "inv_n"};
}

inline SequenceRule inv_n_log_n() {
  return {[](std::int64_t n) { return 1.0 / (double(n) * std::log(double(n))); },
          1.0, nullptr, 2, "inv_n_log_n"};
}

// x_n or theta_n = n^{-alpha}; tail of squares bounded by the integral.
inline SequenceRule power(double alpha) {
  SequenceRule r;
  r.value = [alpha](std::int64_t n) { return std::pow(double(n), -alpha); };
  r.ratio_sup = 1.0;
  if (alpha > 0.5)
    r.tail_sq_after = [alpha](std::int64_t K) {
      return std::pow(double(K), 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0);
    };
  r.name = "power";
  return r;
}

inline SequenceRule geometric() {
  SequenceRule r;
  r.value = [](std::int64_t n) { return std::ldexp(1.0, -int(std::min<std::int64_t>(n, 1060))); };
  r.ratio_sup = 1.0;
  r.tail_sq_after = [](std::int64_t K) {
    return std::ldexp(1.0, -2 * int(std::min<std::int64_t>(K, 530))) / 3.0;
  };
  r.name = "geometric";
  return r;
}

// theta_k = 2^{-k^{1/alpha}}; squares decay faster than 4^{-K^{1/alpha}} geometric.
inline SequenceRule pow2_root(double alpha) {
  SequenceRule r;
  r.value = [alpha](std::int64_t n) {
    return std::exp2(-std::pow(double(n), 1.0 / alpha));
  };
  r.ratio_sup = 1.0;
  r.tail_sq_after = [alpha](std::int64_t K) {
    // k^{1/a} >= K^{1/a} + (k - K) * s with s the (decreasing) slope at K+1
    const double s = (std::pow(double(K + 1), 1.0 / alpha) - std::pow(double(K), 1.0 / alpha));
    double head = std::exp2(-2.0 * std::pow(double(K + 1), 1.0 / alpha));
    const double q = std::exp2(-2.0 * s);
    return q < 1.0 ? head / (1.0 - q) : std::numeric_limits<double>::infinity();
  };
  r.name = "pow2_root";
  return r;
}

// theta_k = 2^{-2^{sqrt(k)}}
inline SequenceRule pow2_exp_sqrt() {
  SequenceRule r;
  r.value = [](std::int64_t n) {
    return std::exp2(-std::exp2(std::sqrt(double(n))));
  };
  r.ratio_sup = 1.0;
  r.tail_sq_after = [](std::int64_t K) {
    // doubly exponential decay; successive square ratios are below 1/4
    const double head = std::exp2(-2.0 * std::exp2(std::sqrt(double(K + 1))));
    return head * 4.0 / 3.0;
  };
  r.name = "pow2_exp_sqrt";
  return r;
}

}  // namespace rules

// zeros lambda_k = (1 - x_k 4^{-k}) e^{i 2^{-k}}, k = first_index..K.
// Tail: sum_{k>K} x_k 4^{-k} <= x_K 4^{-K} q/(4 - q) with q = max(1, ratio_sup);
// for nonincreasing x this is the x_K 4^{-K}/3 bound.
inline ZeroSequence tangential_family(const SequenceRule& x_rule, std::int64_t K) {
  if (K < x_rule.first_index)
    throw std::invalid_argument("tangential_family: K below the rule's first index");
  ZeroSequence s;
  s.family_tag = FamilyTag::tangential;
  s.description = "tangential:" + x_rule.name;
  const double q = std::max(1.0, x_rule.ratio_sup);
  if (!(q < 4.0)) throw std::invalid_argument("tangential_family: ratio_sup too large for a tail bound");
  std::int64_t last = x_rule.first_index - 1;
  for (std::int64_t k = x_rule.first_index; k <= K; ++k) {
    const double x = x_rule.value(k);
    if (!(x > 0)) throw std::invalid_argument("tangential_family: rule must be positive");
    const double th = k <= 1060 ? std::ldexp(1.0, -int(k)) : 0.0;
    const double delta = x * th * th;
    // stop once 1 - r underflows double resolution; the remainder goes
    // into the certified tail
    if (!(delta > 0.0)) break;
    s.zeros.push_back({delta, th});
    last = k;
  }
  if (last >= x_rule.first_index) {
    const double thK = std::ldexp(1.0, -int(std::min<std::int64_t>(last, 510)));
    s.tail_delta_sum = x_rule.value(last) * thK * thK * q / (4.0 - q);
  }
  return s;
}

// zeros lambda_k = (1 - theta_k^2) e^{i theta_k}; requires theta_k in (0,1).
inline ZeroSequence oricyclic_family(const SequenceRule& theta_rule, std::int64_t K) {
  if (K < theta_rule.first_index)
    throw std::invalid_argument("oricyclic_family: K below the rule's first index");
  ZeroSequence s;
  s.family_tag = FamilyTag::oricyclic;
  s.description = "oricyclic:" + theta_rule.name;
  std::int64_t last = K;
  for (std::int64_t k = theta_rule.first_index; k <= K; ++k) {
    const double th = theta_rule.value(k);
    if (!(th >= 0.0 && th < 1.0))
      throw std::invalid_argument("oricyclic_family: theta must lie in (0,1)");
    // 1 - r = theta^2 below double resolution: truncate here, the rest is tail
    if (!(th * th > 0.0)) { last = k - 1; break; }
    s.zeros.push_back({th * th, th});
  }
  s.tail_delta_sum = theta_rule.tail_sq_after ? theta_rule.tail_sq_after(last) : 0.0;
  return s;
}

// Strictly increasing piecewise affine map; evaluation extrapolates with
// the end-segment slopes, matching the affine extension used for phi_0.
struct PiecewiseAffine {
  std::vector<std::pair<double, double>> knots;  // (x, y), strictly increasing

  explicit PiecewiseAffine(std::vector<std::pair<double, double>> k)
      : knots(std::move(k)) {
    if (knots.size() < 2)
      throw std::invalid_argument("PiecewiseAffine: need at least 2 knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      if (!(knots[i].first < knots[i + 1].first && knots[i].second < knots[i + 1].second))
        throw std::invalid_argument("PiecewiseAffine: knots must increase strictly in x and y");
  }

  double operator()(double x) const {
    const auto seg = segment_for_x(x);
    const auto& [x0, y0] = knots[seg];
    const auto& [x1, y1] = knots[seg + 1];
    return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
  }

  double inverse(double y) const {
    std::size_t lo = 0, hi = knots.size() - 2;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (knots[mid].second <= y) lo = mid; else hi = mid - 1;
    }
    const auto& [x0, y0] = knots[lo];
    const auto& [x1, y1] = knots[lo + 1];
    return x0 + (y - y0) * (x1 - x0) / (y1 - y0);
  }

 private:
  std::size_t segment_for_x(double x) const {
    std::size_t lo = 0, hi = knots.size() - 2;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (knots[mid].first <= x) lo = mid; else hi = mid - 1;
    }
    return lo;
  }
};

enum class GrowthKind { nodes, closed_form };
enum class GrowthForm { pow2_over_alpha, poly, log_sq };

// Target growth sequence sigma_N, either as explicit nodes or one of the
// built-in closed forms.  beta witnesses sigma_{N+1} <= 2^beta sigma_N.
struct GrowthSpec {
  GrowthKind kind = GrowthKind::nodes;
  std::vector<std::pair<int, double>> nodes;  // (N, sigma_N)
  GrowthForm form = GrowthForm::pow2_over_alpha;
  double alpha = 2.0;
  double beta = 1.0;
  int n_min = 1;  // first level at which the closed form is used

  double sigma(double t) const {
    switch (kind) {
      case GrowthKind::nodes:
        return PiecewiseAffine(node_knots())(t);
      case GrowthKind::closed_form:
        switch (form) {
          case GrowthForm::pow2_over_alpha: return std::exp2(t / alpha);
          case GrowthForm::poly: return std::pow(t, alpha);
          case GrowthForm::log_sq: {
            const double l = std::log2(t);
            return l * l;
          }
        }
    }
    throw std::logic_error("GrowthSpec::sigma");
  }

  double sigma_inverse(double y) const {
    switch (kind) {
      case GrowthKind::nodes:
        return PiecewiseAffine(node_knots()).inverse(y);
      case GrowthKind::closed_form:
        switch (form) {
          case GrowthForm::pow2_over_alpha: return alpha * std::log2(y);
          case GrowthForm::poly: return std::pow(y, 1.0 / alpha);
          case GrowthForm::log_sq: return std::exp2(std::sqrt(y));
        }
    }
    throw std::logic_error("GrowthSpec::sigma_inverse");
  }

  double first_sigma() const { return sigma(double(first_level())); }
  int first_level() const {
    return kind == GrowthKind::nodes ? nodes.front().first : n_min;
  }

  std::vector<std::pair<double, double>> node_knots() const {
    std::vector<std::pair<double, double>> k;
    k.reserve(nodes.size());
    for (const auto& [N, s] : nodes) k.emplace_back(double(N), s);
    return k;
  }
};

// Growth condition (strict increase, sigma_{N+1} <= 2^beta sigma_N) checked
// on the supplied nodes, or on integer levels n_min..n_min+span for closed
// forms.
inline void validate(const GrowthSpec& g, int closed_form_span = 64) {
  if (!(g.beta > 0.0 && g.beta < 2.0))
    throw std::invalid_argument("GrowthSpec: beta must lie in (0,2)");
  if (g.kind == GrowthKind::nodes) {
    if (g.nodes.size() < 2) throw std::invalid_argument("GrowthSpec: need at least 2 nodes");
    for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i) {
      const auto& [N0, s0] = g.nodes[i];
      const auto& [N1, s1] = g.nodes[i + 1];
      if (!(N1 > N0 && s1 > s0))
        throw std::invalid_argument("GrowthSpec: nodes must increase strictly");
      if (s1 > std::exp2(g.beta * (N1 - N0)) * s0 * (1.0 + 1e-12))
        throw std::invalid_argument("GrowthSpec: growth condition sigma_{N+1} <= 2^beta sigma_N violated");
    }
  } else {
    double prev = g.sigma(double(g.n_min));
    for (int N = g.n_min + 1; N <= g.n_min + closed_form_span; ++N) {
      const double cur = g.sigma(double(N));
      if (!(cur > prev) || cur > std::exp2(g.beta) * prev * (1.0 + 1e-12))
        throw std::invalid_argument("GrowthSpec: closed form violates the growth condition");
      prev = cur;
    }
  }
}

// theta_k = 2^{-psi^{-1}(k)} for k = ceil(sigma_1)..K, where psi is the
// piecewise affine interpolant through the nodes (or the closed form).
// The tail bound comes from the geometric estimate sum_{n>N} sigma_n 4^{-n}
// <= sigma_{N+1} 4^{-(N+1)} / (1 - 2^{beta-2}).
inline ZeroSequence design_from_growth(const GrowthSpec& g, std::int64_t K) {
  validate(g);
  if (g.first_sigma() < 1.0)
    throw std::invalid_argument("design_from_growth: sigma at the first level must be >= 1");
  const auto k0 = std::int64_t(std::ceil(g.first_sigma()));
  if (K < k0) throw std::invalid_argument("design_from_growth: K < ceil(sigma_1)");
  ZeroSequence s;
  s.family_tag = FamilyTag::designed;
  s.description = "designed";
  s.zeros.reserve(std::size_t(K - k0 + 1));
  std::int64_t last = K;
  for (std::int64_t k = k0; k <= K; ++k) {
    const double th = std::exp2(-g.sigma_inverse(double(k)));
    if (!(th >= 0.0 && th < 1.0))
      throw std::invalid_argument("design_from_growth: designed theta outside (0,1)");
    if (!(th * th > 0.0)) { last = k - 1; break; }
    s.zeros.push_back({th * th, th});
  }
  const double N_last = g.sigma_inverse(double(last));
  const double head = g.sigma(N_last + 1.0) * std::exp2(-2.0 * (N_last + 1.0));
  s.tail_delta_sum = std::exp2(g.beta) * head / (1.0 - std::exp2(g.beta - 2.0));
  return s;
}

struct GrowthFunctions {
  PiecewiseAffine phi0;
  // phi(y) = phi0(log2 1/(1-y)); the argument is formed from delta = 1-y.
  double phi_at_delta(double delta) const {
    if (!(delta > 0.0 && delta < 1.0))
      throw std::domain_error("phi: radius outside (0,1)");
    return phi0(-std::log2(delta));
  }
  double phi_at_radius(double y) const { return phi_at_delta(1.0 - y); }
};

// phi0 interpolates (N, sigma_N); closed forms are sampled on integer levels.
inline GrowthFunctions phi_from_sigma(const GrowthSpec& g, int closed_form_span = 64) {
  validate(g, closed_form_span);
  std::vector<std::pair<double, double>> knots;
  if (g.kind == GrowthKind::nodes) {
    knots = g.node_knots();
  } else {
    knots.reserve(std::size_t(closed_form_span) + 1);
    for (int N = g.n_min; N <= g.n_min + closed_form_span; ++N)
      knots.emplace_back(double(N), g.sigma(double(N)));
  }
  return {PiecewiseAffine(std::move(knots))};
}

// sigma_N = sum_{n<=N} x_n (from the rule's first index)
inline double sigma_partial(const SequenceRule& x_rule, std::int64_t N) {
  if (N < x_rule.first_index)
    throw std::invalid_argument("sigma_partial: N below the rule's first index");
  double sum = 0.0;
  for (std::int64_t n = x_rule.first_index; n <= N; ++n) sum += x_rule.value(n);
  return sum;
}

// GrowthSpec with nodes sigma_N = partial sums of an x-rule, for feeding a
// tangential family's growth into phi.
inline GrowthSpec growth_from_partial_sums(const SequenceRule& x_rule, int N_max) {
  GrowthSpec g;
  g.kind = GrowthKind::nodes;
  double sum = 0.0;
  for (std::int64_t n = x_rule.first_index; n <= N_max; ++n) {
    sum += x_rule.value(n);
    g.nodes.emplace_back(int(n), sum);
  }
  return g;
}

struct WeakCondResult {
  double sup_ratio;
  bool passes;
};

// sup_{k<=K} x_{k+1}/x_k, the weakened tangentiality condition (< 2).
inline WeakCondResult weak_cond_check(const SequenceRule& x_rule, std::int64_t K) {
  if (K < x_rule.first_index + 1)
    throw std::invalid_argument("weak_cond_check: K >= first_index + 1 required");
  double sup = 0.0;
  double prev = x_rule.value(x_rule.first_index);
  for (std::int64_t k = x_rule.first_index + 1; k <= K; ++k) {
    const double cur = x_rule.value(k);
    sup = std::max(sup, cur / prev);
    prev = cur;
  }
  return {sup, sup < 2.0};
}

}  // namespace blaschke

#endif
