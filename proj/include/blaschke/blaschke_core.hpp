#ifndef BLASCHKE_CORE_HPP
#define BLASCHKE_CORE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "blaschke/disk_geometry.hpp"
#include "blaschke/zero_sequence.hpp"

// Stable evaluation of Blaschke products and model-space reproducing
// kernels.  |B| lives in the log domain throughout: each factor enters as
// (1/2) log1p(-pseudo_factor), and 1 - |B|^2 is recovered with expm1, so
// moduli within 2^{-40} of 1 keep relative accuracy.

namespace blaschke {

// B(z) as (log |B(z)|, arg B(z) mod 2pi).  log_modulus == -inf marks an
// evaluation point that coincides with a zero.
struct ComplexValue {
  double log_modulus = 0.0;
  double argument = 0.0;

  bool is_zero() const { return std::isinf(log_modulus); }
  std::complex<double> value() const {
    if (is_zero()) return {0.0, 0.0};
    const double m = std::exp(log_modulus);
    return {m * std::cos(argument), m * std::sin(argument)};
  }
};

enum class KernelMethod { exact_modulus, keylemma_sum };

struct KernelEstimate {
  double value = 0.0;       // kernel norm squared
  double tail_bound = 0.0;  // bound on the omitted tail's contribution
  KernelMethod method = KernelMethod::exact_modulus;
};

// sum (1 - |lambda_n|) over the truncation; the certified tail is carried
// separately on the sequence.
inline double blaschke_sum(const ZeroSequence& s) {
  double sum = 0.0;
  for (const auto& z : s.zeros) sum += z.delta;
  return sum;
}

// sum (1 - |lambda_n|) / |1 - lambda_n|
inline double frostman_sum(const ZeroSequence& s) {
  double sum = 0.0;
  for (const auto& z : s.zeros) sum += z.delta / std::sqrt(dist_to_one_sq(z));
  return sum;
}

// sum (1 - |lambda_n|) / |1 - lambda_n|^2
inline double ahern_clark_sum(const ZeroSequence& s) {
  double sum = 0.0;
  for (const auto& z : s.zeros) sum += z.delta / dist_to_one_sq(z);
  return sum;
}

// arg b_lambda(z) = arg(z - lambda) - arg(1 - conj(lambda) z)
inline double factor_argument(const BoundaryPoint& lam, const BoundaryPoint& z) {
  const double rl = lam.modulus(), rz = z.modulus();
  const double num_re = rz * std::cos(z.theta) - rl * std::cos(lam.theta);
  const double num_im = rz * std::sin(z.theta) - rl * std::sin(lam.theta);
  // 1 - conj(lambda) z = 1 - rl rz e^{i(theta_z - theta_lam)}
  const double d = z.theta - lam.theta;
  const double sh = std::sin(d / 2);
  const double den_re = one_minus_rr(lam, z) + 2 * rl * rz * sh * sh;
  const double den_im = -rl * rz * std::sin(d);
  return std::atan2(num_im, num_re) - std::atan2(den_im, den_re);
}

// 1 - conj(lambda) z as a complex number, real part via the delta form.
inline std::complex<double> one_minus_conj_mul(const BoundaryPoint& lam,
                                               const BoundaryPoint& z) {
  const double rl = lam.modulus(), rz = z.modulus();
  const double d = z.theta - lam.theta;
  const double sh = std::sin(d / 2);
  return {one_minus_rr(lam, z) + 2 * rl * rz * sh * sh, -rl * rz * std::sin(d)};
}

// B(z) over the truncated product.  If z equals a zero the result carries
// log_modulus = -inf.
inline ComplexValue eval_B(const ZeroSequence& s, const BoundaryPoint& z) {
  double log_mod = 0.0;
  double arg = 0.0;
  for (const auto& lam : s.zeros) {
    const double pf = pseudo_factor(lam, z);
    if (pf >= 1.0) {
      return {-std::numeric_limits<double>::infinity(), 0.0};
    }
    log_mod += 0.5 * std::log1p(-pf);
    arg += factor_argument(lam, z);
  }
  arg = std::remainder(arg, 2 * M_PI);
  return {log_mod, arg};
}

// Tail bound shared by both kernel methods: every omitted zero contributes
// at most 2 (1 - |lambda|) / (1 - |z|)^2, since |1 - conj(lambda) z| >= 1 - |z|.
inline double kernel_tail_bound(const ZeroSequence& s, const BoundaryPoint& z) {
  return 2.0 * s.tail_delta_sum / (z.delta * z.delta);
}

// ||k_z||^2 = (1 - |B(z)|^2) / (1 - |z|^2) through the log-domain modulus.
inline KernelEstimate kernel_norm_sq_exact(const ZeroSequence& s,
                                           const BoundaryPoint& z) {
  const ComplexValue b = eval_B(s, z);
  const double one_minus_mod_sq =
      b.is_zero() ? 1.0 : -std::expm1(2.0 * b.log_modulus);
  return {one_minus_mod_sq / z.one_minus_mod_sq(), kernel_tail_bound(s, z),
          KernelMethod::exact_modulus};
}

// The comparable sum  sum (1 - r_n^2) / |1 - conj(lambda_n) z|^2.
inline KernelEstimate kernel_norm_sq_sum(const ZeroSequence& s,
                                         const BoundaryPoint& z) {
  double sum = 0.0;
  for (const auto& lam : s.zeros)
    sum += lam.one_minus_mod_sq() / dist_sq(lam, z);
  return {sum, kernel_tail_bound(s, z), KernelMethod::keylemma_sum};
}

// k_lam(z) = (1 - conj(B(lam)) B(z)) / (1 - conj(lam) z).  The numerator is
// assembled from log-domain moduli so that values with |B| ~ 1 - 2^{-40}
// do not cancel.
inline std::complex<double> kernel_eval(const ZeroSequence& s,
                                        const BoundaryPoint& lam,
                                        const BoundaryPoint& z) {
  const ComplexValue bl = eval_B(s, lam);
  const ComplexValue bz = eval_B(s, z);
  if (bl.is_zero() || bz.is_zero())
    return std::complex<double>(1.0, 0.0) / one_minus_conj_mul(lam, z);
  // w = conj(B(lam)) B(z); 1 - w with Re part via expm1 of the log modulus
  const double lw = bl.log_modulus + bz.log_modulus;
  const double phi = bz.argument - bl.argument;
  const double sh = std::sin(phi / 2);
  const std::complex<double> num(-std::expm1(lw) + 2 * std::exp(lw) * sh * sh,
                                 -std::exp(lw) * std::sin(phi));
  return num / one_minus_conj_mul(lam, z);
}

// min over consecutive pairs of the pseudo-hyperbolic distance.
inline double separation_constant(const ZeroSequence& s) {
  if (s.zeros.size() < 2)
    throw std::invalid_argument("separation_constant: need at least 2 zeros");
  double sep = 1.0;
  for (std::size_t i = 0; i + 1 < s.zeros.size(); ++i)
    sep = std::min(sep, pseudo_distance(s.zeros[i], s.zeros[i + 1]));
  return sep;
}

struct StolzTransfer {
  int level_N;    // the level whose rho_N is pseudo-hyperbolically nearest to z
  double epsilon; // pseudo_distance(z, rho_N)
  double ratio;   // kernel sum at z over kernel sum at rho_N
  double bound;   // ((1 + eps)/(1 - eps))^2
};

// Transfer of the kernel sum from z in a Stolz domain to the nearest rho_N.
// The per-term denominators change by at most (1 +- eps), so the returned
// ratio must land in [1/bound, bound].
inline StolzTransfer stolz_transfer_check(const ZeroSequence& s,
                                          const BoundaryPoint& z,
                                          const StolzDomain& d,
                                          int max_level = 64) {
  if (!stolz_contains(d, z) || z.modulus() <= 0.5)
    throw std::invalid_argument("stolz_transfer_check: need z in the domain with |z| > 1/2");
  int best_N = -1;
  double best_eps = 1.0;
  for (int N = 1; N <= max_level; ++N) {
    const double e = pseudo_distance(z, rho_point(N));
    if (e < best_eps) {
      best_eps = e;
      best_N = N;
    }
  }
  if (best_N < 0 || best_eps >= 1.0)
    throw std::runtime_error("stolz_transfer_check: no rho_N within pseudo-distance < 1");
  const double ratio = kernel_norm_sq_sum(s, z).value /
                       kernel_norm_sq_sum(s, rho_point(best_N)).value;
  const double bound = best_eps < 1.0
                           ? std::pow((1 + best_eps) / (1 - best_eps), 2)
                           : std::numeric_limits<double>::infinity();
  return {best_N, best_eps, ratio, bound};
}

}  // namespace blaschke

#endif
