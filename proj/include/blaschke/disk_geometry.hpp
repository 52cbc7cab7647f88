#ifndef BLASCHKE_DISK_GEOMETRY_HPP
#define BLASCHKE_DISK_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

// Pseudo-hyperbolic geometry on the unit disk, written so that points
// within 1e-15 of the boundary keep full relative accuracy.  Points are
// stored as (delta, theta) with delta = 1 - |z|; no formula below ever
// computes 1 - r from r.

namespace blaschke {

template <typename Scalar>
struct BoundaryPointT {
  Scalar delta{1};  // 1 - modulus, in (0, 1]
  Scalar theta{0};  // argument, in (-pi, pi]

  Scalar modulus() const { return Scalar(1) - delta; }
  // 1 - r^2, computed without forming r^2
  Scalar one_minus_mod_sq() const { return delta * (Scalar(2) - delta); }
};

using BoundaryPoint = BoundaryPointT<double>;

template <typename Scalar>
inline bool valid(const BoundaryPointT<Scalar>& p) {
  return p.delta > Scalar(0) && p.delta <= Scalar(1);
}

// Non-tangential approach region at e^{i vertex_theta} with opening > 1.
struct StolzDomain {
  double opening;
  double vertex_theta = 0.0;
};

// 1 - r_a r_b = delta_a + delta_b - delta_a delta_b, exact in the deltas.
template <typename Scalar>
inline Scalar one_minus_rr(const BoundaryPointT<Scalar>& a,
                           const BoundaryPointT<Scalar>& b) {
  return a.delta + b.delta - a.delta * b.delta;
}

// |1 - conj(a) b|^2 = (1 - r_a r_b)^2 + 4 r_a r_b sin^2((theta_a - theta_b)/2)
template <typename Scalar>
inline Scalar dist_sq(const BoundaryPointT<Scalar>& a,
                      const BoundaryPointT<Scalar>& b) {
  using std::sin;
  const Scalar omr = one_minus_rr(a, b);
  const Scalar s = sin((a.theta - b.theta) / Scalar(2));
  return omr * omr +
         Scalar(4) * a.modulus() * b.modulus() * s * s;
}

// |1 - z|^2 for the boundary vertex zeta = 1.
template <typename Scalar>
inline Scalar dist_to_one_sq(const BoundaryPointT<Scalar>& z) {
  using std::sin;
  const Scalar s = sin(z.theta / Scalar(2));
  return z.delta * z.delta + Scalar(4) * z.modulus() * s * s;
}

// 1 - |b_a(b)|^2 = (1 - r_a^2)(1 - r_b^2) / |1 - conj(a) b|^2, in (0, 1].
template <typename Scalar>
inline Scalar pseudo_factor(const BoundaryPointT<Scalar>& a,
                            const BoundaryPointT<Scalar>& b) {
  return a.one_minus_mod_sq() * b.one_minus_mod_sq() / dist_sq(a, b);
}

// Pseudo-hyperbolic distance |b_a(b)| via the stable factor.
template <typename Scalar>
inline Scalar pseudo_distance(const BoundaryPointT<Scalar>& a,
                              const BoundaryPointT<Scalar>& b) {
  using std::sqrt;
  const Scalar f = Scalar(1) - pseudo_factor(a, b);
  return f > Scalar(0) ? sqrt(f) : Scalar(0);
}

// Membership in { |z - 1| < opening * (1 - |z|) }; vertex fixed at 1.
template <typename Scalar>
inline bool stolz_contains(const StolzDomain& d, const BoundaryPointT<Scalar>& z) {
  using std::sqrt;
  return sqrt(dist_to_one_sq(z)) < Scalar(d.opening) * z.delta;
}

// rho_N = 1 - 2^{-N} as a boundary point.
inline BoundaryPoint rho_point(int level_N) {
  return BoundaryPoint{std::ldexp(1.0, -level_N), 0.0};
}

// The quotient (1 - |z|^2) / |1 - rho_N z|^2 classifying z into the
// pseudo-hyperbolic bands of level N.
template <typename Scalar>
inline Scalar band_quotient(const BoundaryPointT<Scalar>& z, int level_N) {
  const BoundaryPointT<Scalar> rho{Scalar(std::ldexp(1.0, -level_N)), Scalar(0)};
  return z.one_minus_mod_sq() / dist_sq(rho, z);
}

// The unique n with band_quotient in [2^{-(n+1)}, 2^{-n}).  Bands with
// n < -N are empty, so the result is clamped there; floating-point hits
// on a band edge resolve by the ceil formula (within one band).
template <typename Scalar>
inline int annulus_index(const BoundaryPointT<Scalar>& z, int level_N) {
  if (level_N < 1) throw std::invalid_argument("annulus_index: level_N >= 1 required");
  const Scalar v = band_quotient(z, level_N);
  const int n = static_cast<int>(std::ceil(-std::log2(static_cast<double>(v)))) - 1;
  return n < -level_N ? -level_N : n;
}

struct AnnulusIndex {
  int level_N;
  int band_n;
};

}  // namespace blaschke

#endif
