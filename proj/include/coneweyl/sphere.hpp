#pragma once

// Spherical-harmonic transforms on a Gauss-Legendre x uniform-phi product grid.
// Coefficients use orthonormal complex harmonics with the Condon-Shortley
// phase, Y_{l,-m} = (-1)^m conj(Y_lm), stored at index l*l + l + m.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "coneweyl/legendre.hpp"
#include "coneweyl/minkowski.hpp"

namespace coneweyl {

constexpr std::size_t sh_index(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }
constexpr std::size_t sh_size(int lmax) { return static_cast<std::size_t>((lmax + 1) * (lmax + 1)); }

/// Product quadrature on S^2: Gauss-Legendre in cos(theta), uniform in phi.
/// With the default sizes (n_theta = 2L+2, n_phi = 4L+4) products of harmonics
/// up to combined degree 2L are integrated exactly, and band-L analysis of
/// smooth non-band-limited data is oversampled by a factor of two.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int lmax, int n_theta = 0, int n_phi = 0)
      : lmax_(lmax), n_theta_(n_theta > 0 ? n_theta : 2 * lmax + 2), n_phi_(n_phi > 0 ? n_phi : 4 * lmax + 4) {
    if (lmax < 0) throw std::invalid_argument("QuadratureGrid: negative lmax");
    if (n_theta_ < lmax + 1 || n_phi_ < 2 * lmax + 1)
      throw std::invalid_argument("QuadratureGrid: grid too small for requested band limit");
    gauss_legendre(n_theta_, x_, w_);
    s_.resize(n_theta_);
    const std::size_t nt = tri_size(lmax_);
    plm_.resize(n_theta_ * nt);
    dplm_.resize(n_theta_ * nt);
    for (int i = 0; i < n_theta_; ++i) {
      s_[i] = std::sqrt(std::max(0.0, (1.0 - x_[i]) * (1.0 + x_[i])));
      std::span<double> p(plm_.data() + i * nt, nt);
      normalized_legendre(lmax_, x_[i], s_[i], p);
      normalized_legendre_dtheta(lmax_, p, std::span<double>(dplm_.data() + i * nt, nt));
    }
    phi_.resize(n_phi_);
    for (int j = 0; j < n_phi_; ++j) phi_[j] = 2.0 * pi * j / n_phi_;
    const int nm = 2 * lmax_ + 1;
    expm_.resize(static_cast<std::size_t>(n_phi_) * nm);
    for (int j = 0; j < n_phi_; ++j)
      for (int m = -lmax_; m <= lmax_; ++m) expm_[j * nm + (m + lmax_)] = std::polar(1.0, m * phi_[j]);
  }

  int lmax() const { return lmax_; }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }

  double cos_theta(int i) const { return x_[i]; }
  double sin_theta(int i) const { return s_[i]; }
  double phi(int j) const { return phi_[j]; }
  double theta_weight(int i) const { return w_[i]; }
  double weight(int i, int /*j*/) const { return w_[i] * 2.0 * pi / n_phi_; }
  double weight(std::size_t k) const { return weight(static_cast<int>(k / n_phi_), 0); }

  Vec3 node(int i, int j) const {
    return {s_[i] * std::cos(phi_[j]), s_[i] * std::sin(phi_[j]), x_[i]};
  }
  Vec3 node(std::size_t k) const { return node(static_cast<int>(k / n_phi_), static_cast<int>(k % n_phi_)); }

  std::span<const double> legendre(int i) const { return {plm_.data() + i * tri_size(lmax_), tri_size(lmax_)}; }
  std::span<const double> legendre_dtheta(int i) const {
    return {dplm_.data() + i * tri_size(lmax_), tri_size(lmax_)};
  }
  /// e^{i m phi_j}, |m| <= lmax.
  cplx expm(int j, int m) const { return expm_[j * (2 * lmax_ + 1) + (m + lmax_)]; }

  double weight_sum() const {
    double s = 0.0;
    for (int i = 0; i < n_theta_; ++i) s += w_[i];
    return s * 2.0 * pi;
  }

 private:
  int lmax_, n_theta_, n_phi_;
  std::vector<double> x_, w_, s_, phi_;
  std::vector<double> plm_, dplm_;
  std::vector<cplx> expm_;
};

/// Shared read-only grid for band limit lmax (default sizes).
inline const QuadratureGrid& grid_for(int lmax) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureGrid>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[lmax];
  if (!slot) slot = std::make_unique<QuadratureGrid>(lmax);
  return *slot;
}

namespace detail {

// Per-ring Fourier amplitudes A(m) = sum_l f_lm Pbar_l|m| (with the (-1)^m
// factor for m < 0), using the table `p`.
inline void ring_amplitudes(int lmax, std::span<const cplx> f, std::span<const double> p, std::vector<cplx>& a) {
  a.assign(2 * lmax + 1, cplx(0.0));
  for (int m = -lmax; m <= lmax; ++m) {
    const int am = std::abs(m);
    const double sign = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
    cplx acc(0.0);
    for (int l = am; l <= lmax; ++l) acc += f[sh_index(l, m)] * p[tri_index(l, am)];
    a[m + lmax] = sign * acc;
  }
}

}  // namespace detail

/// Section values on the grid of a band-lmax expansion (lmax <= grid.lmax()).
inline std::vector<cplx> synthesize(const QuadratureGrid& g, int lmax, std::span<const cplx> f) {
  if (lmax > g.lmax()) throw std::invalid_argument("synthesize: band limit exceeds grid");
  std::vector<cplx> out(g.size());
  std::vector<cplx> a;
  for (int i = 0; i < g.n_theta(); ++i) {
    detail::ring_amplitudes(lmax, f, g.legendre(i), a);
    for (int j = 0; j < g.n_phi(); ++j) {
      cplx acc(0.0);
      for (int m = -lmax; m <= lmax; ++m) acc += a[m + lmax] * g.expm(j, m);
      out[static_cast<std::size_t>(i) * g.n_phi() + j] = acc;
    }
  }
  return out;
}

/// Cartesian components of the tangential gradient on the unit sphere.
struct TangentialGradient {
  std::vector<cplx> x, y, z;
};

inline TangentialGradient synthesize_gradient(const QuadratureGrid& g, int lmax, std::span<const cplx> f) {
  if (lmax > g.lmax()) throw std::invalid_argument("synthesize_gradient: band limit exceeds grid");
  TangentialGradient out{std::vector<cplx>(g.size()), std::vector<cplx>(g.size()), std::vector<cplx>(g.size())};
  std::vector<cplx> a, da;
  for (int i = 0; i < g.n_theta(); ++i) {
    detail::ring_amplitudes(lmax, f, g.legendre(i), a);
    detail::ring_amplitudes(lmax, f, g.legendre_dtheta(i), da);
    const double ct = g.cos_theta(i), st = g.sin_theta(i);
    for (int j = 0; j < g.n_phi(); ++j) {
      cplx f_theta(0.0), f_phi(0.0);
      for (int m = -lmax; m <= lmax; ++m) {
        const cplx e = g.expm(j, m);
        f_theta += da[m + lmax] * e;
        f_phi += cplx(0.0, m) * a[m + lmax] * e;
      }
      f_phi /= st;  // (1/sin theta) d/dphi; Gauss nodes avoid the poles
      const double cp = std::cos(g.phi(j)), sp = std::sin(g.phi(j));
      const std::size_t k = static_cast<std::size_t>(i) * g.n_phi() + j;
      out.x[k] = ct * cp * f_theta - sp * f_phi;
      out.y[k] = ct * sp * f_theta + cp * f_phi;
      out.z[k] = -st * f_theta;
    }
  }
  return out;
}

/// Band-lmax harmonic coefficients of grid samples (lmax <= grid.lmax()).
inline std::vector<cplx> analyze(const QuadratureGrid& g, std::span<const cplx> values, int lmax) {
  if (lmax > g.lmax()) throw std::invalid_argument("analyze: band limit exceeds grid");
  if (values.size() != g.size()) throw std::invalid_argument("analyze: sample count does not match grid");
  std::vector<cplx> f(sh_size(lmax), cplx(0.0));
  std::vector<cplx> ring(2 * lmax + 1);
  const double dphi = 2.0 * pi / g.n_phi();
  for (int i = 0; i < g.n_theta(); ++i) {
    const cplx* row = values.data() + static_cast<std::size_t>(i) * g.n_phi();
    for (int m = -lmax; m <= lmax; ++m) {
      cplx acc(0.0);
      for (int j = 0; j < g.n_phi(); ++j) acc += row[j] * std::conj(g.expm(j, m));
      ring[m + lmax] = acc * dphi;
    }
    const auto p = g.legendre(i);
    const double w = g.theta_weight(i);
    for (int m = -lmax; m <= lmax; ++m) {
      const int am = std::abs(m);
      const double sign = (m < 0 && (am % 2 == 1)) ? -1.0 : 1.0;
      const cplx r = ring[m + lmax] * (w * sign);
      for (int l = am; l <= lmax; ++l) f[sh_index(l, m)] += r * p[tri_index(l, am)];
    }
  }
  return f;
}

/// sum_lm weight_l f_lm Y_lm(n) at an arbitrary unit vector n. Empty weights mean 1.
inline cplx evaluate_weighted(int lmax, std::span<const cplx> f, const Vec3& n, std::span<const cplx> weight_l = {}) {
  const double x = std::clamp(n[2], -1.0, 1.0);
  const double s = std::hypot(n[0], n[1]);
  const cplx eiphi = (s > 0.0) ? cplx(n[0] / s, n[1] / s) : cplx(1.0, 0.0);
  thread_local std::vector<double> p;
  p.resize(tri_size(lmax));
  normalized_legendre(lmax, x, s, p);
  cplx total(0.0);
  cplx em(1.0);  // e^{i m phi}
  for (int m = 0; m <= lmax; ++m) {
    cplx pos(0.0), neg(0.0);
    for (int l = m; l <= lmax; ++l) {
      const cplx w = weight_l.empty() ? cplx(1.0) : weight_l[l];
      const double pl = p[tri_index(l, m)];
      pos += w * f[sh_index(l, m)] * pl;
      if (m > 0) neg += w * f[sh_index(l, -m)] * pl;
    }
    total += pos * em;
    if (m > 0) total += ((m % 2) ? -1.0 : 1.0) * neg * std::conj(em);
    em *= eiphi;
  }
  return total;
}

inline cplx evaluate(int lmax, std::span<const cplx> f, const Vec3& n) { return evaluate_weighted(lmax, f, n); }

}  // namespace coneweyl
