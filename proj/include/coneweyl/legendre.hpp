#pragma once

// Legendre machinery: Gauss-Legendre rules, orthonormal associated Legendre
// functions (Condon-Shortley phase), Legendre P_l and second-kind Q_l.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace coneweyl {

inline constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

/// Index of (l, m >= 0) in a triangular table.
constexpr std::size_t tri_index(int l, int m) {
  return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
}
constexpr std::size_t tri_size(int lmax) { return tri_index(lmax + 1, 0); }

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// nodes sorted in decreasing order (theta increasing).
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = z;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

/// Orthonormal associated Legendre functions Pbar_lm(cos theta), m >= 0, such
/// that Y_lm = Pbar_lm e^{i m phi} is orthonormal on the sphere.
/// `x` = cos theta, `s` = sin theta >= 0. Output in tri_index layout.
inline void normalized_legendre(int lmax, double x, double s, std::span<double> out) {
  double pmm = 1.0 / std::sqrt(4.0 * pi);
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    out[tri_index(m, m)] = pmm;
    if (m == lmax) break;
    double p_prev = pmm;
    double p_cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
    out[tri_index(m + 1, m)] = p_cur;
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      const double p_next = a * (x * p_cur - b * p_prev);
      out[tri_index(l, m)] = p_next;
      p_prev = p_cur;
      p_cur = p_next;
    }
  }
}

/// d/dtheta of Pbar_lm from the ladder relation (no division by sin theta).
inline void normalized_legendre_dtheta(int lmax, std::span<const double> p, std::span<double> out) {
  for (int l = 0; l <= lmax; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double up = (m < l) ? std::sqrt(static_cast<double>(l - m) * (l + m + 1)) * p[tri_index(l, m + 1)] : 0.0;
      double down;
      if (m == 0) {
        // Pbar_{l,-1} = -Pbar_{l,1}
        down = (l > 0) ? -std::sqrt(static_cast<double>(l) * (l + 1)) * p[tri_index(l, 1)] : 0.0;
      } else {
        down = std::sqrt(static_cast<double>(l + m) * (l - m + 1)) * p[tri_index(l, m - 1)];
      }
      out[tri_index(l, m)] = 0.5 * (up - down);
    }
  }
}

/// Legendre polynomials P_0..P_lmax at x.
inline std::vector<double> legendre_p(int lmax, double x) {
  std::vector<double> p(lmax + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int l = 1; l < lmax; ++l) p[l + 1] = ((2.0 * l + 1.0) * x * p[l] - l * p[l - 1]) / (l + 1.0);
  return p;
}

/// Ferrers functions of the second kind on the cut, |x| < 1:
/// Q_l(x) = (1/2) PV int_{-1}^{1} P_l(t) / (x - t) dt. Forward recurrence is stable here.
inline std::vector<double> ferrers_q(int lmax, double x) {
  if (!(std::abs(x) < 1.0)) throw std::domain_error("ferrers_q: |x| must be < 1");
  std::vector<double> q(lmax + 1);
  q[0] = 0.5 * std::log((1.0 + x) / (1.0 - x));
  if (lmax >= 1) q[1] = x * q[0] - 1.0;
  for (int l = 1; l < lmax; ++l) q[l + 1] = ((2.0 * l + 1.0) * x * q[l] - l * q[l - 1]) / (l + 1.0);
  return q;
}

/// Legendre functions of the second kind off the cut [-1, 1]:
/// Q_l(z) = (1/2) int_{-1}^{1} P_l(t) / (z - t) dt. Q_l is the minimal solution of
/// the three-term recurrence, so it is computed by Miller's backward recurrence
/// normalized to Q_0 = (1/2) log((z+1)/(z-1)).
inline std::vector<cplx> legendre_q(int lmax, cplx z) {
  if (std::abs(z.imag()) == 0.0 && std::abs(z.real()) <= 1.0)
    throw std::domain_error("legendre_q: z lies on the cut [-1, 1]");
  const cplx root = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  const double r = std::max(std::abs(z + root), std::abs(z - root));
  const double decay = std::log(r);
  int extra = 40;
  if (decay > 0.0) extra += static_cast<int>(std::ceil(45.0 / decay));
  else extra += 200000;
  const int nstart = lmax + std::min(extra, 400000);

  std::vector<cplx> q(lmax + 1);
  cplx q_next(0.0);   // Q_{l+1}
  cplx q_cur(1e-30);  // Q_l, arbitrary seed
  for (int l = nstart; l >= 1; --l) {
    // l Q_{l-1} = (2l+1) z Q_l - (l+1) Q_{l+1}
    const cplx q_prev = ((2.0 * l + 1.0) * z * q_cur - (l + 1.0) * q_next) / static_cast<double>(l);
    q_next = q_cur;
    q_cur = q_prev;
    if (l - 1 <= lmax) q[l - 1] = q_cur;
    if (std::abs(q_cur) > 1e200) {
      q_cur *= 1e-200;
      q_next *= 1e-200;
      for (int k = std::max(l - 1, 0); k <= lmax; ++k) q[k] *= 1e-200;
    }
  }
  const cplx q0 = 0.5 * (std::log(z + 1.0) - std::log(z - 1.0));
  const cplx scale = q0 / q[0];
  for (auto& v : q) v *= scale;
  return q;
}

}  // namespace coneweyl
