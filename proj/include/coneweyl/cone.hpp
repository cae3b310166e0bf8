#pragma once

// Homogeneous functions on the future light cone, stored through their
// restriction to the unit section l = (1, n), and the calculus on them.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <utility>
#include <vector>

#include "coneweyl/errors.hpp"
#include "coneweyl/minkowski.hpp"
#include "coneweyl/parallel.hpp"
#include "coneweyl/sphere.hpp"

namespace coneweyl {

inline constexpr int default_lmax = 48;

/// Antisymmetric index pairs (a < b) in the order 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::pair<int, int>, 6> planes{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// l_a on the unit section, lowered: (1, -n).
inline std::array<double, 4> lowered_null(const Vec3& n) { return {1.0, -n[0], -n[1], -n[2]}; }

class ConeFunction {
 public:
  ConeFunction() : ConeFunction(0, 0) {}

  /// Zero function of the given degree and band limit.
  ConeFunction(int degree, int lmax) : degree_(degree), lmax_(lmax), coeffs_(sh_size(lmax)), real_(true) {
    check_degree(degree);
  }

  ConeFunction(int degree, int lmax, std::vector<cplx> coeffs, bool real)
      : degree_(degree), lmax_(lmax), coeffs_(std::move(coeffs)), real_(real) {
    check_degree(degree);
    if (lmax < 0 || coeffs_.size() != sh_size(lmax))
      throw std::invalid_argument("ConeFunction: coefficient count does not match lmax");
    if (real_) enforce_conjugate_symmetry();
  }

  /// Projection of section values n -> fn(n) onto band lmax.
  template <class Fn>
  static ConeFunction project(int degree, int lmax, Fn&& fn, bool real) {
    const auto& g = grid_for(lmax);
    std::vector<cplx> values(g.size());
    parallel_for(static_cast<std::size_t>(g.n_theta()), [&](std::size_t i) {
      for (int j = 0; j < g.n_phi(); ++j)
        values[i * g.n_phi() + j] = cplx(fn(g.node(static_cast<int>(i), j)));
    });
    return ConeFunction(degree, lmax, analyze(g, values, lmax), real);
  }

  static ConeFunction from_samples(int degree, const QuadratureGrid& g, std::span<const cplx> values, int lmax,
                                   bool real) {
    return ConeFunction(degree, lmax, analyze(g, values, lmax), real);
  }

  /// Degree-0 constant.
  static ConeFunction constant(cplx value, int lmax) {
    ConeFunction f(0, lmax);
    f.coeffs_[0] = value * std::sqrt(4.0 * pi);
    f.real_ = value.imag() == 0.0;
    return f;
  }

  int degree() const { return degree_; }
  int lmax() const { return lmax_; }
  bool is_real() const { return real_; }
  std::span<const cplx> coeffs() const { return coeffs_; }

  cplx coeff(int l, int m) const {
    if (l < 0 || l > lmax_ || std::abs(m) > l) return cplx(0.0);
    return coeffs_[sh_index(l, m)];
  }

  /// Section value f(1, n).
  cplx operator()(const Vec3& n) const { return evaluate(lmax_, coeffs_, n); }

  /// Value at a future null vector, using homogeneity f(lambda l) = lambda^degree f(l).
  cplx at(const FourVector& l) const {
    const double t = l[0];
    if (!(t > 0.0)) throw DomainError("ConeFunction::at: point is not on the future cone");
    const Vec3 n{l[1] / t, l[2] / t, l[3] / t};
    return std::pow(t, degree_) * (*this)(n);
  }

  std::vector<cplx> samples(const QuadratureGrid& g) const { return synthesize(g, lmax_, coeffs_); }

  /// Pad with zeros or truncate to a new band limit.
  ConeFunction with_lmax(int lmax) const {
    std::vector<cplx> c(sh_size(lmax), cplx(0.0));
    const int lm = std::min(lmax, lmax_);
    std::copy_n(coeffs_.begin(), sh_size(lm), c.begin());
    ConeFunction out(degree_, lmax, std::move(c), false);
    out.real_ = real_;
    return out;
  }

  ConeFunction with_degree(int degree) const {
    ConeFunction out = *this;
    check_degree(degree);
    out.degree_ = degree;
    return out;
  }

  /// Drops the l = 0 component (class modulo constants for degree 0).
  ConeFunction without_mean() const {
    ConeFunction out = *this;
    out.coeffs_[0] = 0.0;
    return out;
  }

  ConeFunction conj() const {
    std::vector<cplx> c(coeffs_.size());
    for (int l = 0; l <= lmax_; ++l)
      for (int m = -l; m <= l; ++m)
        c[sh_index(l, m)] = ((m % 2) ? -1.0 : 1.0) * std::conj(coeffs_[sh_index(l, -m)]);
    return {degree_, lmax_, std::move(c), real_};
  }
  ConeFunction real_part() const { return ((*this + conj()) * 0.5).as_real(); }
  ConeFunction imag_part() const { return ((*this - conj()) * cplx(0.0, -0.5)).as_real(); }

  /// Coefficient 2-norm, equal to the L2(S^2) norm of the section.
  double norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
  }

  ConeFunction& operator+=(const ConeFunction& o) { return accumulate(o, 1.0); }
  ConeFunction& operator-=(const ConeFunction& o) { return accumulate(o, -1.0); }
  friend ConeFunction operator+(ConeFunction a, const ConeFunction& b) { return a += b; }
  friend ConeFunction operator-(ConeFunction a, const ConeFunction& b) { return a -= b; }
  friend ConeFunction operator-(ConeFunction a) { return a * -1.0; }
  friend ConeFunction operator*(ConeFunction a, cplx s) {
    for (auto& c : a.coeffs_) c *= s;
    a.real_ = a.real_ && s.imag() == 0.0;
    return a;
  }
  friend ConeFunction operator*(ConeFunction a, double s) { return a * cplx(s); }
  friend ConeFunction operator*(cplx s, ConeFunction a) { return std::move(a) * s; }
  friend ConeFunction operator*(double s, ConeFunction a) { return std::move(a) * cplx(s); }

 private:
  static void check_degree(int degree) {
    if (degree != 0 && degree != -1 && degree != -2)
      throw DomainError("ConeFunction: homogeneity degree must be 0, -1 or -2");
  }

  ConeFunction& as_real() {
    real_ = true;
    enforce_conjugate_symmetry();
    return *this;
  }

  ConeFunction& accumulate(const ConeFunction& o, double sign) {
    if (o.degree_ != degree_) throw DomainError("ConeFunction: adding functions of different degree");
    if (o.lmax_ > lmax_) *this = with_lmax(o.lmax_);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += sign * o.coeffs_[k];
    real_ = real_ && o.real_;
    return *this;
  }

  void enforce_conjugate_symmetry() {
    for (int l = 0; l <= lmax_; ++l) {
      coeffs_[sh_index(l, 0)] = coeffs_[sh_index(l, 0)].real();
      for (int m = 1; m <= l; ++m) {
        const double sign = (m % 2) ? -1.0 : 1.0;
        const cplx avg = 0.5 * (coeffs_[sh_index(l, m)] + sign * std::conj(coeffs_[sh_index(l, -m)]));
        coeffs_[sh_index(l, m)] = avg;
        coeffs_[sh_index(l, -m)] = sign * std::conj(avg);
      }
    }
  }

  int degree_;
  int lmax_;
  std::vector<cplx> coeffs_;
  bool real_;
};

/// Coefficient-space distance of two functions of equal degree.
inline double distance(const ConeFunction& a, const ConeFunction& b) { return (a - b).norm(); }

/// max over the grid nodes of |f(1, n)|.
inline double section_sup_norm(const ConeFunction& f, int grid_lmax = -1) {
  const auto& g = grid_for(grid_lmax < 0 ? f.lmax() : grid_lmax);
  double m = 0.0;
  for (const auto& v : f.samples(g)) m = std::max(m, std::abs(v));
  return m;
}

/// int conj(a) b dOmega (Parseval).
inline cplx l2_inner(const ConeFunction& a, const ConeFunction& b) {
  const int lm = std::min(a.lmax(), b.lmax());
  cplx s(0.0);
  for (std::size_t k = 0; k < sh_size(lm); ++k) s += std::conj(a.coeffs()[k]) * b.coeffs()[k];
  return s;
}

/// int a b dOmega, no conjugation: uses int Y_lm Y_l'm' = (-1)^m delta_ll' delta_m,-m'.
inline cplx product_integral(const ConeFunction& a, const ConeFunction& b) {
  const int lm = std::min(a.lmax(), b.lmax());
  cplx s(0.0);
  for (int l = 0; l <= lm; ++l)
    for (int m = -l; m <= l; ++m) s += ((m % 2) ? -1.0 : 1.0) * a.coeffs()[sh_index(l, m)] * b.coeffs()[sh_index(l, -m)];
  return s;
}

/// The same integral by direct quadrature on a grid fine enough for the product.
inline cplx product_integral_quadrature(const ConeFunction& a, const ConeFunction& b) {
  const auto& g = grid_for(a.lmax() + b.lmax());
  const auto va = a.samples(g), vb = b.samples(g);
  cplx s(0.0);
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weight(k) * va[k] * vb[k];
  return s;
}

/// Lorentz-invariant integral int c(l) d^2l of a degree -2 function: sqrt(4 pi) c_00.
inline cplx integrate_invariant(const ConeFunction& c) {
  if (c.degree() != -2) throw DomainError("integrate_invariant: degree must be -2");
  return std::sqrt(4.0 * pi) * c.coeff(0, 0);
}

/// Same integral by quadrature over the section.
inline cplx integrate_invariant_quadrature(const ConeFunction& c) {
  if (c.degree() != -2) throw DomainError("integrate_invariant: degree must be -2");
  const auto& g = grid_for(c.lmax());
  const auto v = c.samples(g);
  cplx s(0.0);
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weight(k) * v[k];
  return s;
}

/// d^2 of a degree-0 function restricted to the cone: coefficientwise l(l+1).
inline ConeFunction dsquare(const ConeFunction& f) {
  if (f.degree() != 0) throw DomainError("dsquare: degree must be 0");
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (int l = 0; l <= f.lmax(); ++l)
    for (int m = -l; m <= l; ++m) c[sh_index(l, m)] *= static_cast<double>(l) * (l + 1);
  return {-2, f.lmax(), std::move(c), f.is_real()};
}

/// Degree-0 potential F with d^2 F = c and F_00 = 0. Throws NotCoexact when
/// |int c| exceeds `tol_abs` (default 1e-10 * |c|).
inline ConeFunction solve_F(const ConeFunction& c, double tol_abs = -1.0) {
  if (c.degree() != -2) throw DomainError("solve_F: degree must be -2");
  if (tol_abs < 0.0) tol_abs = 1e-10 * std::max(c.norm(), 1e-300);
  const double mean = std::abs(integrate_invariant(c));
  if (mean > tol_abs) {
    std::ostringstream os;
    os << "solve_F: int c = " << mean << " is not zero; the charge index is nonzero";
    throw NotCoexact(os.str(), mean);
  }
  std::vector<cplx> f(c.coeffs().begin(), c.coeffs().end());
  f[0] = 0.0;
  for (int l = 1; l <= c.lmax(); ++l)
    for (int m = -l; m <= l; ++m) f[sh_index(l, m)] /= static_cast<double>(l) * (l + 1);
  return {0, c.lmax(), std::move(f), c.is_real()};
}

/// (1/4 pi) sum l(l+1) conj(a_lm) b_lm: the product (1/4 pi) int conj(a) d^2 b.
inline cplx k_product(const ConeFunction& a, const ConeFunction& b) {
  const int lm = std::min(a.lmax(), b.lmax());
  cplx s(0.0);
  for (int l = 1; l <= lm; ++l) {
    cplx sl(0.0);
    for (int m = -l; m <= l; ++m) sl += std::conj(a.coeffs()[sh_index(l, m)]) * b.coeffs()[sh_index(l, m)];
    s += static_cast<double>(l) * (l + 1) * sl;
  }
  return s / (4.0 * pi);
}

/// Grid samples of the canonical-extension gradient d_a f (lower index):
/// the extension (l^0)^deg f(1, l/|l|) gives d_0 f = deg f and spatial
/// components equal to the tangential gradient of the section.
inline std::array<std::vector<cplx>, 4> gradient_samples(const ConeFunction& f, const QuadratureGrid& g) {
  auto vals = f.samples(g);
  auto tg = synthesize_gradient(g, f.lmax(), f.coeffs());
  for (auto& v : vals) v *= static_cast<double>(f.degree());
  return {std::move(vals), std::move(tg.x), std::move(tg.y), std::move(tg.z)};
}

/// One representative of d_a f, a = 0..3, each of degree deg - 1. Any other
/// extension changes it by a multiple of l_a; consumers contract it so that
/// such terms drop out (l^a d_a, l_a d_b - l_b d_a, or null m^a with m.l = 0).
inline std::array<ConeFunction, 4> cone_gradient(const ConeFunction& f) {
  if (f.degree() == -1) throw DomainError("cone_gradient: degree must be 0 or -2");
  const int lo = f.lmax() + 1;
  const auto& g = grid_for(lo);
  const auto d = gradient_samples(f, g);
  return {ConeFunction::from_samples(f.degree() - 1, g, d[0], lo, f.is_real()),
          ConeFunction::from_samples(f.degree() - 1, g, d[1], lo, f.is_real()),
          ConeFunction::from_samples(f.degree() - 1, g, d[2], lo, f.is_real()),
          ConeFunction::from_samples(f.degree() - 1, g, d[3], lo, f.is_real())};
}

/// L_ab f = l_a d_b f - l_b d_a f for all six planes. Same degree as f, band lmax+1.
inline std::array<ConeFunction, 6> lorentz_generators(const ConeFunction& f) {
  if (f.degree() == -1) throw DomainError("lorentz_generator: degree must be 0 or -2");
  const int lo = f.lmax() + 1;
  const auto& g = grid_for(lo);
  const auto d = gradient_samples(f, g);
  std::array<ConeFunction, 6> out;
  std::vector<cplx> v(g.size());
  for (std::size_t p = 0; p < planes.size(); ++p) {
    const auto [a, b] = planes[p];
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto la = lowered_null(g.node(k));
      v[k] = la[a] * d[b][k] - la[b] * d[a][k];
    }
    out[p] = ConeFunction::from_samples(f.degree(), g, v, lo, f.is_real());
  }
  return out;
}

inline std::size_t plane_index(int a, int b) {
  for (std::size_t p = 0; p < planes.size(); ++p)
    if (planes[p] == std::pair{a, b}) return p;
  throw std::invalid_argument("plane_index: need 0 <= a < b <= 3");
}

/// L_ab f for a single plane; L_ba = -L_ab.
inline ConeFunction lorentz_generator(const ConeFunction& f, int a, int b) {
  if (a == b) return ConeFunction(f.degree(), f.lmax() + 1);
  if (a > b) return -lorentz_generator(f, b, a);
  return lorentz_generators(f)[plane_index(a, b)];
}

/// [T_Lambda f](l) = f(Lambda^{-1} l). Sampled on the default grid of f's band
/// limit and projected back; the truncation error grows with the rapidity of Lambda.
inline ConeFunction lorentz_pullback(const ConeFunction& f, const LorentzTransform& lambda) {
  const auto& g = grid_for(f.lmax());
  const LorentzTransform inv = lambda.inverse();
  std::vector<cplx> values(g.size());
  parallel_for(static_cast<std::size_t>(g.n_theta()), [&](std::size_t i) {
    for (int j = 0; j < g.n_phi(); ++j) {
      const Vec3 n = g.node(static_cast<int>(i), j);
      const FourVector lp = inv.apply(FourVector{1.0, n[0], n[1], n[2]});
      const double w = lp[0];
      const Vec3 np{lp[1] / w, lp[2] / w, lp[3] / w};
      values[i * g.n_phi() + j] = std::pow(w, f.degree()) * f(np);
    }
  });
  return ConeFunction::from_samples(f.degree(), g, values, f.lmax(), f.is_real());
}

/// c_v(l) = e / (v.l)^2.
inline ConeFunction coulomb_c(const HyperboloidPoint& v, double e, int lmax = default_lmax) {
  return ConeFunction::project(
      -2, lmax,
      [&](const Vec3& n) {
        const double vl = dot_section(v.vec(), n);
        return e / (vl * vl);
      },
      true);
}

/// F_{v,u}(l) = e log[(v.l)/(u.l)], with d^2 F_{v,u} = c_u - c_v.
inline ConeFunction log_F(const HyperboloidPoint& v, const HyperboloidPoint& u, double e, int lmax = default_lmax) {
  return ConeFunction::project(
      0, lmax, [&](const Vec3& n) { return e * std::log(dot_section(v.vec(), n) / dot_section(u.vec(), n)); },
      true);
}

}  // namespace coneweyl
