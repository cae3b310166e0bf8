#pragma once

// The phase field S(x), the asymptotic Maxwell field derived from it, the
// regular field of neutral data and the flux of the electric field.
//
// Integrals over the cone of kernels depending on x.l are done with the
// Funk-Hecke theorem: for x = (x0, r xhat) and z = x0 / r,
//   int Y_lm(n) K(z - xhat.n) dOmega = 2 pi Y_lm(xhat) int_{-1}^{1} K(z - t) P_l(t) dt,
// and the one-dimensional integrals are Legendre functions of z.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "coneweyl/cone.hpp"
#include "coneweyl/errors.hpp"
#include "coneweyl/gns.hpp"
#include "coneweyl/legendre.hpp"
#include "coneweyl/lorentz.hpp"
#include "coneweyl/parallel.hpp"
#include "coneweyl/weyl.hpp"

namespace coneweyl {

enum class Region { timelike_future, timelike_past, spacelike, near_cone };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::timelike_future: return "timelike-future";
    case Region::timelike_past: return "timelike-past";
    case Region::spacelike: return "spacelike";
    case Region::near_cone: return "near-cone";
  }
  return "?";
}

/// near-cone when |x^2| < margin * |x|_E^2.
inline Region classify(const FourVector& x, double cone_margin) {
  const double x2 = mdot(x, x);
  const double e2 = x.euclidean_norm() * x.euclidean_norm();
  if (!(std::abs(x2) >= cone_margin * e2) || e2 == 0.0) return Region::near_cone;
  if (x2 < 0.0) return Region::spacelike;
  return x[0] > 0.0 ? Region::timelike_future : Region::timelike_past;
}

struct SpacetimePoint {
  FourVector x;
  Region region;

  SpacetimePoint(const FourVector& x_, double cone_margin) : x(x_), region(classify(x_, cone_margin)) {}
};

inline void require_off_cone(const FourVector& x, double cone_margin) {
  if (classify(x, cone_margin) == Region::near_cone) {
    std::ostringstream os;
    os << "point (" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3]
       << ") is within the cone margin " << cone_margin << " of x^2 = 0";
    throw ConeProximity(os.str());
  }
}

namespace detail {

struct AxisFrame {
  double r;   // |x vec|
  double z;   // x0 / r
  Vec3 xhat;  // x vec / r
};

inline bool on_time_axis(const FourVector& x) { return norm3(x.spatial()) <= 1e-13 * x.euclidean_norm(); }

inline AxisFrame axis_frame(const FourVector& x) {
  const Vec3 s = x.spatial();
  const double r = norm3(s);
  return {r, x[0] / r, {s[0] / r, s[1] / r, s[2] / r}};
}

/// 2 pi int sgn(z - t) P_l(t) dt.
inline std::vector<cplx> sgn_weights(int lmax, double z) {
  std::vector<cplx> w(lmax + 1, cplx(0.0));
  if (std::abs(z) >= 1.0) {
    w[0] = 4.0 * pi * (z > 0.0 ? 1.0 : -1.0);
    return w;
  }
  const auto p = legendre_p(lmax + 1, z);
  w[0] = 4.0 * pi * z;
  for (int l = 1; l <= lmax; ++l) w[l] = 4.0 * pi * (p[l + 1] - p[l - 1]) / (2.0 * l + 1.0);
  return w;
}

/// 2 pi int log|z - t| P_l(t) dt for l >= 1 (the l = 0 weight is unused and set to 0).
inline std::vector<cplx> log_weights(int lmax, double z) {
  std::vector<cplx> w(lmax + 1, cplx(0.0));
  std::vector<double> q(lmax + 2);
  if (std::abs(z) < 1.0) {
    q = ferrers_q(lmax + 1, z);
  } else {
    const auto qc = legendre_q(lmax + 1, cplx(z, 0.0));
    for (int l = 0; l <= lmax + 1; ++l) q[l] = qc[l].real();
  }
  for (int l = 1; l <= lmax; ++l) w[l] = 4.0 * pi * (q[l + 1] - q[l - 1]) / (2.0 * l + 1.0);
  return w;
}

/// 2 pi int P_l(t) / (z - t)^2 dt = -4 pi Q_l'(z), z off the cut.
inline std::vector<cplx> inverse_square_weights(int lmax, cplx z) {
  const auto q = legendre_q(lmax, z);
  std::vector<cplx> w(lmax + 1);
  const cplx d = z * z - 1.0;
  w[0] = -4.0 * pi / (-d);
  for (int l = 1; l <= lmax; ++l) w[l] = -4.0 * pi * double(l) * (z * q[l] - q[l - 1]) / d;
  return w;
}

}  // namespace detail

/// S(x) = -(e/4pi) int c sgn(x.l) - (e/4pi) int d^2D log(|x.l|/(v.l)) + S_v,
/// S_v = (e/4pi) int D/(v.l)^2. The x-independent parts are precomputed.
class PhaseField {
 public:
  PhaseField(const SymplecticPair& p, const HyperboloidPoint& v, const ModelParams& params)
      : e_(params.e), margin_(params.tol.cone_margin), c_(p.c()), d2D_(dsquare(p.D())) {
    const int lmax = std::max(p.D().lmax(), 1);
    const auto log_vl = ConeFunction::project(0, lmax, [&](const Vec3& n) { return std::log(dot_section(v.vec(), n)); }, true);
    const auto inv_vl2 = coulomb_c(v, 1.0, lmax);
    constant_ = (e_ / (4.0 * pi)) * (product_integral(d2D_, log_vl) + product_integral(p.D(), inv_vl2)).real();
  }

  double operator()(const FourVector& x) const {
    require_off_cone(x, margin_);
    const double k = e_ / (4.0 * pi);
    if (detail::on_time_axis(x)) {
      // sgn(x.l) and log|x.l| are constant on the sphere; int d^2D = 0.
      const double sgn = x[0] > 0.0 ? 1.0 : -1.0;
      return -k * sgn * integrate_invariant(c_).real() + constant_;
    }
    const auto f = detail::axis_frame(x);
    const cplx sgn_part = evaluate_weighted(c_.lmax(), c_.coeffs(), f.xhat, detail::sgn_weights(c_.lmax(), f.z));
    // log|x.l| = log r + log|z - xhat.n|; the log r part integrates to 0 against d^2 D.
    const cplx log_part =
        evaluate_weighted(d2D_.lmax(), d2D_.coeffs(), f.xhat, detail::log_weights(d2D_.lmax(), f.z));
    return -k * (sgn_part.real() + log_part.real()) + constant_;
  }

  /// dS/dx^a by central differences with one Richardson step, h = rel_step * |x|.
  std::array<double, 4> gradient(const FourVector& x, double rel_step = 1e-4) const {
    const double h = rel_step * x.euclidean_norm();
    std::array<double, 4> g{};
    for (int a = 0; a < 4; ++a) {
      const auto diff = [&](double s) {
        FourVector xp = x, xm = x;
        xp[a] += s;
        xm[a] -= s;
        return ((*this)(xp) - (*this)(xm)) / (2.0 * s);
      };
      g[a] = (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
    }
    return g;
  }

 private:
  double e_;
  double margin_;
  ConeFunction c_;
  ConeFunction d2D_;
  double constant_ = 0.0;
};

inline double eval_phase_field(const SpacetimePoint& x, const SymplecticPair& p, const HyperboloidPoint& v,
                               const ModelParams& params) {
  return PhaseField(p, v, params)(x.x);
}

/// F_ab = (1/(e x^2)) [x_a d_b S - x_b d_a S], lower indices; E_i = F_0i.
inline RealTensor em_field_from_phase(const PhaseField& S, const FourVector& x, double e) {
  const auto grad = S.gradient(x);
  const FourVector xl = x.lowered();
  const double x2 = mdot(x, x);
  RealTensor F;
  for (std::size_t p = 0; p < 6; ++p) {
    const auto [a, b] = planes[p];
    F[p] = (xl[a] * grad[b] - xl[b] * grad[a]) / (e * x2);
  }
  return F;
}

inline RealTensor eval_em_field_general(const SpacetimePoint& x, const SymplecticPair& p, const HyperboloidPoint& v,
                                        const ModelParams& params) {
  require_off_cone(x.x, params.tol.cone_margin);
  return em_field_from_phase(PhaseField(p, v, params), x.x, params.e);
}

/// Positive-frequency part of the field of neutral data,
/// T_ab(x + zeta e_0) = (1/8 pi) int L_ab G / ((x + zeta e_0).l)^2 d^2l, G = D - i(2/pi) F,
/// analytic for Im zeta < 0.
class PositiveFrequencyField {
 public:
  PositiveFrequencyField(const ConeFunction& D, const ConeFunction& F) {
    if (D.degree() != 0 || F.degree() != 0) throw DomainError("regular field: D and F must have degree 0");
    const ConeFunction G = D + F * cplx(0.0, -2.0 / pi);
    LG_ = lorentz_generators(G);
  }

  ComplexTensor operator()(const FourVector& x, cplx zeta) const {
    if (zeta.imag() > 0.0) throw DomainError("regular field: the shift must lie in the lower half plane");
    ComplexTensor T;
    if (detail::on_time_axis(x)) {
      const cplx t = x[0] + zeta;
      for (std::size_t p = 0; p < 6; ++p) T[p] = std::sqrt(4.0 * pi) * LG_[p].coeff(0, 0) / (8.0 * pi * t * t);
      return T;
    }
    const auto f = detail::axis_frame(x);
    const cplx zc = (x[0] + zeta) / f.r;
    const int lmax = LG_[0].lmax();
    auto w = detail::inverse_square_weights(lmax, zc);
    for (auto& v : w) v /= f.r * f.r * 8.0 * pi;
    for (std::size_t p = 0; p < 6; ++p) T[p] = evaluate_weighted(lmax, LG_[p].coeffs(), f.xhat, w);
    return T;
  }

 private:
  std::array<ConeFunction, 6> LG_;
};

struct RegularField {
  RealTensor F;              // T + conj(T) at the extrapolated delta -> 0
  ComplexTensor positive;    // extrapolated T
  double reality_residual;   // largest |Im(T + conj T)|
  double extrapolation_error;  // change of the last Richardson step
  bool converged;
  std::array<double, 3> deltas;
};

/// The field of neutral data at x - i delta e_0 on the ladder delta in {1, 1/2, 1/4} * delta0 * |x|,
/// Richardson-extrapolated to delta -> 0 (two steps).
inline RegularField eval_em_field_regular(const FourVector& x, const ConeFunction& D, const ConeFunction& F,
                                          const ModelParams& params, double delta0 = 1e-2) {
  const PositiveFrequencyField T(D, F);
  const double s = x.euclidean_norm();
  RegularField out{};
  out.deltas = {delta0 * s, 0.5 * delta0 * s, 0.25 * delta0 * s};
  std::array<ComplexTensor, 3> t;
  for (int k = 0; k < 3; ++k) t[k] = T(x, cplx(0.0, -out.deltas[k]));
  double scale = 0.0, err = 0.0;
  for (std::size_t p = 0; p < 6; ++p) {
    const cplx r1a = 2.0 * t[1][p] - t[0][p];
    const cplx r1b = 2.0 * t[2][p] - t[1][p];
    const cplx r2 = (4.0 * r1b - r1a) / 3.0;
    out.positive[p] = r2;
    const cplx full = r2 + std::conj(r2);
    out.F[p] = full.real();
    out.reality_residual = std::max(out.reality_residual, std::abs(full.imag()));
    err = std::max(err, std::abs(r2 - r1b));
    scale = std::max(scale, std::abs(r2));
  }
  out.extrapolation_error = err;
  out.converged = err <= 1e-3 * scale + 1e-300;
  return out;
}

/// Cauchy-Riemann residual of zeta -> T(x + zeta e_0) at zeta = -i delta |x|:
/// max_P |dT/d(Im zeta) - i dT/d(Re zeta)| / max_P |dT/d(Re zeta)|.
inline double cauchy_riemann_residual(const FourVector& x, const ConeFunction& D, const ConeFunction& F,
                                      double delta = 0.05, double rel_step = 1e-3) {
  const PositiveFrequencyField T(D, F);
  const double s = x.euclidean_norm();
  const cplx z0(0.0, -delta * s);
  const double h = rel_step * delta * s;
  const auto tp = T(x, z0 + h), tm = T(x, z0 - h);
  const auto up = T(x, z0 + cplx(0.0, h)), um = T(x, z0 - cplx(0.0, h));
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < 6; ++p) {
    const cplx da = (tp[p] - tm[p]) / (2.0 * h);
    const cplx db = (up[p] - um[p]) / (2.0 * h);
    num = std::max(num, std::abs(db - cplx(0.0, 1.0) * da));
    den = std::max(den, std::abs(da));
  }
  return den > 0.0 ? num / den : num;
}

/// (1/4 pi) int E.n R^2 dOmega over the sphere |x vec| = R at time t, with E_i = F_0i
/// from the phase field. Sphere nodes come from the grid of band `grid_lmax`.
inline double flux_charge(const SymplecticPair& p, const HyperboloidPoint& v, double R, double t,
                          const ModelParams& params, int grid_lmax = 24) {
  if (!(R > std::abs(t))) throw DomainError("flux_charge: need R > |t| (sphere in the region x^2 < 0)");
  const PhaseField S(p, v, params);
  const auto& g = grid_for(grid_lmax);
  std::vector<double> integrand(g.size());
  parallel_for(g.size(), [&](std::size_t i) {
    const Vec3 n = g.node(i);
    const FourVector x{t, R * n[0], R * n[1], R * n[2]};
    const RealTensor F = em_field_from_phase(S, x, params.e);
    integrand[i] = g.weight(i) * R * R * (F[0] * n[0] + F[1] * n[1] + F[2] * n[2]);
  });
  double s = 0.0;
  for (const double v_i : integrand) s += v_i;
  return s / (4.0 * pi);
}

/// Fourth-order finite-difference box S = d_0^2 S - sum_i d_i^2 S at x, and the local
/// second-derivative scale sum_a |d_a^2 S|.
inline std::pair<double, double> dalembertian_probe(const PhaseField& S, const FourVector& x, double rel_step = 1e-2) {
  const double h = rel_step * x.euclidean_norm();
  const double s0 = S(x);
  double box = 0.0, scale = 0.0;
  for (int a = 0; a < 4; ++a) {
    auto at = [&](double k) {
      FourVector y = x;
      y[a] += k * h;
      return S(y);
    };
    const double d2 = (-at(2) + 16.0 * at(1) - 30.0 * s0 + 16.0 * at(-1) - at(-2)) / (12.0 * h * h);
    box += metric[a] * d2;
    scale += std::abs(d2);
  }
  return {box, scale};
}

}  // namespace coneweyl
