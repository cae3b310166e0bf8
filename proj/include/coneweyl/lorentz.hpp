#pragma once

// Lorentz-representation structure of the model: the tensors m_ab and h_ab,
// the second-Casimir residual of charged Weyl vectors, the family annihilated
// by it, the hyperbolic kernel and the spinor map to the principal series.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "coneweyl/cone.hpp"
#include "coneweyl/gns.hpp"
#include "coneweyl/weyl.hpp"

namespace coneweyl {

/// eps^{PQ} = eps^{abcd} for planes P = (a,b), Q = (c,d), with eps^{0123} = +1.
/// Nonzero only for complementary planes: 01|23 -> +1, 02|13 -> -1, 03|12 -> +1.
inline double epsilon_planes(std::size_t p, std::size_t q) {
  static constexpr int partner[6] = {5, 4, 3, 2, 1, 0};
  static constexpr double sign[6] = {1.0, -1.0, 1.0, 1.0, -1.0, 1.0};
  return partner[p] == static_cast<int>(q) ? sign[p] : 0.0;
}

/// eps^{abcd} with eps^{0123} = +1.
inline double levi_civita(int a, int b, int c, int d) {
  const int idx[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] == idx[j]) return 0.0;
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] > idx[j]) ++inversions;
  return (inversions % 2) ? -1.0 : 1.0;
}

/// Sign picked up by T_ab when both indices are raised.
inline double plane_metric_sign(std::size_t p) { return metric[planes[p].first] * metric[planes[p].second]; }

/// Antisymmetric rank-2 tensor through its six lower-index plane components.
template <class T>
struct AntisymTensor {
  std::array<T, 6> c{};

  T operator()(int a, int b) const {
    if (a == b) return T(0);
    if (a > b) return -(*this)(b, a);
    return c[plane_index(a, b)];
  }
  T& operator[](std::size_t p) { return c[p]; }
  const T& operator[](std::size_t p) const { return c[p]; }

  /// Plane components of T^{ab}.
  AntisymTensor raised() const {
    AntisymTensor out;
    for (std::size_t p = 0; p < 6; ++p) out.c[p] = plane_metric_sign(p) * c[p];
    return out;
  }

  /// Upper components of the dual, *T^{ab} = (1/2) eps^{abcd} T_cd.
  AntisymTensor dual_upper() const {
    AntisymTensor out;
    for (std::size_t p = 0; p < 6; ++p)
      for (std::size_t q = 0; q < 6; ++q) out.c[p] += epsilon_planes(p, q) * c[q];
    return out;
  }

  /// Lower components of the dual; applying it twice gives -T.
  AntisymTensor dual() const { return dual_upper().raised(); }

  double norm() const {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return std::sqrt(s);
  }
};

using RealTensor = AntisymTensor<double>;
using ComplexTensor = AntisymTensor<cplx>;

/// m_ab = (1/4 pi) int D L_ab c d^2l.
inline RealTensor m_tensor(const SymplecticPair& p) {
  RealTensor m;
  const auto lc = lorentz_generators(p.c());
  for (std::size_t q = 0; q < 6; ++q) m[q] = product_integral(p.D(), lc[q]).real() / (4.0 * pi);
  return m;
}

/// Four degree -1 functions k_b (lower index), defined up to multiples of l_b.
using CovectorField = std::array<ConeFunction, 4>;

namespace detail {

/// Projection of the degree -1 field s * xi_b/(xi.l) for a constant complex covector xi_b
/// and contravariant xi^a (given separately so that xi.l = xi^a l_a).
inline CovectorField constant_direction_field(const std::array<cplx, 4>& xi_lower, cplx scale, int lmax) {
  const std::array<cplx, 4> xi_upper{xi_lower[0], -xi_lower[1], -xi_lower[2], -xi_lower[3]};
  CovectorField out;
  for (int b = 0; b < 4; ++b)
    out[b] = ConeFunction::project(
        -1, lmax,
        [&](const Vec3& n) {
          const cplx xl = xi_upper[0] - xi_upper[1] * n[0] - xi_upper[2] * n[1] - xi_upper[3] * n[2];
          return scale * xi_lower[b] / xl;
        },
        false);
  return out;
}

}  // namespace detail

/// F with d^2 F = c - n c_u.
inline ConeFunction potential_relative_to(const SymplecticPair& p, const HyperboloidPoint& u, const ModelParams& params) {
  const int lmax = std::max(p.c().lmax(), 1);
  const ConeFunction rest = p.c() - coulomb_c(u, params.e, lmax) * double(p.n());
  return solve_F(rest, 4.0 * pi * params.e * params.tol.charge + 1e-10 * rest.norm());
}

/// k_b = d_b j(D, F) + i n e kappa^{1/2} u_b/(u.l), with c = n c_u + d^2 F.
inline CovectorField k_vector(const SymplecticPair& p, const HyperboloidPoint& u, const ModelParams& params) {
  const ConeFunction F = potential_relative_to(p, u, params);
  const KVector j = j_map(p.D(), F, params);
  auto grad = cone_gradient(j.G());
  const int lmax = grad[0].lmax();
  const FourVector ul = u.vec().lowered();
  const auto charge = detail::constant_direction_field(
      {ul[0], ul[1], ul[2], ul[3]}, cplx(0.0, p.n() * params.e * std::sqrt(params.kappa)), lmax);
  for (int b = 0; b < 4; ++b) grad[b] = grad[b] + charge[b];
  return grad;
}

/// l^a k_a, a degree 0 function.
inline ConeFunction contract_with_null(const CovectorField& k) {
  const int lmax = k[0].lmax();
  const auto& g = grid_for(lmax);
  std::array<std::vector<cplx>, 4> s;
  for (int b = 0; b < 4; ++b) s[b] = k[b].samples(g);
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 n = g.node(i);
    v[i] = s[0][i] + n[0] * s[1][i] + n[1] * s[2][i] + n[2] * s[3][i];
  }
  return ConeFunction::from_samples(0, g, v, lmax, false);
}

/// h_ab = l_a k_b - l_b k_a as degree-0 classes, one band above k.
inline std::array<KVector, 6> h_components(const CovectorField& k) {
  int lmax = 0;
  for (const auto& kb : k) lmax = std::max(lmax, kb.lmax());
  const int lo = lmax + 1;
  const auto& g = grid_for(lo);
  std::array<std::vector<cplx>, 4> s;
  for (int b = 0; b < 4; ++b) s[b] = k[b].with_lmax(lmax).samples(g);
  std::array<KVector, 6> out;
  std::vector<cplx> v(g.size());
  for (std::size_t p = 0; p < 6; ++p) {
    const auto [a, b] = planes[p];
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto la = lowered_null(g.node(i));
      v[i] = la[a] * s[b][i] - la[b] * s[a][i];
    }
    out[p] = KVector(ConeFunction::from_samples(0, g, v, lo, false));
  }
  return out;
}

inline Eigen::Matrix<cplx, 6, 6> k_gram(const std::array<KVector, 6>& h) {
  Eigen::Matrix<cplx, 6, 6> m;
  for (int p = 0; p < 6; ++p)
    for (int q = p; q < 6; ++q) {
      m(p, q) = k_inner(h[p], h[q]);
      m(q, p) = std::conj(m(p, q));
    }
  return m;
}

/// Gram matrix (h_P, h_Q)_K of the six components of h.
inline Eigen::Matrix<cplx, 6, 6> h_gram(const SymplecticPair& p, const HyperboloidPoint& u, const ModelParams& params) {
  return k_gram(h_components(k_vector(p, u, params)));
}

struct ResidualReport {
  double residual = 0.0;
  double scale = 0.0;
  double tol = 0.0;
  bool pass = false;
};

inline double residual_scale(int n, const Eigen::Matrix<cplx, 6, 6>& gram, const ModelParams& params) {
  return double(n) * n * params.e * params.e * params.kappa * gram.trace().real();
}

struct CasimirResidual : ResidualReport {
  double two_particle = 0.0;  // |.|^2 of the d* d* term
  double one_particle = 0.0;  // |.|^2 of the d* term
  double vacuum = 0.0;        // *m^ab m_ab
};

/// |C_2 W(D,c) Omega| from the three-term Fock expansion
/// (1/2) W { (1/2) d*(*h^ab) d*(h_ab) - sqrt2 *m^ab d*(h_ab) + *m^ab m_ab } Omega,
/// with all products reduced by Wick contraction to the 6x6 Gram of h.
inline CasimirResidual casimir2_residual(const RealTensor& m, const Eigen::Matrix<cplx, 6, 6>& gram, int n,
                                         const ModelParams& params, double rel_tol = 1e-6) {
  const RealTensor sm = m.dual_upper();
  cplx n2(0.0);
  for (std::size_t p = 0; p < 6; ++p)
    for (std::size_t pp = 0; pp < 6; ++pp) {
      const std::size_t q = 5 - p, qq = 5 - pp;
      const double ee = epsilon_planes(p, q) * epsilon_planes(pp, qq);
      n2 += ee * (gram(p, pp) * gram(q, qq) + gram(p, qq) * gram(q, pp));
    }
  cplx n1(0.0);
  for (std::size_t p = 0; p < 6; ++p)
    for (std::size_t pp = 0; pp < 6; ++pp) n1 += 8.0 * sm[p] * sm[pp] * gram(p, pp);
  double s0 = 0.0;
  for (std::size_t p = 0; p < 6; ++p) s0 += 2.0 * sm[p] * m[p];

  CasimirResidual r;
  r.two_particle = std::max(0.0, n2.real());
  r.one_particle = std::max(0.0, n1.real());
  r.vacuum = s0;
  r.residual = 0.5 * std::sqrt(r.two_particle + r.one_particle + s0 * s0);
  r.scale = residual_scale(n, gram, params);
  r.tol = rel_tol * r.scale;
  r.pass = r.residual < r.tol;
  return r;
}

inline CasimirResidual casimir2_residual(const SymplecticPair& p, const HyperboloidPoint& u, const ModelParams& params,
                                         double rel_tol = 1e-6) {
  return casimir2_residual(m_tensor(p), h_gram(p, u, params), p.n(), params, rel_tol);
}

/// (v, x, lambda, n) with v in H, x spacelike and orthogonal to v.
class CasimirFamilyPoint {
 public:
  CasimirFamilyPoint(const HyperboloidPoint& v, const FourVector& x, double lambda, int n)
      : v_(v), x_(x), lambda_(lambda), n_(n) {
    const double scale = 1.0 + v.vec().euclidean_norm() * x.euclidean_norm();
    if (std::abs(mdot(x, v.vec())) > 1e-12 * scale) throw DomainError("family point: x.v must vanish");
    const bool zero = x.euclidean_norm() == 0.0;
    if (!zero && !(mdot(x, x) < 0.0)) throw DomainError("family point: x must be spacelike");
  }

  const HyperboloidPoint& v() const { return v_; }
  const FourVector& x() const { return x_; }
  double lambda() const { return lambda_; }
  int n() const { return n_; }

 private:
  HyperboloidPoint v_;
  FourVector x_;
  double lambda_;
  int n_;
};

/// D = -n e kappa arctan[(x.l)/(v.l)] + lambda,
/// c = n e (1 - x^2)((v.l)^2 - (x.l)^2) / [(v.l)^2 + (x.l)^2]^2.
inline SymplecticPair kernel_family(const CasimirFamilyPoint& pt, const ModelParams& params) {
  const double ne = pt.n() * params.e;
  const double x2 = mdot(pt.x(), pt.x());
  const auto D = ConeFunction::project(
      0, params.lmax,
      [&](const Vec3& n) {
        return -ne * params.kappa * std::atan(dot_section(pt.x(), n) / dot_section(pt.v().vec(), n)) + pt.lambda();
      },
      true);
  const auto c = ConeFunction::project(
      -2, params.lmax,
      [&](const Vec3& n) {
        const double vl = dot_section(pt.v().vec(), n), xl = dot_section(pt.x(), n);
        const double s = vl * vl + xl * xl;
        return ne * (1.0 - x2) * (vl * vl - xl * xl) / (s * s);
      },
      true);
  return SymplecticPair(D, c, params.e, params.tol.charge);
}

/// i n e kappa^{1/2} xi_b/(xi.l) with xi = v + i x.
inline CovectorField family_k_tilde(const CasimirFamilyPoint& pt, const ModelParams& params) {
  const FourVector vl = pt.v().vec().lowered(), xl = pt.x().lowered();
  std::array<cplx, 4> xi;
  for (int b = 0; b < 4; ++b) xi[b] = cplx(vl[b], xl[b]);
  return detail::constant_direction_field(xi, cplx(0.0, pt.n() * params.e * std::sqrt(params.kappa)),
                                          params.lmax + 1);
}

struct AxisResidual {
  std::array<double, 4> residual{};
  double scale = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Norms of eps^{abcd} xi_b [-(1/sqrt2) d*(h_cd) + m_cd] Omega for a = 0..3, xi = v + i x.
inline AxisResidual axis_residual(const RealTensor& m, const Eigen::Matrix<cplx, 6, 6>& gram, const HyperboloidPoint& v,
                                  const FourVector& x, int n, const ModelParams& params, double rel_tol = 1e-6) {
  const FourVector vl = v.vec().lowered(), xl = x.lowered();
  AxisResidual r;
  for (int a = 0; a < 4; ++a) {
    std::array<cplx, 6> w{};
    for (std::size_t q = 0; q < 6; ++q)
      for (int b = 0; b < 4; ++b)
        w[q] += 2.0 * levi_civita(a, b, planes[q].first, planes[q].second) * cplx(vl[b], xl[b]);
    cplx one(0.0), zero(0.0);
    for (std::size_t q = 0; q < 6; ++q) {
      zero += w[q] * m[q];
      for (std::size_t qq = 0; qq < 6; ++qq) one += std::conj(w[q]) * w[qq] * gram(q, qq);
    }
    r.residual[a] = std::sqrt(std::max(0.0, 0.5 * one.real()) + std::norm(zero));
  }
  r.scale = residual_scale(n, gram, params);
  r.tol = rel_tol * r.scale;
  r.pass = std::all_of(r.residual.begin(), r.residual.end(), [&](double x) { return x < r.tol; });
  return r;
}

inline AxisResidual axis_residual(const SymplecticPair& p, const HyperboloidPoint& v, const FourVector& x,
                                  const ModelParams& params, double rel_tol = 1e-6) {
  return axis_residual(m_tensor(p), h_gram(p, v, params), v, x, p.n(), params, rel_tol);
}

/// chi coth chi - 1, with a series near 0.
inline double chi_coth_chi_minus_one(double chi) {
  if (std::abs(chi) < 1e-4) {
    const double c2 = chi * chi;
    return c2 / 3.0 - c2 * c2 / 45.0;
  }
  return chi / std::tanh(chi) - 1.0;
}

/// (W(0,n c_v) Omega, W(0,n c_u) Omega) = exp[-(kappa/2)(ne)^2 (chi coth chi - 1)];
/// at kappa = 2/pi the exponent is -(ne)^2/pi (chi coth chi - 1).
inline double hyperbolic_kernel_chi(double chi, int n, const ModelParams& params) {
  if (chi < 0.0) throw DomainError("hyperbolic_kernel: negative hyperbolic angle");
  const double ne = n * params.e;
  return std::exp(-0.5 * params.kappa * ne * ne * chi_coth_chi_minus_one(chi));
}

inline double hyperbolic_kernel(const HyperboloidPoint& v, const HyperboloidPoint& u, int n, const ModelParams& params) {
  const double vu = mdot(v.vec(), u.vec());
  if (vu < 1.0 - 1e-10 * (1.0 + std::abs(vu))) throw DomainError("hyperbolic_kernel: v.u < 1");
  return hyperbolic_kernel_chi(std::acosh(std::max(1.0, vu)), n, params);
}

/// Samples of a section function on the default grid of band `lmax`.
struct SectionSamples {
  int lmax = 0;
  std::vector<cplx> values;
};

/// int conj(g1) g2 d^2l by quadrature on the shared grid.
inline cplx section_inner(const SectionSamples& a, const SectionSamples& b) {
  if (a.lmax != b.lmax) throw std::invalid_argument("section_inner: samples on different grids");
  const auto& g = grid_for(a.lmax);
  cplx s(0.0);
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * std::conj(a.values[i]) * b.values[i];
  return s;
}

namespace detail {

/// X^a = tr(sigma_a o iota^dagger) for the dyad o = (cos(th/2), sin(th/2) e^{i phi}),
/// iota = (-sin(th/2) e^{-i phi}, cos(th/2)); a complex null vector with X.l = 0.
inline std::array<cplx, 4> dyad_vector(const Vec3& n) {
  const double ct = std::clamp(n[2], -1.0, 1.0);
  const double ch = std::sqrt(0.5 * (1.0 + ct)), sh = std::sqrt(0.5 * (1.0 - ct));
  const double s = std::hypot(n[0], n[1]);
  const cplx eip = s > 0.0 ? cplx(n[0] / s, n[1] / s) : cplx(1.0, 0.0);
  const cplx o0 = ch, o1 = sh * eip;
  const cplx i0 = -sh * std::conj(eip), i1 = ch;
  // M = o iota^dagger
  const cplx m00 = o0 * std::conj(i0), m01 = o0 * std::conj(i1);
  const cplx m10 = o1 * std::conj(i0), m11 = o1 * std::conj(i1);
  const cplx I(0.0, 1.0);
  return {m00 + m11, m01 + m10, I * (m01 - m10), m00 - m11};
}

inline SectionSamples raw_spinor_map(const ConeFunction& G) {
  if (G.degree() != 0) throw DomainError("principal_series_map: G must have degree 0");
  SectionSamples out;
  out.lmax = G.lmax() + 1;
  const auto& g = grid_for(out.lmax);
  const auto d = gradient_samples(G, g);
  out.values.resize(g.size());
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto X = dyad_vector(g.node(i));
    cplx s(0.0);
    for (int a = 0; a < 4; ++a) s += X[a] * d[a][i];
    out.values[i] = norm * s;
  }
  return out;
}

}  // namespace detail

/// Real factor fixed once so that |g|^2 of G = sin(theta) cos(phi) equals its K norm 2/3.
inline double spinor_calibration() {
  static const double scale = [] {
    const auto G = ConeFunction::project(0, 1, [](const Vec3& n) { return n[0]; }, true);
    const auto raw = detail::raw_spinor_map(G);
    return std::sqrt(k_product(G, G).real() / section_inner(raw, raw).real());
  }();
  return scale;
}

/// g(n) = s (1/sqrt(2 pi)) X^a d_a G on the section, with s from spinor_calibration().
/// X.l = 0, so the gauge ambiguity of d_a G drops out.
inline SectionSamples principal_series_map(const ConeFunction& G) {
  auto out = detail::raw_spinor_map(G);
  const double s = spinor_calibration();
  for (auto& v : out.values) v *= s;
  return out;
}

}  // namespace coneweyl
