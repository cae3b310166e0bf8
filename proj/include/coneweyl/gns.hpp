#pragma once

// The Lorentz-invariant quasi-free state, GNS inner products and Gram
// matrices, and the inner products of charged vectors with one excitation.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "coneweyl/cone.hpp"
#include "coneweyl/parallel.hpp"
#include "coneweyl/weyl.hpp"

namespace coneweyl {

struct Tolerances {
  double charge = default_tol_charge;  // |n_c - round(n_c)|
  double zero_mean = 1e-10;            // relative, for solve_F on user data
  double merge = default_tol_merge;    // pair identification
  double psd = 1e-9;                   // Gram lambda_min >= -psd * |M|
  double cone_margin = 0.05;           // |x^2| < margin |x|^2 is near-cone
};

struct ModelParams {
  double e = 1.0;
  double kappa = 2.0 / pi;
  int lmax = default_lmax;
  Tolerances tol;

  void validate() const {
    if (!(e > 0.0)) throw std::invalid_argument("e must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (lmax < 1) throw std::invalid_argument("lmax must be at least 1");
  }
};

/// [G]: a complex degree-0 function modulo constants (l = 0 coefficient removed).
class KVector {
 public:
  KVector() : G_(0, 0) {}
  explicit KVector(const ConeFunction& G) : G_(G.without_mean()) {
    if (G.degree() != 0) throw DomainError("KVector: representative must have degree 0");
  }
  const ConeFunction& G() const { return G_; }

  friend KVector operator+(const KVector& a, const KVector& b) { return KVector(a.G_ + b.G_); }
  friend KVector operator-(const KVector& a, const KVector& b) { return KVector(a.G_ - b.G_); }
  friend KVector operator*(cplx s, const KVector& a) { return KVector(s * a.G_); }

 private:
  ConeFunction G_;
};

/// (G1, G2)_K = (1/4 pi) sum_{l>=1} l(l+1) conj(g1_lm) g2_lm.
inline cplx k_inner(const KVector& a, const KVector& b) { return k_product(a.G(), b.G()); }
inline double k_norm2(const KVector& a) { return k_inner(a, a).real(); }

/// j(D, F) = kappa^{-1/2} D - i kappa^{1/2} F.
inline KVector j_map(const ConeFunction& D, const ConeFunction& F, double kappa) {
  return KVector(D * (1.0 / std::sqrt(kappa)) + F * cplx(0.0, -std::sqrt(kappa)));
}
inline KVector j_map(const ConeFunction& D, const ConeFunction& F, const ModelParams& params) {
  return j_map(D, F, params.kappa);
}

/// j(D, F) for a neutral pair, with F obtained from c.
inline KVector j_of_pair(const SymplecticPair& p, const ModelParams& params) {
  if (p.n() != 0) throw DomainError("j_of_pair: pair is charged");
  const double tol = 4.0 * pi * params.e * params.tol.charge + 1e-14 * p.c().norm();
  return j_map(p.D(), solve_F(p.c(), tol), params);
}

/// omega(W(D, c)): 0 for n_c != 0, exp(-|j(D, F)|^2 / 4) with d^2 F = c otherwise.
inline cplx state(const SymplecticPair& p, const ModelParams& params) {
  if (p.n() != 0) return 0.0;
  return std::exp(-0.25 * k_norm2(j_of_pair(p, params)));
}

inline cplx state(const WeylElement& a, const ModelParams& params) {
  cplx s(0.0);
  for (const auto& t : a.terms()) {
    if (t.pair.n() != 0) continue;
    s += t.weight() * state(t.pair, params);
  }
  return s;
}

/// element * Omega, optionally followed by d*([G]) on the vacuum side:
/// element * d*([G]) * Omega.
struct GnsVector {
  WeylElement element;
  std::optional<KVector> creation;

  GnsVector() = default;
  GnsVector(WeylElement a) : element(std::move(a)) {}  // NOLINT: implicit by design
  GnsVector(WeylElement a, KVector g) : element(std::move(a)), creation(std::move(g)) {}
};

/// (A Omega, B Omega) = omega(A* B).
inline cplx gns_inner(const GnsVector& a, const GnsVector& b, const ModelParams& params) {
  if (a.creation || b.creation)
    throw std::invalid_argument("gns_inner: vectors with creation parts go through dstar_gram");
  return state(multiply(adjoint(a.element), b.element), params);
}

struct GramReport {
  Eigen::MatrixXcd matrix;
  double min_eig = 0.0;
  double norm = 0.0;
  double tol = 0.0;
  bool psd = false;
};

/// Hermitian eigen-analysis of a Gram matrix; psd when lambda_min >= -tol_rel |M|.
inline GramReport gram_report(Eigen::MatrixXcd m, double tol_rel) {
  GramReport r;
  r.matrix = std::move(m);
  if (r.matrix.size() == 0) {
    r.psd = true;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.matrix, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  r.min_eig = ev.minCoeff();
  r.norm = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  r.tol = tol_rel * r.norm;
  r.psd = r.min_eig >= -r.tol;
  return r;
}

inline GramReport gram(const std::vector<GnsVector>& vectors, const ModelParams& params) {
  const std::size_t n = vectors.size();
  Eigen::MatrixXcd m(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t k = i; k < n; ++k) {
      const cplx z = gns_inner(vectors[i], vectors[k], params);
      m(i, k) = z;
      if (k != i) m(k, i) = std::conj(z);
    }
  });
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i).real();
  return gram_report(std::move(m), params.tol.psd);
}

/// (G, G') from a real pair (D, F): D = kappa^{1/2} Re G, F = -kappa^{-1/2} Im G,
/// so that j(D, F) = G.
inline std::pair<ConeFunction, ConeFunction> pair_of_j(const KVector& g, double kappa) {
  return {g.G().real_part() * std::sqrt(kappa), g.G().imag_part() * (-1.0 / std::sqrt(kappa))};
}

inline void require_physical_kappa(const ModelParams& params, const char* what) {
  if (std::abs(params.kappa - 2.0 / pi) > 1e-12)
    throw DomainError(std::string(what) + ": the closed form assumes kappa = 2/pi");
}

struct ProductFormula {
  cplx direct;      // (W(0,n c_v) W(D,d^2F) Omega, W(0,n c_v') W(D',d^2F') Omega)
  cplx charged;     // (W(0,n c_v) Omega, W(0,n c_v') Omega)
  cplx neutral;     // (W(D,d^2F) Omega, W(D',d^2F') Omega)
  cplx correction;  // exp{-i n/(4 sqrt(2 pi^3)) int (c_v' - c_v)[conj j(D,F) + j(D',F')]}
  cplx oracle() const { return charged * neutral * correction; }
};

/// Both sides of the three-factor product formula for charged vectors.
inline ProductFormula product_formula(const HyperboloidPoint& v, const HyperboloidPoint& vp, int n,
                                      const ConeFunction& D, const ConeFunction& F, const ConeFunction& Dp,
                                      const ConeFunction& Fp, const ModelParams& params) {
  require_physical_kappa(params, "product_formula");
  const double e = params.e;
  const ConeFunction cv = coulomb_c(v, e, params.lmax), cvp = coulomb_c(vp, e, params.lmax);
  const auto charged_pair = [&](const ConeFunction& c) {
    return SymplecticPair(ConeFunction(0, params.lmax), c * double(n), e, params.tol.charge);
  };
  const WeylElement wv = WeylElement::generator(charged_pair(cv));
  const WeylElement wvp = WeylElement::generator(charged_pair(cvp));
  const WeylElement a = WeylElement::generator(SymplecticPair(D, dsquare(F), e, params.tol.charge));
  const WeylElement b = WeylElement::generator(SymplecticPair(Dp, dsquare(Fp), e, params.tol.charge));

  ProductFormula r;
  r.direct = gns_inner(wv * a, wvp * b, params);
  r.charged = gns_inner(wv, wvp, params);
  r.neutral = gns_inner(a, b, params);
  const ConeFunction dc = cvp - cv;
  const ConeFunction mix = j_map(D, F, params).G().conj() + j_map(Dp, Fp, params).G();
  const double k = n / (4.0 * std::sqrt(2.0 * pi * pi * pi));
  r.correction = std::exp(cplx(0.0, -k) * product_integral(dc, mix));
  return r;
}

struct DStarGram {
  cplx path_a;      // from the Weyl-reduction polynomial, analytic in lambda, lambda'
  cplx path_b;      // closed form with the extra term
  cplx kernel;      // (W(0,n c_v) Omega, W(0,n c_v') Omega)
  cplx extra_term;  // -(n^2/16 pi^3) int dc conj(G) * int dc G'
};

/// (W(0,n c_v) d*([G]) Omega, W(0,n c_v') d*([G']) Omega) by two independent routes.
inline DStarGram dstar_gram(const HyperboloidPoint& v, const HyperboloidPoint& vp, int n, const KVector& G,
                            const KVector& Gp, const ModelParams& params) {
  require_physical_kappa(params, "dstar_gram");
  const double e = params.e;
  const double kappa = params.kappa;
  const int lmax = std::max({params.lmax, G.G().lmax(), Gp.G().lmax()});
  const ConeFunction cv = coulomb_c(v, e, lmax), cvp = coulomb_c(vp, e, lmax);
  const ConeFunction dc = cvp - cv;

  // f(s, s') = <W(0,n c_v) W(s p) Omega, W(0,n c_v') W(s' p') Omega> = exp P(s, s').
  const ConeFunction zero(0, lmax);
  const SymplecticPair q(zero, dc * double(n), e, params.tol.charge);
  const auto [D, F] = pair_of_j(G, kappa);
  const auto [Dp, Fp] = pair_of_j(Gp, kappa);
  const SymplecticPair p(D, dsquare(F), e, params.tol.charge);
  const SymplecticPair pp(Dp, dsquare(Fp), e, params.tol.charge);
  const KVector jq = j_of_pair(q, params), jp = j_of_pair(p, params), jpp = j_of_pair(pp, params);
  const cplx I(0.0, 1.0);
  const cplx b = -0.5 * I * symplectic(p, q) + 0.5 * k_inner(jq, jp).real();
  const cplx bp = 0.5 * I * symplectic(q, pp) - 0.5 * k_inner(jq, jpp).real();
  const cplx c = -0.5 * I * symplectic(p, pp) + 0.5 * k_inner(jp, jpp).real();

  DStarGram r;
  r.kernel = std::exp(-0.25 * k_norm2(jq));
  // Phi = (d + d*)/sqrt(2) contributes 1/2 to the mixed derivative.
  r.path_a = 2.0 * (c + b * bp) * r.kernel;
  r.extra_term = -(double(n) * n / (16.0 * pi * pi * pi)) * product_integral(dc, G.G().conj()) *
                 product_integral(dc, Gp.G());
  r.path_b = r.kernel * (k_inner(G, Gp) + r.extra_term);
  return r;
}

}  // namespace coneweyl
