#include <cmath>

#include <gtest/gtest.h>

#include "coneweyl/lorentz.hpp"
#include "coneweyl/random.hpp"

using namespace coneweyl;

namespace {
ModelParams params_at(int lmax) {
  ModelParams p;
  p.lmax = lmax;
  return p;
}
}  // namespace

TEST(Tensor, LeviCivitaAndDual) {
  EXPECT_EQ(levi_civita(0, 1, 2, 3), 1.0);
  EXPECT_EQ(levi_civita(1, 0, 2, 3), -1.0);
  EXPECT_EQ(levi_civita(0, 0, 2, 3), 0.0);
  // *T^{ab} = (1/2) eps^{abcd} T_cd against the explicit sum
  auto rng = StreamSplitter(30).stream("lorentz.dual");
  RealTensor t;
  for (auto& x : t.c) x = gaussian(rng);
  const auto du = t.dual_upper();
  for (std::size_t p = 0; p < 6; ++p) {
    const auto [a, b] = planes[p];
    double s = 0.0;
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d) s += 0.5 * levi_civita(a, b, c, d) * t(c, d);
    EXPECT_NEAR(du[p], s, 1e-15);
  }
  const auto dd = t.dual().dual();
  for (std::size_t p = 0; p < 6; ++p) EXPECT_NEAR(dd[p], -t[p], 1e-15);
}

TEST(Family, RejectsInadmissibleGeometry) {
  const auto v = HyperboloidPoint::rest();
  EXPECT_THROW(CasimirFamilyPoint(v, FourVector{0.1, 0.3, 0, 0}, 0.0, 1), DomainError);
  const auto w = HyperboloidPoint::from_rapidity(0.5, {1, 0, 0});
  EXPECT_THROW(CasimirFamilyPoint(w, w.vec(), 0.0, 1), DomainError);
  EXPECT_NO_THROW(CasimirFamilyPoint(v, FourVector{0, 0.3, 0, 0}, 0.0, 1));
}

TEST(Family, ChargeSplitsIntoCoulombPlusExact) {
  // c = n c_v + d^2[-(ne/2) log(1 + (x.l)^2/(v.l)^2)] when x.v = 0
  const ModelParams P = params_at(48);
  const auto v = HyperboloidPoint::from_rapidity(0.3, {0, 1, 0});
  const auto x = LorentzTransform::boost_to(v).apply(FourVector{0, 0.25, 0, 0.1});
  const int n = 2;
  const auto p = kernel_family(CasimirFamilyPoint(v, x, 0.0, n), P);
  EXPECT_EQ(p.n(), n);
  const auto phi = ConeFunction::project(
      0, P.lmax,
      [&](const Vec3& nn) {
        const double t = dot_section(x, nn) / dot_section(v.vec(), nn);
        return -0.5 * n * P.e * std::log(1.0 + t * t);
      },
      true);
  const auto expect = coulomb_c(v, P.e, P.lmax) * double(n) + dsquare(phi);
  EXPECT_LT(section_sup_norm(p.c() - expect) / section_sup_norm(expect), 1e-8);
}

TEST(Casimir, FamilyVanishesAndPerturbationDoesNot) {
  const ModelParams P = params_at(48);
  auto rng = StreamSplitter(31).stream("lorentz.family");
  for (int n = 1; n <= 3; ++n) {
    const auto v = random_hyperboloid_point(rng, 0.5);
    const auto x = random_orthogonal_spacelike(rng, v, 0.05, 0.4);
    const auto p = kernel_family(CasimirFamilyPoint(v, x, uniform(rng, -1, 1), n), P);
    const auto r = casimir2_residual(p, v, P);
    EXPECT_LT(r.residual, 1e-6 * r.scale);
    const auto ax = axis_residual(p, v, x, P);
    for (double a : ax.residual) EXPECT_LT(a, 1e-6 * ax.scale);
    const SymplecticPair q(p.D(), p.c() + dsquare(random_smooth(rng, 0, P.lmax, 5, 0.5 * n)), P.e);
    const auto rq = casimir2_residual(q, v, P);
    EXPECT_GT(rq.residual, 1e-2 * rq.scale);
  }
}

TEST(Casimir, InvariantUnderLorentzTransform) {
  const ModelParams P = params_at(48);
  auto rng = StreamSplitter(32).stream("lorentz.invariance");
  const auto v = HyperboloidPoint::rest();
  const auto p = kernel_family(CasimirFamilyPoint(v, FourVector{0, 0.2, 0.1, 0}, 0.0, 1), P);
  const SymplecticPair q(p.D() + random_smooth(rng, 0, P.lmax, 4, 0.3), p.c(), P.e);
  const auto lam = LorentzTransform::boost(0.4, {0, 0, 1});
  const auto a = casimir2_residual(q, v, P);
  const auto b = casimir2_residual(lorentz_pullback(q, lam), v, P);
  EXPECT_NEAR(a.residual, b.residual, 1e-6 * a.residual);
}

TEST(Casimir, MTensorOfFamilyLiesInPlane) {
  const ModelParams P = params_at(32);
  const auto v = HyperboloidPoint::rest();
  const auto p = kernel_family(CasimirFamilyPoint(v, FourVector{0, 0.3, 0, 0}, 0.0, 1), P);
  const auto m = m_tensor(p);
  // only the 01 component survives
  for (std::size_t q = 1; q < 6; ++q) EXPECT_NEAR(m[q], 0.0, 1e-10 * std::abs(m[0]));
  EXPECT_GT(std::abs(m[0]), 1e-3);
}

TEST(Kernel, ClosedFormValues) {
  const ModelParams P;
  EXPECT_NEAR(hyperbolic_kernel_chi(1.0, 1, P), 0.90516, 5e-6);
  EXPECT_NEAR(hyperbolic_kernel_chi(0.0, 3, P), 1.0, 1e-15);
  EXPECT_NEAR(chi_coth_chi_minus_one(1e-6), 1e-12 / 3.0, 1e-24);
  const auto v = HyperboloidPoint::from_rapidity(0.8, {1, 0, 0});
  EXPECT_NEAR(hyperbolic_kernel(v, HyperboloidPoint::rest(), 2, P), hyperbolic_kernel_chi(0.8, 2, P), 1e-14);
}

TEST(Spinor, DyadVectorIsNullAndOrthogonalToL) {
  auto rng = StreamSplitter(33).stream("lorentz.dyad");
  for (int k = 0; k < 5; ++k) {
    const Vec3 n = random_unit_vector(rng);
    const auto X = detail::dyad_vector(n);
    cplx xx(0.0), xl(0.0);
    for (int a = 0; a < 4; ++a) {
      xx += metric[a] * X[a] * X[a];
      xl += metric[a] * X[a] * (a == 0 ? 1.0 : n[a - 1]);
    }
    EXPECT_NEAR(std::abs(xx), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(xl), 0.0, 1e-14);
  }
}

TEST(Spinor, ParsevalAfterCalibration) {
  auto rng = StreamSplitter(34).stream("lorentz.parseval");
  EXPECT_NEAR(spinor_calibration(), 1.0 / std::sqrt(2.0), 1e-12);
  const int L = 24;
  for (int k = 0; k < 3; ++k) {
    const auto G1 = random_smooth(rng, 0, L, L, 1.0, false, 0.8), G2 = random_smooth(rng, 0, L, L, 1.0, false, 0.8);
    const auto a = section_inner(principal_series_map(G1), principal_series_map(G2));
    const auto b = k_product(G1, G2);
    EXPECT_LT(std::abs(a - b) / std::abs(b), 1e-6);
  }
}
