#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "coneweyl/legendre.hpp"
#include "coneweyl/random.hpp"
#include "coneweyl/sphere.hpp"

using namespace coneweyl;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  for (int k = 0; k <= 11; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
    EXPECT_NEAR(s, exact, 1e-14) << "power " << k;
  }
}

TEST(Legendre, LowOrderClosedForms) {
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
    const auto p = legendre_p(3, x);
    EXPECT_NEAR(p[2], 0.5 * (3 * x * x - 1), 1e-15);
    EXPECT_NEAR(p[3], 0.5 * (5 * x * x * x - 3 * x), 1e-15);
    const auto q = ferrers_q(2, x);
    const double q0 = 0.5 * std::log((1 + x) / (1 - x));
    EXPECT_NEAR(q[0], q0, 1e-14);
    EXPECT_NEAR(q[1], x * q0 - 1, 1e-14);
    EXPECT_NEAR(q[2], 0.5 * (3 * x * x - 1) * q0 - 1.5 * x, 1e-14);
  }
}

TEST(Legendre, SecondKindOffTheCut) {
  for (double z : {1.2, 3.0, 25.0}) {
    const auto q = legendre_q(2, cplx(z, 0.0));
    const double q0 = 0.5 * std::log((z + 1) / (z - 1));
    EXPECT_NEAR(q[0].real(), q0, 1e-13);
    EXPECT_NEAR(q[1].real(), z * q0 - 1, 1e-13);
    EXPECT_NEAR(q[2].real(), 0.5 * (3 * z * z - 1) * q0 - 1.5 * z, 1e-12);
  }
  EXPECT_THROW(legendre_q(3, cplx(0.3, 0.0)), std::domain_error);
}

TEST(Legendre, BoundaryValueFromBelowTheCut) {
  // Q_l(x - i0) = Qtilde_l(x) + (i pi / 2) P_l(x)
  const int L = 6;
  for (double x : {-0.7, 0.1, 0.6}) {
    const auto q = legendre_q(L, cplx(x, -1e-5));
    const auto qt = ferrers_q(L, x);
    const auto p = legendre_p(L, x);
    for (int l = 0; l <= L; ++l) {
      EXPECT_NEAR(q[l].real(), qt[l], 1e-3) << l;
      EXPECT_NEAR(q[l].imag(), 0.5 * pi * p[l], 1e-3) << l;
    }
  }
}

TEST(SphericalHarmonics, ExplicitLowOrder) {
  const int L = 2;
  std::vector<cplx> f(sh_size(L), cplx(0.0));
  const Vec3 n{std::sin(0.7) * std::cos(1.1), std::sin(0.7) * std::sin(1.1), std::cos(0.7)};
  f[sh_index(1, 0)] = 1.0;
  EXPECT_NEAR(std::abs(evaluate(L, f, n) - std::sqrt(3.0 / (4 * pi)) * std::cos(0.7)), 0.0, 1e-15);
  f[sh_index(1, 0)] = 0.0;
  f[sh_index(1, 1)] = 1.0;
  const cplx y11 = -std::sqrt(3.0 / (8 * pi)) * std::sin(0.7) * std::polar(1.0, 1.1);
  EXPECT_NEAR(std::abs(evaluate(L, f, n) - y11), 0.0, 1e-15);
  f[sh_index(1, 1)] = 0.0;
  f[sh_index(2, -2)] = 1.0;
  const cplx y2m2 = 0.25 * std::sqrt(15.0 / (2 * pi)) * std::pow(std::sin(0.7), 2) * std::polar(1.0, -2.2);
  EXPECT_NEAR(std::abs(evaluate(L, f, n) - y2m2), 0.0, 1e-15);
}

TEST(SphericalHarmonics, AnalyzeInvertsSynthesize) {
  auto rng = StreamSplitter(1).stream("sphere.roundtrip");
  const int L = 20;
  std::vector<cplx> f(sh_size(L));
  for (auto& c : f) c = cplx(gaussian(rng), gaussian(rng));
  const auto& g = grid_for(L);
  const auto back = analyze(g, synthesize(g, L, f), L);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
  EXPECT_LT(err, 1e-12);
}

TEST(SphericalHarmonics, PointEvaluationMatchesGrid) {
  auto rng = StreamSplitter(2).stream("sphere.point");
  const int L = 10;
  std::vector<cplx> f(sh_size(L));
  for (auto& c : f) c = cplx(gaussian(rng), gaussian(rng));
  const auto& g = grid_for(L);
  const auto s = synthesize(g, L, f);
  for (std::size_t k = 0; k < g.size(); k += 17) EXPECT_NEAR(std::abs(evaluate(L, f, g.node(k)) - s[k]), 0.0, 1e-12);
}

TEST(SphericalHarmonics, GradientMatchesFiniteDifferences) {
  auto rng = StreamSplitter(3).stream("sphere.gradient");
  const int L = 8;
  std::vector<cplx> f(sh_size(L));
  for (auto& c : f) c = cplx(gaussian(rng), gaussian(rng));
  const auto& g = grid_for(L);
  const auto grad = synthesize_gradient(g, L, f);
  const double h = 1e-5;
  for (std::size_t k = 3; k < g.size(); k += 29) {
    const Vec3 n = g.node(k);
    // directional derivative along a tangent t: d/ds f((n + s t)/|n + s t|)
    const Vec3 t = norm3({-n[1], n[0], 0.0}) > 1e-8 ? Vec3{-n[1], n[0], 0.0} : Vec3{1.0, 0.0, 0.0};
    const auto at = [&](double s) {
      Vec3 m{n[0] + s * t[0], n[1] + s * t[1], n[2] + s * t[2]};
      const double r = norm3(m);
      return evaluate(L, f, {m[0] / r, m[1] / r, m[2] / r});
    };
    const cplx fd = (at(h) - at(-h)) / (2 * h);
    const cplx an = grad.x[k] * t[0] + grad.y[k] * t[1] + grad.z[k] * t[2];
    EXPECT_NEAR(std::abs(fd - an), 0.0, 1e-7 * (1 + std::abs(an)));
  }
}

TEST(Grid, WeightsAndCache) {
  const auto& a = grid_for(16);
  EXPECT_EQ(&a, &grid_for(16));
  EXPECT_EQ(a.n_theta(), 34);
  EXPECT_EQ(a.n_phi(), 68);
  EXPECT_NEAR(a.weight_sum(), 4 * pi, 1e-12);
}
