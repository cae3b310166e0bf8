#include <cmath>

#include <gtest/gtest.h>

#include "coneweyl/random.hpp"
#include "coneweyl/weyl.hpp"

using namespace coneweyl;

namespace {
constexpr int L = 24;
constexpr double e = 1.0;

SymplecticPair random_pair(std::mt19937_64& rng, int n, double amp = 0.5) {
  auto c = dsquare(random_smooth(rng, 0, L, 6, amp));
  if (n != 0) c = c + coulomb_c(random_hyperboloid_point(rng, 1.0), e, L) * double(n);
  return SymplecticPair(random_smooth(rng, 0, L, 6, amp), c, e);
}

// (1/4pi) int (D1 c2 - D2 c1) by direct quadrature of sampled values.
double sigma_quadrature(const SymplecticPair& a, const SymplecticPair& b) {
  const auto& g = grid_for(2 * L);
  const auto D1 = a.D().samples(g), c1 = a.c().samples(g), D2 = b.D().samples(g), c2 = b.c().samples(g);
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weight(k) * (D1[k] * c2[k] - D2[k] * c1[k]).real();
  return s / (4 * pi);
}
}  // namespace

TEST(ChargeIndex, IntegerAndRejection) {
  const auto cv = coulomb_c(HyperboloidPoint::from_rapidity(0.9, {0, 1, 0}), 0.5, 48);
  EXPECT_EQ(charge_index(cv * 3.0, 0.5), 3);
  EXPECT_EQ(charge_index(-cv, 0.5), -1);
  EXPECT_THROW(charge_index(cv * 0.5, 0.5), NonIntegerCharge);
}

TEST(SymplecticPair, Validation) {
  EXPECT_THROW(SymplecticPair(ConeFunction(-2, 4), ConeFunction(-2, 4), e), DomainError);
  EXPECT_THROW(SymplecticPair(ConeFunction(0, 4), ConeFunction(0, 4), e), DomainError);
  std::vector<cplx> c(sh_size(2), cplx(0.0));
  c[sh_index(1, 1)] = 1.0;
  EXPECT_THROW(SymplecticPair(ConeFunction(0, 2, c, false), ConeFunction(-2, 2), e), DomainError);
}

TEST(Symplectic, MatchesDirectQuadrature) {
  auto rng = StreamSplitter(10).stream("weyl.sigma");
  for (int k = 0; k < 3; ++k) {
    const auto a = random_pair(rng, 1), b = random_pair(rng, -2);
    EXPECT_NEAR(symplectic(a, b), sigma_quadrature(a, b), 1e-12);
  }
}

TEST(Symplectic, ConstantShiftAgainstCharge) {
  const double lambda = 0.3;
  const SymplecticPair a(ConeFunction::constant(lambda, L), ConeFunction(-2, L), e);
  const SymplecticPair b(ConeFunction(0, L), coulomb_c(HyperboloidPoint::from_rapidity(1.2, {0, 0, 1}), e, 48) * 2.0, e);
  EXPECT_NEAR(symplectic(a, b), lambda * 2 * e, 1e-12);
}

TEST(Weyl, ProductPhase) {
  auto rng = StreamSplitter(11).stream("weyl.product");
  const auto a = random_pair(rng, 1), b = random_pair(rng, 0);
  const auto ab = WeylElement::generator(a) * WeylElement::generator(b);
  ASSERT_EQ(ab.terms().size(), 1u);
  EXPECT_NEAR(std::abs(ab.terms()[0].weight() - std::polar(1.0, 0.5 * sigma_quadrature(a, b))), 0.0, 1e-12);
  EXPECT_EQ(ab.terms()[0].pair.n(), 1);
}

TEST(Weyl, CommutationRelation) {
  auto rng = StreamSplitter(12).stream("weyl.commute");
  const auto a = WeylElement::generator(random_pair(rng, 1)), b = WeylElement::generator(random_pair(rng, 2));
  const double s = symplectic(a.terms()[0].pair, b.terms()[0].pair);
  EXPECT_TRUE(approx_equal(a * b, std::polar(1.0, s) * (b * a), 1e-12));
}

TEST(Weyl, UnitAndInverse) {
  auto rng = StreamSplitter(13).stream("weyl.unit");
  const auto a = WeylElement::generator(random_pair(rng, -1), cplx(0.5, 0.5));
  EXPECT_TRUE(approx_equal(WeylElement::unit() * a, a, 1e-14));
  EXPECT_TRUE(approx_equal(a * WeylElement::unit(), a, 1e-14));
  const auto w = WeylElement::generator(random_pair(rng, 2));
  EXPECT_TRUE(approx_equal(adjoint(w) * w, WeylElement::unit(), 1e-13));
}

TEST(Weyl, MergingAndSectors) {
  auto rng = StreamSplitter(14).stream("weyl.merge");
  const auto p = random_pair(rng, 1);
  const auto a = WeylElement::generator(p, 2.0) + WeylElement::generator(p, -2.0);
  EXPECT_TRUE(a.empty());
  const auto b = WeylElement::generator(p) + WeylElement::generator(random_pair(rng, 1));
  ASSERT_TRUE(b.sector().has_value());
  EXPECT_EQ(*b.sector(), 1);
  const auto c = b + WeylElement::generator(random_pair(rng, 0));
  EXPECT_FALSE(c.sector().has_value());
}

TEST(Weyl, AutomorphismIsHomomorphism) {
  auto rng = StreamSplitter(15).stream("weyl.auto");
  const auto lam = random_lorentz(rng, 0.8);
  const auto a = WeylElement::generator(random_pair(rng, 1)), b = WeylElement::generator(random_pair(rng, 0));
  const auto lhs = lorentz_automorphism(a * b, lam);
  const auto rhs = lorentz_automorphism(a, lam) * lorentz_automorphism(b, lam);
  EXPECT_TRUE(approx_equal(lhs, rhs, 1e-8));
}

class WeylProperty : public ::testing::TestWithParam<int> {};

TEST_P(WeylProperty, SigmaBilinearAndAntisymmetric) {
  auto rng = StreamSplitter(100 + GetParam()).stream("weyl.property");
  const auto a = random_pair(rng, 1), b = random_pair(rng, 0), c = random_pair(rng, -1);
  EXPECT_NEAR(symplectic(a + b, c), symplectic(a, c) + symplectic(b, c), 1e-12);
  EXPECT_NEAR(symplectic(3 * a, c), 3 * symplectic(a, c), 1e-12);
  EXPECT_NEAR(symplectic(a, b), -symplectic(b, a), 1e-14);
  const auto x = WeylElement::generator(a, cplx(0.3, -0.2)) + WeylElement::generator(b);
  const auto y = WeylElement::generator(c);
  EXPECT_TRUE(approx_equal((x * y) * x, x * (y * x), 1e-12));
  EXPECT_TRUE(approx_equal(adjoint(x * y), adjoint(y) * adjoint(x), 1e-12));
}

INSTANTIATE_TEST_SUITE_P(Seeds, WeylProperty, ::testing::Range(0, 6));
