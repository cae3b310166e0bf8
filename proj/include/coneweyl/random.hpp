#pragma once

// Reproducible random inputs: every consumer draws from a stream named after
// itself, derived from one seed, so suites reproduce individually.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "coneweyl/cone.hpp"
#include "coneweyl/minkowski.hpp"

namespace coneweyl {

inline constexpr std::uint64_t default_seed = 20240607;

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

class StreamSplitter {
 public:
  explicit StreamSplitter(std::uint64_t seed = default_seed) : seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

  std::mt19937_64 stream(std::string_view name) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(fnv1a(name)), static_cast<std::uint32_t>(fnv1a(name) >> 32)};
    return std::mt19937_64(seq);
  }

 private:
  std::uint64_t seed_;
};

inline double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
inline double gaussian(std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline Vec3 random_unit_vector(std::mt19937_64& rng) {
  for (;;) {
    const Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
    const double n = norm3(v);
    if (n > 1e-6) return {v[0] / n, v[1] / n, v[2] / n};
  }
}

/// Smooth function with random coefficients up to band `content` (<= lmax),
/// amplitude decaying like decay^l. The l = 0 term is included only when `with_mean`.
inline ConeFunction random_smooth(std::mt19937_64& rng, int degree, int lmax, int content, double amplitude = 1.0,
                                  bool real = true, double decay = 0.7, bool with_mean = false) {
  std::vector<cplx> c(sh_size(lmax), cplx(0.0));
  const int top = std::min(content, lmax);
  for (int l = with_mean ? 0 : 1; l <= top; ++l) {
    const double a = amplitude * std::pow(decay, l) / std::sqrt(2.0 * l + 1.0);
    for (int m = -l; m <= l; ++m) c[sh_index(l, m)] = a * cplx(gaussian(rng), gaussian(rng));
  }
  return ConeFunction(degree, lmax, std::move(c), real);
}

/// Point of H with rapidity uniform in [0, max_rapidity] and isotropic direction.
inline HyperboloidPoint random_hyperboloid_point(std::mt19937_64& rng, double max_rapidity) {
  return HyperboloidPoint::from_rapidity(uniform(rng, 0.0, max_rapidity), random_unit_vector(rng));
}

/// Spacelike x with x.v = 0 and rest-frame length in [min_norm, max_norm].
inline FourVector random_orthogonal_spacelike(std::mt19937_64& rng, const HyperboloidPoint& v, double min_norm,
                                              double max_norm) {
  const Vec3 d = random_unit_vector(rng);
  const double r = uniform(rng, min_norm, max_norm);
  const FourVector y{0.0, r * d[0], r * d[1], r * d[2]};
  FourVector x = LorentzTransform::boost_to(v).apply(y);
  // Remove the rounding-level component along v.
  const double s = mdot(x, v.vec());
  return x - s * v.vec();
}

inline LorentzTransform random_lorentz(std::mt19937_64& rng, double max_rapidity) {
  return LorentzTransform::boost(uniform(rng, 0.0, max_rapidity), random_unit_vector(rng)) *
         LorentzTransform::rotation(random_unit_vector(rng), uniform(rng, 0.0, 2.0 * pi));
}

}  // namespace coneweyl
