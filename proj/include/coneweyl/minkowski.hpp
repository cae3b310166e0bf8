#pragma once

// Minkowski space with signature (+,-,-,-): four-vectors, the future unit
// hyperboloid H and restricted Lorentz transformations.

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "coneweyl/errors.hpp"

namespace coneweyl {

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

/// Metric diagonal g_aa.
inline constexpr std::array<double, 4> metric{1.0, -1.0, -1.0, -1.0};

/// Contravariant components x^a.
struct FourVector {
  std::array<double, 4> c{};

  constexpr FourVector() = default;
  constexpr FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}
  static FourVector from_spatial(double t, const Vec3& v) { return {t, v[0], v[1], v[2]}; }

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
  Vec3 spatial() const { return {c[1], c[2], c[3]}; }
  /// Covariant components x_a = g_ab x^b.
  FourVector lowered() const { return {c[0], -c[1], -c[2], -c[3]}; }
  double euclidean_norm() const { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]); }

  friend FourVector operator+(FourVector a, const FourVector& b) {
    for (int i = 0; i < 4; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend FourVector operator-(FourVector a, const FourVector& b) {
    for (int i = 0; i < 4; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend FourVector operator*(double s, FourVector a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
};

inline double mdot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// a . l for the null vector l = (1, n).
inline double dot_section(const FourVector& a, const Vec3& n) {
  return a[0] - a[1] * n[0] - a[2] * n[1] - a[3] * n[2];
}

/// Point of the future unit hyperboloid: v.v = 1, v^0 > 0.
class HyperboloidPoint {
 public:
  explicit HyperboloidPoint(const FourVector& v, double tol = 1e-10) : v_(v) {
    if (!(v[0] > 0.0) || std::abs(mdot(v, v) - 1.0) > tol * (1.0 + v[0] * v[0])) {
      std::ostringstream os;
      os << "point is not on the future unit hyperboloid (v.v = " << mdot(v, v) << ", v0 = " << v[0] << ")";
      throw DomainError(os.str());
    }
  }
  static HyperboloidPoint rest() { return HyperboloidPoint(FourVector{1, 0, 0, 0}); }
  /// cosh(r) e_0 + sinh(r) dir, dir a unit 3-vector (normalized here).
  static HyperboloidPoint from_rapidity(double rapidity, const Vec3& dir) {
    const double nrm = norm3(dir);
    if (nrm == 0.0) return rest();
    const double s = std::sinh(rapidity) / nrm;
    return HyperboloidPoint(FourVector{std::cosh(rapidity), s * dir[0], s * dir[1], s * dir[2]});
  }
  /// v built from a spatial velocity parameter, normalized onto H.
  static HyperboloidPoint from_spatial(const Vec3& p) {
    return HyperboloidPoint(FourVector::from_spatial(std::sqrt(1.0 + dot3(p, p)), p));
  }

  const FourVector& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  double rapidity() const { return std::acosh(std::max(1.0, v_[0])); }

 private:
  FourVector v_;
};

/// Hyperbolic angle arcosh(v.u).
inline double hyperbolic_angle(const HyperboloidPoint& v, const HyperboloidPoint& u) {
  return std::acosh(std::max(1.0, mdot(v.vec(), u.vec())));
}

/// Restricted Lorentz transformation Lambda^a_b acting on contravariant vectors.
class LorentzTransform {
 public:
  LorentzTransform() : m_(Eigen::Matrix4d::Identity()) {}
  explicit LorentzTransform(const Eigen::Matrix4d& m, double tol = 1e-12) : m_(m) {
    const Eigen::Matrix4d g = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double err = (m.transpose() * g * m - g).cwiseAbs().maxCoeff();
    if (err > tol * scale * scale) throw DomainError("matrix is not a Lorentz transformation");
    if (m(0, 0) < 1.0 - tol) throw DomainError("Lorentz transformation is not orthochronous");
    if (std::abs(m.determinant() - 1.0) > tol * scale * scale * scale * scale)
      throw DomainError("Lorentz transformation is not proper");
  }

  static LorentzTransform identity() { return {}; }

  /// Pure boost of the given rapidity along dir.
  static LorentzTransform boost(double rapidity, const Vec3& dir) {
    const double nrm = norm3(dir);
    if (nrm == 0.0 || rapidity == 0.0) return {};
    const Vec3 n{dir[0] / nrm, dir[1] / nrm, dir[2] / nrm};
    const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = ch;
    for (int i = 0; i < 3; ++i) {
      m(0, i + 1) = m(i + 1, 0) = sh * n[i];
      for (int j = 0; j < 3; ++j) m(i + 1, j + 1) += (ch - 1.0) * n[i] * n[j];
    }
    return LorentzTransform(m, 1e-9);
  }

  /// Rotation by angle about axis (right-handed).
  static LorentzTransform rotation(const Vec3& axis, double angle) {
    const double nrm = norm3(axis);
    if (nrm == 0.0) return {};
    const Eigen::Vector3d k(axis[0] / nrm, axis[1] / nrm, axis[2] / nrm);
    const Eigen::Matrix3d r = Eigen::AngleAxisd(angle, k).toRotationMatrix();
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 3>(1, 1) = r;
    return LorentzTransform(m);
  }

  /// The pure boost taking e_0 to v.
  static LorentzTransform boost_to(const HyperboloidPoint& v) {
    const Vec3 p = v.vec().spatial();
    return boost(v.rapidity(), p);
  }

  const Eigen::Matrix4d& matrix() const { return m_; }

  FourVector apply(const FourVector& x) const {
    FourVector y;
    for (int a = 0; a < 4; ++a) {
      double s = 0.0;
      for (int b = 0; b < 4; ++b) s += m_(a, b) * x[b];
      y[a] = s;
    }
    return y;
  }
  HyperboloidPoint apply(const HyperboloidPoint& v) const { return HyperboloidPoint(apply(v.vec()), 1e-9); }

  /// Lambda^{-1} = g Lambda^T g.
  LorentzTransform inverse() const {
    const Eigen::Matrix4d g = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
    LorentzTransform out;
    out.m_ = g * m_.transpose() * g;
    return out;
  }

  friend LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b) {
    LorentzTransform out;
    out.m_ = a.m_ * b.m_;
    return out;
  }

 private:
  Eigen::Matrix4d m_;
};

}  // namespace coneweyl
