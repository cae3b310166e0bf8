#pragma once

// The symplectic group of pairs (D, c) and the Weyl *-algebra over it.

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "coneweyl/cone.hpp"
#include "coneweyl/errors.hpp"

namespace coneweyl {

inline constexpr double default_tol_charge = 1e-8;
inline constexpr double default_tol_merge = 1e-9;

/// n_c = (1/4 pi e) int c, required to be an integer within tol.
inline int charge_index(const ConeFunction& c, double e, double tol = default_tol_charge) {
  if (c.degree() != -2) throw DomainError("charge_index: degree must be -2");
  if (!(e > 0.0)) throw DomainError("charge_index: e must be positive");
  const double q = integrate_invariant(c).real() / (4.0 * pi * e);
  const double n = std::round(q);
  if (std::abs(q - n) > tol) {
    std::ostringstream os;
    os << "charge index " << q << " is not an integer (residual " << std::abs(q - n) << ")";
    throw NonIntegerCharge(os.str(), std::abs(q - n));
  }
  return static_cast<int>(n);
}

/// (D, c): real degree-0 D and real degree -2 c with integer charge index.
class SymplecticPair {
 public:
  /// The zero pair.
  SymplecticPair() : D_(0, 0), c_(-2, 0), n_(0) {}

  SymplecticPair(ConeFunction D, ConeFunction c, double e, double tol_charge = default_tol_charge)
      : D_(std::move(D)), c_(std::move(c)) {
    if (D_.degree() != 0) throw DomainError("SymplecticPair: D must have degree 0");
    if (c_.degree() != -2) throw DomainError("SymplecticPair: c must have degree -2");
    if (!D_.is_real() || !c_.is_real()) throw DomainError("SymplecticPair: D and c must be real");
    n_ = charge_index(c_, e, tol_charge);
  }

  const ConeFunction& D() const { return D_; }
  const ConeFunction& c() const { return c_; }
  int n() const { return n_; }

  bool is_zero() const { return D_.norm() == 0.0 && c_.norm() == 0.0; }

  friend SymplecticPair operator+(const SymplecticPair& a, const SymplecticPair& b) {
    return SymplecticPair(a.D_ + b.D_, a.c_ + b.c_, a.n_ + b.n_);
  }
  friend SymplecticPair operator-(const SymplecticPair& a) { return SymplecticPair(-a.D_, -a.c_, -a.n_); }
  friend SymplecticPair operator-(const SymplecticPair& a, const SymplecticPair& b) { return a + (-b); }
  /// Integer multiples keep the charge index integral.
  friend SymplecticPair operator*(int k, const SymplecticPair& a) {
    return SymplecticPair(a.D_ * double(k), a.c_ * double(k), k * a.n_);
  }
  /// Trusted constructor for results of exact pair arithmetic.
  static SymplecticPair from_parts(ConeFunction D, ConeFunction c, int n) {
    return SymplecticPair(std::move(D), std::move(c), n);
  }

 private:
  SymplecticPair(ConeFunction D, ConeFunction c, int n) : D_(std::move(D)), c_(std::move(c)), n_(n) {}

  ConeFunction D_;
  ConeFunction c_;
  int n_;
};

/// sigma(p1; p2) = (1/4 pi) int [D1 c2 - D2 c1] d^2l.
inline double symplectic(const SymplecticPair& p1, const SymplecticPair& p2) {
  return (product_integral(p1.D(), p2.c()) - product_integral(p2.D(), p1.c())).real() / (4.0 * pi);
}

/// Pairs agree when charge indices match and both components agree within
/// tol * (1 + norms) in coefficient 2-norm.
inline bool same_pair(const SymplecticPair& a, const SymplecticPair& b, double tol = default_tol_merge) {
  if (a.n() != b.n()) return false;
  const double dD = distance(a.D(), b.D());
  const double dc = distance(a.c(), b.c());
  return dD < tol * (1.0 + a.D().norm() + b.D().norm()) && dc < tol * (1.0 + a.c().norm() + b.c().norm());
}

/// coeff * e^{i phase} W(pair). The phase is kept separate so that Weyl-relation
/// phases accumulate additively.
struct WeylTerm {
  cplx coeff{1.0};
  double phase = 0.0;
  SymplecticPair pair;

  cplx weight() const { return coeff * std::polar(1.0, phase); }
};

class WeylElement {
 public:
  WeylElement() = default;

  static WeylElement unit() { return generator(SymplecticPair{}); }
  static WeylElement generator(SymplecticPair p, cplx coeff = 1.0) {
    WeylElement a;
    a.terms_.push_back({coeff, 0.0, std::move(p)});
    return a;
  }

  const std::vector<WeylTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Charge index shared by all terms; empty when terms are mixed or absent.
  std::optional<int> sector() const {
    if (terms_.empty()) return std::nullopt;
    const int n = terms_.front().pair.n();
    for (const auto& t : terms_)
      if (t.pair.n() != n) return std::nullopt;
    return n;
  }

  /// Appends a term and restores normal form.
  void add(WeylTerm t, double tol = default_tol_merge) {
    for (auto& s : terms_) {
      if (same_pair(s.pair, t.pair, tol)) {
        s.coeff += t.coeff * std::polar(1.0, t.phase - s.phase);
        drop_zeros();
        return;
      }
    }
    if (t.coeff != cplx(0.0)) terms_.push_back(std::move(t));
  }

  friend WeylElement operator+(WeylElement a, const WeylElement& b) {
    for (const auto& t : b.terms_) a.add(t);
    return a;
  }
  friend WeylElement operator*(cplx s, WeylElement a) {
    for (auto& t : a.terms_) t.coeff *= s;
    a.drop_zeros();
    return a;
  }

 private:
  void drop_zeros() {
    std::erase_if(terms_, [](const WeylTerm& t) { return t.coeff == cplx(0.0); });
  }

  std::vector<WeylTerm> terms_;
};

/// W(p1) W(p2) = exp[(i/2) sigma(p1; p2)] W(p1 + p2), extended bilinearly.
inline WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  WeylElement out;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms())
      out.add({s.coeff * t.coeff, s.phase + t.phase + 0.5 * symplectic(s.pair, t.pair), s.pair + t.pair});
  return out;
}

inline WeylElement operator*(const WeylElement& a, const WeylElement& b) { return multiply(a, b); }

/// W(D, c)* = W(-D, -c), coefficients conjugated.
inline WeylElement adjoint(const WeylElement& a) {
  WeylElement out;
  for (const auto& t : a.terms()) out.add({std::conj(t.coeff), -t.phase, -t.pair});
  return out;
}

inline SymplecticPair lorentz_pullback(const SymplecticPair& p, const LorentzTransform& lambda) {
  return SymplecticPair::from_parts(lorentz_pullback(p.D(), lambda), lorentz_pullback(p.c(), lambda), p.n());
}

/// alpha_Lambda(W(D, c)) = W(T D, T c).
inline WeylElement lorentz_automorphism(const WeylElement& a, const LorentzTransform& lambda) {
  WeylElement out;
  for (const auto& t : a.terms()) out.add({t.coeff, t.phase, lorentz_pullback(t.pair, lambda)});
  return out;
}

/// Element-wise comparison of normal forms: each term of a has a partner in b
/// with equal pair and weight within tol.
inline bool approx_equal(const WeylElement& a, const WeylElement& b, double tol) {
  if (a.terms().size() != b.terms().size()) return false;
  for (const auto& s : a.terms()) {
    bool found = false;
    for (const auto& t : b.terms()) {
      if (same_pair(s.pair, t.pair, tol)) {
        found = std::abs(s.weight() - t.weight()) <= tol * (1.0 + std::abs(s.weight()));
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace coneweyl
