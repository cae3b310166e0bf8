#pragma once

// JSON and CSV formats for cone functions, Weyl elements and reports.

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coneweyl/cone.hpp"
#include "coneweyl/gns.hpp"
#include "coneweyl/lorentz.hpp"
#include "coneweyl/weyl.hpp"

namespace coneweyl {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"degree": d, "lmax": N, "coeffs": [[l, m, re, im], ...]}; zero coefficients are omitted.
inline json to_json(const ConeFunction& f) {
  json coeffs = json::array();
  for (int l = 0; l <= f.lmax(); ++l)
    for (int m = -l; m <= l; ++m) {
      const cplx c = f.coeff(l, m);
      if (c != cplx(0.0)) coeffs.push_back({l, m, c.real(), c.imag()});
    }
  return {{"degree", f.degree()}, {"lmax", f.lmax()}, {"coeffs", std::move(coeffs)}};
}

/// Missing entries are zero. The function is marked real when its coefficients
/// are conjugate-symmetric to within `real_tol` (relative).
inline ConeFunction cone_function_from_json(const json& j, double real_tol = 1e-14) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("lmax") || !j.contains("coeffs"))
    throw FormatError("cone function: need keys degree, lmax, coeffs");
  const int degree = j.at("degree").get<int>();
  const int lmax = j.at("lmax").get<int>();
  if (degree != 0 && degree != -2) throw FormatError("cone function: degree must be 0 or -2");
  if (lmax < 0) throw FormatError("cone function: negative lmax");
  std::vector<cplx> c(sh_size(lmax), cplx(0.0));
  for (const auto& e : j.at("coeffs")) {
    if (!e.is_array() || e.size() != 4) throw FormatError("cone function: coefficient entries are [l, m, re, im]");
    const int l = e[0].get<int>(), m = e[1].get<int>();
    if (l < 0 || l > lmax) throw FormatError("cone function: coefficient with l > lmax");
    if (std::abs(m) > l) throw FormatError("cone function: coefficient with |m| > l");
    c[sh_index(l, m)] = cplx(e[2].get<double>(), e[3].get<double>());
  }
  double asym = 0.0, total = 0.0;
  for (int l = 0; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) {
      const double s = (m % 2) ? -1.0 : 1.0;
      asym += std::norm(c[sh_index(l, m)] - s * std::conj(c[sh_index(l, -m)]));
      total += std::norm(c[sh_index(l, m)]);
    }
  const bool real = asym <= real_tol * real_tol * std::max(total, 1e-300) || total == 0.0;
  return ConeFunction(degree, lmax, std::move(c), real);
}

/// {"terms": [{"re", "im", "D", "c"}, ...]}; re/im is the full weight of the term.
inline json to_json(const WeylElement& a) {
  json terms = json::array();
  for (const auto& t : a.terms()) {
    const cplx w = t.weight();
    terms.push_back({{"re", w.real()}, {"im", w.imag()}, {"D", to_json(t.pair.D())}, {"c", to_json(t.pair.c())}});
  }
  return {{"terms", std::move(terms)}};
}

inline WeylElement weyl_element_from_json(const json& j, double e, double tol_charge = default_tol_charge) {
  if (!j.is_object() || !j.contains("terms")) throw FormatError("weyl element: need key terms");
  WeylElement a;
  for (const auto& t : j.at("terms")) {
    SymplecticPair p(cone_function_from_json(t.at("D")), cone_function_from_json(t.at("c")), e, tol_charge);
    a.add({cplx(t.value("re", 1.0), t.value("im", 0.0)), 0.0, std::move(p)});
  }
  return a;
}

/// {"matrix": [[[re, im], ...], ...], "min_eig": x, "psd": b, "tol": t}.
inline json to_json(const GramReport& r) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < r.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < r.matrix.cols(); ++k) row.push_back({r.matrix(i, k).real(), r.matrix(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return {{"matrix", std::move(rows)}, {"min_eig", r.min_eig}, {"psd", r.psd}, {"tol", r.tol}};
}

inline json to_json(const ResidualReport& r) { return {{"residual", r.residual}, {"scale", r.scale}, {"pass", r.pass}}; }

inline json to_json(const RealTensor& t) {
  json j = json::object();
  for (std::size_t p = 0; p < 6; ++p)
    j["F" + std::to_string(planes[p].first) + std::to_string(planes[p].second)] = t[p];
  return j;
}

inline void write_csv_header_phase(std::ostream& os) { os << "t,x,y,z,S\n"; }
inline void write_csv_header_field(std::ostream& os) { os << "t,x,y,z,F01,F02,F03,F12,F13,F23\n"; }

inline void write_csv_row(std::ostream& os, const FourVector& x, double s) {
  os << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ',' << s << '\n';
}
inline void write_csv_row(std::ostream& os, const FourVector& x, const RealTensor& f) {
  os << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3];
  for (const double v : f.c) os << ',' << v;
  os << '\n';
}

}  // namespace coneweyl
