#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coneweyl/coneweyl.hpp"

namespace cw = coneweyl;
using cw::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  cw::ModelParams params;
  std::uint64_t seed = cw::default_seed;
  unsigned threads = 0;
  std::string format = "json";
  std::string out;
  bool timestamp = false;
};

void apply_config_file(const std::string& path, Config& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw UsageError("config file " + path + ": " + ex.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "lmax") cfg.params.lmax = v.get<int>();
      else if (k == "e") cfg.params.e = v.get<double>();
      else if (k == "kappa") cfg.params.kappa = v.get<double>();
      else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (k == "threads") cfg.threads = v.get<unsigned>();
      else if (k == "format") cfg.format = v.get<std::string>();
      else if (k == "timestamp") cfg.timestamp = v.get<bool>();
      else if (k == "tolerances") {
        auto& t = cfg.params.tol;
        for (const auto& [tk, tv] : v.items()) {
          if (tk == "charge") t.charge = tv.get<double>();
          else if (tk == "zero_mean") t.zero_mean = tv.get<double>();
          else if (tk == "merge") t.merge = tv.get<double>();
          else if (tk == "psd") t.psd = tv.get<double>();
          else if (tk == "cone_margin") t.cone_margin = tv.get<double>();
          else throw UsageError("config file: unknown tolerance " + tk);
          if (!(tv.get<double>() > 0.0)) throw UsageError("config file: tolerance " + tk + " must be positive");
        }
      } else {
        throw UsageError("config file: unknown key " + k);
      }
    }
  } catch (const json::exception& ex) {
    throw UsageError("config file " + path + ": " + ex.what());
  }
}

void finalize(Config& cfg) {
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("format must be json or csv");
  // The environment variable overrides the configured thread count.
  const char* env = std::getenv(cw::thread_env_var);
  if (!(env && std::atoi(env) > 0) && cfg.threads > 0) cw::set_thread_count(cfg.threads);
}

json config_json(const Config& cfg) {
  const auto& t = cfg.params.tol;
  return {{"lmax", cfg.params.lmax},
          {"e", cfg.params.e},
          {"kappa", cfg.params.kappa},
          {"seed", cfg.seed},
          {"threads", cw::thread_count()},
          {"tolerances",
           {{"charge", t.charge}, {"zero_mean", t.zero_mean}, {"merge", t.merge}, {"psd", t.psd}, {"cone_margin", t.cone_margin}}}};
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out);
  if (!os) throw UsageError("cannot write " + cfg.out);
  os << text;
}

json envelope(const Config& cfg, const std::string& command) {
  json j{{"tool", "coneweyl"}, {"command", command}, {"config", config_json(cfg)}};
  if (cfg.timestamp) j["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

int cmd_verify(const std::string& suite, Config& cfg) {
  if (suite != "all" && std::find(cw::suite_names().begin(), cw::suite_names().end(), suite) == cw::suite_names().end())
    throw UsageError("unknown suite '" + suite + "' (expected cone, weyl, gns, lorentz, fields or all)");
  const auto checks = cw::run_suite(suite, {cfg.params, cfg.seed});
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass;
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "suite,check,residual,tol,status,note\n";
    for (const auto& c : checks)
      os << c.suite << ',' << csv_escape(c.name) << ',' << fmt(c.residual) << ',' << fmt(c.tol) << ','
         << (c.skipped ? "skip" : c.pass ? "pass" : "fail") << ',' << csv_escape(c.note) << '\n';
  } else {
    json j = envelope(cfg, "verify " + suite);
    json arr = json::array();
    for (const auto& c : checks) {
      json r{{"suite", c.suite}, {"check", c.name}, {"tol", c.tol},
             {"status", c.skipped ? "skip" : c.pass ? "pass" : "fail"}};
      r["residual"] = std::isfinite(c.residual) ? json(c.residual) : json(nullptr);
      if (!c.note.empty()) r["note"] = c.note;
      arr.push_back(std::move(r));
    }
    j["checks"] = std::move(arr);
    j["pass"] = ok;
    os << j.dump(2) << '\n';
  }
  emit(cfg, os.str());
  for (const auto& c : checks)
    if (!c.pass) std::cerr << "FAIL " << c.suite << ": " << c.name << " (residual " << c.residual << ", tol " << c.tol << ")\n";
  return ok ? 0 : 1;
}

/// "a:b:step" or a single number.
std::vector<double> parse_range(const std::string& s) {
  std::vector<double> out;
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number in range '" + s + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) throw UsageError("range must be a:b:step with step > 0");
  const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (long k = 0; k <= count; ++k) out.push_back(parts[0] + k * parts[2]);
  return out;
}

cw::HyperboloidPoint parse_point(const std::vector<double>& v, const char* what) {
  if (v.empty()) return cw::HyperboloidPoint::rest();
  if (v.size() != 4) throw UsageError(std::string(what) + " needs 4 components");
  try {
    return cw::HyperboloidPoint(cw::FourVector{v[0], v[1], v[2], v[3]});
  } catch (const cw::DomainError& ex) {
    throw UsageError(std::string(what) + ": " + ex.what());
  }
}

struct ComputeArgs {
  std::string chi = "1";
  std::vector<int> n{1};
  std::vector<double> v, u, x;
  double lambda = 0.0;
  int size = 8;
  std::string pair = "coulomb";
  std::string grid = "sphere";
  double R = 2.0, t = 0.0;
  int grid_lmax = 24;
};

std::string compute_kernel(const ComputeArgs& a, const Config& cfg) {
  const auto& P = cfg.params;
  std::vector<std::pair<double, int>> rows;
  std::vector<double> chis;
  if (!a.v.empty() || !a.u.empty()) {
    const auto v = parse_point(a.v, "--v"), u = parse_point(a.u, "--u");
    chis.push_back(cw::hyperbolic_angle(v, u));
  } else {
    chis = parse_range(a.chi);
  }
  for (const double chi : chis) {
    if (chi < 0.0) throw UsageError("chi must be nonnegative");
    for (const int n : a.n) rows.emplace_back(chi, n);
  }
  std::vector<double> closed(rows.size()), quad(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [chi, n] = rows[i];
    const auto v = cw::HyperboloidPoint::from_rapidity(-0.5 * chi, {1, 0, 0});
    const auto u = cw::HyperboloidPoint::from_rapidity(0.5 * chi, {1, 0, 0});
    const auto gen = [&](const cw::HyperboloidPoint& w) {
      return cw::WeylElement::generator(
          cw::SymplecticPair(cw::ConeFunction(0, P.lmax), cw::coulomb_c(w, P.e, P.lmax) * double(n), P.e, P.tol.charge));
    };
    closed[i] = cw::hyperbolic_kernel_chi(chi, n, P);
    quad[i] = cw::gns_inner(gen(v), gen(u), P).real();
  }
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "chi,n,closed_form,quadrature,rel_err\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      os << fmt(rows[i].first) << ',' << rows[i].second << ',' << fmt(closed[i]) << ',' << fmt(quad[i]) << ','
         << fmt(std::abs(quad[i] - closed[i]) / closed[i]) << '\n';
  } else {
    json j = envelope(cfg, "compute kernel");
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      arr.push_back({{"chi", rows[i].first}, {"n", rows[i].second}, {"closed_form", closed[i]}, {"quadrature", quad[i]},
                     {"rel_err", std::abs(quad[i] - closed[i]) / closed[i]}});
    j["rows"] = std::move(arr);
    os << j.dump(2) << '\n';
  }
  return os.str();
}

std::string compute_gram(const ComputeArgs& a, const Config& cfg) {
  const auto& P = cfg.params;
  if (a.n.size() != 1) throw UsageError("gram takes a single --n (the sector)");
  if (a.size < 1) throw UsageError("--size must be positive");
  auto rng = cw::StreamSplitter(cfg.seed).stream("compute.gram");
  std::vector<cw::GnsVector> vecs;
  for (int i = 0; i < a.size; ++i) {
    const auto v = cw::random_hyperboloid_point(rng, 1.0);
    const auto c = cw::coulomb_c(v, P.e, P.lmax) * double(a.n[0]) + cw::dsquare(cw::random_smooth(rng, 0, P.lmax, 6, 0.4));
    vecs.emplace_back(cw::WeylElement::generator(cw::SymplecticPair(cw::random_smooth(rng, 0, P.lmax, 6, 0.4), c, P.e),
                                                 cw::cplx(cw::gaussian(rng), cw::gaussian(rng))));
  }
  const auto g = cw::gram(vecs, P);
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "row,col,re,im\n";
    for (Eigen::Index i = 0; i < g.matrix.rows(); ++i)
      for (Eigen::Index k = 0; k < g.matrix.cols(); ++k)
        os << i << ',' << k << ',' << fmt(g.matrix(i, k).real()) << ',' << fmt(g.matrix(i, k).imag()) << '\n';
  } else {
    json j = envelope(cfg, "compute gram");
    j["sector"] = a.n[0];
    j["gram"] = cw::to_json(g);
    os << j.dump(2) << '\n';
  }
  return os.str();
}

std::string compute_casimir(const ComputeArgs& a, const Config& cfg) {
  const auto& P = cfg.params;
  if (a.n.size() != 1) throw UsageError("casimir takes a single --n");
  if (a.x.size() != 4) throw UsageError("casimir needs --x with 4 components");
  const auto v = parse_point(a.v, "--v");
  const cw::FourVector x{a.x[0], a.x[1], a.x[2], a.x[3]};
  cw::SymplecticPair p;
  try {
    p = cw::kernel_family(cw::CasimirFamilyPoint(v, x, a.lambda, a.n[0]), P);
  } catch (const cw::DomainError& ex) {
    throw UsageError(ex.what());
  }
  const auto k = cw::k_vector(p, v, P);
  const auto gram = cw::k_gram(cw::h_components(k));
  const auto m = cw::m_tensor(p);
  const auto res = cw::casimir2_residual(m, gram, a.n[0], P);
  const auto ax = cw::axis_residual(m, gram, v, x, a.n[0], P);
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "quantity,residual,scale,pass\n";
    os << "casimir2," << fmt(res.residual) << ',' << fmt(res.scale) << ',' << (res.pass ? "pass" : "fail") << '\n';
    for (int i = 0; i < 4; ++i)
      os << "axis" << i << ',' << fmt(ax.residual[i]) << ',' << fmt(ax.scale) << ',' << (ax.pass ? "pass" : "fail") << '\n';
  } else {
    json j = envelope(cfg, "compute casimir");
    j["n"] = a.n[0];
    j["casimir2"] = cw::to_json(static_cast<const cw::ResidualReport&>(res));
    j["axis"] = {{"residual", ax.residual}, {"scale", ax.scale}, {"pass", ax.pass}};
    j["m"] = cw::to_json(m);
    os << j.dump(2) << '\n';
  }
  return os.str();
}

std::string compute_field(const ComputeArgs& a, const Config& cfg) {
  const auto& P = cfg.params;
  if (a.grid != "sphere") throw UsageError("only --grid sphere is supported");
  const int n = a.n.size() == 1 ? a.n[0] : 1;
  const auto v = parse_point(a.v, "--v");
  cw::SymplecticPair p;
  if (a.pair == "coulomb") {
    p = cw::SymplecticPair(cw::ConeFunction(0, P.lmax), cw::coulomb_c(v, P.e, P.lmax) * double(n), P.e, P.tol.charge);
  } else if (a.pair == "random") {
    auto rng = cw::StreamSplitter(cfg.seed).stream("compute.field");
    const auto c = cw::coulomb_c(v, P.e, P.lmax) * double(n) + cw::dsquare(cw::random_smooth(rng, 0, P.lmax, 6, 0.3));
    p = cw::SymplecticPair(cw::random_smooth(rng, 0, P.lmax, 6, 0.3), c, P.e, P.tol.charge);
  } else {
    throw UsageError("--pair must be coulomb or random");
  }
  if (!(a.R > std::abs(a.t))) throw UsageError("sphere must lie in the region x^2 < 0: need R > |t|");
  const double flux = cw::flux_charge(p, v, a.R, a.t, P, a.grid_lmax);
  const cw::PhaseField S(p, v, P);
  const auto& g = cw::grid_for(4);
  std::vector<cw::FourVector> xs(g.size());
  std::vector<cw::RealTensor> Fs(g.size());
  std::vector<double> Ss(g.size());
  cw::parallel_for(g.size(), [&](std::size_t i) {
    const cw::Vec3 nn = g.node(i);
    xs[i] = {a.t, a.R * nn[0], a.R * nn[1], a.R * nn[2]};
    Ss[i] = S(xs[i]);
    Fs[i] = cw::em_field_from_phase(S, xs[i], P.e);
  });
  std::ostringstream os;
  os.precision(17);
  if (cfg.format == "csv") {
    os << "# flux=" << fmt(flux) << " expected=" << fmt(n * P.e) << '\n';
    os << "t,x,y,z,S,F01,F02,F03,F12,F13,F23\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      os << fmt(xs[i][0]) << ',' << fmt(xs[i][1]) << ',' << fmt(xs[i][2]) << ',' << fmt(xs[i][3]) << ',' << fmt(Ss[i]);
      for (const double f : Fs[i].c) os << ',' << fmt(f);
      os << '\n';
    }
  } else {
    json j = envelope(cfg, "compute field");
    j["pair"] = a.pair;
    j["n"] = n;
    j["R"] = a.R;
    j["t"] = a.t;
    j["flux"] = flux;
    j["expected_flux"] = n * P.e;
    json samples = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i)
      samples.push_back({{"x", {xs[i][0], xs[i][1], xs[i][2], xs[i][3]}}, {"S", Ss[i]}, {"F", cw::to_json(Fs[i])}});
    j["samples"] = std::move(samples);
    os << j.dump(2) << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coneweyl: charged states on the light cone, verification and computation driver"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;
  std::optional<int> lmax;
  std::optional<double> e, kappa;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
  std::string out;
  bool timestamp = false;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--lmax", lmax, "band limit");
    sub->add_option("--e", e, "charge unit");
    sub->add_option("--kappa", kappa, "representation parameter (default 2/pi)");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--threads", threads, std::string("worker threads (overridden by ") + cw::thread_env_var + ")");
    sub->add_option("--out", out, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv");
    sub->add_flag("--timestamp", timestamp, "add a timestamp field to JSON reports");
  };

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification battery");
  verify->add_option("suite", suite, "cone, weyl, gns, lorentz, fields or all")->required();
  add_common(verify);

  std::string task;
  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "compute kernels, Gram matrices, Casimir residuals or fields");
  compute->add_option("task", task, "kernel, gram, casimir or field")->required();
  compute->add_option("--chi", ca.chi, "hyperbolic angle or range a:b:step");
  compute->add_option("--n", ca.n, "charge indices");
  compute->add_option("--v", ca.v, "point of H (4 components)")->expected(4);
  compute->add_option("--u", ca.u, "second point of H (4 components)")->expected(4);
  compute->add_option("--x", ca.x, "spacelike x with x.v = 0 (4 components)")->expected(4);
  compute->add_option("--lambda", ca.lambda, "constant added to D");
  compute->add_option("--size", ca.size, "number of Gram vectors");
  compute->add_option("--pair", ca.pair, "coulomb or random");
  compute->add_option("--grid", ca.grid, "sphere");
  compute->add_option("--R", ca.R, "sphere radius");
  compute->add_option("--t", ca.t, "time");
  compute->add_option("--grid-lmax", ca.grid_lmax, "band of the flux quadrature grid");
  add_common(compute);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (lmax) cfg.params.lmax = *lmax;
    if (e) cfg.params.e = *e;
    if (kappa) cfg.params.kappa = *kappa;
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (format) cfg.format = *format;
    if (timestamp) cfg.timestamp = true;
    cfg.out = out;
    finalize(cfg);

    if (verify->parsed()) return cmd_verify(suite, cfg);
    std::string text;
    if (task == "kernel") text = compute_kernel(ca, cfg);
    else if (task == "gram") text = compute_gram(ca, cfg);
    else if (task == "casimir") text = compute_casimir(ca, cfg);
    else if (task == "field") text = compute_field(ca, cfg);
    else throw UsageError("unknown task '" + task + "' (expected kernel, gram, casimir or field)");
    emit(cfg, text);
    return 0;
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << "\n" << app.help();
    return 2;
  } catch (const cw::DomainError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
