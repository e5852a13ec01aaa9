// SPDX-License-Identifier: Apache-2.0
#include "ife1d/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "ife1d/error.hpp"
#include "ife1d/fem.hpp"
#include "ife1d/projections.hpp"
#include "ife1d/quadrature.hpp"
#include "ife1d/rk45.hpp"
#include "ife1d/spectral.hpp"

namespace ife1d {

using nlohmann::json;

Smooth transport_pulse() { return Smooth::pulse().affine(3.0, -0.5); }

ZonedField transport_exact(const TransportSetup& s, double t) {
  const Smooth u0 = transport_pulse();
  const double k = s.c_minus / s.c_plus;
  return {{s.alpha}, {{u0.affine(1.0, -s.c_minus * t), u0.affine(k, -k * s.c_plus * t + s.alpha * (1.0 - k))}}};
}

TransportRun run_transport(const TransportSetup& s, int m, int n, bool solve, bool stability) {
  const DGSpace sp(InterfaceMesh(s.a, s.b, n, {s.alpha}), kinematic_medium({s.alpha}, {s.c_minus, s.c_plus}, m), m);
  const DGOperator op = assemble(sp, Boundary::inflow_data);
  TransportRun run;
  run.alpha_hat = sp.mesh().interfaces()[0].alpha_hat;
  if (stability) run.max_dt = max_stable_dt(op);
  if (solve) {
    Eigen::VectorXd U = l2_project(sp, transport_exact(s, 0.0));
    const Eigen::VectorXd inflow = op.Minv * op.inflow_left.col(0);
    const Smooth u0 = transport_pulse();
    auto rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
      dy = op.L * y;
      dy += u0(s.a - s.c_minus * t) * inflow;
    };
    Rk45Options o;
    o.rtol = s.rtol;
    o.atol = s.atol;
    run.steps = integrate_rk45(rhs, U, 0.0, s.t_end, o).accepted;
    run.l2_error = l2_error(sp, U, transport_exact(s, s.t_end));
  }
  return run;
}

double transit_period(const EnergySetup& s) {
  std::vector<double> pts{s.a};
  pts.insert(pts.end(), s.interfaces.begin(), s.interfaces.end());
  pts.push_back(s.b);
  double t = 0.0;
  for (std::size_t z = 0; z + 1 < pts.size(); ++z) t += (pts[z + 1] - pts[z]) / s.speeds[z];
  return t;
}

EnergyTrace run_two_interface(const EnergySetup& s, int m, int n) {
  const DGSpace sp(InterfaceMesh(s.a, s.b, n, s.interfaces), kinematic_medium(s.interfaces, s.speeds, m), m);
  const DGOperator op = assemble(sp, Boundary::periodic);
  const double len = s.b - s.a;
  const Smooth p = transport_pulse();
  const Smooth u0 = p + p.affine(1.0, len) + p.affine(1.0, -len);
  ZonedField f0{s.interfaces, {std::vector<Smooth>(s.speeds.size(), u0)}};
  Eigen::VectorXd U = l2_project(sp, f0);
  const double e0 = energy(op, U);
  require(e0 > 0.0, ErrorCode::invalid_argument, "initial state has zero energy");
  EnergyTrace tr;
  Rk45Options o;
  o.rtol = s.rtol;
  o.atol = s.atol;
  integrate_rk45([&](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = op.L * y; }, U, 0.0,
                 s.periods * transit_period(s), o, [&](double t, const Eigen::VectorXd& y) {
                   tr.t.push_back(t);
                   tr.relative_energy.push_back(energy(op, y) / e0);
                 });
  return tr;
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) out.push_back(std::log2(errors[k] / errors[k + 1]));
  return out;
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& errors) {
  require(h.size() == errors.size() && h.size() >= 2, ErrorCode::invalid_argument, "fitted_order: need two points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    mx += std::log(h[k]) / n;
    my += std::log(errors[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double dx = std::log(h[k]) - mx;
    sxy += dx * (std::log(errors[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

const char* projection_name(ProjectionKind k) {
  switch (k) {
    case ProjectionKind::moment: return "moment";
    case ProjectionKind::l2: return "l2";
    case ProjectionKind::lobatto: return "lobatto";
    case ProjectionKind::radau: return "radau";
    case ProjectionKind::hermite: return "hermite";
  }
  return "?";
}

namespace {

// Smooth data on [0, 1] whose right piece satisfies the first m+1 jump conditions.
PiecewiseSmooth interface_data(const Smooth& g, double alpha, const std::vector<double>& r, int m, double phase) {
  std::vector<double> top(m + 2, 0.0);
  top[m + 1] = 1.0;
  const Smooth right = jump_extension(g, alpha, r, m) +
                       Smooth::polynomial(alpha, top) * (Smooth::constant(0.7) + Smooth::sine(0.2, 3.0, phase));
  return {alpha, g, right};
}

double element_error(const PiecewiseSmooth& ref, double alpha_hat, double h, int i,
                     const std::function<double(double, int, Side)>& approx) {
  double s = 0.0;
  std::vector<std::pair<double, double>> pieces;
  if (alpha_hat > 0.0 && alpha_hat < 1.0) pieces = {{0.0, alpha_hat}, {alpha_hat, 1.0}};
  else pieces = {{0.0, 1.0}};
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const Side side = p == 0 ? Side::minus : Side::plus;
    const auto qr = gauss_legendre(kDataPoints, pieces[p].first, pieces[p].second);
    for (int q = 0; q < kDataPoints; ++q)
      for (int k = 0; k <= i; ++k) {
        const double d = ref.eval(qr.points[q], k, side) - approx(qr.points[q], k, side);
        s += qr.weights[q] * std::pow(h, 1 - 2 * k) * d * d;
      }
  }
  return s;
}

}  // namespace

double projection_error(const ProjectionStudySetup& s, ProjectionKind kind, int m, int n, int i) {
  const InterfaceMesh mesh(0.0, 1.0, n, {s.alpha});
  const double h = mesh.h();
  const Smooth g = Smooth::sine(1.0, 2.0) + Smooth::sine(0.5, 1.0, 0.5 * std::numbers::pi);

  if (kind == ProjectionKind::radau) {
    const Medium md = acoustic_medium({s.alpha}, s.rho, s.c, m);
    const DGSpace sp(mesh, md, m);
    const Smooth gu = Smooth::sine(0.8, 3.0, 0.3) + Smooth::exponential(0.2, 1.0);
    const PiecewiseSmooth p = interface_data(g, s.alpha, md.jumps[0][0].values(), m, 0.0);
    const PiecewiseSmooth u = interface_data(gu, s.alpha, md.jumps[0][1].values(), m, 1.0);
    const ZonedField field{{s.alpha}, {{p.left, p.right}, {u.left, u.right}}};
    const Eigen::VectorXd U = global_radau(sp, field);
    double s2 = 0.0;
    for (int e = 0; e < n; ++e)
      for (int q = 0; q < 2; ++q)
        s2 += element_error(sp.reference_field(field, q, e), sp.is_interface(e) ? sp.alpha_hat(e) : 1.0, h, i,
                            [&](double xi, int k, Side side) {
                              double v = 0.0;
                              for (int j = 0; j <= m; ++j) v += U(sp.dof(e, q, j)) * sp.basis(e, q, j, xi, k, side);
                              return v;
                            });
    return std::sqrt(s2);
  }

  std::vector<double> r;
  int deg = m;
  if (kind == ProjectionKind::moment || kind == ProjectionKind::l2) {
    require(static_cast<int>(s.generic_jumps.size()) > m, ErrorCode::invalid_argument, "too few generic jumps");
    r.assign(s.generic_jumps.begin(), s.generic_jumps.begin() + m + 1);
  } else if (kind == ProjectionKind::lobatto) {
    r = elliptic_jumps(m, s.beta_ratio, 1.0).values();
  } else {
    deg = 3;
    r = {1.0, 1.0, s.beta_ratio, s.beta_ratio};
  }
  const PiecewiseSmooth u = interface_data(g, s.alpha, r, deg, 0.0);
  double s2 = 0.0;
  for (int e = 0; e < n; ++e) {
    const bool iface = mesh.interface_in(e) >= 0;
    const double ah = iface ? mesh.interfaces()[0].alpha_hat : 0.5;
    const JumpSequence rj = iface ? JumpSequence(r) : JumpSequence::ones(r.size());
    PiecewiseSmooth ref = u.to_reference(mesh.left(e), h);
    if (!iface) {
      const Smooth piece = mesh.zone_left(e) == 0 ? ref.left : ref.right;
      ref = {0.5, piece, piece};
    }
    RifeFunction p = RifeFunction::zero(deg, ah, rj);
    switch (kind) {
      case ProjectionKind::moment: p = moment_projection(deg, ah, rj, ref).value; break;
      case ProjectionKind::l2: p = l2_projection(deg, ah, rj, 1.0, 1.0, ref).value; break;
      case ProjectionKind::lobatto: p = lobatto_projection(deg, ah, rj, ref).value; break;
      case ProjectionKind::hermite: p = hermite_interpolate(ah, rj[2], ref); break;
      case ProjectionKind::radau: break;
    }
    s2 += element_error(ref, ah, h, i, [&](double xi, int k, Side side) { return p.eval(xi, k, side); });
  }
  return std::sqrt(s2);
}

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  const int workers = std::max(1, std::min(threads, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---- configuration -----------------------------------------------------------------------

namespace {

class Config {
 public:
  Config(const std::string& experiment, const json& j) : name_(experiment), j_(j.is_null() ? json::object() : j) {
    if (!j_.is_object()) {
      problems_.push_back("config must be a JSON object");
      j_ = json::object();
    }
    if (j_.contains("experiment")) {
      used_.insert("experiment");
      if (!j_["experiment"].is_string() || j_["experiment"].get<std::string>() != experiment)
        problems_.push_back("field 'experiment' does not match '" + experiment + "'");
    }
    if (j_.contains("seed")) {
      used_.insert("seed");
      if (!j_["seed"].is_number_unsigned()) problems_.push_back("field 'seed' must be a nonnegative integer");
    }
  }

  double number(const std::string& key, double def, double lo = -HUGE_VAL, double hi = HUGE_VAL) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_[key];
    if (!v.is_number()) return bad(key, "must be a number"), def;
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi)) return bad(key, "out of range"), def;
    return x;
  }

  int integer(const std::string& key, int def, int lo, int hi) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_[key];
    if (!v.is_number_integer()) return bad(key, "must be an integer"), def;
    const long x = v.get<long>();
    if (x < lo || x > hi) return bad(key, "out of range"), def;
    return static_cast<int>(x);
  }

  std::vector<int> integers(const std::string& key, std::vector<int> def, int lo, int hi) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_[key];
    if (!v.is_array() || v.empty()) return bad(key, "must be a nonempty integer array"), def;
    std::vector<int> out;
    for (const auto& x : v) {
      if (!x.is_number_integer() || x.get<long>() < lo || x.get<long>() > hi) return bad(key, "entry out of range"), def;
      out.push_back(x.get<int>());
    }
    return out;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> def, std::size_t count = 0,
                              bool positive = false) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_[key];
    if (!v.is_array() || v.empty()) return bad(key, "must be a nonempty number array"), def;
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) return bad(key, "entries must be numbers"), def;
      if (positive && !(x.get<double>() > 0.0)) return bad(key, "entries must be positive"), def;
      out.push_back(x.get<double>());
    }
    if (count && out.size() != count) return bad(key, "wrong length"), def;
    return out;
  }

  void check(bool cond, const std::string& msg) {
    if (!cond) problems_.push_back(msg);
  }

  void finish() {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) problems_.push_back("unknown field '" + it.key() + "'");
    if (problems_.empty()) return;
    std::ostringstream os;
    os << "invalid config for '" << name_ << "':";
    for (const auto& p : problems_) os << "\n  - " << p;
    fail(ErrorCode::config, os.str());
  }

 private:
  void bad(const std::string& key, const std::string& why) { problems_.push_back("field '" + key + "' " + why); }

  std::string name_;
  json j_;
  std::set<std::string> used_;
  std::vector<std::string> problems_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  Csv(const std::filesystem::path& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) fail(ErrorCode::io, "cannot write " + path.string());
    out_ << header << '\n';
  }
  template <class... T>
  void row(const T&... cells) {
    std::string sep;
    ((out_ << sep << cell(cells), sep = ","), ...);
    out_ << '\n';
  }
  ~Csv() { out_.flush(); }

 private:
  static std::string cell(double v) { return std::isnan(v) ? std::string() : fmt(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_summary(const std::filesystem::path& dir, const json& j) {
  std::ofstream out(dir / "summary.json");
  if (!out) fail(ErrorCode::io, "cannot write summary.json");
  out << j.dump(2) << '\n';
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// Halving levels must be consecutive for the observed orders to make sense.
void check_levels(Config& c, const std::vector<int>& levels) {
  for (std::size_t k = 1; k < levels.size(); ++k)
    c.check(levels[k] == levels[k - 1] + 1, "field 'levels' must be consecutive increasing integers");
}

TransportSetup transport_setup(Config& c) {
  TransportSetup s;
  const auto dom = c.numbers("domain", {s.a, s.b}, 2);
  s.a = dom[0];
  s.b = dom[1];
  s.alpha = c.number("alpha", s.alpha);
  const auto sp = c.numbers("speeds", {s.c_minus, s.c_plus}, 2, true);
  s.c_minus = sp[0];
  s.c_plus = sp[1];
  s.t_end = c.number("t_end", s.t_end, 1e-12);
  s.rtol = c.number("rtol", s.rtol, 1e-15, 1.0);
  s.atol = c.number("atol", s.atol, 0.0, 1.0);
  c.check(s.a < s.alpha && s.alpha < s.b, "field 'alpha' must lie inside 'domain'");
  return s;
}

int elements_for(double len, int level) { return static_cast<int>(std::lround(len * std::ldexp(1.0, level))); }

json convergence_rows(Csv& csv, const std::vector<int>& degrees, const std::vector<double>& hs,
                      const std::vector<std::vector<double>>& err) {
  json summary = json::object();
  for (std::size_t a = 0; a < degrees.size(); ++a) {
    const auto orders = observed_orders(err[a]);
    for (std::size_t k = 0; k < hs.size(); ++k)
      csv.row(degrees[a], hs[k], err[a][k], k == 0 ? std::nan("") : orders[k - 1]);
    json entry;
    entry["errors"] = err[a];
    entry["orders"] = orders;
    if (hs.size() >= 3) {
      const std::size_t n = hs.size();
      entry["fitted_order_finest3"] = fitted_order({hs[n - 3], hs[n - 2], hs[n - 1]}, {err[a][n - 3], err[a][n - 2], err[a][n - 1]});
    }
    summary[std::to_string(degrees[a])] = entry;
  }
  return summary;
}

// ---- experiments -------------------------------------------------------------------------

json transport_convergence(Config& c, const RunOptions& opt) {
  const TransportSetup s = transport_setup(c);
  const auto degrees = c.integers("degrees", {1, 2, 3}, 0, 6);
  const auto levels = c.integers("levels", range(3, 9), 0, 14);
  check_levels(c, levels);
  c.finish();
  const int nl = static_cast<int>(levels.size());
  std::vector<std::vector<double>> err(degrees.size(), std::vector<double>(nl));
  parallel_for(static_cast<int>(degrees.size()) * nl, opt.threads, [&](int t) {
    const int a = t / nl, k = t % nl;
    err[a][k] = run_transport(s, degrees[a], elements_for(s.b - s.a, levels[k]), true, false).l2_error;
  });
  std::vector<double> hs;
  for (int l : levels) hs.push_back(std::ldexp(1.0, -l));
  Csv csv(opt.out_dir / "convergence.csv", "m,h,l2_error,order");
  return {{"experiment", "transport-convergence"}, {"degrees", convergence_rows(csv, degrees, hs, err)}};
}

json transport_dt(Config& c, const RunOptions& opt) {
  const TransportSetup s = transport_setup(c);
  const auto degrees = c.integers("degrees", {1, 2, 3}, 0, 6);
  const auto levels = c.integers("levels", range(3, 8), 0, 14);
  check_levels(c, levels);
  c.finish();
  const int nl = static_cast<int>(levels.size());
  std::vector<std::vector<double>> dt(degrees.size(), std::vector<double>(nl));
  parallel_for(static_cast<int>(degrees.size()) * nl, opt.threads, [&](int t) {
    const int a = t / nl, k = t % nl;
    dt[a][k] = run_transport(s, degrees[a], elements_for(s.b - s.a, levels[k]), false, true).max_dt;
  });
  std::vector<double> hs;
  for (int l : levels) hs.push_back(std::ldexp(1.0, -l));
  Csv csv(opt.out_dir / "dt.csv", "m,h,max_dt");
  json summary{{"experiment", "transport-dt"}};
  for (std::size_t a = 0; a < degrees.size(); ++a) {
    for (int k = 0; k < nl; ++k) csv.row(degrees[a], hs[k], dt[a][k]);
    summary["degrees"][std::to_string(degrees[a])] = {{"max_dt", dt[a]}, {"slope", fitted_order(hs, dt[a])}};
  }
  return summary;
}

json alpha_sweep(Config& c, const RunOptions& opt) {
  TransportSetup s = transport_setup(c);
  const int m = c.integer("degree", 2, 0, 6);
  const int level = c.integer("level", 6, 0, 14);
  const int positions = c.integer("positions", 20, 2, 10000);
  const int element = c.integer("element", 68, 1, 1 << 24);
  c.finish();
  const int n = elements_for(s.b - s.a, level);
  require(element <= n, ErrorCode::config, "invalid config for 'alpha-sweep':\n  - field 'element' exceeds the element count");
  const double h = (s.b - s.a) / n, x0 = s.a + (element - 1) * h;
  std::vector<TransportRun> runs(positions);
  parallel_for(positions, opt.threads, [&](int i) {
    TransportSetup si = s;
    si.alpha = x0 + h * (i + 0.5) / positions;
    runs[i] = run_transport(si, m, n, true, true);
  });
  Csv csv(opt.out_dir / "sweep.csv", "alpha_hat,l2_error,max_dt");
  std::vector<double> e, d;
  for (const auto& r : runs) {
    csv.row(r.alpha_hat, r.l2_error, r.max_dt);
    e.push_back(r.l2_error);
    d.push_back(r.max_dt);
  }
  return {{"experiment", "alpha-sweep"},
          {"error_ratio", *std::max_element(e.begin(), e.end()) / *std::min_element(e.begin(), e.end())},
          {"dt_ratio", *std::max_element(d.begin(), d.end()) / *std::min_element(d.begin(), d.end())}};
}

json two_interface_energy(Config& c, const RunOptions& opt) {
  EnergySetup s;
  const auto dom = c.numbers("domain", {s.a, s.b}, 2);
  s.a = dom[0];
  s.b = dom[1];
  s.interfaces = c.numbers("interfaces", s.interfaces);
  s.speeds = c.numbers("speeds", s.speeds, 0, true);
  s.periods = c.number("periods", s.periods, 1e-12);
  s.rtol = c.number("rtol", s.rtol, 1e-15, 1.0);
  s.atol = c.number("atol", s.atol, 0.0, 1.0);
  const auto degrees = c.integers("degrees", {1, 2, 3}, 0, 6);
  const int level = c.integer("level", 6, 0, 14);
  const int stride = c.integer("stride", 1, 1, 1 << 30);
  c.check(s.speeds.size() == s.interfaces.size() + 1, "field 'speeds' needs one entry per zone");
  c.check(std::is_sorted(s.interfaces.begin(), s.interfaces.end()) && s.interfaces.front() > s.a &&
              s.interfaces.back() < s.b,
          "field 'interfaces' must be increasing and inside 'domain'");
  c.finish();
  const int n = elements_for(s.b - s.a, level);
  std::vector<EnergyTrace> traces(degrees.size());
  parallel_for(static_cast<int>(degrees.size()), opt.threads, [&](int a) { traces[a] = run_two_interface(s, degrees[a], n); });
  Csv csv(opt.out_dir / "energy.csv", "m,t,relative_energy");
  json summary{{"experiment", "two-interface-energy"}, {"period", transit_period(s)}};
  for (std::size_t a = 0; a < degrees.size(); ++a) {
    const auto& tr = traces[a];
    double rise = 0.0;
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
      if (k % stride == 0 || k + 1 == tr.t.size()) csv.row(degrees[a], tr.t[k], tr.relative_energy[k]);
      if (k > 0) rise = std::max(rise, tr.relative_energy[k] - tr.relative_energy[k - 1]);
    }
    summary["degrees"][std::to_string(degrees[a])] = {{"final_loss", 1.0 - tr.relative_energy.back()},
                                                       {"largest_increase", rise},
                                                       {"samples", tr.t.size()}};
  }
  return summary;
}

json projection_study(Config& c, const RunOptions& opt) {
  ProjectionStudySetup s;
  s.alpha = c.number("alpha", s.alpha, 1e-12, 1.0 - 1e-12);
  s.beta_ratio = c.number("beta_ratio", s.beta_ratio, 1e-12);
  s.generic_jumps = c.numbers("jumps", s.generic_jumps);
  const auto degrees = c.integers("degrees", {1, 2, 3}, 1, 4);
  const auto levels = c.integers("levels", range(3, 8), 0, 12);
  check_levels(c, levels);
  c.finish();
  struct Task {
    ProjectionKind kind;
    int m, i;
  };
  std::vector<Task> studies;
  for (auto k : {ProjectionKind::moment, ProjectionKind::l2, ProjectionKind::lobatto, ProjectionKind::radau})
    for (int m : degrees) studies.push_back({k, m, 0});
  for (int i = 0; i <= 2; ++i) studies.push_back({ProjectionKind::hermite, 3, i});
  const int nl = static_cast<int>(levels.size());
  std::vector<std::vector<double>> err(studies.size(), std::vector<double>(nl));
  parallel_for(static_cast<int>(studies.size()) * nl, opt.threads, [&](int t) {
    const auto& st = studies[t / nl];
    err[t / nl][t % nl] = projection_error(s, st.kind, st.m, 1 << levels[t % nl], st.i);
  });
  std::vector<double> hs;
  for (int l : levels) hs.push_back(std::ldexp(1.0, -l));
  Csv csv(opt.out_dir / "projection_rates.csv", "projection,m,i,h,error,order");
  json summary{{"experiment", "projection-study"}, {"studies", json::array()}};
  for (std::size_t a = 0; a < studies.size(); ++a) {
    const auto orders = observed_orders(err[a]);
    for (int k = 0; k < nl; ++k)
      csv.row(projection_name(studies[a].kind), studies[a].m, studies[a].i, hs[k], err[a][k],
              k == 0 ? std::nan("") : orders[k - 1]);
    summary["studies"].push_back({{"projection", projection_name(studies[a].kind)},
                                  {"m", studies[a].m},
                                  {"i", studies[a].i},
                                  {"orders", orders},
                                  {"fitted_order", fitted_order(hs, err[a])}});
  }
  return summary;
}

json elliptic_convergence(Config& c, const RunOptions& opt) {
  const auto dom = c.numbers("domain", {0.0, 1.0}, 2);
  const double alpha = c.number("alpha", std::numbers::pi / 6);
  const auto beta = c.numbers("beta", {1.0, 5.0}, 2, true);
  const auto degrees = c.integers("degrees", {1, 2, 3}, 1, 4);
  const auto levels = c.integers("levels", range(3, 8), 1, 14);
  check_levels(c, levels);
  c.check(dom[0] < alpha && alpha < dom[1], "field 'alpha' must lie inside 'domain'");
  c.finish();
  const int nl = static_cast<int>(levels.size());
  std::vector<std::vector<double>> err(degrees.size(), std::vector<double>(nl));
  std::vector<std::vector<double>> res(degrees.size(), std::vector<double>(nl));
  parallel_for(static_cast<int>(degrees.size()) * nl, opt.threads, [&](int t) {
    const int a = t / nl, k = t % nl, m = degrees[a];
    const auto mf = manufactured_elliptic(dom[0], dom[1], alpha, beta[0], beta[1], m);
    const auto sol =
        solve_elliptic({dom[0], dom[1], alpha, beta[0], beta[1], mf.f}, elements_for(dom[1] - dom[0], levels[k]), m);
    err[a][k] = fem_error(sol.u, mf.u, 0);
    res[a][k] = sol.residual;
  });
  std::vector<double> hs;
  for (int l : levels) hs.push_back(std::ldexp(1.0, -l));
  Csv csv(opt.out_dir / "convergence.csv", "m,h,l2_error,order");
  json summary{{"experiment", "elliptic-convergence"}, {"degrees", convergence_rows(csv, degrees, hs, err)}};
  double worst = 0.0;
  for (const auto& r : res) worst = std::max(worst, *std::max_element(r.begin(), r.end()));
  summary["max_relative_residual"] = worst;
  return summary;
}

json beam_convergence(Config& c, const RunOptions& opt) {
  const auto dom = c.numbers("domain", {0.0, 1.0}, 2);
  const double alpha = c.number("alpha", std::numbers::pi / 6);
  const auto beta = c.numbers("beta", {1.0, 5.0}, 2, true);
  const auto levels = c.integers("levels", range(3, 7), 1, 12);
  check_levels(c, levels);
  c.check(dom[0] < alpha && alpha < dom[1], "field 'alpha' must lie inside 'domain'");
  c.finish();
  const int nl = static_cast<int>(levels.size());
  const auto mf = manufactured_beam(dom[0], dom[1], alpha, beta[0], beta[1]);
  std::vector<double> fe(nl);
  std::vector<std::vector<double>> ie(3, std::vector<double>(nl));
  parallel_for(nl, opt.threads, [&](int k) {
    const int n = elements_for(dom[1] - dom[0], levels[k]);
    fe[k] = fem_error(solve_beam({dom[0], dom[1], alpha, beta[0], beta[1], mf.f}, n).u, mf.u, 0);
    const auto interp = hermite_global_interpolant(InterfaceMesh(dom[0], dom[1], n, {alpha}), beta[0] / beta[1], mf.u);
    for (int i = 0; i <= 2; ++i) ie[i][k] = fem_error(interp, mf.u, i);
  });
  std::vector<double> hs;
  for (int l : levels) hs.push_back(std::ldexp(1.0, -l));
  json summary{{"experiment", "beam-convergence"}};
  {
    Csv csv(opt.out_dir / "convergence.csv", "m,h,l2_error,order");
    summary["solution"] = convergence_rows(csv, {3}, hs, {fe});
  }
  Csv csv(opt.out_dir / "interpolation.csv", "i,h,error,order");
  for (int i = 0; i <= 2; ++i) {
    const auto orders = observed_orders(ie[i]);
    for (int k = 0; k < nl; ++k) csv.row(i, hs[k], ie[i][k], k == 0 ? std::nan("") : orders[k - 1]);
    summary["interpolation"][std::to_string(i)] = {{"orders", orders}, {"fitted_order", fitted_order(hs, ie[i])}};
  }
  return summary;
}

json rife_diagnostics(Config& c, const RunOptions& opt) {
  const auto degrees = c.integers("degrees", {1, 2, 3, 4}, 1, 6);
  const int grid = c.integer("alpha_grid", 199, 1, 100000);
  const auto weights = c.numbers("weights", {1.0, 1.0}, 2, true);
  const double q = c.number("jump_ratio", 0.25, 1e-12);
  const auto rhos = c.numbers("hermite_rho", {0.01, 0.1, 1.0, 10.0, 100.0}, 0, true);
  const int samples = c.integer("root_samples", 1000, 1, 1000000);
  c.finish();
  std::vector<double> ah(grid);
  for (int k = 0; k < grid; ++k) ah[k] = (k + 1.0) / (grid + 1.0);
  auto jumps = [&](int m) {
    std::vector<double> r(m + 1);
    for (int k = 0; k <= m; ++k) r[k] = std::pow(q, k);
    return JumpSequence(r);
  };
  const int nd = static_cast<int>(degrees.size());
  std::vector<std::vector<double>> J(nd, std::vector<double>(grid));
  std::vector<std::vector<std::vector<double>>> inv(nd, std::vector<std::vector<double>>(grid));
  std::vector<std::vector<int>> roots(nd, std::vector<int>(grid)), oroots(nd, std::vector<int>(grid));
  parallel_for(nd * grid, opt.threads, [&](int t) {
    const int a = t / grid, k = t % grid, m = degrees[a];
    const JumpSequence r = jumps(m);
    J[a][k] = boundary_ratio_J(m, ah[k], weights[0], weights[1], r);
    for (int i = 1; i <= m; ++i) inv[a][k].push_back(inverse_constant_sup(m, ah[k], r, i));
    oroots[a][k] = count_roots(orthogonal_function(m, ah[k], weights[0], weights[1], r), 2000);
    // Seeded per task so results do not depend on scheduling.
    std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1)));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int worst = 0;
    const int per = std::max(1, samples / grid);
    for (int sidx = 0; sidx < per; ++sidx) {
      std::vector<double> cf(m + 1);
      for (auto& x : cf) x = u(rng);
      worst = std::max(worst, count_roots(RifeFunction(m, ah[k], r, cf), 2000));
    }
    roots[a][k] = worst;
  });
  {
    Csv csv(opt.out_dir / "j_ratio.csv", "m,alpha_hat,J");
    for (int a = 0; a < nd; ++a)
      for (int k = 0; k < grid; ++k) csv.row(degrees[a], ah[k], J[a][k]);
  }
  {
    Csv csv(opt.out_dir / "inverse_constant.csv", "m,i,alpha_hat,constant");
    for (int a = 0; a < nd; ++a)
      for (int i = 1; i <= degrees[a]; ++i)
        for (int k = 0; k < grid; ++k) csv.row(degrees[a], i, ah[k], inv[a][k][i - 1]);
  }
  {
    Csv csv(opt.out_dir / "roots.csv", "m,alpha_hat,max_roots_random,roots_orthogonal");
    for (int a = 0; a < nd; ++a)
      for (int k = 0; k < grid; ++k) csv.row(degrees[a], ah[k], roots[a][k], oroots[a][k]);
  }
  json summary{{"experiment", "rife-diagnostics"}};
  {
    Csv csv(opt.out_dir / "hermite_bounds.csv", "rho,alpha_hat,min_value,max_value");
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (double rho : rhos)
      for (int k = 0; k < grid; ++k) {
        const auto L = hermite_basis(ah[k], rho);
        double mn = HUGE_VAL, mx = -HUGE_VAL;
        for (const auto& f : L)
          for (int g = 0; g <= 2000; ++g) {
            const double v = f(g / 2000.0);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
          }
        csv.row(rho, ah[k], mn, mx);
        lo = std::min(lo, mn);
        hi = std::max(hi, mx);
      }
    summary["hermite_range"] = {lo, hi};
  }
  for (int a = 0; a < nd; ++a) {
    const auto [mn, mx] = std::minmax_element(J[a].begin(), J[a].end());
    summary["degrees"][std::to_string(degrees[a])] = {
        {"J_min", *mn},
        {"J_max", *mx},
        {"max_random_roots", *std::max_element(roots[a].begin(), roots[a].end())}};
  }
  return summary;
}

using Runner = json (*)(Config&, const RunOptions&);

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r{
      {"transport-convergence", transport_convergence},
      {"transport-dt", transport_dt},
      {"alpha-sweep", alpha_sweep},
      {"two-interface-energy", two_interface_energy},
      {"projection-study", projection_study},
      {"elliptic-convergence", elliptic_convergence},
      {"beam-convergence", beam_convergence},
      {"rife-diagnostics", rife_diagnostics},
  };
  return r;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"transport-convergence", "transport-dt",         "alpha-sweep",       "two-interface-energy",
          "projection-study",      "elliptic-convergence", "beam-convergence", "rife-diagnostics"};
}

json run_experiment(const std::string& name, const json& config, const RunOptions& opt) {
  const auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorCode::config, "unknown experiment '" + name + "'");
  require(opt.threads >= 1, ErrorCode::invalid_argument, "thread count must be positive");
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create output directory " + opt.out_dir.string());
  Config cfg(name, config);
  RunOptions o = opt;
  json summary = it->second(cfg, o);
  summary["seed"] = opt.seed;
  write_summary(opt.out_dir, summary);
  return summary;
}

}  // namespace ife1d
