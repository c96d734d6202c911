#include "fracdg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fracdg/coefficients.hpp"
#include "fracdg/dg_ode.hpp"
#include "fracdg/dg_pde.hpp"
#include "fracdg/errors.hpp"
#include "fracdg/fem1d.hpp"
#include "fracdg/polylib.hpp"
#include "fracdg/reconstruction.hpp"
#include "fracdg/reference.hpp"

namespace fracdg {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

std::string fmt_rate(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(const std::string& v) { return v; }

template <class T>
std::string fmt(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

double observed_rate(double e_prev, double e, int n_prev, int n) {
  if (!(e_prev > 0.0) || !(e > 0.0)) return std::nan("");
  return std::log(e_prev / e) / std::log(static_cast<double>(n) / n_prev);
}

// A subcommand with its options and a formatter per option for the
// output header.
struct Command {
  CLI::App* app = nullptr;
  std::vector<std::pair<std::string, std::function<std::string()>>> params;

  template <class T>
  CLI::Option* add(const std::string& name, T& var, const std::string& help) {
    params.emplace_back(name, [&var] { return fmt(var); });
    CLI::Option* opt = app->add_option("--" + name, var, help)->capture_default_str();
    if constexpr (requires { var.push_back(var.front()); }) opt->delimiter(',');
    return opt;
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
    params.emplace_back(name, [&var] { return fmt(var); });
    return app->add_flag("--" + name, var, help);
  }

  void header(std::ostream& os) const {
    os << "# version=" << kVersion << "\n# command=" << app->get_name() << "\n";
    for (const auto& [name, format] : params) os << "# " << name << "=" << format() << "\n";
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key=value lines; a leading '#' is stripped so CSV headers can be fed back.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty() && line[0] == '#') line = trim(line.substr(1));
    const auto eq = line.find('=');
    if (line.empty() || eq == std::string::npos) continue;
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

// ---- hcoeffs ---------------------------------------------------------------

struct HcoeffsConfig {
  double alpha = 0.75;
  int r = 4;
  std::vector<int> lbar{0};
  bool decay = false;
  double atol = 1e-14;
};

void run_hcoeffs(const HcoeffsConfig& c, std::ostream& os) {
  detail::require(c.alpha > 0.0 && c.alpha <= 1.0, "--alpha must lie in (0, 1]");
  detail::require(c.r >= 1, "--r must be >= 1");
  detail::require(c.atol > 0.0, "--atol must be positive");
  for (int l : c.lbar) detail::require(l >= 0, "--lbar must be >= 0");
  HistoryOptions opts;
  opts.atol = c.atol;
  if (c.decay) {
    os << "lbar,m,max_abs_H\n";
    for (int l : c.lbar) {
      const Matrix H = h_uniform(c.alpha, c.r, l, opts);
      for (int m = 2; m <= 2 * c.r; ++m) {
        double mx = 0.0;
        for (int i = 1; i <= c.r; ++i)
          if (const int j = m - i; j >= 1 && j <= c.r) mx = std::max(mx, std::abs(H(i - 1, j - 1)));
        os << l << "," << m << "," << fmt(mx) << "\n";
      }
    }
    return;
  }
  os << "lbar,i,j,H\n";
  for (int l : c.lbar) {
    const Matrix H = h_uniform(c.alpha, c.r, l, opts);
    for (int i = 1; i <= c.r; ++i)
      for (int j = 1; j <= c.r; ++j) os << l << "," << i << "," << j << "," << fmt(H(i - 1, j - 1)) << "\n";
  }
}

// ---- gauss-points ----------------------------------------------------------

struct GaussPointsConfig {
  double alpha = 0.75;
  int rmax = 6;
  std::vector<int> lbar{1, 2, 10, 100, 1000};
  double atol = 1e-14;
};

void run_gauss_points(const GaussPointsConfig& c, std::ostream& os) {
  detail::require(c.alpha > 0.0 && c.alpha <= 1.0, "--alpha must lie in (0, 1]");
  detail::require(c.rmax >= 1, "--rmax must be >= 1");
  for (int l : c.lbar) detail::require(l >= 1, "--lbar must be >= 1");
  os << "r";
  for (int l : c.lbar) os << ",M_lbar" << l;
  os << "\n";
  for (int r = 1; r <= c.rmax; ++r) {
    os << r;
    for (int l : c.lbar) os << "," << gauss_points_required(c.alpha, r, l, c.atol);
    os << "\n";
  }
}

// ---- radau -----------------------------------------------------------------

struct RadauConfig {
  int r = 3;
};

void run_radau(const RadauConfig& c, std::ostream& os) {
  detail::require(c.r >= 1, "--r must be >= 1");
  const RadauPoints rp = radau_points(c.r);
  os << "j,tau\n";
  for (int j = 0; j <= c.r; ++j) os << j << "," << fmt(rp.taus[j]) << "\n";
}

// ---- ode -------------------------------------------------------------------

struct OdeConfig {
  double alpha = 0.5;
  double lambda = 0.5;
  double u0 = 1.0;
  double T = 2.0;
  int r = 3;
  std::vector<int> N{8, 16, 32, 64, 128, 256};
  std::string mesh = "uniform";
  std::vector<double> q{1.0};
  std::string table = "ej";
  int samples = 20;
};

ScalarProblem ode_problem(const OdeConfig& c) {
  ScalarProblem p;
  p.alpha = c.alpha;
  p.lambda = c.lambda;
  p.u0 = c.u0;
  p.T = c.T;
  p.f = [](double t) { return std::cos(std::numbers::pi * t); };
  return p;
}

TimeMesh ode_mesh(const OdeConfig& c, int N, double q) {
  return (c.mesh == "uniform" || q == 1.0) ? TimeMesh::uniform(N, c.T) : TimeMesh::graded(N, c.T, q);
}

void run_ode(const OdeConfig& c, std::ostream& os) {
  detail::require(c.r >= 1, "--r must be >= 1");
  detail::require(c.T > 0.0, "--T must be positive");
  detail::require(c.lambda >= 0.0, "--lambda must be >= 0");
  detail::require(!c.N.empty(), "--N needs at least one value");
  for (int N : c.N) detail::require(N >= 1, "--N values must be >= 1");
  for (double q : c.q) detail::require(q >= 1.0, "--q values must be >= 1");
  detail::require(c.mesh == "uniform" || c.mesh == "graded", "--mesh must be uniform or graded");
  detail::require(c.table == "ej" || c.table == "recon" || c.table == "profile",
                  "--table must be ej, recon or profile");
  detail::require(c.samples >= 10, "--samples must be >= 10");
  const ScalarProblem problem = ode_problem(c);
  const ScalarFunction exact = ode_reference(problem);
  const RadauPoints radau = radau_points(c.r);
  const std::vector<double> qs = (c.mesh == "uniform") ? std::vector<double>{1.0} : c.q;

  if (c.table == "profile") {
    const TimeMesh mesh = ode_mesh(c, c.N.front(), qs.front());
    const DGSolution sol = solve_ode(problem, mesh, c.r, CoeffSet::for_mesh(c.alpha, c.r, mesh));
    const ReconstructedSolution rec = reconstruct(sol);
    const ErrorTable tab = error_table(sol, exact, radau);
    os << "n,j,t,dg_error,recon_error\n";
    for (int n = 1; n <= mesh.size(); ++n)
      for (int j = 0; j <= c.r; ++j) {
        const double t = mesh.affine_map(n, radau.taus[j]);
        const double re = std::abs(rec.local_value(n, radau.taus[j]) - exact(t));
        os << n << "," << j << "," << fmt(t) << "," << fmt(tab.errors(n - 1, j)) << "," << fmt(re) << "\n";
      }
    return;
  }

  if (c.table == "ej") {
    os << "N,q";
    for (int j = 0; j <= c.r; ++j) os << ",E" << j << ",E" << j << "_rate,E" << j << "_2sd";
    os << "\n";
  } else {
    os << "N,q,max_error,rate,max_error_2sd\n";
  }
  for (double q : qs) {
    std::vector<double> prev;
    int N_prev = 0;
    for (int N : c.N) {
      const TimeMesh mesh = ode_mesh(c, N, q);
      const DGSolution sol = solve_ode(problem, mesh, c.r, CoeffSet::for_mesh(c.alpha, c.r, mesh));
      std::vector<double> e;
      if (c.table == "ej") {
        e = error_table(sol, exact, radau).weighted_max;
      } else {
        e = {recon_max_error(reconstruct(sol), exact, c.samples)};
      }
      os << N << "," << fmt(q);
      for (std::size_t j = 0; j < e.size(); ++j) {
        const double rate = prev.empty() ? std::nan("") : observed_rate(prev[j], e[j], N_prev, N);
        os << "," << fmt(e[j]) << "," << fmt_rate(rate) << "," << fmt2(e[j]);
      }
      os << "\n";
      prev = e;
      N_prev = N;
    }
  }
}

// ---- pde -------------------------------------------------------------------

struct PdeConfig {
  double alpha = 0.6;
  int r = 3;
  int N = 12;
  double T = 2.0;
  std::string mesh = "uniform";
  double q = 0.0;
  int n_graded = 34;
  double t_switch = 1.0;
  int n_uniform = 6;
  int fem_degree = 3;
  int fem_elements = 20;
  double L = 2.0;
  double C0 = 1.0;
  double Cf = 2.0;
  int contour_K = 40;
  int samples = 12;
};

void run_pde(PdeConfig& c, std::ostream& os) {
  detail::require(c.alpha > 0.0 && c.alpha < 1.0, "--alpha must lie in (0, 1)");
  detail::require(c.r >= 1, "--r must be >= 1");
  detail::require(c.mesh == "uniform" || c.mesh == "graded" || c.mesh == "composite",
                  "--mesh must be uniform, graded or composite");
  detail::require(c.contour_K >= 4, "--contour-K must be >= 4");
  detail::require(c.samples >= 1, "--samples must be >= 1");
  detail::require(c.q == 0.0 || c.q >= 1.0, "--q must be 0 (automatic) or >= 1");
  const double q = (c.q > 0.0) ? c.q : (c.r + c.alpha) / c.alpha;
  TimeMesh mesh = TimeMesh::uniform(std::max(c.N, 1), c.T);
  if (c.mesh == "uniform") {
    detail::require(c.N >= 1, "--N must be >= 1");
  } else if (c.mesh == "graded") {
    detail::require(c.N >= 1, "--N must be >= 1");
    mesh = TimeMesh::graded(c.N, c.T, q);
  } else {
    mesh = TimeMesh::composite(c.n_graded, c.t_switch, q, c.n_uniform, c.T);
  }
  PdeProblem problem;
  problem.alpha = c.alpha;
  problem.L = c.L;
  problem.T = c.T;
  const double C0 = c.C0, Cf = c.Cf, L = c.L;
  problem.u0 = [C0, L](double x) { return C0 * x * (L - x); };
  problem.f = [Cf](double, double t) { return Cf * t * std::exp(-t); };
  const FemSpace1D space(c.L, c.fem_elements, c.fem_degree);
  const PdeDGSolution sol = solve_pde(problem, mesh, c.r, space, CoeffSet::for_mesh(c.alpha, c.r, mesh));
  const WindowedPdeReference ref({c.alpha, c.L, c.C0, c.Cf}, c.contour_K);
  const IntervalErrors e =
      pde_interval_errors(sol, space, [&](double x, double t) { return ref.value(x, t); }, c.samples);
  os << "n,t_n,jump_norm,dg_error,recon_error\n";
  for (int n = 1; n <= mesh.size(); ++n)
    os << n << "," << fmt(mesh.level(n)) << "," << fmt(e.jump_norm[n - 1]) << "," << fmt(e.dg_error[n - 1]) << ","
       << fmt(e.recon_error[n - 1]) << "\n";
}

// ---- refsoln ---------------------------------------------------------------

struct RefsolnConfig {
  std::string what = "ode";
  std::vector<double> t{0.5, 1.0, 2.0};
  std::vector<double> x{1.0};
  double alpha = 0.0;
  double lambda = 0.5;
  double u0 = 1.0;
  double L = 2.0;
  double C0 = 1.0;
  double Cf = 2.0;
  int contour_K = 40;
};

void run_refsoln(RefsolnConfig& c, std::ostream& os) {
  detail::require(c.what == "ode" || c.what == "pde", "--what must be ode or pde");
  for (double t : c.t) detail::require(t >= 0.0, "--t values must be >= 0");
  if (c.what == "ode") {
    ScalarProblem p;
    p.alpha = c.alpha;
    p.lambda = c.lambda;
    p.u0 = c.u0;
    p.f = [](double t) { return std::cos(std::numbers::pi * t); };
    const ScalarFunction u = ode_reference(p);
    os << "t,u\n";
    for (double t : c.t) os << fmt(t) << "," << fmt(u(t)) << "\n";
    return;
  }
  for (double x : c.x) detail::require(x >= 0.0 && x <= c.L, "--x values must lie in [0, L]");
  const WindowedPdeReference ref({c.alpha, c.L, c.C0, c.Cf}, c.contour_K);
  os << "x,t,u\n";
  for (double t : c.t)
    for (double x : c.x) os << fmt(x) << "," << fmt(t) << "," << fmt(ref.value(x, t)) << "\n";
}

bool user_gave(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"dG time stepping for fractional sub-diffusion", "fracdg"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  std::string config_path, output_path;
  app.add_option("--config", config_path, "key=value defaults file (a previous CSV header works)");
  app.add_option("--output,-o", output_path, "write CSV here instead of stdout");
  app.set_version_flag("--version", std::string(kVersion));

  HcoeffsConfig hc;
  GaussPointsConfig gc;
  RadauConfig rc;
  OdeConfig oc;
  PdeConfig pc;
  RefsolnConfig sc;
  std::map<std::string, Command> commands;

  {
    Command& c = commands["hcoeffs"];
    c.app = app.add_subcommand("hcoeffs", "memory coefficient matrices on a uniform unit mesh");
    c.add("alpha", hc.alpha, "fractional order in (0, 1]");
    c.add("r", hc.r, "number of Legendre coefficients per interval");
    c.add("lbar", hc.lbar, "interval lag(s)");
    c.flag("decay", hc.decay, "print max |H_ij| over i + j = m instead of the matrix");
    c.add("atol", hc.atol, "point-doubling tolerance");
  }
  {
    Command& c = commands["gauss-points"];
    c.app = app.add_subcommand("gauss-points", "Gauss points needed per (r, lag)");
    c.add("alpha", gc.alpha, "fractional order in (0, 1]");
    c.add("rmax", gc.rmax, "largest r");
    c.add("lbar", gc.lbar, "interval lags");
    c.add("atol", gc.atol, "absolute tolerance");
  }
  {
    Command& c = commands["radau"];
    c.app = app.add_subcommand("radau", "right-Radau points on [-1, 1]");
    c.add("r", rc.r, "degree");
  }
  {
    Command& c = commands["ode"];
    c.app = app.add_subcommand("ode", "u' + lambda d^{1-alpha} u = cos(pi t): error tables");
    c.add("alpha", oc.alpha, "fractional order (the reference needs 1/2)");
    c.add("lambda", oc.lambda, "coefficient lambda >= 0");
    c.add("u0", oc.u0, "initial value");
    c.add("T", oc.T, "final time");
    c.add("r", oc.r, "number of Legendre coefficients per interval");
    c.add("N", oc.N, "numbers of intervals");
    c.add("mesh", oc.mesh, "uniform or graded");
    c.add("q", oc.q, "grading exponents for --mesh graded");
    c.add("table", oc.table, "ej (weighted Radau errors), recon (reconstruction error) or profile");
    c.add("samples", oc.samples, "Chebyshev samples per interval for recon");
  }
  {
    Command& c = commands["pde"];
    c.app = app.add_subcommand("pde", "1D sub-diffusion: jumps against dG and reconstruction errors");
    c.add("alpha", pc.alpha, "fractional order in (0, 1)");
    c.add("r", pc.r, "number of Legendre coefficients per interval");
    c.add("N", pc.N, "number of intervals (uniform or graded)");
    c.add("T", pc.T, "final time");
    c.add("mesh", pc.mesh, "uniform, graded or composite");
    c.add("q", pc.q, "grading exponent (0 selects (r + alpha) / alpha)");
    c.add("n-graded", pc.n_graded, "graded steps of a composite mesh");
    c.add("graded-until", pc.t_switch, "end of the graded part of a composite mesh");
    c.add("n-uniform", pc.n_uniform, "uniform steps of a composite mesh");
    c.add("fem-degree", pc.fem_degree, "finite element degree");
    c.add("fem-elements", pc.fem_elements, "number of finite elements");
    c.add("L", pc.L, "domain length");
    c.add("C0", pc.C0, "initial data scale");
    c.add("Cf", pc.Cf, "source scale");
    c.add("contour-K", pc.contour_K, "contour half node count of the reference");
    c.add("samples", pc.samples, "Chebyshev samples per interval");
  }
  {
    Command& c = commands["refsoln"];
    c.app = app.add_subcommand("refsoln", "reference solutions");
    c.add("what", sc.what, "ode or pde");
    c.add("t", sc.t, "times");
    c.add("x", sc.x, "positions (pde)");
    c.add("alpha", sc.alpha, "fractional order (0 selects 1/2 for ode, 0.6 for pde)");
    c.add("lambda", sc.lambda, "ode coefficient");
    c.add("u0", sc.u0, "ode initial value");
    c.add("L", sc.L, "pde domain length");
    c.add("C0", sc.C0, "pde initial data scale");
    c.add("Cf", sc.Cf, "pde source scale");
    c.add("contour-K", sc.contour_K, "contour half node count");
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Locate --config ahead of the full parse so file entries act as defaults.
    std::string cfg, sub;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) cfg = args[i + 1];
      else if (args[i].rfind("--config=", 0) == 0) cfg = args[i].substr(9);
      if (sub.empty() && commands.count(args[i])) sub = args[i];
    }
    if (!cfg.empty()) {
      std::vector<std::string> extra;
      for (const auto& [key, value] : read_config(cfg)) {
        if (key == "version") continue;
        if (key == "command") {
          if (sub.empty()) {
            detail::require(commands.count(value) > 0, "config: unknown command " + value);
            sub = value;
            args.push_back(sub);
          }
          continue;
        }
        if (sub.empty()) throw InvalidArgument("config: option " + key + " given without a command");
        detail::require(commands[sub].app->get_option_no_throw("--" + key) != nullptr,
                        "config: unknown option " + key + " for " + sub);
        if (!user_gave(args, key)) {
          extra.push_back("--" + key);
          extra.push_back(value);
        }
      }
      // Later duplicates in the file override earlier ones.
      std::map<std::string, std::string> last;
      for (std::size_t i = 0; i < extra.size(); i += 2) last[extra[i]] = extra[i + 1];
      for (const auto& [k, v] : last) args.push_back(k + "=" + v);
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Command* active = nullptr;
  for (const auto& [name, c] : commands)
    if (c.app->parsed()) active = &c;
  if (!active) {
    err << app.help();
    return 2;
  }

  try {
    const std::string name = active->app->get_name();
    if (name == "refsoln" && sc.alpha == 0.0) sc.alpha = (sc.what == "ode") ? 0.5 : 0.6;
    std::ostringstream body;
    active->header(body);
    if (name == "hcoeffs") run_hcoeffs(hc, body);
    else if (name == "gauss-points") run_gauss_points(gc, body);
    else if (name == "radau") run_radau(rc, body);
    else if (name == "ode") run_ode(oc, body);
    else if (name == "pde") run_pde(pc, body);
    else run_refsoln(sc, body);

    if (output_path.empty()) {
      out << body.str();
    } else {
      std::ofstream file(output_path);
      if (!file) throw InvalidArgument("cannot open output file " + output_path);
      file << body.str();
    }
    return 0;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fracdg
