#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldint/ldint.hpp"

namespace ldint::cli {

namespace fs = std::filesystem;

std::filesystem::path OutputSet::claim(const std::string& name) {
  fs::path p = dir_ / name;
  files_.push_back(p);
  return p;
}

void OutputSet::discard() {
  std::error_code ec;
  for (const auto& f : files_) fs::remove(f, ec);
  files_.clear();
}

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open(OutputSet& out, const std::string& name) {
  std::ofstream f(out.claim(name));
  if (!f) throw UsageError("cannot write " + (out.dir() / name).string());
  return f;
}

void gnuplot_header(std::ostream& gp, const std::string& title) {
  gp << "# gnuplot script; run from the output directory\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set title '" << title << "'\n";
}

// Flat key=value config applied to options the command line left unset.
void apply_config(const std::string& path, CLI::App& app, CLI::App* sub) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt || key == "config") throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    try {
      if (opt->get_expected_max() > 1 && opt->get_delimiter() != '\0') {
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, opt->get_delimiter())) opt->add_result(trim(item));
      } else if (opt->get_type_size() == 0) {
        // Flag.
        if (value == "true" || value == "1" || value == "yes" || value == "on") opt->add_result("true");
        else if (value == "false" || value == "0" || value == "no" || value == "off") continue;
        else throw UsageError(path + ":" + std::to_string(lineno) + ": flag '" + key + "' needs true or false");
      } else {
        opt->add_result(value);
      }
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) {
    const auto m = parse_method(n);
    if (!m) throw UsageError("unknown method '" + n + "' (expected euler, rk2, rk4, verlet-q, verlet-p, ld2, ld4)");
    out.push_back(*m);
  }
  if (out.empty()) throw UsageError("no methods given");
  return out;
}

// ---------------------------------------------------------------------------
// quad-compare

struct QuadOptions {
  std::string function = "gaussian";
  double a = -0.5;
  double b = 0.5;
  unsigned max_order = 16;
  std::vector<unsigned> orders;
  bool exact = false;
};

std::string remainder_cell(const QuadratureRule& rule, const AnalyticFunction& f, double a, double b) {
  const unsigned n = rule.order();
  unsigned k = n;
  if (rule.kind() == RuleKind::LanczosDyche) k = 2 * n;
  if (rule.kind() == RuleKind::EulerMaclaurin) {
    if (n % 2) return "";
    k = n + 2;
  }
  if (k > f.max_order) return "";
  const double mid = 0.5 * (a + b);
  const double deriv = f.jet(mid, k)[k];
  return g17(std::abs(remainder_bound(rule, b - a, deriv, TauPolicy::Midpoint).bound));
}

Rational polynomial_integral(const std::vector<Rational>& c, const Rational& a, const Rational& b) {
  Rational sum = 0;
  Rational pa = a, pb = b;
  for (std::size_t k = 0; k < c.size(); ++k) {
    sum += c[k] * (pb - pa) / Rational(static_cast<long long>(k + 1));
    pa *= a;
    pb *= b;
  }
  return sum;
}

void run_quad(const QuadOptions& o, OutputSet& out) {
  const auto f = builtin_function(o.function);
  if (!f) {
    std::string names;
    for (const auto& n : builtin_function_names()) names += " " + n;
    throw UsageError("unknown function '" + o.function + "' (builtins:" + names + ")");
  }
  if (!std::isfinite(o.a) || !std::isfinite(o.b) || o.b < o.a) throw UsageError("interval must satisfy a <= b");
  std::vector<unsigned> orders = o.orders;
  if (orders.empty()) {
    for (unsigned n = 1; n <= o.max_order; ++n) orders.push_back(n);
  }
  for (unsigned n : orders) {
    if (n == 0 || n - 1 > f->max_order) {
      throw UsageError("order " + std::to_string(n) + " needs derivatives beyond what '" + f->name + "' provides (" +
                       std::to_string(f->max_order) + ")");
    }
  }
  if (o.exact && !f->polynomial) throw UsageError("--exact-rational needs a polynomial function (cubic, quintic)");

  auto csv = open(out, "quad_compare.csv");
  csv << "n,ld_error,em_error,taylor_error,ld_remainder,em_remainder,taylor_remainder\n";
  const double dt = o.b - o.a;
  const double reference = f->integral(o.a, o.b);
  for (unsigned n : orders) {
    const QuadratureRule rules[] = {QuadratureRule::lanczos_dyche(n), QuadratureRule::euler_maclaurin(n),
                                    QuadratureRule::taylor(n)};
    csv << n;
    if (o.exact) {
      const Rational ra = from_double(o.a), rb = from_double(o.b);
      const auto j1 = polynomial_jet(*f->polynomial, ra, n - 1);
      const auto j2 = polynomial_jet(*f->polynomial, rb, n - 1);
      const Rational ref = polynomial_integral(*f->polynomial, ra, rb);
      for (const auto& r : rules) csv << ',' << g17(to_double(abs(integrate_exact(r, j1, j2, rb - ra) - ref)));
    } else {
      const DerivativeJet j1 = f->jet(o.a, n - 1);
      const DerivativeJet j2 = f->jet(o.b, n - 1);
      csv << ',' << g17(std::abs(integrate(rules[0], j1, j2, dt) - reference));
      csv << ',' << g17(std::abs(integrate(rules[1], j1, j2, dt) - reference));
      csv << ',' << g17(std::abs(integrate(rules[2], j1, dt) - reference));
    }
    for (const auto& r : rules) csv << ',' << remainder_cell(r, *f, o.a, o.b);
    csv << '\n';
  }
  auto gp = open(out, "quad_compare.gp");
  gnuplot_header(gp, "single-step quadrature error, " + f->name + " on [" + g17(o.a) + ", " + g17(o.b) + "]");
  gp << "set logscale y\nset xlabel 'n'\nset ylabel 'absolute error'\n"
     << "plot 'quad_compare.csv' using 1:2 with linespoints, '' using 1:3 with linespoints, "
        "'' using 1:4 with linespoints\n";
}

// ---------------------------------------------------------------------------
// stability

struct StabilityOptions {
  std::string kind = "both";
  std::vector<unsigned> orders;
  double re_min = -5, re_max = 5, im_min = -5, im_max = 5;
  std::size_t points = 401;
  unsigned threads = 0;
};

void run_stability(const StabilityOptions& o, OutputSet& out) {
  std::vector<IncrementKind> kinds;
  if (o.kind == "rk" || o.kind == "both") kinds.push_back(IncrementKind::RungeKutta);
  if (o.kind == "ld" || o.kind == "both") kinds.push_back(IncrementKind::LanczosDyche);
  if (kinds.empty()) throw UsageError("--kind must be rk, ld or both");
  std::vector<unsigned> orders = o.orders.empty() ? std::vector<unsigned>{1, 2, 3, 4} : o.orders;
  if (!(o.re_max > o.re_min) || !(o.im_max > o.im_min)) throw UsageError("grid ranges must be non-empty");
  if (o.points < 2) throw UsageError("--points must be at least 2");

  auto gp = open(out, "stability.gp");
  gnuplot_header(gp, "stability regions (|zeta| <= 1)");
  gp << "set xlabel 'Re(mu)'\nset ylabel 'Im(mu)'\nset size ratio -1\nunset key\n";
  for (IncrementKind k : kinds) {
    for (unsigned n : orders) {
      if (n == 0) throw UsageError("orders must be positive");
      const std::string name = std::string("stability_") + to_string(k) + std::to_string(n) + ".csv";
      const StabilityMap map =
          scan_region(IncrementFunction(k, n), {o.re_min, o.re_max}, {o.im_min, o.im_max}, o.points, o.points, o.threads);
      auto csv = open(out, name);
      write_csv(csv, map);
      gp << "set title '" << to_string(k) << " n=" << n << "'\nplot '" << name
         << "' using 1:2:4 with image\npause -1\n";
    }
  }
}

// ---------------------------------------------------------------------------
// trajectories

struct TrajectoryOptions {
  std::vector<std::string> methods{"ld2", "ld4", "rk2", "rk4"};
  double dt = 0.1;
  std::size_t steps = 10000;
  double q0 = 1.0;
  double p0 = 0.0;
  double gamma = 1e-4;
  bool jacobian = false;
  std::size_t stride = 1;
  bool plain_sum = false;
  std::string system;
  std::string matrix_file;
};

void run_trajectories(const std::string& tag, const HamiltonianSystem& sys, const PhaseState& initial,
                      const TrajectoryOptions& o, OutputSet& out) {
  const auto methods = parse_methods(o.methods);
  auto gp = open(out, tag + ".gp");
  gnuplot_header(gp, tag + ", dt = " + g17(o.dt));
  std::string phase, drift;
  for (Method m : methods) {
    StepperConfig cfg;
    cfg.method = m;
    cfg.dt = o.dt;
    cfg.compensated_summation = !o.plain_sum;
    EvolveOptions eo;
    eo.record_stride = o.stride;
    eo.record_jacobian = o.jacobian;
    const DiagnosticSeries series = evolve(sys, cfg, initial, o.steps, eo);
    const std::string name = tag + "_" + to_string(m) + ".csv";
    auto csv = open(out, name);
    write_csv(csv, series);
    std::cout << tag << ' ' << to_string(m) << ": max dE_rel " << g17(series.max_dE_rel());
    if (!series.C_rel_values().empty()) {
      const auto c = series.C_rel_values();
      std::cout << ", max C_rel " << g17(*std::max_element(c.begin(), c.end()));
    }
    std::cout << ", max solver iterations " << series.max_solver_iterations() << '\n';
    phase += (phase.empty() ? "plot '" : ", '") + name + "' using 3:4 with lines title '" + to_string(m) + "'";
    drift += (drift.empty() ? "plot '" : ", '") + name + "' using 2:" + (sys.damping ? "8" : "6") +
             " with lines title '" + to_string(m) + "'";
  }
  gp << "set xlabel 'q'\nset ylabel 'p'\nset size ratio -1\n" << phase << "\npause -1\n";
  gp << "set size noratio\nset logscale y\nset xlabel 't'\nset ylabel '" << (sys.damping ? "C_rel" : "dE_rel")
     << "'\n"
     << drift << "\npause -1\n";
}

void check_trajectory(const TrajectoryOptions& o) {
  if (!std::isfinite(o.q0) || !std::isfinite(o.p0)) throw UsageError("initial state must be finite");
  if (o.stride == 0) throw UsageError("--stride must be positive");
}

// ---------------------------------------------------------------------------
// mol-advect

struct MolOptions {
  std::size_t grid = 64;
  unsigned n = 2;
  std::vector<double> courant{0.5, 1, 2, 4, 8};
  std::size_t steps = 1000;
  std::string scheme = "cd2";
  double width = 0.05;
};

void run_mol(const MolOptions& o, OutputSet& out) {
  StencilScheme scheme;
  if (o.scheme == "cd2") scheme = StencilScheme::CentralDifference2;
  else if (o.scheme == "cd4") scheme = StencilScheme::CentralDifference4;
  else throw UsageError("--scheme must be cd2 or cd4");
  const double dx = 1.0 / static_cast<double>(o.grid);
  MolOperator op;
  try {
    op = mol_advection_operator(o.grid, dx, scheme);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Matrix l = op.dense();
  Vector u0(static_cast<Eigen::Index>(o.grid));
  for (std::size_t i = 0; i < o.grid; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx - 0.5;
    u0[static_cast<Eigen::Index>(i)] = std::exp(-x * x / (2 * o.width * o.width));
  }
  auto summary = open(out, "mol_summary.csv");
  summary << "courant,method,max_rel_drift,final_norm_ratio\n";
  auto gp = open(out, "mol_advect.gp");
  gnuplot_header(gp, "periodic advection, N = " + std::to_string(o.grid));
  gp << "set logscale y\nset xlabel 'step'\nset ylabel '|u|_2'\n";
  std::string plot;
  for (double c : o.courant) {
    if (!(c > 0.0) || !std::isfinite(c)) throw UsageError("Courant numbers must be positive");
    const double dt = c * dx;
    struct Run {
      std::string label;
      LinearPropagator prop;
    };
    std::vector<Run> runs;
    runs.push_back({"ld" + std::to_string(o.n), build_propagator(l, dt, o.n)});
    runs.push_back({"rk" + std::to_string(o.n), build_taylor_propagator(l, dt, o.n)});
    for (const auto& r : runs) {
      const LinearTrajectory traj = evolve_linear(r.prop, u0, o.steps, false);
      double drift = 0.0;
      for (double v : traj.norms) drift = std::max(drift, relative_deviation(v, traj.norms.front()));
      const std::string name = "mol_c" + g17(c) + "_" + r.label + ".csv";
      auto csv = open(out, name);
      write_norm_csv(csv, traj);
      summary << g17(c) << ',' << r.label << ',' << g17(drift) << ',' << g17(traj.norms.back() / traj.norms.front())
              << '\n';
      plot += (plot.empty() ? "plot '" : ", '") + name + "' using 1:3 with lines title 'C=" + g17(c) + " " + r.label +
              "'";
    }
  }
  gp << plot << "\n";
}

// ---------------------------------------------------------------------------
// convergence

struct ConvergenceOptions {
  std::string system = "sho";
  std::vector<std::string> methods{"euler", "rk2", "rk4", "verlet-q", "verlet-p", "ld2", "ld4"};
  std::vector<double> dts{0.2, 0.1, 0.05, 0.025};
  double t_final = 1.0;
};

void run_convergence(const ConvergenceOptions& o, OutputSet& out) {
  if (o.system != "sho") throw UsageError("convergence supports --system sho only (exact solution needed)");
  if (o.dts.size() < 3) throw UsageError("need at least three --dts values");
  if (!(o.t_final > 0.0)) throw UsageError("--t-final must be positive");
  const HamiltonianSystem sys = make_sho();
  const auto methods = parse_methods(o.methods);
  auto table = open(out, "convergence.csv");
  table << "method,dt,error\n";
  auto orders = open(out, "convergence_orders.csv");
  orders << "method,order,saturated\n";
  const double q_exact = std::cos(o.t_final);
  for (Method m : methods) {
    std::vector<double> errs;
    std::vector<double> dts;
    for (double dt : o.dts) {
      if (!(dt > 0.0)) throw UsageError("--dts values must be positive");
      const auto steps = static_cast<std::size_t>(std::llround(o.t_final / dt));
      if (std::abs(static_cast<double>(steps) * dt - o.t_final) > 1e-9 * o.t_final) {
        throw UsageError("t-final " + g17(o.t_final) + " is not a multiple of dt " + g17(dt));
      }
      const DiagnosticSeries s = evolve(sys, StepperConfig{m, dt}, PhaseState::scalar(1.0, 0.0), steps);
      const double err = std::abs(s.back().q[0] - q_exact);
      table << to_string(m) << ',' << g17(dt) << ',' << g17(err) << '\n';
      errs.push_back(err);
      dts.push_back(dt);
    }
    const OrderFit fit = convergence_order(errs, dts);
    orders << to_string(m) << ',' << (fit.saturated ? "" : g17(fit.order)) << ',' << (fit.saturated ? 1 : 0) << '\n';
    std::cout << to_string(m) << ": order " << (fit.saturated ? std::string("saturated") : g17(fit.order)) << '\n';
  }
  auto gp = open(out, "convergence.gp");
  gnuplot_header(gp, "SHO position error at t = " + g17(o.t_final));
  gp << "set logscale xy\nset xlabel 'dt'\nset ylabel 'error'\n";
  gp << "plot for [m in '";
  for (std::size_t i = 0; i < methods.size(); ++i) gp << (i ? " " : "") << to_string(methods[i]);
  gp << "'] 'convergence.csv' using (strcol(1) eq m ? $2 : NaN):3 with linespoints title m\n";
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Lanczos-Dyche integration experiments: CSV data plus gnuplot scripts"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir;
  if (const char* env = std::getenv("LDINT_OUT_DIR"); env && *env) out_dir = env;
  else out_dir = ".";
  std::string config;
  app.add_option("--out", out_dir, "Output directory (default $LDINT_OUT_DIR or .)");
  app.add_option("--config", config, "Flat key=value file; command-line flags take precedence");

  QuadOptions quad;
  auto* q = app.add_subcommand("quad-compare", "Single-step LD / Euler-Maclaurin / Taylor quadrature errors");
  q->add_option("--function", quad.function, "Builtin integrand")->capture_default_str();
  q->add_option("--a", quad.a, "Left endpoint")->capture_default_str();
  q->add_option("--b", quad.b, "Right endpoint")->capture_default_str();
  q->add_option("--n", quad.max_order, "Highest order (orders 1..n)")->capture_default_str()->check(CLI::PositiveNumber);
  q->add_option("--orders", quad.orders, "Explicit order list")->delimiter(',');
  q->add_flag("--exact-rational", quad.exact, "Evaluate in exact rational arithmetic (polynomials)");

  StabilityOptions stab;
  auto* st = app.add_subcommand("stability", "Grid scans of |zeta(mu)| for RK and LD increment functions");
  st->add_option("--kind", stab.kind, "rk, ld or both")->capture_default_str();
  st->add_option("--n", stab.orders, "Orders (default 1,2,3,4)")->delimiter(',');
  st->add_option("--re-min", stab.re_min)->capture_default_str();
  st->add_option("--re-max", stab.re_max)->capture_default_str();
  st->add_option("--im-min", stab.im_min)->capture_default_str();
  st->add_option("--im-max", stab.im_max)->capture_default_str();
  st->add_option("--points", stab.points, "Grid points per axis")->capture_default_str();
  st->add_option("--threads", stab.threads, "Worker threads (0 = hardware)")->capture_default_str();

  auto add_trajectory = [&](CLI::App* sub, TrajectoryOptions& t) {
    sub->add_option("--method", t.methods, "Comma-separated methods")->delimiter(',')->capture_default_str();
    sub->add_option("--dt", t.dt, "Time step")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--steps", t.steps, "Number of steps")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--stride", t.stride, "Record every k-th step")->capture_default_str();
    sub->add_flag("--jacobian", t.jacobian, "Record finite-difference map Jacobians");
    sub->add_flag("--plain-sum", t.plain_sum, "Disable compensated summation");
  };
  auto add_initial = [&](CLI::App* sub, TrajectoryOptions& t) {
    sub->add_option("--q0", t.q0)->capture_default_str();
    sub->add_option("--p0", t.p0)->capture_default_str();
  };

  TrajectoryOptions sho;
  sho.steps = 62832;  // 1000 periods at dt = 0.1
  auto* sh = app.add_subcommand("sho", "Harmonic oscillator phase portraits and energy error");
  add_trajectory(sh, sho);
  add_initial(sh, sho);

  TrajectoryOptions pen;
  auto* pe = app.add_subcommand("pendulum", "Pendulum H = p^2/2 - cos q");
  add_trajectory(pe, pen);
  add_initial(pe, pen);

  TrajectoryOptions dmp;
  auto* da = app.add_subcommand("damped", "Damped oscillator with time-dependent Hamiltonian");
  add_trajectory(da, dmp);
  add_initial(da, dmp);
  da->add_option("--gamma", dmp.gamma, "Damping constant")->check(CLI::NonNegativeNumber)->capture_default_str();

  TrajectoryOptions cpl;
  cpl.methods = {"ld2", "ld4"};
  cpl.steps = 1000;
  auto* co = app.add_subcommand("coupled", "Coupled oscillator network from a mass/stiffness file");
  add_trajectory(co, cpl);
  co->add_option("--matrix-file", cpl.matrix_file, "File: N, then N rows of M, then N rows of K")->required();

  TrajectoryOptions gen;
  auto* sy = app.add_subcommand("run", "Integrate a named built-in system (sho, pendulum, damped)");
  add_trajectory(sy, gen);
  add_initial(sy, gen);
  sy->add_option("--system", gen.system, "sho, pendulum or damped")->required();
  sy->add_option("--gamma", gen.gamma, "Damping constant for damped")->check(CLI::NonNegativeNumber);

  MolOptions mol;
  auto* mo = app.add_subcommand("mol-advect", "Method-of-lines advection: LD vs explicit RK over Courant numbers");
  mo->add_option("--grid", mol.grid, "Grid points N")->capture_default_str();
  mo->add_option("--n", mol.n, "LD / RK order")->check(CLI::PositiveNumber)->capture_default_str();
  mo->add_option("--courant", mol.courant, "Courant numbers dt/dx")->delimiter(',')->capture_default_str();
  mo->add_option("--steps", mol.steps)->check(CLI::PositiveNumber)->capture_default_str();
  mo->add_option("--scheme", mol.scheme, "cd2 or cd4")->capture_default_str();
  mo->add_option("--width", mol.width, "Gaussian pulse width")->check(CLI::PositiveNumber)->capture_default_str();

  ConvergenceOptions conv;
  auto* cv = app.add_subcommand("convergence", "Global order table from the exact SHO solution");
  cv->add_option("--system", conv.system)->capture_default_str();
  cv->add_option("--method", conv.methods)->delimiter(',')->capture_default_str();
  cv->add_option("--dts", conv.dts)->delimiter(',')->capture_default_str();
  cv->add_option("--t-final", conv.t_final)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  OutputSet out(out_dir);
  try {
    if (!config.empty()) apply_config(config, app, active);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw UsageError("cannot create output directory '" + out_dir + "': " + ec.message());
    out = OutputSet(out_dir);

    const std::string name = active->get_name();
    if (name == "quad-compare") {
      run_quad(quad, out);
    } else if (name == "stability") {
      run_stability(stab, out);
    } else if (name == "sho") {
      check_trajectory(sho);
      run_trajectories("sho", make_sho(), PhaseState::scalar(sho.q0, sho.p0), sho, out);
    } else if (name == "pendulum") {
      check_trajectory(pen);
      run_trajectories("pendulum", make_pendulum(), PhaseState::scalar(pen.q0, pen.p0), pen, out);
    } else if (name == "damped") {
      check_trajectory(dmp);
      run_trajectories("damped", make_damped(dmp.gamma), PhaseState::scalar(dmp.q0, dmp.p0), dmp, out);
    } else if (name == "coupled") {
      check_trajectory(cpl);
      OscillatorNetwork net = [&] {
        try {
          return OscillatorNetwork::load(cpl.matrix_file);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      PhaseState s;
      s.q = Vector::Zero(net.dim());
      s.q[0] = 1.0;
      s.p = Vector::Zero(net.dim());
      run_trajectories("coupled", make_coupled(net), s, cpl, out);
    } else if (name == "run") {
      check_trajectory(gen);
      HamiltonianSystem sys;
      if (gen.system == "sho") sys = make_sho();
      else if (gen.system == "pendulum") sys = make_pendulum();
      else if (gen.system == "damped") sys = make_damped(gen.gamma);
      else if (gen.system == "coupled") throw UsageError("use the coupled subcommand with --matrix-file");
      else throw UsageError("unknown system '" + gen.system + "' (expected sho, pendulum, damped)");
      run_trajectories(gen.system, sys, PhaseState::scalar(gen.q0, gen.p0), gen, out);
    } else if (name == "mol-advect") {
      run_mol(mol, out);
    } else if (name == "convergence") {
      run_convergence(conv, out);
    }
  } catch (const UsageError& e) {
    out.discard();
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    out.discard();
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const StepError& e) {
    out.discard();
    std::cerr << "numeric failure at step " << e.step() << ": " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    out.discard();
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kOk;
}

}  // namespace ldint::cli
