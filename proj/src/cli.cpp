#include "latfrak/cli.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "latfrak/csv.hpp"
#include "latfrak/dispersion.hpp"
#include "latfrak/error.hpp"
#include "latfrak/fracture.hpp"
#include "latfrak/kernel.hpp"
#include "latfrak/wienerhopf.hpp"

namespace latfrak::cli {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"dispersion", "branch values and ray crossings"},
    {"kernel", "kernel L on a wavenumber grid"},
    {"argprofile", "unwrapped arg L, index and jumps"},
    {"factorize", "Wiener-Hopf factors L+ and L-"},
    {"err", "energy release ratio G0/G"},
    {"sif", "stress intensity factor K_I"},
    {"check", "self-consistency report"}};

double finite_or_nan(double v) { return std::isfinite(v) ? v : std::nan(""); }

json num_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const RunConfig& c, const std::string& path, const std::string& content,
          std::ostream& out) {
  (void)c;
  if (path.empty())
    out << content;
  else
    csv::write_atomic(path, content);
}

void header(csv::Table& t, const RunConfig& c) {
  t.comment("latfrak " + c.subcommand);
  t.comment("config " + to_json(c).dump());
}

std::vector<double> xi_grid(const RunConfig& c, double lo, double hi, int n) {
  if (!c.xi_list.empty()) return c.xi_list;
  const double a = c.xi_max > 0.0 || c.xi_min != 0.0 ? c.xi_min : lo;
  const double b = c.xi_max > 0.0 ? c.xi_max : hi;
  const int m = c.n_points > 0 ? c.n_points : n;
  if (m < 1 || !(b >= a)) throw UsageError("empty wavenumber grid");
  std::vector<double> g;
  for (int k = 0; k < m; ++k) g.push_back(m == 1 ? a : a + (b - a) * k / double(m - 1));
  return g;
}

ProfileSpec profile_spec(const RunConfig& c) {
  ProfileSpec s;
  s.regularization = c.regularization;
  s.xi_max = c.profile_xi_max;
  s.points_per_period = c.points_per_period;
  return s;
}

int run_dispersion(const RunConfig& c, std::ostream& out) {
  const LatticeParams& p = c.params;
  p.validate(false, false);
  csv::Table t({"xi", "N1", "N2", "N3", "N4", "D1", "D2", "D3", "ray"});
  header(t, c);
  for (double xi : xi_grid(c, 0.0, 4.0 * kPi, 1001)) {
    std::vector<std::string> row{csv::num(xi)};
    for (Branch b : kAllBranches) row.push_back(csv::num(branch_value(b, xi, p)));
    row.push_back(csv::num(xi * p.V));
    t.row(std::move(row));
  }
  csv::Table x({"xi_star", "branch", "kind", "half_plane", "vg"});
  header(x, c);
  if (p.V > 0.0) {
    const CrossingSet cs = crossings(p);
    for (const auto& w : cs.warnings) x.comment("warning " + w);
    for (const Crossing& k : cs.items)
      x.row({csv::num(k.xi_star), to_string(k.branch), to_string(k.kind),
             to_string(k.half_plane), csv::num(k.vg)});
  }
  if (c.out.empty()) {
    out << t.str() << "\n" << x.str();
  } else {
    emit(c, c.out, t.str(), out);
    std::string xpath = c.crossings;
    if (xpath.empty()) {
      const auto dot = c.out.rfind('.');
      xpath = (dot == std::string::npos ? c.out : c.out.substr(0, dot)) + "_crossings.csv";
    }
    emit(c, xpath, x.str(), out);
  }
  return 0;
}

int run_kernel(const RunConfig& c, std::ostream& out) {
  const LatticeParams& p = c.params;
  p.validate(true, false);
  csv::Table t({"xi", "Re_L", "Im_L", "abs_L", "arg_L", "r1", "r2", "Re_z1", "Im_z1", "Re_z2",
                "Im_z2"});
  header(t, c);
  for (double xi : xi_grid(c, 0.01, 4.0 * kPi, 1001)) {
    const KernelSample s = eval_L_closed(xi, p);
    t.row({csv::num(xi), csv::num(s.L.real()), csv::num(s.L.imag()), csv::num(std::abs(s.L)),
           csv::num(std::arg(s.L)), std::to_string(s.r1), std::to_string(s.r2),
           csv::num(s.z1.real()), csv::num(s.z1.imag()), csv::num(s.z2.real()),
           csv::num(s.z2.imag())});
  }
  emit(c, c.out, t.str(), out);
  return 0;
}

json profile_summary(const PhaseProfile& prof, const PhaseIntegral* I) {
  json j;
  j["index"] = prof.index;
  j["index_raw"] = prof.index_raw;
  j["eps"] = prof.eps_used;
  j["regularization"] = to_string(prof.regularization);
  j["xi_max"] = prof.xi_max;
  j["base_step"] = prof.base_step;
  j["tail_arg"] = prof.tail_arg;
  j["unstable_regime"] = prof.unstable_regime;
  j["jumps"] = json::array();
  for (const Jump& jp : prof.jumps) j["jumps"].push_back({{"xi", jp.xi}, {"magnitude", jp.magnitude}});
  if (I) {
    j["integral"] = I->value;
    j["integral_quadrature_error"] = I->quadrature_error;
    j["integral_tail"] = I->tail;
    j["G0_over_G"] = std::exp(2.0 * I->value / kPi);
  }
  j["warnings"] = prof.warnings;
  return j;
}

int run_argprofile(const RunConfig& c, std::ostream& out) {
  const PhaseProfile prof = arg_profile(c.params, profile_spec(c));
  std::optional<PhaseIntegral> I;
  if (prof.index == 0) I = phase_integral(prof);
  json summary = profile_summary(prof, I ? &*I : nullptr);
  summary["config"] = to_json(c);
  if (c.format == "json") {
    emit(c, c.out, summary.dump(2) + "\n", out);
  } else {
    csv::Table t({"xi", "arg_L_unwrapped", "Re_L", "Im_L"});
    header(t, c);
    for (std::size_t k = 0; k < prof.grid.size(); ++k)
      t.row({csv::num(prof.grid[k]), csv::num(prof.arg_values[k]), csv::num(prof.L[k].real()),
             csv::num(prof.L[k].imag())});
    emit(c, c.out, t.str(), out);
  }
  if (!c.summary.empty()) csv::write_atomic(c.summary, summary.dump(2) + "\n");
  return 0;
}

int run_factorize(const RunConfig& c, std::ostream& out) {
  const PhaseProfile prof = arg_profile(c.params, profile_spec(c));
  const Factorization f(prof, c.params);
  csv::Table t({"Re_xi", "Im_xi", "Re_Lp", "Im_Lp", "Re_Lm", "Im_Lm", "residual"});
  header(t, c);
  const double nan = std::nan("");
  for (double x : xi_grid(c, 0.1, 4.0 * kPi, 101)) {
    const FactorizationResult r = f.at(cplx(x, c.xi_imag));
    for (const auto& w : r.warnings) t.comment("warning " + w);
    const cplx lp = r.L_plus.value_or(cplx(nan, nan));
    const cplx lm = r.L_minus.value_or(cplx(nan, nan));
    t.row({csv::num(x), csv::num(c.xi_imag), csv::num(lp.real()), csv::num(lp.imag()),
           csv::num(lm.real()), csv::num(lm.imag()), csv::num(r.residual)});
  }
  emit(c, c.out, t.str(), out);
  return 0;
}

int run_fracture(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const LatticeParams& tmpl = c.params;
  tmpl.validate(false, false);
  const std::vector<double> alphas = c.alphas.empty() ? std::vector<double>{tmpl.alpha} : c.alphas;
  FractureOptions opt;
  opt.profile.points_per_period = c.points_per_period;
  opt.profile.xi_max = c.profile_xi_max;
  std::vector<SweepRow> rows;
  if (c.n_speeds > 0) {
    SpeedGrid g{c.n_speeds, c.v_min, c.v_max};
    rows = sweep(alphas, g, tmpl, opt);
  } else {
    if (!(tmpl.V > 0.0)) throw UsageError("--V or --n-speeds is required");
    for (double a : alphas) {
      SweepRow row{a, tmpl.V, std::nullopt, {}};
      try {
        row.result = energy_ratio(contrast_params(tmpl, a, tmpl.V), opt);
      } catch (const Error& ex) {
        row.error = fmt::format("{}: {}", ex.kind(), ex.what());
      }
      rows.push_back(std::move(row));
    }
  }
  csv::Table t({"alpha", "V", "V_over_CR_alpha", "V_over_CR_0", "G0_over_G", "K1_over_sqrtG0",
                "phase_integral", "unstable_flag", "eps_final", "extrapolated"});
  header(t, c);
  json summary;
  summary["config"] = to_json(c);
  summary["rows"] = json::array();
  bool failed = false;
  const double nan = std::nan("");
  for (const SweepRow& row : rows) {
    json j{{"alpha", row.alpha}, {"V", row.V}};
    if (row.result) {
      const FractureResult& r = *row.result;
      t.row({csv::num(r.alpha), csv::num(r.V), csv::num(r.V_over_CR), csv::num(r.V_over_CR0),
             csv::num(r.G0_over_G), csv::num(finite_or_nan(r.K1_over_sqrtG0)),
             csv::num(r.phase_integral), r.unstable_flag ? "1" : "0", csv::num(r.eps_final),
             r.extrapolated ? "1" : "0"});
      j["G0_over_G"] = r.G0_over_G;
      j["K1_over_sqrtG0"] = num_json(r.K1_over_sqrtG0);
      j["phase_integral"] = r.phase_integral;
      j["quadrature_error"] = r.quadrature_error;
      j["tail_estimate"] = r.tail_estimate;
      j["extrapolation_change"] = r.extrapolation_change;
      j["integrals"] = r.integrals;
      j["eps_schedule"] = r.eps_schedule;
      j["onset_V_over_CR"] = r.onset_V_over_CR;
      j["jump_density"] = r.jump_density;
      j["unstable_flag"] = r.unstable_flag;
      j["L0"] = r.L0;
      j["warnings"] = r.warnings;
    } else {
      failed = true;
      const double cr = rayleigh_speed(contrast_params(tmpl, row.alpha, 0.0));
      t.row({csv::num(row.alpha), csv::num(row.V), csv::num(row.V / cr),
             csv::num(row.V / rayleigh_speed_limit()), csv::num(nan), csv::num(nan),
             csv::num(nan), "1", csv::num(nan), "0"});
      j["error"] = row.error;
      err << "point alpha=" << row.alpha << " V=" << row.V << " failed: " << row.error << "\n";
    }
    summary["rows"].push_back(j);
  }
  if (c.format == "json")
    emit(c, c.out, summary.dump(2) + "\n", out);
  else
    emit(c, c.out, t.str(), out);
  if (!c.summary.empty()) csv::write_atomic(c.summary, summary.dump(2) + "\n");
  return failed ? 1 : 0;
}

// Randomized property suite on the configured lattice and on random lattices.
int run_check(const RunConfig& c, std::ostream& out) {
  const LatticeParams& p = c.params;
  p.validate(true, true);
  validate_subrayleigh(p);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto random_params = [&] {
    const double a = std::pow(10.0, -1.3 + 3.3 * U(rng));
    LatticeParams q = LatticeParams::from_contrast(a, 0.0, std::pow(10.0, -3.0 + 3.0 * U(rng)));
    q.V = (0.05 + 0.94 * U(rng)) * rayleigh_speed(q);
    return q;
  };
  json report;
  report["config"] = to_json(c);
  report["checks"] = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, json detail) {
    all = all && ok;
    report["checks"].push_back({{"name", name}, {"passed", ok}, {"detail", detail}});
  };
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& ex) {
      record(name, false, {{"error", ex.kind()}, {"message", ex.what()}});
    }
  };

  guarded("class_J", [&] {
    double worst = 0.0;
    for (int k = 0; k < c.samples; ++k) {
      const double xi = 40.0 * U(rng);
      const cplx a = eval_L_closed(xi, p).L, b = eval_L_closed(-xi, p).L;
      worst = std::max(worst, std::abs(a - std::conj(b)) / std::abs(a));
    }
    record("class_J", worst < 1e-10, {{"max_rel_defect", worst}});
  });
  guarded("lambda_bound", [&] {
    double worst_mod = 0.0, worst_res = 0.0;
    for (int k = 0; k < c.samples; ++k) {
      const LatticeParams q = random_params();
      const double xi = -40.0 + 80.0 * U(rng);
      const LambdaRoots r = eval_lambda(xi, q);
      worst_mod = std::max({worst_mod, std::abs(r.lam1), std::abs(r.lam2)});
      worst_res = std::max({worst_res, biquadratic_residual(r.lam1, xi, q),
                            biquadratic_residual(r.lam2, xi, q)});
    }
    record("lambda_bound", worst_mod <= 1.0 + 1e-12 && worst_res < 1e-9,
           {{"max_modulus", worst_mod}, {"max_residual", worst_res}});
  });
  guarded("dual_kernel", [&] {
    double worst = 0.0;
    for (int k = 0; k < c.samples; ++k) {
      const LatticeParams q = random_params();
      const double xi = -40.0 + 80.0 * U(rng);
      const cplx a = eval_L_closed(xi, q).L, b = eval_L_matrix(xi, q);
      worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    record("dual_kernel", worst < 1e-9, {{"max_rel_difference", worst}});
  });
  guarded("winding_index", [&] {
    json idx = json::array();
    bool ok = true;
    for (double e : {1e-1, 1e-2, 1e-3}) {
      const PhaseProfile prof = arg_profile(p.with_eps(e));
      const int i = winding_index(prof);
      idx.push_back({{"eps", e}, {"index", i}});
      ok = ok && i == 0;
    }
    record("winding_index", ok, idx);
  });
  guarded("asymptotic_constants", [&] {
    bool ok = true;
    double min_L0 = INFINITY;
    for (int i = 0; i < 10; ++i)
      for (int j = 1; j <= 10; ++j) {
        const double a = std::pow(10.0, std::log10(0.05) + i * (std::log10(100.0) - std::log10(0.05)) / 9.0);
        LatticeParams q = LatticeParams::from_contrast(a, 0.0, p.eps);
        q.V = 0.999 * j / 10.0 * rayleigh_speed(q);
        const AsymptoticConstants k = asymptotic_constants(q);
        auto neg_real = [](cplx d) { return d.real() <= 0.0 && std::abs(d.imag()) < 1e-14 * std::abs(d); };
        ok = ok && k.L0 > 0.0 && !neg_real(k.d1) && !neg_real(k.d2);
        min_L0 = std::min(min_L0, k.L0);
      }
    record("asymptotic_constants", ok, {{"min_L0", min_L0}});
  });
  guarded("factorization_residual", [&] {
    const PhaseProfile prof = arg_profile(p);
    const Factorization f(prof, p);
    double worst = 0.0;
    int used = 0;
    while (used < 20) {
      const double xi = 0.1 + 30.0 * U(rng);
      bool near = false;
      for (const Jump& j : prof.jumps) near = near || std::abs(xi - j.xi) < 10.0 * prof.base_step;
      if (near) continue;
      worst = std::max(worst, f.at(xi).residual);
      ++used;
    }
    record("factorization_residual", worst < 1e-5, {{"max_residual", worst}});
  });
  report["passed"] = all;
  emit(c, c.out, report.dump(2) + "\n", out);
  return all ? 0 : 1;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["m"] = c.params.m;
  j["mu1"] = c.params.mu1;
  j["mu2"] = c.params.mu2;
  j["alpha"] = c.params.alpha;
  j["V"] = c.params.V;
  j["eps"] = c.params.eps;
  j["xi_min"] = c.xi_min;
  j["xi_max"] = c.xi_max;
  j["n_points"] = c.n_points;
  j["xi_list"] = c.xi_list;
  j["xi_imag"] = c.xi_imag;
  j["regularization"] = to_string(c.regularization);
  j["profile_xi_max"] = c.profile_xi_max;
  j["points_per_period"] = c.points_per_period;
  j["alphas"] = c.alphas;
  j["n_speeds"] = c.n_speeds;
  j["v_min"] = c.v_min;
  j["v_max"] = c.v_max;
  j["format"] = c.format;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  return j;
}

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Steady Mode I crack in a triangular lattice with contrasting bond stiffnesses"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);

  std::optional<double> m, mu1, mu2, alpha, V, eps;
  std::string xi_grid_spec, regularization = "constant";
  app.add_option("--m", m, "particle mass");
  app.add_option("--mu1", mu1, "horizontal bond stiffness");
  app.add_option("--mu2", mu2, "diagonal bond stiffness");
  app.add_option("--alpha", alpha, "stiffness ratio mu1/mu2 (sets mu2 when --mu2 is absent)");
  app.add_option("--V", V, "crack speed");
  app.add_option("--eps", eps, "regularization eps > 0");
  app.add_option("--xi-min", c.xi_min, "grid start");
  app.add_option("--xi-max", c.xi_max, "grid end");
  app.add_option("--n-points", c.n_points, "grid size");
  app.add_option("--xi-list", c.xi_list, "explicit wavenumbers")->delimiter(',');
  app.add_option("--xi-grid", xi_grid_spec, "min:max:n");
  app.add_option("--xi-imag", c.xi_imag, "imaginary offset for factorize");
  app.add_option("--regularization", regularization, "constant or vanishing")
      ->check(CLI::IsMember({"constant", "vanishing"}));
  app.add_option("--profile-xi-max", c.profile_xi_max, "phase profile window (0 = default)");
  app.add_option("--points-per-period", c.points_per_period, "profile samples per 4 pi");
  app.add_option("--alphas", c.alphas, "stiffness ratios for err/sif")->delimiter(',');
  app.add_option("--n-speeds", c.n_speeds, "speeds per ratio (0 = single --V)");
  app.add_option("--v-min", c.v_min, "lowest V/C_R");
  app.add_option("--v-max", c.v_max, "highest V/C_R");
  app.add_option("--out", c.out, "output path (stdout if absent)");
  app.add_option("--summary", c.summary, "JSON summary path");
  app.add_option("--crossings-out", c.crossings, "crossing table path for dispersion");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", c.seed, "seed for randomized checks");
  app.add_option("--samples", c.samples, "random samples per property in check");
  for (const auto& [name, help] : kSubcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& [name, help] : kSubcommands)
    if (app.got_subcommand(name)) c.subcommand = name;

  if (!xi_grid_spec.empty()) {
    double a = 0, b = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(xi_grid_spec);
    if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':')
      throw UsageError("--xi-grid expects min:max:n");
    c.xi_min = a;
    c.xi_max = b;
    c.n_points = n;
    if (n < 1) throw UsageError("empty wavenumber grid");
  }
  if (c.n_points < 0) throw UsageError("--n-points must be positive");
  c.regularization =
      regularization == "vanishing" ? Regularization::vanishing : Regularization::constant;

  LatticeParams& p = c.params;
  p.m = m.value_or(1.0);
  p.mu1 = mu1.value_or(1.0);
  if (mu2) {
    p.mu2 = *mu2;
    if (alpha && std::abs(*alpha - p.mu1 / p.mu2) > 1e-12 * std::abs(*alpha))
      throw UsageError(fmt::format("--alpha {} contradicts mu1/mu2 = {}", *alpha, p.mu1 / p.mu2));
  } else if (alpha) {
    if (!(*alpha > 0.0)) throw UsageError("--alpha must be positive");
    p.mu2 = p.mu1 / *alpha;
  } else {
    p.mu2 = 1.0;
  }
  p.alpha = p.mu1 / p.mu2;
  p.V = V.value_or(0.0);
  p.eps = eps.value_or(1e-3);
  try {
    p.validate(false, false);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "dispersion") return run_dispersion(c, out);
  if (c.subcommand == "kernel") return run_kernel(c, out);
  if (c.subcommand == "argprofile") return run_argprofile(c, out);
  if (c.subcommand == "factorize") return run_factorize(c, out);
  if (c.subcommand == "err" || c.subcommand == "sif") return run_fracture(c, out, err);
  if (c.subcommand == "check") return run_check(c, out);
  throw UsageError("unknown subcommand " + c.subcommand);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(argc, argv), out, err);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace latfrak::cli
