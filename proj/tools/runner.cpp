#include "runner.hpp"

#include <algorithm>
#include <cmath>

#include "affsing/algebra.hpp"
#include "affsing/singlab.hpp"
#include "affsing/stats.hpp"
#include "samplers.hpp"

namespace affsing::tools {

namespace {

using algebra::FlowKind;
using lattice::LatticePoint;

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> out;
  if (points == 1) return {lo};
  for (int j = 0; j < points; ++j) out.push_back(j == points - 1 ? hi : lo + (hi - lo) * j / (points - 1));
  return out;
}

std::vector<std::string> default_point(int n) {
  std::vector<std::string> out;
  for (int p = 2; static_cast<int>(out.size()) < n; ++p) {
    bool prime = true;
    for (int f = 2; f * f <= p; ++f) prime = prime && p % f != 0;
    if (!prime) continue;
    int fl = static_cast<int>(std::floor(std::sqrt(static_cast<double>(p))));
    out.push_back("sqrt(" + std::to_string(p) + ")-" + std::to_string(fl));
  }
  return out;
}

Json omega_json(const ExtendedReal& w) {
  if (w.is_infinite()) return "inf";
  return json_num(w.value());
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Json cmd_omega(const RunContext& ctx, ArtifactWriter& w) {
  const auto A = ctx.A();
  const long long Q = ctx.cfg.get_int("Q_max", 100000);
  dioph::OmegaResult r = dioph::omega_estimate(A, Q, ctx.omega_options());
  CsvTable rec({"height", "q", "p", "err", "exponent"});
  std::vector<double> lh, le;
  for (const auto& b : r.records) {
    rec.row({num(b.height), int_vec(b.q), int_vec(b.p), num(b.err), num(b.exponent)});
    lh.push_back(std::log(b.height));
    le.push_back(-b.log_err);
  }
  w.csv("omega_records.csv", rec, "best-approximation records");
  w.plot("omega_records.dat", "log_height", "minus_log_err", lh, le, "best-approximation records");
  Json out{{"Q_max", Q},
           {"omega", omega_json(r.omega)},
           {"record_slope", json_num(r.record_slope)},
           {"records", r.records.size()},
           {"dirichlet_exponent", json_num(ctx.dims.dirichlet_exponent())},
           {"dim_bound", json_num(dioph::dim_bound(r.omega, ctx.dims))}};
  if (r.exact_relation) {
    out["witness"] = Json{{"q", r.exact_relation->first}, {"p", r.exact_relation->second}};
  }
  if (A.cols() == 1) {
    dioph::OmegaOptions gopt = ctx.omega_options();
    double H = ctx.cfg.get_real("H_max", 0.0);
    if (!ctx.cfg.has("H_max")) {
      // Same window as the classical scan, converted to hyperplane heights.
      H = dioph::matched_height(A, static_cast<double>(Q));
      gopt.lower_height = dioph::matched_height(A, std::sqrt(static_cast<double>(Q)));
    }
    dioph::GeometricResult g = dioph::omega_geometric(A, H, gopt);
    CsvTable geo({"height", "v", "distance", "exponent"});
    for (const auto& h : g.records) geo.row({num(h.height), int_vec(h.vQ), num(h.distance), num(h.exponent)});
    w.csv("omega_geometric.csv", geo, "hyperplane distances");
    out["geometric"] = Json{{"H_max", json_num(g.H_max)},
                            {"omega", g.infinite ? Json("inf") : json_num(g.omega)},
                            {"infinite", g.infinite}};
  }
  return out;
}

Json cmd_bound(const RunContext& ctx, ArtifactWriter& w) {
  const Dims& dims = ctx.dims;
  const double lo = ctx.cfg.get_real("omega_lo", dims.dirichlet_exponent());
  const double hi = ctx.cfg.get_real("omega_hi", dims.n + 1.0);
  const int points = static_cast<int>(ctx.cfg.get_int("omega_points", 101));
  if (points < 1 || !(hi >= lo)) throw ConfigError("bound: need omega_points >= 1 and omega_hi >= omega_lo");
  if (lo < dims.dirichlet_exponent()) throw ConfigError("bound: omega_lo is below the Dirichlet exponent");
  CsvTable t({"omega", "dim_bound", "rho_bound"});
  std::vector<double> xs = linspace(lo, hi, points), ys;
  for (double om : xs) {
    double db = dioph::dim_bound(ExtendedReal::from_value(om), dims);
    ys.push_back(db);
    t.row({num(om), num(db), om < dims.n ? num(dioph::rho_bound(om, ctx.params.theta, dims)) : ""});
  }
  w.csv("bound.csv", t, "dimension and growth-rate bounds");
  w.plot("bound.dat", "omega", "dim_bound", xs, ys, "dimension bound");
  return Json{{"points", points},
              {"dirichlet_exponent", dims.dirichlet_exponent_exact().get_str()},
              {"dim_at_dirichlet", dioph::dim_bound_exact(dims.dirichlet_exponent_exact(), dims).get_str()},
              {"crossover_rho", json_num(dioph::crossover_rho(ctx.params.theta, dims))}};
}

Json cmd_rho(const RunContext& ctx, ArtifactWriter& w) {
  const auto A = ctx.A();
  const double T = ctx.cfg.get_real("rho_T", 40.0);
  const int grid = static_cast<int>(ctx.cfg.get_int("rho_grid", 40));
  height::RhoResult r =
      height::rho_estimate(LatticePoint::from_A(A.numbers(), ctx.dims), ctx.params, T, grid, ctx.enumeration());
  CsvTable t({"t", "log_alpha", "log_excluded"});
  for (std::size_t j = 0; j < r.t.size(); ++j) t.row({num(r.t[j]), num(r.log_alpha[j]), num(r.log_excluded[j])});
  w.csv("rho.csv", t, "growth of the height along the centralizing flow");
  w.plot("rho.dat", "t", "log_alpha", r.t, r.log_alpha, "growth of the height along the centralizing flow");
  Json out{{"T", T},
           {"grid", grid},
           {"rho", json_num(r.rho)},
           {"slope_fit", json_num(r.slope_fit)},
           {"rho_upper", json_num(r.rho_upper)},
           {"infinite", r.infinite}};
  const long long Q = ctx.cfg.get_int("Q_max", 100000);
  dioph::OmegaResult om = dioph::omega_estimate(A, Q, ctx.omega_options());
  out["omega"] = omega_json(om.omega);
  if (!om.omega.is_infinite() && om.omega.value() < ctx.dims.n && !r.infinite) {
    double bound = dioph::rho_bound(om.omega.value(), ctx.params.theta, ctx.dims);
    out["rho_bound"] = json_num(bound);
    out["within_bound"] = r.rho <= bound + 0.05 * ctx.params.theta;
  }
  return out;
}

Json cmd_systole(const RunContext& ctx, ArtifactWriter& w) {
  std::vector<Number> x;
  for (const auto& s : ctx.cfg.get_scalar_list("x", default_point(ctx.dims.n))) {
    x.push_back(parse_scalar(s, ctx.precision).number());
  }
  if (static_cast<int>(x.size()) != ctx.dims.n) throw ConfigError("systole: x must have n entries");
  singlab::DivergenceOptions opt;
  opt.sigma = ctx.cfg.get_real("sigma", 0.1);
  opt.horizon = static_cast<int>(ctx.cfg.get_int("horizon", 20));
  opt.step = ctx.cfg.get_real("step", 1.0);
  opt.enumeration = ctx.enumeration();
  auto t_grid = ctx.cfg.get_real_list("t_grid", linspace(0.0, 20.0, 41));
  singlab::DivergenceProfile p = singlab::divergence_profile(x, t_grid, opt);
  CsvTable a({"t", "log_systole"});
  for (std::size_t j = 0; j < p.t.size(); ++j) a.row({num(p.t[j]), num(p.log_systole[j])});
  w.csv("systole.csv", a, "systole along the diagonal flow");
  w.plot("systole.dat", "t", "log_systole", p.t, p.log_systole, "systole along the diagonal flow");
  CsvTable b({"l", "t", "log_systole", "fraction"});
  for (std::size_t j = 0; j < p.times.size(); ++j) {
    b.row({num(static_cast<int>(j + 1)), num(p.times[j]), num(p.log_systole_times[j]), num(p.fraction[j])});
  }
  w.csv("systole_fraction.csv", b, "fraction of times in the compact part");
  return Json{{"sigma", json_num(p.sigma)},
              {"decay_slope", json_num(p.decay_slope)},
              {"final_fraction", p.fraction.empty() ? Json(nullptr) : json_num(p.fraction.back())}};
}

Json cmd_classify(const RunContext& ctx, ArtifactWriter& w) {
  singlab::EAOptions o;
  o.grid_resolution = static_cast<int>(ctx.cfg.get_int("grid_resolution", 32));
  o.t = ctx.cfg.get_real("ea_t", 1.0);
  o.horizons.clear();
  for (long long h : ctx.cfg.get_int_list("horizons", {10, 20, 40})) o.horizons.push_back(static_cast<int>(h));
  o.sigma = ctx.cfg.get_real("sigma", 0.1);
  o.eta = ctx.cfg.get_real("eta", 0.5);
  const std::string path = ctx.cfg.get_string("fibre_path", "factored");
  if (path != "factored" && path != "direct") throw ConfigError("fibre_path must be factored or direct");
  o.path = path == "direct" ? singlab::FibrePath::Direct : singlab::FibrePath::Factored;
  o.enumeration = ctx.enumeration();
  singlab::EASample s = singlab::sample_EA(ctx.A(), o);
  std::vector<std::string> header;
  for (int k = 1; k <= ctx.dims.d; ++k) header.push_back("s" + std::to_string(k));
  for (int h : s.horizons) header.push_back("flagged_N" + std::to_string(h));
  CsvTable cells(header);
  for (std::size_t c = 0; c < s.points.size(); ++c) {
    std::vector<std::string> row;
    for (double v : s.points[c]) row.push_back(num(v));
    for (const auto& f : s.flagged) row.push_back(f[c] ? "1" : "0");
    cells.row(row);
  }
  w.csv("classify_cells.csv", cells, "divergence-on-average fibre classification");
  CsvTable boxes({"boxes_per_axis", "count"});
  std::vector<double> lx, ly;
  for (std::size_t j = 0; j < s.scales.size(); ++j) {
    boxes.row({num(s.scales[j]), num(s.box_counts[j])});
    if (s.box_counts[j] > 0) {
      lx.push_back(std::log2(static_cast<double>(s.scales[j])));
      ly.push_back(std::log2(static_cast<double>(s.box_counts[j])));
    }
  }
  w.csv("classify_boxes.csv", boxes, "box counts of the flagged set");
  w.plot("classify_boxes.dat", "log2_scale", "log2_count", lx, ly, "box counts of the flagged set");
  Json frac = Json::array();
  for (double f : s.flagged_fraction) frac.push_back(json_num(f));
  return Json{{"horizons", s.horizons},
              {"flagged_fraction", frac},
              {"dim_raw", json_num(s.dim_raw)},
              {"dim_estimate", json_num(s.dim_estimate)},
              {"caveat", s.caveat}};
}

Json cmd_excursions(const RunContext& ctx, ArtifactWriter& w) {
  singlab::ExcursionOptions o;
  o.t = ctx.cfg.get_real("excursion_t", 2.0);
  o.N = static_cast<int>(ctx.cfg.get_int("excursion_N", 20));
  if (ctx.cfg.has("excursion_M")) o.M = ctx.cfg.get_real("excursion_M", 0.0);
  o.samples = static_cast<int>(ctx.cfg.get_int("samples", 200));
  o.pilot = static_cast<int>(ctx.cfg.get_int("pilot", 200));
  o.eta_grid = ctx.cfg.get_real_list("eta_grid", o.eta_grid);
  o.M_factors = ctx.cfg.get_real_list("M_factors", o.M_factors);
  o.alpha_tilde_step = ctx.cfg.get_real("alpha_tilde_step", o.alpha_tilde_step);
  o.seed = ctx.seed;
  o.params = ctx.params;
  o.enumeration = ctx.enumeration();
  singlab::ExcursionStats s = singlab::excursion_stats(ctx.A(), o);
  CsvTable z({"M", "eta", "z_measure"});
  bool mono_eta = true, mono_M = true;
  for (std::size_t m = 0; m < s.M_grid.size(); ++m) {
    for (std::size_t e = 0; e < s.eta_grid.size(); ++e) {
      z.row({num(s.M_grid[m]), num(s.eta_grid[e]), num(s.z_measure_by_M[m][e])});
      if (m > 0 && s.z_measure_by_M[m][e] > s.z_measure_by_M[m - 1][e]) mono_M = false;
    }
    mono_eta = mono_eta && nonincreasing(s.z_measure_by_M[m]);
  }
  mono_eta = mono_eta && nonincreasing(s.z_measure);
  w.csv("excursions_z.csv", z, "measure of the excursion sets");
  std::vector<double> ex, ey;
  for (std::size_t e = 0; e < s.eta_grid.size(); ++e) {
    if (s.z_measure[e] > 0) {
      ex.push_back(s.eta_grid[e]);
      ey.push_back(std::log(s.z_measure[e]));
    }
  }
  w.plot("excursions_z.dat", "eta", "log_z_measure", ex, ey, "measure of the excursion sets");
  CsvTable runs({"run_length", "count"});
  for (std::size_t l = 0; l < s.run_counts.size(); ++l) runs.row({num(static_cast<int>(l + 1)), num(s.run_counts[l])});
  w.csv("excursions_runs.csv", runs, "block membership counts");
  CsvTable seq({"sample", "l", "alpha_tilde"});
  for (std::size_t j = 0; j < s.sequences.size(); ++j) {
    for (std::size_t l = 0; l < s.sequences[j].size(); ++l) {
      seq.row({num(static_cast<int>(j)), num(static_cast<int>(l + 1)), num(s.sequences[j][l])});
    }
  }
  w.csv("excursions_sequences.csv", seq, "hitting sequences of the averaged height");
  return Json{{"t", json_num(s.t)},
              {"N", s.N},
              {"M", json_num(s.M)},
              {"M_from_pilot", s.M_from_pilot},
              {"samples", s.sequences.size()},
              {"infinite_samples", s.infinite_samples},
              {"log_z_slope", json_num(s.log_z_slope)},
              {"predicted_exponent", json_num(s.predicted_exponent)},
              {"monotone_in_eta", mono_eta},
              {"monotone_in_M", mono_M}};
}

struct VerifyRow {
  std::string check;
  std::string target;
  std::string observed;
  bool pass;
};

Json cmd_verify(const RunContext& ctx, ArtifactWriter& w, bool& passed) {
  std::vector<VerifyRow> rows;
  Json out;

  // Contraction checks.
  singlab::ContractionSpec spec;
  spec.samples = ctx.cfg.get_int("contraction_samples", 2000);
  spec.t_grid = ctx.cfg.get_real_list("contraction_t_grid", spec.t_grid);
  spec.tolerance = ctx.cfg.get_real("tolerance", spec.tolerance);
  spec.enumeration = ctx.enumeration();
  if (ctx.cfg.has("A")) spec.A = ctx.A().entries;
  singlab::ContractionReport rep = singlab::contraction_report(ctx.dims, ctx.params, spec, ctx.seed);
  CsvTable curves({"check", "t", "log_mean"});
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    rows.push_back({c.name, num(c.target_slope), num(c.median_slope), c.pass});
    for (std::size_t j = 0; j < c.t.size() && j < c.log_mean.size(); ++j) {
      curves.row({c.name, num(c.t[j]), num(c.log_mean[j])});
    }
    checks.push_back(Json{{"name", c.name},
                          {"target_slope", json_num(c.target_slope)},
                          {"median_slope", json_num(c.median_slope)},
                          {"pooled_slope", json_num(c.pooled_slope)},
                          {"fitted_C", json_num(c.fitted_C)},
                          {"delta", json_num(c.delta)},
                          {"rel_error", json_num(c.rel_error)},
                          {"samples", c.samples},
                          {"discarded", c.discarded},
                          {"pass", c.pass}});
  }
  w.csv("verify_contraction.csv", curves, "contraction of the height functions");
  out["contraction"] = checks;

  // Small-set measure scaling.
  const long long dplus_samples = ctx.cfg.get_int("dplus_samples", 20000);
  const auto r_grid = ctx.cfg.get_real_list("dplus_r", {0.02, 0.04, 0.08, 0.16});
  CsvTable dp({"d", "i", "r", "estimate", "ci_lo", "ci_hi"});
  Json dplus = Json::array();
  for (auto [d, i] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
    auto rng = stats::make_rng(ctx.seed, 7000 + static_cast<std::uint64_t>(10 * d + i));
    auto v = singlab::random_dplus_vector(d, i, rng);
    singlab::DplusSweep sw = singlab::dplus_sweep(v, r_grid, dplus_samples, ctx.seed + static_cast<std::uint64_t>(10 * d + i));
    for (std::size_t q = 0; q < sw.r.size(); ++q) {
      const auto& res = sw.results[q];
      dp.row({num(d), num(i), num(sw.r[q]), num(res.estimate), num(res.ci_lo), num(res.ci_hi)});
    }
    bool ok = std::isfinite(sw.slope) && sw.slope >= i - 0.2;
    rows.push_back({"small-set-scaling d=" + std::to_string(d) + " i=" + std::to_string(i), ">= " + num(i - 0.2),
                    num(sw.slope), ok});
    dplus.push_back(Json{{"d", d}, {"i", i}, {"slope", json_num(sw.slope)}, {"fitted_C", json_num(sw.fitted_C)}, {"pass", ok}});
  }
  w.csv("verify_dplus.csv", dp, "measure of the small-plus-part set");
  out["dplus"] = dplus;

  // Rank of the affine map.
  const long long rank_samples = ctx.cfg.get_int("rank_samples", 500);
  Json ranks = Json::array();
  for (int d = 1; d <= 3; ++d) {
    Dims dd(d + 1, d);
    for (int i = 1; i <= d; ++i) {
      auto rng = stats::make_rng(ctx.seed, 8000 + static_cast<std::uint64_t>(10 * d + i));
      long long tested = 0, good = 0;
      while (tested < rank_samples) {
        auto wv = random_perp_vector(rng, dd, i, 5);
        algebra::AffineRank ar = algebra::affine_map_rank(wv, dd);
        if (!ar.hypothesis_holds) continue;
        ++tested;
        good += ar.rank >= i ? 1 : 0;
      }
      bool ok = good == tested;
      rows.push_back({"affine-map-rank d=" + std::to_string(d) + " i=" + std::to_string(i), "rank >= " + num(i),
                      num(good) + "/" + num(tested), ok});
      ranks.push_back(Json{{"d", d}, {"i", i}, {"tested", tested}, {"rank_ok", good}, {"pass", ok}});
    }
  }
  out["affine_rank"] = ranks;

  // Plucker relations on wedges, and the standard counterexample.
  {
    const long long samples = ctx.cfg.get_int("plucker_samples", 1000);
    auto rng = stats::make_rng(ctx.seed, 9000);
    long long good = 0;
    for (long long j = 0; j < samples; ++j) {
      int N = static_cast<int>(uniform_int(rng, 4, 6));
      int k = static_cast<int>(uniform_int(rng, 2, N - 2));
      std::vector<std::vector<Rational>> vs;
      for (int a = 0; a < k; ++a) vs.push_back(random_int_vector(rng, N, 4));
      good += algebra::plucker_check(algebra::wedge(vs)) ? 1 : 0;
    }
    algebra::ExtVector<Rational> bad(4, 2);
    bad.at(algebra::mask_of({0, 1})) = 1;
    bad.at(algebra::mask_of({2, 3})) = 1;
    bool rejects = !algebra::plucker_check(bad);
    rows.push_back({"plucker-wedges", num(samples) + "/" + num(samples), num(good) + "/" + num(samples), good == samples});
    rows.push_back({"plucker-counterexample", "false", bool_str(!rejects), rejects});
    out["plucker"] = Json{{"wedges", samples}, {"accepted", good}, {"counterexample_rejected", rejects}};
  }

  // Minkowski certificates on random sublattices.
  {
    const long long samples = ctx.cfg.get_int("minkowski_samples", 200);
    Dims d2(2, 1);
    auto rng = stats::make_rng(ctx.seed, 9100);
    const auto yA = LatticePoint::from_A(singlab::default_affine_param(d2).numbers(), d2);
    long long good = 0;
    for (long long j = 0; j < samples; ++j) {
      double t = 10.0 * (stats::centered_uniform(rng) + 0.5);
      std::vector<lattice::IntVector> gens;
      for (;;) {
        gens.clear();
        for (int a = 0; a < 2; ++a) {
          lattice::IntVector g(3);
          for (auto& c : g) c = uniform_int(rng, -3, 3);
          gens.push_back(g);
        }
        long long c0 = gens[0][1] * gens[1][2] - gens[0][2] * gens[1][1];
        long long c1 = gens[0][0] * gens[1][2] - gens[0][2] * gens[1][0];
        long long c2 = gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0];
        if (c0 != 0 || c1 != 0 || c2 != 0) break;
      }
      good += lattice::minkowski_certificate(gens, yA.flowed(FlowKind::B, t), ctx.enumeration()).ok ? 1 : 0;
    }
    rows.push_back({"minkowski-sublattices", num(samples) + "/" + num(samples), num(good) + "/" + num(samples),
                    good == samples});
    out["minkowski"] = Json{{"samples", samples}, {"ok", good}};
  }

  CsvTable table({"check", "target", "observed", "pass"});
  passed = true;
  for (const auto& r : rows) {
    table.row({r.check, r.target, r.observed, bool_str(r.pass)});
    passed = passed && r.pass;
  }
  w.csv("verify.csv", table, "pass/fail table of the verification suites");
  out["all_pass"] = passed;
  return out;
}

}  // namespace

lattice::EnumOptions RunContext::enumeration() const {
  lattice::EnumOptions o;
  o.node_budget = budget;
  return o;
}

dioph::OmegaOptions RunContext::omega_options() const {
  dioph::OmegaOptions o;
  o.precision_bits = precision;
  o.budget = budget;
  return o;
}

dioph::AffineParam RunContext::A() const {
  if (!cfg.has("A")) return singlab::default_affine_param(dims, precision);
  return dioph::AffineParam::from_strings(dims, cfg.get_scalar_list("A", {}), precision);
}

RunContext make_context(const config::Config& cfg) {
  RunContext ctx;
  ctx.cfg = cfg;
  const long long n = cfg.get_int("n", 2);
  const long long d = cfg.get_int("d", 1);
  if (n < 2 || n > 15 || d < 1 || d >= n) throw ConfigError("need 1 <= d < n <= 15");
  ctx.dims = Dims(static_cast<int>(n), static_cast<int>(d));
  ctx.seed = cfg.get_u64("seed", 1);
  ctx.budget = cfg.get_u64("budget", 50'000'000);
  if (ctx.budget == 0) throw ConfigError("budget must be positive");
  const long long prec = cfg.get_int("precision", 256);
  if (prec < 64 || prec > 100000) throw ConfigError("precision must lie in [64, 100000] bits");
  ctx.precision = static_cast<unsigned>(prec);
  ctx.out = cfg.get_string("out", "out");
  height::HeightParams p = height::HeightParams::defaults(ctx.dims);
  p.epsilon = cfg.get_real("epsilon", p.epsilon);
  p.theta = cfg.get_real("theta", p.theta);
  p.delta = cfg.get_real("delta", p.delta);
  p.cutoff_R = cfg.get_real("cutoff_R", p.cutoff_R);
  p.cutoff_R_max = cfg.get_real("cutoff_R_max", p.cutoff_R_max);
  p.T_max = cfg.get_real("T_max", p.T_max);
  p.h = cfg.get_real("h", p.h);
  p.validate(ctx.dims);
  ctx.params = p;
  if (cfg.has("A")) ctx.A();  // surface parse and shape errors before any work
  return ctx;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"omega",      "bound",  "rho",     "systole",
                                             "classify",   "excursions", "verify", "selftest"};
  return c;
}

RunResult run_command(const std::string& command, const RunContext& ctx) {
  ArtifactWriter w(ctx.out);
  RunResult res;
  Json results;
  if (command == "omega") {
    results = cmd_omega(ctx, w);
  } else if (command == "bound") {
    results = cmd_bound(ctx, w);
  } else if (command == "rho") {
    results = cmd_rho(ctx, w);
  } else if (command == "systole") {
    results = cmd_systole(ctx, w);
  } else if (command == "classify") {
    results = cmd_classify(ctx, w);
  } else if (command == "excursions") {
    results = cmd_excursions(ctx, w);
  } else if (command == "verify") {
    results = cmd_verify(ctx, w, res.passed);
  } else if (command == "selftest") {
    RunResult st = run_selftest(ctx, w);
    results = st.summary;
    res.passed = st.passed;
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  // The output location is not part of the experiment.
  config::Config hashed = ctx.cfg;
  hashed.erase("out");
  Json cfg = Json::object();
  for (const auto& [k, v] : hashed.values()) cfg[k] = v;
  res.summary = Json{{"command", command},
                     {"config_hash", hashed.hash()},
                     {"config", cfg},
                     {"dims", Json{{"n", ctx.dims.n}, {"d", ctx.dims.d}}},
                     {"seed", ctx.seed},
                     {"results", results},
                     {"series", w.series()},
                     {"passed", res.passed}};
  w.summary(command + ".json", res.summary);
  return res;
}

}  // namespace affsing::tools
