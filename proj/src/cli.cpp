#include "gll/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gll/cache.hpp"
#include "gll/gl3d.hpp"
#include "gll/report.hpp"
#include "gll/version.hpp"

namespace gll {

namespace {

struct Common {
  std::string out_dir = "gll-out";
  std::string cache_dir;
  bool no_cache = false;
  int jobs = 0;
};

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    if (!s.empty()) s += " ";
    s += a;
  }
  return s;
}

void emit(const Common& c, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(c.out_dir);
  write_file(c.out_dir + "/" + name, content);
}

void write_manifest(const Common& c, RunManifest m, double wall, const ResultCache& cache) {
  m.wall_seconds = wall;
  m.cache_hits = cache.hits;
  m.cache_misses = cache.misses;
  m.version = kVersion;
  emit(c, "manifest.json", m.to_json());
}

std::string min_key(const char* op, double b, double R, int counts, const SolverConfig& cfg) {
  std::ostringstream k;
  k << op << "|v=" << kVersion << "|b=" << hexfloat(b) << "|R=" << hexfloat(R)
    << "|n=" << counts << "|tol=" << hexfloat(cfg.grad_tolerance)
    << "|maxit=" << cfg.max_iterations << "|restarts=" << cfg.restarts << "|seed=" << cfg.seed
    << "|rule=" << (cfg.step_rule == StepRule::AdaptiveTwoPoint ? "bb" : "fixed");
  return k.str();
}

// Cacheable scalar view of a minimization; the field itself is recomputed
// when a caller needs it.
MinResult cached_minimize(ResultCache& cache, const char* op, double b, double R, int counts,
                          const SolverConfig& cfg,
                          MinResult (*compute)(double, double, int, const SolverConfig&)) {
  const std::string key = min_key(op, b, R, counts, cfg);
  if (cache.enabled()) {
    if (auto hit = cache.lookup(key)) {
      MinResult r;
      r.value = (*hit)["value"];
      r.breakdown.kinetic_raw = (*hit)["kinetic"];
      r.breakdown.mass = (*hit)["mass"];
      r.breakdown.quartic = (*hit)["quartic"];
      r.breakdown.total = (*hit)["total"];
      r.breakdown.b = b;
      r.residual = (*hit)["residual"];
      r.iterations = static_cast<int>((*hit)["iterations"]);
      r.converged = (*hit)["converged"] != 0.0;
      r.provenance.b = b;
      r.provenance.R = R;
      r.provenance.L = (*hit)["L"];
      r.provenance.counts = {counts, counts, counts};
      r.provenance.seed = static_cast<std::uint64_t>((*hit)["seed"]);
      r.provenance.grad_tolerance = cfg.grad_tolerance;
      return r;
    }
  }
  MinResult r = compute(b, R, counts, cfg);
  if (cache.enabled()) {
    cache.store(key, {{"value", r.value},
                      {"kinetic", r.breakdown.kinetic_raw},
                      {"mass", r.breakdown.mass},
                      {"quartic", r.breakdown.quartic},
                      {"total", r.breakdown.total},
                      {"residual", r.residual},
                      {"iterations", static_cast<double>(r.iterations)},
                      {"converged", r.converged ? 1.0 : 0.0},
                      {"L", r.provenance.L},
                      {"seed", static_cast<double>(r.provenance.seed)}});
  }
  return r;
}

int run_parsed(const std::string& sub, const Common& common, RunManifest& manifest,
               ResultCache& cache, const std::map<std::string, std::string>& params,
               SolverConfig& solver, double b, double R, double L, int counts, int k_eigs,
               int n_quanta, std::vector<double> b_list, std::vector<double> R_list,
               std::vector<int> n_list, std::array<int, 3> tiles, const std::string& suite,
               const std::string& in_path, const std::string& format,
               const std::string& out_path) {
  (void)params;
  if (sub == "m0" || sub == "M0" || sub == "quotient") {
    auto fn = sub == "m0" ? &ground_energy_2d : sub == "M0" ? &ground_energy_3d
                                                            : &l4_quotient_minimum;
    MinResult r = common.no_cache ? fn(b, R, counts, solver)
                                  : cached_minimize(cache, sub.c_str(), b, R, counts, solver, fn);
    emit(common, sub + ".csv", min_result_table(sub, {r}).to_string());
    std::cout << sub << " b=" << format_double(b) << " R=" << format_double(R)
              << " value=" << format_double(r.value) << " residual=" << format_double(r.residual)
              << " iterations=" << r.iterations << " converged=" << r.converged << "\n";
    return 0;
  }

  if (sub == "g") {
    GridRule rule;
    rule.target_spacing = L;  // --h travels in the L slot
    if (R_list.empty()) R_list = {8.0, 12.0, 16.0};
    GEstimate est = estimate_g(b, R_list, rule, solver);
    emit(common, "g.csv", g_estimate_table(est).to_string());
    std::vector<std::array<double, 2>> pts;
    for (auto& [Rv, y] : est.values) pts.push_back({Rv, y});
    emit(common, "g.plotdata", plotdata({{"m0_over_R2", pts}}));
    std::cout << "g b=" << format_double(b) << " extrapolated_g=" << format_double(est.extrapolated_g)
              << " fitted_C=" << format_double(est.fitted_C)
              << " fit_residual=" << format_double(est.fit_residual) << "\n";
    return 0;
  }

  if (sub == "spectrum2d" || sub == "spectrum3d" || sub == "lll") {
    const double Rq = std::sqrt(2.0 * std::numbers::pi * n_quanta);
    EigOptions opts;
    opts.seed = solver.seed;
    if (sub == "lll") {
      const auto basis = lll_basis_cached(Rq, counts, 0.5, opts);
      std::cout << "lll n=" << n_quanta << " dimension=" << basis->dimension
                << " max_eigenvalue_deviation=" << format_double(basis->max_eigenvalue_deviation)
                << "\n";
      CsvTable t;
      t.header = {"member", "eigenvalue"};
      for (int i = 0; i < basis->dimension; ++i)
        t.rows.push_back({std::to_string(i + 1), format_double(basis->eigenvalues[i])});
      emit(common, "lll.csv", t.to_string());
      return 0;
    }
    Spectrum s = sub == "spectrum2d" ? spectrum_2d(Rq, counts, k_eigs, opts)
                                     : spectrum_3d(Rq, L, counts, k_eigs, opts);
    emit(common, sub + ".csv", spectrum_table(s).to_string());
    std::cout << sub << " n=" << n_quanta << " k=" << k_eigs << " mu1="
              << format_double(s.eigenvalues.front()) << " clusters=" << s.clusters.size() << "\n";
    return 0;
  }

  if (sub == "abrikosov") {
    const double Rq = std::sqrt(2.0 * std::numbers::pi * n_quanta);
    const auto basis = lll_basis_cached(Rq, counts, 0.5, EigOptions{.seed = solver.seed});
    AbrikosovResult r = abrikosov_minimum(*basis, solver);
    emit(common, "abrikosov.csv", abrikosov_table({r}).to_string());
    std::cout << "abrikosov n=" << n_quanta << " cR=" << format_double(r.value)
              << " cR_over_R2=" << format_double(r.value / (Rq * Rq))
              << " defect=" << format_double(r.stationarity_defect) << "\n";
    return 0;
  }

  if (sub == "eab") {
    GridRule rule{0.125, 15, 512};
    AbrikosovEstimate est =
        abrikosov_constant_estimate(n_list, counts, b_list, R_list, rule, solver);
    CsvTable t;
    t.header = {"n", "R", "cR_over_R2", "extrapolated_EAb", "cross_check_EAb"};
    std::vector<std::array<double, 2>> pts;
    for (std::size_t i = 0; i < est.n_list.size(); ++i) {
      t.rows.push_back({std::to_string(est.n_list[i]), format_double(est.R_list[i]),
                        format_double(est.c_over_R2[i]), format_double(est.extrapolated_EAb),
                        format_double(est.cross_check_EAb)});
      pts.push_back({est.R_list[i], est.c_over_R2[i]});
    }
    emit(common, "eab.csv", t.to_string());
    emit(common, "eab.plotdata", plotdata({{"cR_over_R2", pts}}));
    std::cout << "eab extrapolated=" << format_double(est.extrapolated_EAb)
              << " cross_check=" << format_double(est.cross_check_EAb) << "\n";
    return 0;
  }

  if (sub == "verify") {
    VerifyConfig vc;
    vc.solver = solver;
    SweepReport sweep;
    auto add = [&](InequalityReport r) {
      std::cout << (r.holds ? "[ok]  " : "[FAIL] ") << r.name << " lhs="
                << format_double(r.lhs) << " rhs=" << format_double(r.rhs) << "\n";
      sweep.aggregate_pass = sweep.aggregate_pass && r.holds;
      sweep.reports.push_back(std::move(r));
    };
    const std::vector<double> Rs = R_list.empty() ? std::vector<double>{8.0, 12.0} : R_list;
    if (suite == "lemmas" || suite == "all") {
      for (double Rv : Rs) {
        add(check_lem1(b, Rv, vc));
        add(check_lem2(b, Rv, vc));
        add(check_L4_bounds(b, Rv, vc));
        const int n3 = vc.rule_3d.counts_for(Rv, Bc::Dirichlet);
        add(check_virial(ground_energy_3d(b, Rv, n3, vc.solver)));
      }
    }
    if (suite == "g" || suite == "all")
      add(check_g_bounds(b_list.empty() ? std::vector<double>{0.5, 0.7, 0.9} : b_list, vc));
    if (suite == "nf" || suite == "all")
      add(check_nf(b, R_list.empty() ? std::vector<double>{8.0, 12.0, 16.0} : R_list, vc));
    if (suite == "ka" || suite == "all") {
      for (int n : n_list.empty() ? std::vector<int>{2, 4} : n_list)
        add(check_ka(b, n, counts, vc));
    }
    if (suite == "gl3d" || suite == "all") {
      Gl3dConfig gc;
      gc.solver = solver;
      const std::vector<double> bs =
          b_list.empty() ? std::vector<double>{0.85, 0.9, 0.95} : b_list;
      add(check_thm_l4(bs, gc));
      add(check_thm_l2(bs, gc));
    }
    emit(common, "verify.json", sweep.to_json());
    std::cout << "aggregate_pass=" << (sweep.aggregate_pass ? 1 : 0) << "\n";
    return sweep.aggregate_pass ? 0 : 1;
  }

  if (sub == "gl3d") {
    const double Rq = std::sqrt(2.0 * std::numbers::pi * n_quanta);
    const double Lq = L > 0.0 ? L : Rq;
    MinResult r = solve_periodic_gl({b, Rq, Lq}, {counts, counts, k_eigs}, solver);
    CellStats stats = cell_statistics(r, tiles);
    emit(common, "gl3d.csv", min_result_table("gl3d", {r}).to_string());
    emit(common, "gl3d_cells.csv", cell_stats_table(stats).to_string());
    std::cout << "gl3d b=" << format_double(b) << " value=" << format_double(r.value)
              << " mean_sq=" << format_double(stats.global_mean_sq)
              << " mean_quartic=" << format_double(stats.global_mean_quartic)
              << " max_x3_variation=" << format_double(stats.max_x3_variation) << "\n";
    return 0;
  }

  if (sub == "report") {
    std::ifstream is(in_path);
    if (!is) throw IoError("report: cannot read " + in_path);
    nlohmann::json j;
    is >> j;
    if (format == "csv") {
      CsvTable t;
      t.header = {"name", "lhs", "rhs", "slack_used", "holds"};
      for (const auto& r : j.at("reports"))
        t.rows.push_back({r.at("name").get<std::string>(),
                          format_double(r.at("lhs").get<double>()),
                          format_double(r.at("rhs").get<double>()),
                          format_double(r.at("slack_used").get<double>()),
                          r.at("holds").get<bool>() ? "1" : "0"});
      write_file(out_path, t.to_string());
    } else if (format == "plotdata") {
      std::vector<std::pair<std::string, std::vector<std::array<double, 2>>>> series;
      int idx = 0;
      for (const auto& r : j.at("reports")) {
        std::vector<std::array<double, 2>> pts{{static_cast<double>(idx), r.at("lhs").get<double>()},
                                               {static_cast<double>(idx), r.at("rhs").get<double>()}};
        series.emplace_back(r.at("name").get<std::string>(), pts);
        ++idx;
      }
      write_file(out_path, plotdata(series));
    } else if (format == "json") {
      write_file(out_path, j.dump(2));
    } else {
      throw IoError("report: unknown format " + format);
    }
    std::cout << "report written to " << out_path << "\n";
    return 0;
  }

  std::cerr << "unknown subcommand " << sub << "\n";
  return 2;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
  CLI::App app{"Reduced Ginzburg-Landau lattice toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  if (const char* env = std::getenv("GLL_CACHE_DIR")) common.cache_dir = env;
  app.add_option("--out-dir", common.out_dir, "output directory");
  app.add_option("--cache-dir", common.cache_dir, "result cache directory");
  app.add_flag("--no-cache", common.no_cache, "bypass the result cache");
  app.add_option("--jobs", common.jobs, "worker threads for the kernels");

  SolverConfig solver;
  double b = 0.9, R = 8.0, L = 0.0, h = 0.25;
  int counts = 48, k_eigs = 6, n_quanta = 1;
  std::vector<double> b_list, R_list;
  std::vector<int> n_list;
  std::array<int, 3> tiles{2, 2, 2};
  std::string suite = "all", in_path, format = "csv", out_path = "report.csv";

  auto add_solver = [&](CLI::App* s) {
    s->add_option("--seed", solver.seed, "rng seed");
    s->add_option("--tol", solver.grad_tolerance, "gradient tolerance");
    s->add_option("--max-iter", solver.max_iterations, "iteration budget");
    s->add_option("--restarts", solver.restarts, "random restarts");
  };

  CLI::App* c_m0 = app.add_subcommand("m0", "2D Dirichlet ground energy");
  CLI::App* c_M0 = app.add_subcommand("M0", "3D Dirichlet ground energy");
  CLI::App* c_q = app.add_subcommand("quotient", "L4-normalized quotient minimum");
  for (CLI::App* s : {c_m0, c_M0, c_q}) {
    s->add_option("--b", b)->required();
    s->add_option("--R", R)->required();
    s->add_option("--n", counts, "sites per axis");
    add_solver(s);
  }

  CLI::App* c_g = app.add_subcommand("g", "thermodynamic limit of m0/R^2");
  c_g->add_option("--b", b)->required();
  c_g->add_option("--R-list", R_list, "increasing R values")->delimiter(',');
  c_g->add_option("--h-target", h, "target grid spacing");
  add_solver(c_g);

  CLI::App* c_s2 = app.add_subcommand("spectrum2d", "quasi-periodic Landau spectrum");
  CLI::App* c_s3 = app.add_subcommand("spectrum3d", "direct-sum 3D spectrum");
  CLI::App* c_lll = app.add_subcommand("lll", "lowest-level basis diagnostics");
  for (CLI::App* s : {c_s2, c_s3, c_lll}) {
    s->add_option("--n-quanta", n_quanta)->required();
    s->add_option("--grid", counts, "sites per axis");
    s->add_option("--seed", solver.seed);
  }
  c_s2->add_option("--k", k_eigs);
  c_s3->add_option("--k", k_eigs);
  c_s3->add_option("--L", L, "box height")->required();

  CLI::App* c_ab = app.add_subcommand("abrikosov", "lowest-level quartic minimum c(R)");
  c_ab->add_option("--n-quanta", n_quanta)->required();
  c_ab->add_option("--grid", counts);
  add_solver(c_ab);

  CLI::App* c_eab = app.add_subcommand("eab", "Abrikosov constant, both limits");
  c_eab->add_option("--n-list", n_list)->delimiter(',');
  c_eab->add_option("--grid", counts);
  c_eab->add_option("--b-list", b_list)->delimiter(',');
  c_eab->add_option("--R-list", R_list)->delimiter(',');
  add_solver(c_eab);

  CLI::App* c_v = app.add_subcommand("verify", "inequality suites");
  c_v->add_option("--suite", suite, "lemmas|g|nf|ka|gl3d|all");
  c_v->add_option("--b", b);
  c_v->add_option("--b-list", b_list)->delimiter(',');
  c_v->add_option("--R-list", R_list)->delimiter(',');
  c_v->add_option("--n-list", n_list)->delimiter(',');
  c_v->add_option("--grid", counts);
  add_solver(c_v);

  CLI::App* c_3d = app.add_subcommand("gl3d", "frozen-field periodic minimizer + cells");
  c_3d->add_option("--b", b)->required();
  c_3d->add_option("--n-quanta", n_quanta);
  c_3d->add_option("--L", L);
  c_3d->add_option("--grid", counts, "cross-section sites per axis");
  c_3d->add_option("--grid-z", k_eigs, "axial sites");
  c_3d->add_option("--tiles", tiles, "partition tiling");
  add_solver(c_3d);

  CLI::App* c_rep = app.add_subcommand("report", "reformat saved results");
  c_rep->add_option("--in", in_path)->required();
  c_rep->add_option("--format", format, "csv|json|plotdata");
  c_rep->add_option("--out", out_path);

  std::vector<std::string> argv_vec(args.rbegin(), args.rend());
  try {
    app.parse(argv_vec);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (common.jobs > 0) kernels::set_threads(common.jobs);

  const auto t0 = std::chrono::steady_clock::now();
  ResultCache cache(common.no_cache ? std::string{} : common.cache_dir);

  RunManifest manifest;
  CLI::App* sub = app.get_subcommands().front();
  manifest.command = sub->get_name();
  manifest.args = args;
  auto put = [&](const std::string& k, const std::string& v) { manifest.params[k] = v; };
  put("seed", std::to_string(solver.seed));
  put("tol", format_double(solver.grad_tolerance));
  put("max_iter", std::to_string(solver.max_iterations));
  put("restarts", std::to_string(solver.restarts));
  put("grid", std::to_string(counts));
  put("jobs", std::to_string(common.jobs));

  // the g subcommand funnels its spacing knob through the L slot
  if (sub->get_name() == "g") L = h;

  try {
    const int rc = run_parsed(sub->get_name(), common, manifest, cache, manifest.params, solver, b,
                              R, L, counts, k_eigs, n_quanta, b_list, R_list, n_list, tiles, suite,
                              in_path, format, out_path);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(common, manifest, wall, cache);
    return rc;
  } catch (const InvalidCounts& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonQuantizedFlux& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gll
