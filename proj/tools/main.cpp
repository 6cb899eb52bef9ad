// Command-line front end: bound curves, spectral verification, Monte-Carlo
// trial campaigns, and canned experiment bundles, all emitted as CSV.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include <randsor/bounds.hpp>
#include <randsor/generators.hpp>
#include <randsor/solver.hpp>
#include <randsor/superop.hpp>

#include "experiments.hpp"

namespace {

using namespace randsor;
using namespace randsor::cli;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;

// Pinned presets for `reproduce`.
constexpr std::uint64_t kToySeed = 1;
constexpr double kToyKappa = 30.0;
constexpr std::uint64_t kFig2TrialSeed = 9000;
constexpr std::uint64_t kFig5LeftSeed = 11;
constexpr std::uint64_t kFig5RightSeed = 12;

struct CommonFlags {
  SystemOptions sys;
  std::string grid = "0:2:81";
  std::string out_dir = ".";
  int threads = 1;
};

void add_system_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--gen", flags.sys.gen,
                  "named generator: hilbert, parter or random");
  cmd->add_option("--matrix", flags.sys.matrix_path,
                  "dense matrix file (CSV or MatrixMarket array)");
  cmd->add_option("--method", flags.sys.method, "gauss-seidel or kaczmarz");
  cmd->add_option("--n", flags.sys.n, "columns (and rows for square problems)");
  cmd->add_option("--m", flags.sys.m, "rows for rectangular random problems");
  cmd->add_option("--kappa", flags.sys.kappa, "target condition number (random)");
  cmd->add_option("--seed", flags.sys.seed, "seed for x_star and random factors");
  cmd->add_option("--blocks", flags.sys.block_size,
                  "partition rows into blocks of this size");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--threads", flags.threads, "worker threads for fan-out");
}

Metadata system_metadata(const CommonFlags& flags, const LinearSystem& sys) {
  Metadata meta;
  if (!flags.sys.gen.empty()) meta.emplace_back("generator", flags.sys.gen);
  if (!flags.sys.matrix_path.empty()) meta.emplace_back("matrix", flags.sys.matrix_path);
  meta.emplace_back("method", to_string(sys.method));
  meta.emplace_back("m", std::to_string(sys.rows()));
  meta.emplace_back("n", std::to_string(sys.cols()));
  if (flags.sys.kappa > 0.0) meta.emplace_back("kappa", format_double(flags.sys.kappa));
  meta.emplace_back("seed", std::to_string(flags.sys.seed));
  if (flags.sys.block_size > 1)
    meta.emplace_back("blocks", std::to_string(flags.sys.block_size));
  return meta;
}

void print_ingredients(const Ingredients& ing, const OptimalOmega& opt) {
  std::printf("mu1=%s mu2=%s xi=%s\n", format_double(ing.mu1).c_str(),
              format_double(ing.mu2).c_str(), format_double(ing.xi).c_str());
  if (ing.degenerate_mu1)
    std::printf("warning: mu1 repeated within 1e-10; u1 picked by the "
                "xi-maximizing scan\n");
  std::printf("omega_star=%s c_at_omega_star=%s\n",
              format_double(opt.omega_star).c_str(),
              format_double(opt.c_at_star).c_str());
}

int cmd_bounds(const CommonFlags& flags) {
  const LinearSystem sys = build_system(flags.sys);
  const NormalizedSystem ns = normalize(sys);
  const ProjectorEnsemble ens = build_ensemble(ns, flags.sys.block_size);
  const Ingredients ing = ingredients(ens);
  const OptimalOmega opt = optimal_omega(ing);
  const std::vector<double> grid = parse_grid(flags.grid);
  BoundCurve curve = bound_curve(ing, grid);
  const bool with_rho = ens.n <= kDefaultDimCap;
  if (with_rho) curve.rho_vals = rho_curve(ens, grid, flags.threads);

  ensure_directory(flags.out_dir);
  Metadata meta = system_metadata(flags, sys);
  meta.emplace_back("omega_star", format_double(opt.omega_star));
  std::vector<std::string> header = {"omega", "b_bound", "c_bound"};
  if (with_rho) header.push_back("rho");
  CsvWriter csv(flags.out_dir + "/bounds.csv", meta, header);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row = {curve.omegas[i], curve.b_vals[i], curve.c_vals[i]};
    if (with_rho) row.push_back(curve.rho_vals[i]);
    csv.row(row);
  }

  print_ingredients(ing, opt);
  std::printf("wrote %s/bounds.csv (%zu rows%s)\n", flags.out_dir.c_str(), grid.size(),
              with_rho ? ", with rho" : "");
  return kExitOk;
}

void write_trajectories(const std::string& path, const Metadata& meta,
                        const std::vector<TrialRecord>& records) {
  CsvWriter csv(path, meta, {"trial", "iteration", "sq_error"});
  char line[96];
  for (std::size_t t = 0; t < records.size(); ++t) {
    const TrialRecord& rec = records[t];
    for (std::size_t j = 0; j < rec.sq_errors.size(); ++j) {
      std::snprintf(line, sizeof(line), "%zu,%d,%s", t,
                    static_cast<int>(j) * rec.record_every,
                    format_double(rec.sq_errors[j]).c_str());
      csv.raw_row(line);
    }
  }
}

void write_summary(const std::string& path, const Metadata& meta,
                   const std::vector<TrialRecord>& records, double b1, double c1) {
  CsvWriter csv(path, meta,
                {"iteration", "mean_sq_error", "b_bound_pow", "c_bound_pow"});
  const std::size_t len = records.front().sq_errors.size();
  const double e0 = records.front().sq_errors.front();
  const int every = records.front().record_every;
  for (std::size_t j = 0; j < len; ++j) {
    double mean = 0.0;
    for (const TrialRecord& rec : records) mean += rec.sq_errors[j];
    mean /= static_cast<double>(records.size());
    const double k = static_cast<double>(j) * every;
    csv.row({k, mean, e0 * std::pow(b1, k), e0 * std::pow(c1, k)});
  }
}

int cmd_trials(const CommonFlags& flags, double omega, bool with_optimal, int trials,
               int iters, int record_every) {
  const LinearSystem sys = build_system(flags.sys);
  const NormalizedSystem ns = normalize(sys);
  const ProjectorEnsemble ens = build_ensemble(ns, flags.sys.block_size);
  const Ingredients ing = ingredients(ens);
  const OptimalOmega opt = optimal_omega(ing);
  ensure_directory(flags.out_dir);

  std::vector<std::pair<std::string, double>> campaigns = {{"base", omega}};
  if (with_optimal) campaigns.emplace_back("optimal", opt.omega_star);

  for (const auto& [tag, w] : campaigns) {
    SolveConfig cfg;
    cfg.omega = w;
    cfg.max_iters = iters;
    cfg.record_every = record_every;
    cfg.seed = flags.sys.seed;
    const std::vector<TrialRecord> records =
        run_trials(sys, ens, cfg, trials, flags.threads);

    Metadata meta = system_metadata(flags, sys);
    meta.emplace_back("omega", format_double(w));
    meta.emplace_back("trials", std::to_string(trials));
    meta.emplace_back("iters", std::to_string(iters));
    write_trajectories(flags.out_dir + "/trajectories_" + tag + ".csv", meta, records);
    write_summary(flags.out_dir + "/summary_" + tag + ".csv", meta, records,
                  b_bound(ing, w), c_bound(ing, w));

    double final_mean = 0.0;
    for (const TrialRecord& rec : records) final_mean += rec.sq_errors.back();
    final_mean /= static_cast<double>(records.size());
    std::printf("campaign=%s omega=%s mean_sq_error_final=%s\n", tag.c_str(),
                format_double(w).c_str(), format_double(final_mean).c_str());
  }
  print_ingredients(ing, opt);
  return kExitOk;
}

struct CheckRow {
  std::string name;
  double value;
  std::string threshold;
  std::string status;  // PASS, FAIL, WARN, INFO
};

int cmd_verify(const CommonFlags& flags) {
  const LinearSystem sys = build_system(flags.sys);
  const NormalizedSystem ns = normalize(sys);
  const ProjectorEnsemble ens = build_ensemble(ns, flags.sys.block_size);
  if (ens.n > kDefaultDimCap)
    throw std::invalid_argument(
        "verification needs the dense superoperator; reduce n to at most " +
        std::to_string(kDefaultDimCap));
  const Ingredients ing = ingredients(ens);
  const bool irr = irreducible(ens);

  std::vector<CheckRow> rows;
  const auto gate = [&](bool ok) { return ok ? "PASS" : "FAIL"; };
  // Hard facts are failures; Perron-Frobenius uniqueness facts degrade to
  // warnings when the ensemble is reducible.
  const auto pf_gate = [&](bool ok) { return ok ? "PASS" : (irr ? "FAIL" : "WARN"); };

  rows.push_back({"irreducible", irr ? 1.0 : 0.0, "-", "INFO"});

  const LoewnerReport loewner = check_loewner(ens);
  rows.push_back({"loewner_lambda_min", loewner.lambda_min, ">=-1e-10",
                  gate(loewner.lambda_min >= -1e-10)});
  rows.push_back({"loewner_identity_alignment", loewner.identity_alignment,
                  ">=1-1e-6", pf_gate(loewner.identity_alignment >= 1.0 - 1e-6)});

  const DerivativeReport deriv = derivative_checks(ens);
  rows.push_back({"derivative_dev_at_0", deriv.dev0, "<=1e-4", gate(deriv.dev0 <= 1e-4)});
  rows.push_back({"derivative_dev_at_2", deriv.dev2, "<=1e-4", gate(deriv.dev2 <= 1e-4)});

  const EclipseReport eclipse = check_eclipse(ing, ens, omega_grid(0.0, 2.0, 41));
  rows.push_back({"eclipse_max_violation", eclipse.max_violation, "<=1e-10",
                  gate(eclipse.max_violation <= 1e-10)});

  std::vector<double> ts;
  for (int i = 1; i <= 9; ++i) ts.push_back(0.1 * i);
  const DominanceReport dom = check_overrelax_dominance(ens, ts);
  rows.push_back({"overrelax_max_violation", dom.max_violation, "<=1e-10",
                  gate(dom.max_violation <= 1e-10)});

  const SuperOp b_op = build_b(ens);
  const SuperOp c_op = build_c(ens);
  double eq13_dev = 0.0;
  for (double w : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75}) {
    const double via_gap = 1.0 - w * lambda1_gap(b_op, c_op, w);
    eq13_dev = std::max(eq13_dev, std::abs(via_gap - rho_value(b_op, c_op, w)));
  }
  rows.push_back({"spectral_identity_dev", eq13_dev, "<=1e-10", gate(eq13_dev <= 1e-10)});

  const SpectralReport spectral = rho(ens, 1.0);
  rows.push_back({"rho_at_1", spectral.lam_max, "-", "INFO"});
  rows.push_back({"rho_eigvec_psd_defect", spectral.psd_defect, ">=-1e-8",
                  pf_gate(spectral.psd_defect >= -1e-8)});
  rows.push_back({"rho_top_eigenvalue_simple", spectral.simple ? 1.0 : 0.0, "=1",
                  pf_gate(spectral.simple)});

  const Ingredients& i2 = ing;
  rows.push_back({"xi_above_mu1_squared", i2.xi - i2.mu1 * i2.mu1, ">=-1e-12",
                  gate(i2.xi >= i2.mu1 * i2.mu1 - 1e-12)});
  rows.push_back(
      {"xi_below_mu1", i2.mu1 - i2.xi, ">=-1e-12", gate(i2.xi <= i2.mu1 + 1e-12)});
  const double xi_closed = xi_closed_form(ns, i2.u1, i2.mu1);
  rows.push_back({"xi_closed_form_dev", std::abs(xi_closed - i2.xi), "<=1e-10",
                  gate(std::abs(xi_closed - i2.xi) <= 1e-10)});

  bool failed = false;
  for (const CheckRow& row : rows) {
    if (row.status == "FAIL") failed = true;
    std::printf("%-28s %-14s threshold=%-10s %s\n", row.name.c_str(),
                format_double(row.value).c_str(), row.threshold.c_str(),
                row.status.c_str());
  }

  if (!flags.out_dir.empty()) {
    ensure_directory(flags.out_dir);
    CsvWriter csv(flags.out_dir + "/verify.csv", system_metadata(flags, sys),
                  {"check", "value", "threshold", "status"});
    for (const CheckRow& row : rows)
      csv.raw_row(row.name + "," + format_double(row.value) + "," + row.threshold +
                  "," + row.status);
  }
  return failed ? kExitVerifyFailure : kExitOk;
}

void write_curve_csv(const std::string& path, Metadata meta,
                     const std::vector<double>& grid, const Ingredients& ing,
                     const std::vector<double>& rho_vals) {
  meta.emplace_back("omega_star", format_double(optimal_omega(ing).omega_star));
  CsvWriter csv(path, meta, {"omega", "rho", "b_bound", "c_bound"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv.row({grid[i], rho_vals[i], b_bound(ing, grid[i]), c_bound(ing, grid[i])});
}

void reproduce_curve(const std::string& out_dir, const std::string& name,
                     const LinearSystem& sys, const Metadata& meta, int grid_points,
                     int threads) {
  const ProjectorEnsemble ens = ensemble_from_system(normalize(sys));
  const Ingredients ing = ingredients(ens);
  const std::vector<double> grid = omega_grid(0.0, 2.0, grid_points);
  const std::vector<double> rho_vals = rho_curve(ens, grid, threads);
  write_curve_csv(out_dir + "/" + name + ".csv", meta, grid, ing, rho_vals);
  std::printf("wrote %s/%s.csv\n", out_dir.c_str(), name.c_str());
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir, int threads) {
  ensure_directory(out_dir);

  if (figure == "fig2") {
    const LinearSystem sys = make_random_spd(5, kToyKappa, kToySeed);
    const ProjectorEnsemble ens = ensemble_from_system(normalize(sys));
    const Ingredients ing = ingredients(ens);
    const OptimalOmega opt = optimal_omega(ing);
    Metadata meta = {{"figure", "fig2"},
                     {"generator", "random-spd"},
                     {"n", "5"},
                     {"kappa", format_double(kToyKappa)},
                     {"seed", std::to_string(kToySeed)}};

    const std::vector<double> grid = omega_grid(0.0, 2.0, 81);
    write_curve_csv(out_dir + "/fig2_curves.csv", meta, grid, ing,
                    rho_curve(ens, grid, threads));

    SolveConfig cfg;
    cfg.max_iters = 1000;
    cfg.seed = kFig2TrialSeed;
    cfg.omega = 1.0;
    const std::vector<TrialRecord> base = run_trials(sys, ens, cfg, 150, threads);
    cfg.omega = opt.omega_star;
    const std::vector<TrialRecord> fast = run_trials(sys, ens, cfg, 150, threads);

    Metadata tmeta = meta;
    tmeta.emplace_back("trials", "150");
    tmeta.emplace_back("iters", "1000");
    write_trajectories(out_dir + "/fig2_trajectories_omega1.csv", tmeta, base);
    write_trajectories(out_dir + "/fig2_trajectories_optimal.csv", tmeta, fast);

    Metadata ometa = tmeta;
    ometa.emplace_back("omega_star", format_double(opt.omega_star));
    CsvWriter overlay(out_dir + "/fig2_overlay.csv", ometa,
                      {"iteration", "mean_omega1", "mean_optimal", "b_bound_pow",
                       "c_bound_pow"});
    const double e0 = base.front().sq_errors.front();
    const double b1 = b_bound(ing, 1.0), c1 = c_bound(ing, 1.0);
    for (std::size_t j = 0; j < base.front().sq_errors.size(); ++j) {
      double m1 = 0.0, ms = 0.0;
      for (const TrialRecord& rec : base) m1 += rec.sq_errors[j];
      for (const TrialRecord& rec : fast) ms += rec.sq_errors[j];
      m1 /= 150.0;
      ms /= 150.0;
      const double k = static_cast<double>(j);
      overlay.row({k, m1, ms, e0 * std::pow(b1, k), e0 * std::pow(c1, k)});
    }
    std::printf("wrote fig2 bundle to %s (omega_star=%s)\n", out_dir.c_str(),
                format_double(opt.omega_star).c_str());
    return kExitOk;
  }

  if (figure == "fig5-left" || figure == "fig5-right") {
    const bool left = figure == "fig5-left";
    const double kappa = left ? 61705.3 : 110.2;
    const std::uint64_t seed = left ? kFig5LeftSeed : kFig5RightSeed;
    const LinearSystem sys = make_random(left ? 50 : 75, 50, kappa, seed);
    Metadata meta = {{"figure", figure},
                     {"generator", "random"},
                     {"m", std::to_string(sys.rows())},
                     {"n", "50"},
                     {"kappa", format_double(kappa)},
                     {"seed", std::to_string(seed)}};
    reproduce_curve(out_dir, left ? "fig5_left" : "fig5_right", sys, meta, 41, threads);
    return kExitOk;
  }

  if (figure == "fig6-hilbert") {
    for (int n : {2, 3, 4}) {
      Metadata meta = {{"figure", figure},
                       {"generator", "hilbert"},
                       {"n", std::to_string(n)},
                       {"seed", "0"}};
      reproduce_curve(out_dir, "fig6_hilbert_n" + std::to_string(n), make_hilbert(n),
                      meta, 81, threads);
    }
    return kExitOk;
  }

  if (figure == "fig6-parter") {
    for (int n : {5, 20, 50}) {
      Metadata meta = {{"figure", figure},
                       {"generator", "parter"},
                       {"n", std::to_string(n)},
                       {"seed", "0"}};
      reproduce_curve(out_dir, "fig6_parter_n" + std::to_string(n), make_parter(n),
                      meta, n >= 50 ? 41 : 81, threads);
    }
    return kExitOk;
  }

  throw std::invalid_argument(
      "unknown figure id '" + figure +
      "' (expected fig2, fig5-left, fig5-right, fig6-hilbert or fig6-parter)");
}

int cmd_solve(const CommonFlags& flags, double omega, int iters,
              const std::string& mode, int record_every) {
  const LinearSystem sys = build_system(flags.sys);
  const NormalizedSystem ns = normalize(sys);
  const ProjectorEnsemble ens = build_ensemble(ns, flags.sys.block_size);

  SolveConfig cfg;
  cfg.omega = omega;
  cfg.max_iters = iters;
  cfg.seed = flags.sys.seed;
  cfg.record_every = record_every;
  if (mode == "randomized") {
    cfg.mode = IterationMode::randomized;
  } else if (mode == "cyclic") {
    cfg.mode = IterationMode::cyclic_forward;
  } else {
    throw std::invalid_argument("unknown mode '" + mode +
                                "' (expected randomized or cyclic)");
  }
  const TrialRecord rec = run_trial(sys, ens, cfg);

  ensure_directory(flags.out_dir);
  Metadata meta = system_metadata(flags, sys);
  meta.emplace_back("omega", format_double(omega));
  meta.emplace_back("mode", mode);
  CsvWriter csv(flags.out_dir + "/trajectory.csv", meta, {"iteration", "sq_error"});
  for (std::size_t j = 0; j < rec.sq_errors.size(); ++j)
    csv.row({static_cast<double>(j) * record_every, rec.sq_errors[j]});

  std::printf("method=%s iters=%d omega=%s final_sq_error=%s\n",
              to_string(sys.method).c_str(), iters, format_double(omega).c_str(),
              format_double(rec.sq_errors.back()).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized Kaczmarz / Gauss-Seidel over-relaxation toolkit"};
  app.require_subcommand(1);

  CommonFlags bounds_flags;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "bound curves B/C and exact spectral radius");
  add_system_flags(bounds_cmd, bounds_flags);
  bounds_cmd->add_option("--grid", bounds_flags.grid, "omega grid start:stop:count");

  CommonFlags trials_flags;
  double trials_omega = 1.0;
  bool trials_with_optimal = false;
  int trials_count = 150, trials_iters = 1000, trials_record_every = 1;
  CLI::App* trials_cmd =
      app.add_subcommand("trials", "Monte-Carlo error-trajectory campaigns");
  add_system_flags(trials_cmd, trials_flags);
  trials_cmd->add_option("--omega", trials_omega, "relaxation parameter");
  trials_cmd->add_flag("--with-optimal", trials_with_optimal,
                       "also run the omega* campaign");
  trials_cmd->add_option("--trials", trials_count, "number of trials");
  trials_cmd->add_option("--iters", trials_iters, "iterations per trial");
  trials_cmd->add_option("--record-every", trials_record_every,
                         "trajectory thinning stride");

  CommonFlags verify_flags;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "numerical checks of the spectral facts");
  add_system_flags(verify_cmd, verify_flags);

  std::string figure;
  std::string reproduce_out = ".";
  int reproduce_threads = 1;
  CLI::App* reproduce_cmd =
      app.add_subcommand("reproduce", "canned experiment bundles as CSV");
  reproduce_cmd->add_option("--figure", figure,
                            "fig2, fig5-left, fig5-right, fig6-hilbert, fig6-parter")
      ->required();
  reproduce_cmd->add_option("--out", reproduce_out, "output directory");
  reproduce_cmd->add_option("--threads", reproduce_threads, "worker threads");

  CommonFlags solve_flags;
  double solve_omega = 1.0;
  int solve_iters = 1000, solve_record_every = 1;
  std::string solve_mode = "randomized";
  CLI::App* solve_cmd = app.add_subcommand("solve", "run one iteration trajectory");
  add_system_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--omega", solve_omega, "relaxation parameter");
  solve_cmd->add_option("--iters", solve_iters, "iterations");
  solve_cmd->add_option("--mode", solve_mode, "randomized or cyclic");
  solve_cmd->add_option("--record-every", solve_record_every, "recording stride");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (bounds_cmd->parsed()) return cmd_bounds(bounds_flags);
    if (trials_cmd->parsed())
      return cmd_trials(trials_flags, trials_omega, trials_with_optimal, trials_count,
                        trials_iters, trials_record_every);
    if (verify_cmd->parsed()) return cmd_verify(verify_flags);
    if (reproduce_cmd->parsed())
      return cmd_reproduce(figure, reproduce_out, reproduce_threads);
    if (solve_cmd->parsed())
      return cmd_solve(solve_flags, solve_omega, solve_iters, solve_mode,
                       solve_record_every);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
  return kExitOk;
}
