#include "tumorbim/commands.hpp"

#include <filesystem>

#include "tumorbim/linear_theory.hpp"
#include "tumorbim/stokes.hpp"

namespace tumorbim {
namespace {

void log_warnings(const RunConfig& cfg, std::ostream& log) {
  for (const auto& w : cfg.warnings) log << "warning: " << w << '\n';
}

int report(const SimulationOutcome& out, const RunConfig& cfg, std::ostream& log) {
  const auto& last = out.diagnostics.empty() ? DiagnosticsRow{} : out.diagnostics.back();
  log << "steps " << out.result.steps_taken << ", t = " << last.t << ", R_eff = " << last.R_eff
      << ", shape factor = " << last.shape_factor << ", snapshots " << out.snapshots_written
      << " in " << cfg.output_dir << '\n';
  if (!out.result.completed) {
    log << "solver failure: " << out.result.failure << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

Curve initial_curve(const RunConfig& cfg) {
  return from_markers(polar_markers(cfg.n_points, cfg.R0, cfg.modes));
}

StepperOptions stepper_options(const RunConfig& cfg) {
  StepperOptions o;
  o.dt = cfg.dt;
  o.ssd_prefactor = cfg.numerics.ssd_prefactor;
  o.filters = cfg.numerics.filters;
  o.filter = cfg.numerics.filter;
  o.krasny_threshold = cfg.numerics.krasny_threshold;
  o.reproject_interval = cfg.numerics.reproject_interval;
  return o;
}

FieldSolver make_field_solver(const RunConfig& cfg) {
  FieldOptions options;
  options.nutrient = {cfg.numerics.gmres_tol_nutrient, cfg.numerics.gmres_restart,
                      cfg.numerics.gmres_max_iterations};
  options.stokes = {cfg.numerics.gmres_tol_stokes, cfg.numerics.gmres_restart,
                    cfg.numerics.gmres_max_iterations};
  options.filter = cfg.numerics.filter;
  const BendingModel bending = cfg.bending;
  const bool self_similar = cfg.self_similar;
  const int l = cfg.modes.empty() ? cfg.linear.l : cfg.modes.front().l;
  const double lambda = cfg.lambda;
  const double S_inv = cfg.S_inv;
  const double fixed_A = cfg.A;
  const BendingCoupling coupling = cfg.linear.coupling;
  return [=](const Curve& curve) {
    PhysParams params{fixed_A, lambda};
    if (self_similar) {
      const double R = geometry_stats(reconstruct(curve)).effective_radius;
      params.A = self_similar_A(R, l, lambda, S_inv, coupling);
    }
    const FieldSolution fs = solve_fields(curve, bending, params, options);
    FieldSample s;
    s.V = fs.stokes.V;
    s.A = params.A;
    s.nutrient_iterations = fs.nutrient.report.iterations;
    s.stokes_iterations = fs.stokes.report.iterations;
    return s;
  };
}

SimulationOutcome simulate(const RunConfig& cfg, bool write_files) {
  SimulationOutcome out;
  const std::filesystem::path dir = cfg.output_dir;
  const long n_steps = cfg.step_count();
  const FieldSolver solver = make_field_solver(cfg);
  Curve initial;
  try {
    initial = initial_curve(cfg);
  } catch (const Error& e) {
    out.result.failure = std::string("initial shape: ") + e.what();
    return out;
  }

  long last_written = -1;
  auto observer = [&](const StepRecord& rec) {
    DiagnosticsRow row;
    row.t = rec.t;
    row.R_eff = rec.stats.effective_radius;
    row.area = rec.stats.area;
    row.length = rec.curve->length();
    row.shape_factor = rec.shape_factor;
    row.A = rec.sample->A;
    row.gmres_nutrient_iters = rec.sample->nutrient_iterations;
    row.gmres_stokes_iters = rec.sample->stokes_iterations;
    out.diagnostics.push_back(row);
    if (!write_files) return;
    if (rec.step_index % cfg.snapshot_interval == 0 || rec.step_index == n_steps) {
      write_snapshot(dir, rec.step_index, *rec.curve, *rec.markers, rec.sample->V);
      write_diagnostics(dir / "diagnostics.csv", out.diagnostics);
      last_written = rec.step_index;
      ++out.snapshots_written;
    }
  };
  out.result = run(initial, solver, stepper_options(cfg), n_steps, observer);

  if (write_files) {
    if (!out.result.completed && last_written != out.result.steps_taken) {
      // Dump the last state that passed through the field solver.
      try {
        const MarkerCurve markers = reconstruct(out.result.last_curve);
        write_snapshot(dir, out.result.steps_taken, out.result.last_curve, markers, {});
        ++out.snapshots_written;
      } catch (const Error&) {
      }
    }
    write_diagnostics(dir / "diagnostics.csv", out.diagnostics);
  }
  return out;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  log_warnings(cfg, log);
  return report(simulate(cfg, true), cfg, log);
}

int cmd_selfsimilar(RunConfig cfg, std::ostream& log) {
  if (cfg.modes.size() != 1) {
    throw ConfigError(ConfigErrorKind::invalid_value,
                      "'modes' must contain exactly one mode for selfsimilar");
  }
  cfg.self_similar = true;
  log_warnings(cfg, log);
  return report(simulate(cfg, true), cfg, log);
}

int cmd_linear(const RunConfig& cfg, std::ostream& log) {
  const auto& lin = cfg.linear;
  const std::filesystem::path dir = cfg.output_dir;
  const int l = cfg.modes.empty() ? lin.l : cfg.modes.front().l;
  if (l < 2) throw ConfigError(ConfigErrorKind::invalid_value, "linear theory needs a mode l >= 2");

  std::vector<CsvRow> rates;
  for (double A : lin.A_values) {
    for (int i = 1; i <= lin.R_samples; ++i) {
      const double R = lin.rate_R_max * i / lin.R_samples;
      rates.push_back({A, R, radius_rate(R, A)});
    }
  }
  write_csv_atomic(dir / "growth_rate.csv", "A,R,dRdt", rates);

  if (!cfg.self_similar) {
    std::vector<CsvRow> marginal;
    for (double lambda : lin.lambdas) {
      for (int i = 0; i < lin.R_samples; ++i) {
        const double R = lin.R_min + (lin.R_max - lin.R_min) * i / (lin.R_samples - 1);
        marginal.push_back({R, lambda, marginal_S_inv(l, cfg.A, R, lambda, lin.coupling)});
      }
    }
    write_csv_atomic(dir / "marginal.csv", "R,lambda,S_M_inv", marginal);
    if (cfg.A >= 1e-3 && cfg.A < 1.0) log << "steady radius R_s(A=" << cfg.A << ") = " << steady_radius(cfg.A) << '\n';
  }

  LinearState init;
  init.R = cfg.R0;
  init.l = l;
  init.delta_over_R = cfg.modes.empty() ? 0.0 : std::abs(cfg.modes.front().amplitude) / cfg.R0;
  init.params = {cfg.A, cfg.lambda, cfg.S_inv, lin.coupling};
  const auto traj = integrate_linear(
      init, cfg.self_similar ? ASchedule::self_similar : ASchedule::constant, cfg.t_final, cfg.dt);
  std::vector<CsvRow> rows;
  for (const auto& s : traj) rows.push_back({s.t, s.R, s.delta_over_R, s.A});
  write_csv_atomic(dir / "trajectory.csv", "t,R,delta_over_R,A", rows);
  log << "linear tables written to " << cfg.output_dir << '\n';
  return kExitOk;
}

}  // namespace tumorbim
