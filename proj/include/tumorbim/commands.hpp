#pragma once

// Experiment drivers behind the tumorsim subcommands.

#include <ostream>
#include <vector>

#include "tumorbim/config.hpp"
#include "tumorbim/evolver.hpp"
#include "tumorbim/output.hpp"

namespace tumorbim {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSolver = 3 };

Curve initial_curve(const RunConfig& cfg);
StepperOptions stepper_options(const RunConfig& cfg);

/// Nutrient + Stokes solve returning V. In self-similar mode A is recomputed
/// from the effective radius of the curve it is handed.
FieldSolver make_field_solver(const RunConfig& cfg);

struct SimulationOutcome {
  RunResult result;
  std::vector<DiagnosticsRow> diagnostics;
  long snapshots_written = 0;
};

/// Runs the configured evolution; with write_files the snapshots and
/// diagnostics go to cfg.output_dir.
SimulationOutcome simulate(const RunConfig& cfg, bool write_files);

int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_selfsimilar(RunConfig cfg, std::ostream& log);
int cmd_linear(const RunConfig& cfg, std::ostream& log);

}  // namespace tumorbim
