#pragma once

// Run configuration: one JSON object, validated strictly (unknown keys are
// errors). The schema is documented in README.md.

#include <string>
#include <vector>

#include "tumorbim/curve.hpp"
#include "tumorbim/error.hpp"
#include "tumorbim/linear_theory.hpp"
#include "tumorbim/membrane.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim {

enum class ConfigErrorKind {
  io,
  parse,
  unknown_key,
  missing_field,
  invalid_enum,
  invalid_type,
  invalid_value,
  not_power_of_two,
  bad_override,
};

const char* to_string(ConfigErrorKind kind);

class ConfigError : public Error {
 public:
  ConfigError(ConfigErrorKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ConfigErrorKind kind() const noexcept { return kind_; }

 private:
  ConfigErrorKind kind_;
};

struct NumericsConfig {
  double gmres_tol_nutrient = 1e-12;
  double gmres_tol_stokes = 1e-11;
  int gmres_restart = 200;
  int gmres_max_iterations = 500;
  bool filters = true;
  FilterParams filter;
  double krasny_threshold = kDefaultKrasnyThreshold;
  double ssd_prefactor = 1.0;
  int reproject_interval = 50;
};

struct LinearTableConfig {
  int l = 3;
  std::vector<double> lambdas{0.5, 1.5, 2.5};
  double R_min = 1.5;
  double R_max = 5.0;
  int R_samples = 141;
  std::vector<double> A_values{0.0, 0.25, 0.5, 0.75, 1.0};
  double rate_R_max = 6.0;
  BendingCoupling coupling = BendingCoupling::viscosity_weighted;
};

struct RunConfig {
  std::size_t n_points = 256;
  double dt = 1e-2;
  double t_final = 1.0;
  long snapshot_interval = 100;
  bool self_similar = false;  // A chosen every step from the current radius
  double A = 0.0;
  double lambda = 1.0;
  double S_inv = 0.0;
  BendingModel bending;       // S_inv mirrored from above
  double R0 = 1.0;
  std::vector<ShapeMode> modes;
  NumericsConfig numerics;
  LinearTableConfig linear;
  std::string output_dir = "output";
  std::vector<std::string> warnings;

  long step_count() const;
};

/// Parse and validate. overrides are "dotted.key=value" strings applied to the
/// JSON document before validation; the value is read as JSON when it parses,
/// otherwise as a string.
RunConfig parse_config_text(const std::string& text,
                            const std::vector<std::string>& overrides = {});
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace tumorbim
