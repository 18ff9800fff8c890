#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tumorbim/config.hpp"

using namespace tumorbim;

namespace {

const std::string kMinimal = R"({"N": 64, "dt": 0.01, "t_final": 0.5, "A": 0.5,
  "lambda": 1.5, "S_inv": 2.0, "R0": 2.0, "modes": [[3, 0.05, "cos"]]})";

ConfigErrorKind kind_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config_text(text, overrides);
  } catch (const ConfigError& e) {
    return e.kind();
  }
  FAIL("expected a ConfigError");
  return ConfigErrorKind::io;
}

std::string with(const std::string& extra) {
  return kMinimal.substr(0, kMinimal.size() - 1) + ", " + extra + "}";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal config and defaults") {
    const RunConfig c = parse_config_text(kMinimal);
    CHECK(c.n_points == 64);
    CHECK(c.step_count() == 50);
    CHECK(c.A == 0.5);
    CHECK_FALSE(c.self_similar);
    CHECK(c.bending.kind == BendingKind::uniform);
    CHECK(c.bending.S_inv == 2.0);
    CHECK(c.modes.size() == 1);
    CHECK(c.modes[0].l == 3);
    CHECK(c.modes[0].cosine);
    CHECK(c.snapshot_interval == 100);
    CHECK(c.numerics.gmres_tol_nutrient == 1e-12);
    CHECK(c.numerics.gmres_tol_stokes == 1e-11);
    CHECK(c.numerics.filter.order == 25);
    CHECK(c.numerics.filter.strength == 10.0);
    CHECK(c.numerics.reproject_interval == 50);
    CHECK(c.linear.coupling == BendingCoupling::viscosity_weighted);
    CHECK(c.output_dir == "output");
    CHECK(c.warnings.empty());
  }

  TEST_CASE("bending block") {
    const RunConfig w = parse_config_text(with(R"("bending": {"C": 0.95, "lambda_c": 1.25})"));
    CHECK(w.bending.kind == BendingKind::weakening);
    CHECK(w.bending.C == 0.95);
    CHECK(kind_of(with(R"("bending": {"kind": "weakening", "C": 0.5})")) == ConfigErrorKind::missing_field);
    CHECK(kind_of(with(R"("bending": {"C": 0.5})")) == ConfigErrorKind::missing_field);
    CHECK(kind_of(with(R"("bending": {"kind": "soft"})")) == ConfigErrorKind::invalid_enum);
    CHECK(kind_of(with(R"("bending": {"C": 1.0, "lambda_c": 1.0})")) == ConfigErrorKind::invalid_value);
  }

  TEST_CASE("self-similar A") {
    const RunConfig s = parse_config_text(with(R"("A": "self-similar")").replace(kMinimal.find("\"A\": 0.5,"), 9, ""));
    CHECK(s.self_similar);
    CHECK(kind_of(with(R"("A": "sometimes")").replace(kMinimal.find("\"A\": 0.5,"), 9, "")) ==
          ConfigErrorKind::invalid_enum);
  }

  TEST_CASE("validation errors") {
    CHECK(kind_of(with(R"("colour": 1)")) == ConfigErrorKind::unknown_key);
    CHECK(kind_of(with(R"("numerics": {"filterz": true})")) == ConfigErrorKind::unknown_key);
    CHECK(kind_of(R"({"N": 100, "dt": 0.01, "t_final": 1, "A": 0, "lambda": 1, "S_inv": 0, "R0": 1})") ==
          ConfigErrorKind::not_power_of_two);
    CHECK(kind_of(R"({"N": 64, "t_final": 1, "A": 0, "lambda": 1, "S_inv": 0, "R0": 1})") ==
          ConfigErrorKind::missing_field);
    CHECK(kind_of(R"({"N": "sixty-four", "dt": 0.01, "t_final": 1, "A": 0, "lambda": 1, "S_inv": 0, "R0": 1})") ==
          ConfigErrorKind::invalid_type);
    CHECK(kind_of(R"({"N": 64, "dt": 0.03, "t_final": 1, "A": 0, "lambda": 1, "S_inv": 0, "R0": 1})") ==
          ConfigErrorKind::invalid_value);
    CHECK(kind_of(R"({"N": 64, "dt": 0.01, "t_final": 1, "A": 0, "lambda": -1, "S_inv": 0, "R0": 1})") ==
          ConfigErrorKind::invalid_value);
    CHECK(kind_of("{not json") == ConfigErrorKind::parse);
    CHECK(kind_of(kMinimal, {"modes=[[3, 0.1, \"tan\"]]"}) == ConfigErrorKind::invalid_enum);
    CHECK(kind_of(kMinimal, {"modes=[[\"3\", 0.1]]"}) == ConfigErrorKind::invalid_type);
    CHECK(parse_config_text(kMinimal, {"modes=[[3, 0.1]]"}).modes[0].cosine);
  }

  TEST_CASE("overrides") {
    const RunConfig c = parse_config_text(kMinimal, {"lambda=0.5", "numerics.filters=false", "output_dir=out/x",
                                                     "bending.C=0.2", "bending.lambda_c=2"});
    CHECK(c.lambda == 0.5);
    CHECK_FALSE(c.numerics.filters);
    CHECK(c.output_dir == "out/x");
    CHECK(c.bending.kind == BendingKind::weakening);
    CHECK(c.bending.lambda_c == 2.0);
    CHECK(kind_of(kMinimal, {"lambda"}) == ConfigErrorKind::bad_override);
    CHECK(kind_of(kMinimal, {"lambda.x=1"}) == ConfigErrorKind::bad_override);
    CHECK(kind_of(kMinimal, {"N=48"}) == ConfigErrorKind::not_power_of_two);
  }

  TEST_CASE("file input") {
    CHECK_THROWS_AS(parse_config("/nonexistent/cfg.json"), ConfigError);
    const auto path = std::filesystem::temp_directory_path() / "tumorbim_cfg_test.json";
    std::ofstream(path) << kMinimal;
    CHECK(parse_config(path.string()).n_points == 64);
    std::filesystem::remove(path);
  }

  TEST_CASE("large amplitude warns") {
    const RunConfig c = parse_config_text(kMinimal, {"modes=[[2, 1.5, \"sin\"]]"});
    CHECK(c.warnings.size() == 1);
    CHECK_FALSE(c.modes[0].cosine);
  }
}
