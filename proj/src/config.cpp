#include "tumorbim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tumorbim {
namespace {

using nlohmann::json;

const char* type_name(const json& v) { return v.type_name(); }

class Reader {
 public:
  Reader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) {
      throw ConfigError(ConfigErrorKind::invalid_type, where_ + " must be a JSON object");
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  bool number(const std::string& key, double& out) {
    const json* v = raw(key);
    if (v == nullptr) return false;
    if (!v->is_number()) type_error(key, "a number", *v);
    out = v->get<double>();
    if (!std::isfinite(out)) invalid(key, "must be finite");
    return true;
  }

  template <typename Int>
  bool integer(const std::string& key, Int& out) {
    const json* v = raw(key);
    if (v == nullptr) return false;
    if (!v->is_number_integer()) type_error(key, "an integer", *v);
    out = v->get<Int>();
    return true;
  }

  bool boolean(const std::string& key, bool& out) {
    const json* v = raw(key);
    if (v == nullptr) return false;
    if (!v->is_boolean()) type_error(key, "a boolean", *v);
    out = v->get<bool>();
    return true;
  }

  bool string(const std::string& key, std::string& out) {
    const json* v = raw(key);
    if (v == nullptr) return false;
    if (!v->is_string()) type_error(key, "a string", *v);
    out = v->get<std::string>();
    return true;
  }

  bool numbers(const std::string& key, std::vector<double>& out) {
    const json* v = raw(key);
    if (v == nullptr) return false;
    if (!v->is_array()) type_error(key, "an array of numbers", *v);
    out.clear();
    for (const auto& e : *v) {
      if (!e.is_number()) type_error(key, "an array of numbers", e);
      out.push_back(e.get<double>());
    }
    return true;
  }

  void require(const std::string& key, double& out) {
    if (!number(key, out)) missing(key);
  }

  [[noreturn]] void missing(const std::string& key) const {
    throw ConfigError(ConfigErrorKind::missing_field, qualify(key) + " is required");
  }
  [[noreturn]] void invalid(const std::string& key, const std::string& why) const {
    throw ConfigError(ConfigErrorKind::invalid_value, qualify(key) + " " + why);
  }
  [[noreturn]] void bad_enum(const std::string& key, const std::string& value,
                             const std::string& allowed) const {
    throw ConfigError(ConfigErrorKind::invalid_enum,
                      qualify(key) + " = \"" + value + "\"; expected one of " + allowed);
  }
  [[noreturn]] void type_error(const std::string& key, const std::string& expected,
                               const json& got) const {
    throw ConfigError(ConfigErrorKind::invalid_type,
                      qualify(key) + " must be " + expected + " (got " + type_name(got) + ")");
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError(ConfigErrorKind::unknown_key, "unknown key " + qualify(key));
      }
    }
  }

  std::string qualify(const std::string& key) const {
    return where_.empty() ? "'" + key + "'" : "'" + where_ + "." + key + "'";
  }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

void positive(Reader& r, const std::string& key, double v) {
  if (!(v > 0.0)) r.invalid(key, "must be positive");
}

std::vector<ShapeMode> read_modes(Reader& r) {
  std::vector<ShapeMode> modes;
  const json* v = r.raw("modes");
  if (v == nullptr) return modes;
  if (!v->is_array()) r.type_error("modes", "an array of [l, amplitude, \"cos\"|\"sin\"]", *v);
  for (const auto& m : *v) {
    if (!m.is_array() || m.size() < 2 || m.size() > 3 || !m[0].is_number_integer() ||
        !m[1].is_number()) {
      r.type_error("modes", "an array of [l, amplitude, \"cos\"|\"sin\"]", m);
    }
    ShapeMode mode;
    mode.l = m[0].get<int>();
    mode.amplitude = m[1].get<double>();
    if (m.size() == 3) {
      if (!m[2].is_string()) r.type_error("modes", "phase \"cos\" or \"sin\"", m[2]);
      const auto phase = m[2].get<std::string>();
      if (phase != "cos" && phase != "sin") r.bad_enum("modes", phase, "cos, sin");
      mode.cosine = phase == "cos";
    }
    if (mode.l < 1) r.invalid("modes", "mode numbers must be >= 1");
    modes.push_back(mode);
  }
  return modes;
}

void read_bending(const json& obj, RunConfig& cfg) {
  Reader r(obj, "bending");
  std::string kind;
  const bool has_kind = r.string("kind", kind);
  const bool has_c = r.number("C", cfg.bending.C);
  const bool has_lc = r.number("lambda_c", cfg.bending.lambda_c);
  if (!has_kind) kind = (has_c || has_lc) ? "weakening" : "uniform";
  if (kind == "uniform") {
    cfg.bending.kind = BendingKind::uniform;
    if (has_c || has_lc) r.invalid("C", "and lambda_c apply only to kind \"weakening\"");
  } else if (kind == "weakening") {
    cfg.bending.kind = BendingKind::weakening;
    if (!has_c) r.missing("C");
    if (!has_lc) r.missing("lambda_c");
    if (!(cfg.bending.C >= 0.0 && cfg.bending.C < 1.0)) r.invalid("C", "must lie in [0, 1)");
    positive(r, "lambda_c", cfg.bending.lambda_c);
  } else {
    r.bad_enum("kind", kind, "uniform, weakening");
  }
  r.finish();
}

void read_numerics(const json& obj, NumericsConfig& n) {
  Reader r(obj, "numerics");
  if (r.number("gmres_tol_nutrient", n.gmres_tol_nutrient)) positive(r, "gmres_tol_nutrient", n.gmres_tol_nutrient);
  if (r.number("gmres_tol_stokes", n.gmres_tol_stokes)) positive(r, "gmres_tol_stokes", n.gmres_tol_stokes);
  if (r.integer("gmres_restart", n.gmres_restart) && n.gmres_restart < 1) r.invalid("gmres_restart", "must be >= 1");
  if (r.integer("gmres_max_iterations", n.gmres_max_iterations) && n.gmres_max_iterations < 1) {
    r.invalid("gmres_max_iterations", "must be >= 1");
  }
  r.boolean("filters", n.filters);
  if (r.number("filter_strength", n.filter.strength) && n.filter.strength < 0.0) {
    r.invalid("filter_strength", "must be non-negative");
  }
  if (r.integer("filter_order", n.filter.order) && n.filter.order < 1) r.invalid("filter_order", "must be >= 1");
  if (r.number("krasny_threshold", n.krasny_threshold) && n.krasny_threshold < 0.0) {
    r.invalid("krasny_threshold", "must be non-negative");
  }
  if (r.number("ssd_prefactor", n.ssd_prefactor) && n.ssd_prefactor < 0.0) {
    r.invalid("ssd_prefactor", "must be non-negative");
  }
  if (r.integer("reproject_interval", n.reproject_interval) && n.reproject_interval < 0) {
    r.invalid("reproject_interval", "must be >= 0 (0 disables)");
  }
  r.finish();
}

void read_linear(const json& obj, LinearTableConfig& lin) {
  Reader r(obj, "linear");
  if (r.integer("l", lin.l) && (lin.l < 2 || lin.l > 63)) r.invalid("l", "must lie in [2, 63]");
  if (r.numbers("lambdas", lin.lambdas)) {
    for (double v : lin.lambdas) {
      if (!(v > 0.0)) r.invalid("lambdas", "entries must be positive");
    }
  }
  if (r.number("R_min", lin.R_min)) positive(r, "R_min", lin.R_min);
  if (r.number("R_max", lin.R_max) && !(lin.R_max > lin.R_min)) r.invalid("R_max", "must exceed R_min");
  if (r.integer("R_samples", lin.R_samples) && lin.R_samples < 2) r.invalid("R_samples", "must be >= 2");
  if (r.numbers("A_values", lin.A_values)) {
    for (double v : lin.A_values) {
      if (!(v >= 0.0)) r.invalid("A_values", "entries must be non-negative");
    }
  }
  if (r.number("rate_R_max", lin.rate_R_max)) positive(r, "rate_R_max", lin.rate_R_max);
  std::string coupling;
  if (r.string("bending_coupling", coupling)) {
    if (coupling == "viscosity_weighted") {
      lin.coupling = BendingCoupling::viscosity_weighted;
    } else if (coupling == "fixed") {
      lin.coupling = BendingCoupling::fixed;
    } else {
      r.bad_enum("bending_coupling", coupling, "viscosity_weighted, fixed");
    }
  }
  r.finish();
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(ConfigErrorKind::bad_override, "expected key=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) path.push_back(part);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i].empty()) throw ConfigError(ConfigErrorKind::bad_override, "empty key segment in '" + key + "'");
    json& child = (*node)[path[i]];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) {
      throw ConfigError(ConfigErrorKind::bad_override, "'" + path[i] + "' is not an object");
    }
    node = &child;
  }
  if (path.empty() || path.back().empty()) {
    throw ConfigError(ConfigErrorKind::bad_override, "empty key in '" + assignment + "'");
  }
  (*node)[path.back()] = value;
}

RunConfig from_json(const json& doc) {
  RunConfig cfg;
  Reader r(doc, "");

  long n = 0;
  const bool has_n = r.integer("N", n);
  long n_alias = 0;
  const bool has_alias = r.integer("n_points", n_alias);
  if (has_n && has_alias) r.invalid("n_points", "conflicts with 'N'; give only one");
  if (!has_n && !has_alias) r.missing("N");
  n = has_n ? n : n_alias;
  if (n < 8 || !is_power_of_two(static_cast<std::size_t>(n))) {
    throw ConfigError(ConfigErrorKind::not_power_of_two,
                      "'N' = " + std::to_string(n) + " must be a power of two >= 8");
  }
  cfg.n_points = static_cast<std::size_t>(n);

  r.require("dt", cfg.dt);
  positive(r, "dt", cfg.dt);
  r.require("t_final", cfg.t_final);
  if (cfg.t_final < 0.0) r.invalid("t_final", "must be non-negative");
  if (r.integer("snapshot_interval", cfg.snapshot_interval) && cfg.snapshot_interval < 1) {
    r.invalid("snapshot_interval", "must be >= 1");
  }

  const json* a = r.raw("A");
  if (a == nullptr) r.missing("A");
  if (a->is_string()) {
    const auto s = a->get<std::string>();
    if (s != "self-similar") r.bad_enum("A", s, "a number or \"self-similar\"");
    cfg.self_similar = true;
  } else if (a->is_number()) {
    cfg.A = a->get<double>();
    if (!(cfg.A >= 0.0)) r.invalid("A", "must be non-negative");
  } else {
    r.type_error("A", "a number or \"self-similar\"", *a);
  }
  r.require("lambda", cfg.lambda);
  positive(r, "lambda", cfg.lambda);
  r.require("S_inv", cfg.S_inv);
  if (cfg.S_inv < 0.0) r.invalid("S_inv", "must be non-negative");
  r.require("R0", cfg.R0);
  positive(r, "R0", cfg.R0);
  cfg.modes = read_modes(r);
  for (const auto& m : cfg.modes) {
    if (std::abs(m.amplitude) > 0.5 * cfg.R0) {
      cfg.warnings.push_back("mode " + std::to_string(m.l) +
                             " amplitude exceeds half the base radius");
    }
  }
  if (cfg.self_similar && cfg.modes.size() != 1) {
    r.invalid("modes", "must contain exactly one mode when A is \"self-similar\"");
  }

  if (const json* b = r.raw("bending")) read_bending(*b, cfg);
  cfg.bending.S_inv = cfg.S_inv;
  if (const json* nm = r.raw("numerics")) read_numerics(*nm, cfg.numerics);
  if (const json* lin = r.raw("linear")) read_linear(*lin, cfg.linear);
  r.string("output_dir", cfg.output_dir);
  r.finish();
  cfg.step_count();  // validates t_final / dt
  return cfg;
}

}  // namespace

const char* to_string(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::io: return "io error";
    case ConfigErrorKind::parse: return "parse error";
    case ConfigErrorKind::unknown_key: return "unknown key";
    case ConfigErrorKind::missing_field: return "missing field";
    case ConfigErrorKind::invalid_enum: return "invalid enum";
    case ConfigErrorKind::invalid_type: return "invalid type";
    case ConfigErrorKind::invalid_value: return "invalid value";
    case ConfigErrorKind::not_power_of_two: return "not a power of two";
    case ConfigErrorKind::bad_override: return "bad override";
  }
  return "config error";
}

long RunConfig::step_count() const {
  const double ratio = t_final / dt;
  const long steps = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-6) {
    throw ConfigError(ConfigErrorKind::invalid_value,
                      "'t_final' must be an integer multiple of 'dt'");
  }
  return steps;
}

RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError(ConfigErrorKind::parse, "configuration is not valid JSON");
  if (!doc.is_object()) throw ConfigError(ConfigErrorKind::invalid_type, "top level must be a JSON object");
  for (const auto& o : overrides) apply_override(doc, o);
  return from_json(doc);
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigErrorKind::io, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), overrides);
}

}  // namespace tumorbim
