#include <fstream>
#include <sstream>

#include "hubatom/config.hpp"
#include "hubatom/errors.hpp"

namespace hubatom {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ConfigError(std::string("field '") + what + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + what + "' must be an integer");
  return v.get<int>();
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig cfg;
  auto& m = cfg.model;

  const auto& stats = require(j, "statistics");
  if (stats == "fermion") {
    m.statistics = Statistics::fermion;
  } else if (stats == "boson") {
    m.statistics = Statistics::boson;
  } else {
    throw ConfigError("statistics must be \"fermion\" or \"boson\"");
  }

  const auto& levels = require(j, "levels");
  if (!levels.is_array()) throw ConfigError("field 'levels' must be an array");
  for (const auto& l : levels) {
    if (!l.is_object()) throw ConfigError("each level must be an object {label, energy}");
    const auto& label = require(l, "label");
    if (!label.is_string()) throw ConfigError("level label must be a string");
    m.levels.push_back({label.get<std::string>(), number(require(l, "energy"), "energy")});
  }
  m.U = number(require(j, "U"), "U");
  m.beta = number(require(j, "beta"), "beta");
  m.mu = number(require(j, "mu"), "mu");

  if (j.contains("truncation")) {
    const auto& t = j.at("truncation");
    if (!t.is_object()) throw ConfigError("field 'truncation' must be an object");
    if (t.contains("n_max_per_level")) {
      cfg.truncation.n_max_per_level = integer(t.at("n_max_per_level"), "n_max_per_level");
    }
    if (t.contains("N_max")) {
      const auto& n = t.at("N_max");
      if (n == "auto") {
        cfg.truncation.n_max.reset();
      } else {
        cfg.truncation.n_max = integer(n, "N_max");
      }
    }
    if (t.contains("tail_tol")) cfg.truncation.tail_tol = number(t.at("tail_tol"), "tail_tol");
  }

  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("field 'tolerances' must be an object");
    auto& tol = cfg.tolerances;
    if (t.contains("hs_rel_tol")) tol.hs_rel_tol = number(t.at("hs_rel_tol"), "hs_rel_tol");
    if (t.contains("oracle_rel_tol")) tol.oracle_rel_tol = number(t.at("oracle_rel_tol"), "oracle_rel_tol");
    if (t.contains("quad_rel_tol")) tol.quad_rel_tol = number(t.at("quad_rel_tol"), "quad_rel_tol");
    for (double v : {tol.hs_rel_tol, tol.oracle_rel_tol, tol.quad_rel_tol}) {
      if (!(v > 0.0 && v < 1.0)) throw ConfigError("tolerances must lie in (0, 1)");
    }
  }
  return cfg;
}

RunConfig parse_run_config_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(j);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config_text(buf.str());
}

nlohmann::ordered_json to_json(const ModelSpec& model, const TruncationPolicy& trunc) {
  nlohmann::ordered_json j;
  j["statistics"] = std::string(to_string(model.statistics));
  j["levels"] = nlohmann::ordered_json::array();
  for (const auto& l : model.levels) j["levels"].push_back({{"label", l.label}, {"energy", l.energy}});
  j["U"] = model.U;
  j["beta"] = model.beta;
  j["mu"] = model.mu;
  nlohmann::ordered_json t;
  t["n_max_per_level"] = trunc.n_max_per_level;
  if (trunc.n_max) {
    t["N_max"] = *trunc.n_max;
  } else {
    t["N_max"] = "auto";
  }
  t["tail_tol"] = trunc.tail_tol;
  j["truncation"] = t;
  return j;
}

nlohmann::ordered_json to_json(const RunConfig& config) {
  auto j = to_json(config.model, config.truncation);
  j["tolerances"] = {{"hs_rel_tol", config.tolerances.hs_rel_tol},
                     {"oracle_rel_tol", config.tolerances.oracle_rel_tol},
                     {"quad_rel_tol", config.tolerances.quad_rel_tol}};
  return j;
}

}  // namespace hubatom
