#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hubatom/model.hpp"

namespace hubatom {

struct Tolerances {
  double hs_rel_tol = 1e-10;
  double oracle_rel_tol = 1e-12;
  double quad_rel_tol = 1e-13;

  bool operator==(const Tolerances&) const = default;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path;  // empty = stdout
};

/// Everything one CLI invocation needs: the model, its truncation, the
/// verification tolerances and where output goes.
struct RunConfig {
  ModelSpec model;
  TruncationPolicy truncation;
  Tolerances tolerances;
  OutputSpec output;
};

/// Parses the model JSON object
///   {"statistics":"fermion|boson","levels":[{"label":"a","energy":0.0},...],
///    "U":1.0,"beta":1.0,"mu":0.0,
///    "truncation":{"n_max_per_level":6,"N_max":"auto","tail_tol":1e-12},
///    "tolerances":{"hs_rel_tol":1e-10,"oracle_rel_tol":1e-12,"quad_rel_tol":1e-13}}
/// "truncation" and "tolerances" are optional. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig parse_run_config_text(std::string_view text);
RunConfig load_run_config(const std::string& path);

nlohmann::ordered_json to_json(const ModelSpec& model, const TruncationPolicy& trunc);
nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace hubatom
