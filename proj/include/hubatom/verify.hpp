#pragma once

#include <string>
#include <vector>

#include "hubatom/config.hpp"

namespace hubatom {

enum class CheckStatus { pass, fail, skip };

std::string_view to_string(CheckStatus s);

/// One residual row. `relation` is one of "<=", "<", ">=", ">" and reads
/// "value relation tolerance".
struct CheckRow {
  std::string name;
  double value = 0.0;
  std::string relation = "<=";
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct VerifyOptions {
  bool naive_hs = false;  // report the unshifted HS average in the identity row
};

struct VerifyReport {
  std::vector<CheckRow> rows;

  bool passed() const;
  const CheckRow* find(std::string_view name) const;
};

/// Runs every check against the configured model (plus the model-free
/// coherent-state and spin demonstrations). Checks that do not apply to
/// the model are reported as skip.
VerifyReport run_verification(const RunConfig& config, const VerifyOptions& opts = {});

/// Names every report must contain, in report order.
const std::vector<std::string>& required_checks();

/// CSV (check,value,relation,tolerance,status,note) or a JSON array.
std::string format_report(const VerifyReport& report, OutputFormat format);

}  // namespace hubatom
