#pragma once

#include "flatzeta/funcs.hpp"
#include "flatzeta/model.hpp"

#include <optional>
#include <set>
#include <string>

namespace flatzeta::cli {

struct ScheduleSpec {
  double X_start = 0.125;
  double ratio = 0.5;
  int count = 14;

  SigmaSchedule build(int b) const;
  std::string str() const;
};

/// Parses "geo:X0,ratio,count".
ScheduleSpec parse_schedule(const std::string& text);

struct RunConfig {
  FamilyParams params;
  std::optional<RegimeKind> regime_override;
  ScheduleSpec schedule;
  NumericConfig numeric;
  BumpSpec bump;
  std::string out_dir;
  std::set<std::string> formats{"csv", "json", "svg"};

  void validate() const;
};

/// Named parameter sets: supercritical, critical, greenblatt, monomial.
RunConfig preset(const std::string& name);

/// Applies key=value lines on top of `base`. Blank lines and lines starting
/// with '#' are skipped. Throws ConfigError on unknown keys or bad values.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Serializes the keys understood by parse_config_text.
std::string to_config_text(const RunConfig& cfg);

/// Applies a single key=value assignment.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

std::set<std::string> parse_formats(const std::string& text);
RegimeKind parse_regime(const std::string& text);

}  // namespace flatzeta::cli
