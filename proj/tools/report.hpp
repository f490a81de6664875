#pragma once

#include "run_config.hpp"

#include "flatzeta/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace flatzeta::cli {

using json = nlohmann::ordered_json;

json params_json(const FamilyParams& p);
json regime_json(const Regime& r);
json check_json(const VerificationReport& r, bool timing);

struct CsvRow {
  double sigma, X, Z, scaled, err;
};

/// Header `sigma,X,Z,scaled,err`, numbers printed with %.17g, LF endings.
std::string csv_text(const std::vector<CsvRow>& rows);

/// RFC 4180 quoting for a single field.
std::string csv_field(const std::string& s);

struct Series {
  std::vector<double> x, y;
  std::string label;
};

/// A small line plot: one or more series and an optional horizontal target.
std::string svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, std::optional<double> target = std::nullopt);

void write_file(const std::string& path, const std::string& content);

}  // namespace flatzeta::cli
