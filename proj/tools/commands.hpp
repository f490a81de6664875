#pragma once

#include "run_config.hpp"

#include "flatzeta/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace flatzeta::cli {

enum ExitCode { kPass = 0, kFailure = 1, kConfigError = 2 };

struct ComputeOptions {
  bool weighted = false;
  int threads = 0;
};

struct VerifyOptions {
  std::string suite = "all";
  Targets expect;
  int landau_terms = 80;
  bool timing = true;
  int threads = 0;
  std::uint64_t seed = 20261016;
};

int cmd_compute(const RunConfig& cfg, const ComputeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, const VerifyOptions& opt, std::ostream& out, std::ostream& err);

/// Parses "A=2.0" or "one_over_pq=0.5" into `targets`.
void parse_expect(const std::string& text, Targets& targets);

}  // namespace flatzeta::cli
