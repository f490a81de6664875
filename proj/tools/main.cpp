#include "commands.hpp"
#include "run_config.hpp"

#include "flatzeta/error.hpp"
#include "flatzeta/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace flatzeta;
using namespace flatzeta::cli;

namespace {

struct CommonFlags {
  std::string preset, config, schedule, flat, regime, out_dir, formats, p;
  int a = 0, b = 0, q = 0, threads = 0;
  double r1 = 0, r2 = 0, tol_1d = 0, tol_2d = 0, flat_cutoff = 0;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--preset", f.preset, "supercritical | critical | greenblatt | monomial");
  app->add_option("--config", f.config, "key=value config file");
  app->add_option("--a", f.a, "exponent of x");
  app->add_option("--b", f.b, "exponent of y");
  app->add_option("--q", f.q, "flat shift");
  app->add_option("--p", f.p, "flatness exponent as num/den or integer");
  app->add_option("--r1", f.r1, "quadrant width");
  app->add_option("--r2", f.r2, "quadrant height");
  app->add_option("--schedule", f.schedule, "geo:X0,ratio,count");
  app->add_option("--tol-1d", f.tol_1d, "relative tolerance of 1D quadrature");
  app->add_option("--tol-2d", f.tol_2d, "relative tolerance of 2D quadrature");
  app->add_option("--flat-cutoff", f.flat_cutoff, "flat cutoff exponent");
  app->add_option("--flat", f.flat, "on | off (off keeps only the monomial)");
  app->add_option("--regime", f.regime, "expected regime; must match the parameters");
  app->add_option("--out-dir", f.out_dir, "directory for output files");
  app->add_option("--formats", f.formats, "comma list of csv,json,svg");
  app->add_option("--threads", f.threads, "worker threads (default FLATZETA_THREADS or all cores)");
}

RunConfig build_config(CLI::App* app, const CommonFlags& f) {
  RunConfig cfg = f.preset.empty() ? RunConfig{} : preset(f.preset);
  if (!f.config.empty()) cfg = load_config_file(f.config, cfg);
  auto set = [&](const char* opt, const char* key, const std::string& v) {
    if (app->count(opt) > 0) apply_setting(cfg, key, v);
  };
  set("--a", "a", std::to_string(f.a));
  set("--b", "b", std::to_string(f.b));
  set("--q", "q", std::to_string(f.q));
  set("--p", "p", f.p);
  if (app->count("--r1")) cfg.params.r1 = f.r1;
  if (app->count("--r2")) cfg.params.r2 = f.r2;
  set("--schedule", "schedule", f.schedule);
  if (app->count("--tol-1d")) cfg.numeric.tol_1d = f.tol_1d;
  if (app->count("--tol-2d")) cfg.numeric.tol_2d = f.tol_2d;
  if (app->count("--flat-cutoff")) cfg.numeric.flat_cutoff_exponent = f.flat_cutoff;
  set("--flat", "flat", f.flat);
  set("--regime", "regime", f.regime);
  set("--out-dir", "out_dir", f.out_dir);
  set("--formats", "formats", f.formats);
  cfg.validate();
  return cfg;
}

int threads_of(CLI::App* app, const CommonFlags& f) {
  if (app->count("--threads") && f.threads < 1) throw ConfigError("--threads must be >= 1");
  return app->count("--threads") ? f.threads : default_thread_count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local zeta functions of x^a y^b + x^a y^(b-q) exp(-1/|x|^p)"};
  app.require_subcommand(1);

  CommonFlags cf, kf, vf;
  auto* compute = app.add_subcommand("compute", "tabulate Z(sigma) along a schedule as CSV");
  add_common(compute, cf);
  ComputeOptions copt;
  compute->add_flag("--weighted", copt.weighted, "integrate against the bump over the plane");

  auto* constants = app.add_subcommand("constants", "print the asymptotic constants as JSON");
  add_common(constants, kf);

  auto* verify = app.add_subcommand("verify", "run verification suites and print a JSON report");
  add_common(verify, vf);
  VerifyOptions vopt;
  std::vector<std::string> expects;
  bool no_timing = false;
  verify->add_option("--suite", vopt.suite, "thm31 | thm21 | sandwich | decomp | lemmas | landau | monomial | all");
  verify->add_option("--expect", expects, "override a target, e.g. A=2.0 or one_over_pq=0.5");
  verify->add_option("--landau-terms", vopt.landau_terms, "Taylor terms for the landau suite");
  verify->add_option("--seed", vopt.seed, "seed for randomized checks");
  verify->add_flag("--no-timing", no_timing, "write runtime_s = 0 for byte-stable reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*compute) {
      RunConfig cfg = build_config(compute, cf);
      copt.threads = threads_of(compute, cf);
      return cmd_compute(cfg, copt, std::cout, std::cerr);
    }
    if (*constants) {
      RunConfig cfg = build_config(constants, kf);
      return cmd_constants(cfg, std::cout, std::cerr);
    }
    RunConfig cfg = build_config(verify, vf);
    for (const auto& e : expects) parse_expect(e, vopt.expect);
    vopt.timing = !no_timing;
    vopt.threads = threads_of(verify, vf);
    return cmd_verify(cfg, vopt, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidParams& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const OutOfWindow& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
