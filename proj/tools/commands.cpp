#include "commands.hpp"

#include "report.hpp"

#include "flatzeta/error.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>

namespace flatzeta::cli {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

bool wants(const RunConfig& cfg, const char* fmt) { return !cfg.out_dir.empty() && cfg.formats.count(fmt) > 0; }

// The regime used for scaling and targets; an override must agree with the
// parameters.
Regime effective_regime(const RunConfig& cfg) {
  Regime r = classify_regime(cfg.params);
  if (cfg.regime_override && *cfg.regime_override != r.kind)
    throw ConfigError("regime override '" + to_string(*cfg.regime_override) + "' contradicts the parameters, which are " +
                      to_string(r.kind));
  return r;
}

}  // namespace

void parse_expect(const std::string& text, Targets& targets) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("--expect needs key=value");
  std::string key = text.substr(0, eq), val = text.substr(eq + 1);
  double v;
  try {
    std::size_t used = 0;
    v = std::stod(val, &used);
    if (used != val.size()) throw std::invalid_argument(val);
  } catch (const std::exception&) {
    throw ConfigError("--expect: bad number '" + val + "'");
  }
  if (key == "A")
    targets.A = v;
  else if (key == "one_over_pq")
    targets.one_over_pq = v;
  else
    throw ConfigError("--expect: unknown key '" + key + "' (use A or one_over_pq)");
}

int cmd_compute(const RunConfig& cfg, const ComputeOptions& opt, std::ostream& out, std::ostream& err) {
  Regime reg = effective_regime(cfg);
  SigmaSchedule sch = cfg.schedule.build(cfg.params.b);
  std::vector<ZetaSample> z;
  try {
    z = opt.weighted ? zeta_weighted_schedule(cfg.params, cfg.bump, sch, cfg.numeric, opt.threads)
                     : zeta_schedule(cfg.params, sch, cfg.numeric, opt.threads);
  } catch (const OddQNotSupported& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  BlowupSequence seq = scale_sequence(cfg.params, z);
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < z.size(); ++i) rows.push_back({z[i].sigma, z[i].X, z[i].value, seq.scaled[i], z[i].error});
  std::string csv = csv_text(rows);
  out << csv;
  if (wants(cfg, "csv")) write_file(out_path(cfg, "compute.csv"), csv);
  if (wants(cfg, "json")) {
    json j;
    j["params"] = params_json(cfg.params);
    j["regime"] = regime_json(reg);
    j["scaling"] = to_string(seq.kind);
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"sigma", r.sigma}, {"X", r.X}, {"Z", r.Z}, {"scaled", r.scaled}, {"err", r.err}});
    j["rows"] = arr;
    write_file(out_path(cfg, "compute.json"), j.dump(2) + "\n");
  }
  if (wants(cfg, "svg")) {
    Series s;
    s.label = "scaled Z (" + to_string(seq.kind) + ")";
    for (const auto& r : rows) {
      s.x.push_back(std::log(r.X));
      s.y.push_back(r.scaled);
    }
    write_file(out_path(cfg, "compute.svg"), svg_plot({s}, cfg.params.str(), "log X", "scaled Z"));
  }
  return kPass;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Regime reg = effective_regime(cfg);
  const FamilyParams& P = cfg.params;
  json j;
  j["params"] = params_json(P);
  j["regime"] = regime_json(reg);
  NewtonDistance nd = newton_distance(P.a, P.b);
  j["newton_distance"] = {{"d", nd.d}, {"c0", nd.c0.str()}};
  try {
    switch (reg.kind) {
      case RegimeKind::SupercriticalFlat: j["A"] = constant_A(P, cfg.numeric); break;
      case RegimeKind::CriticalFlat: j["one_over_pq"] = 1.0 / (P.pd() * P.q); break;
      case RegimeKind::SubcriticalFlat: {
        json Lc = json::array(), Mc = json::array();
        for (int t = -12; t <= 12; ++t) {
          double lam = std::exp(static_cast<double>(t));
          Lc.push_back({{"lambda", lam}, {"L", constant_L(P, lam)}});
          try {
            Mc.push_back({{"lambda", lam}, {"M", constant_M(P, lam, cfg.numeric)}});
          } catch (const DegenerateLowerLimit&) {
            Mc.push_back({{"lambda", lam}, {"M", nullptr}});
          }
        }
        j["L_curve"] = Lc;
        j["M_curve"] = Mc;
        Case3Bounds b = case3_bounds(P, cfg.numeric);
        j["case3_bounds"] = {{"lower", b.lower},
                             {"upper", b.upper},
                             {"lambda_lower", b.lambda_lower},
                             {"lambda_upper", b.lambda_upper}};
        break;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  std::string text = j.dump(2) + "\n";
  out << text;
  if (wants(cfg, "json")) write_file(out_path(cfg, "constants.json"), text);
  return kPass;
}

namespace {

const std::vector<std::string> kSuites{"thm31", "thm21", "sandwich", "decomp", "lemmas", "landau", "monomial", "all"};

void plot_report(const RunConfig& cfg, const VerificationReport& r, const SigmaSchedule& sch) {
  if (r.residual_log.size() != sch.size()) return;
  Series s;
  s.label = r.check_id;
  std::optional<double> target;
  for (std::size_t i = 0; i < sch.size(); ++i) {
    s.x.push_back(std::log(sch.X[i]));
    s.y.push_back(r.is_interval() ? r.residual_log[i] : r.residual_log[i] + r.target);
  }
  std::vector<Series> all{s};
  if (r.is_interval()) {
    for (double v : {*r.target_lo, *r.target_hi}) {
      if (!std::isfinite(v)) continue;
      Series b;
      b.label = v == *r.target_lo ? "lower bound" : "upper bound";
      b.x = {s.x.front(), s.x.back()};
      b.y = {v, v};
      all.push_back(b);
    }
  } else {
    target = r.target;
  }
  write_file(out_path(cfg, r.check_id + ".svg"), svg_plot(all, r.check_id + " " + cfg.params.str(), "log X", "S", target));
}

}  // namespace

int cmd_verify(const RunConfig& cfg, const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (std::find(kSuites.begin(), kSuites.end(), opt.suite) == kSuites.end())
    throw ConfigError("unknown suite '" + opt.suite + "'");
  if (opt.landau_terms < 0) throw ConfigError("--landau-terms must be >= 0");
  Regime reg = effective_regime(cfg);
  const FamilyParams& P = cfg.params;
  const NumericConfig& N = cfg.numeric;
  const SigmaSchedule sch = cfg.schedule.build(P.b);
  const bool all = opt.suite == "all";
  const bool flat = N.flat_term;
  auto run = [&](const char* name) { return opt.suite == name || (all && (flat || std::string(name) == "monomial" ||
                                                                          std::string(name) == "lemmas" ||
                                                                          std::string(name) == "landau")); };
  TheoremOptions topt;
  topt.targets = opt.expect;
  topt.threads = opt.threads;
  std::vector<VerificationReport> reports;
  std::vector<bool> plottable;
  auto add = [&](VerificationReport r, bool plot = false) {
    reports.push_back(std::move(r));
    plottable.push_back(plot);
  };

  if (run("thm31")) {
    add(verify_theorem31(P, sch, N, topt), true);
    if (reg.kind == RegimeKind::SupercriticalFlat) add(verify_nonpolar(P, sch, N, opt.threads));
  }
  if (run("thm21") && !(all && P.q % 2 != 0)) add(verify_theorem21(P, cfg.bump, sch, N, topt), true);
  if (run("sandwich")) {
    std::vector<double> sig(sch.sigma.begin(), sch.sigma.begin() + std::min<std::size_t>(6, sch.size()));
    add(verify_sandwich(P, {0.25, 1.0, 4.0}, sig, N));
    add(verify_sandwich_random(100, opt.seed, N, opt.threads));
  }
  if (run("decomp")) add(verify_decompositions(P, 1.0, (0.02 - 1) / P.b, N));
  if (run("lemmas")) {
    add(verify_psi_and_flat(200, opt.seed));
    FamilyParams sub = reg.kind == RegimeKind::SubcriticalFlat ? P : preset("greenblatt").params;
    add(verify_LM_limits(sub, N));
    add(verify_asym_invariants(sub, N, 200, opt.seed));
  }
  if (run("landau")) {
    Monomial m{P.a, P.b};
    try {
      add(landau_taylor_rebuild(m, cfg.bump, 0.5, -0.3, opt.landau_terms, N));
    } catch (const OutsideDisc& e) {
      VerificationReport r;
      r.check_id = "landau";
      r.observed = std::nan("");
      r.detail = std::string("error: ") + e.what();
      add(r);
    }
  }
  if (run("monomial")) {
    std::vector<double> sig;
    const double lo = -1.0 / std::max(P.a, P.b);
    for (int i = 0; i < 20; ++i) sig.push_back(lo * (0.98 - 0.96 * i / 19.0));
    add(verify_monomial_oracle(P, sig, N));
  }

  json j;
  j["params"] = params_json(P);
  j["regime"] = regime_json(reg);
  json checks = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    checks.push_back(check_json(r, opt.timing));
    ok = ok && r.passed;
    err << (r.passed ? "PASS " : "FAIL ") << r.check_id << ": " << r.detail << "\n";
  }
  j["checks"] = checks;
  std::string text = j.dump(2) + "\n";
  out << text;
  if (wants(cfg, "json")) write_file(out_path(cfg, "report.json"), text);
  if (wants(cfg, "svg"))
    for (std::size_t i = 0; i < reports.size(); ++i)
      if (plottable[i]) plot_report(cfg, reports[i], sch);
  return ok ? kPass : kFailure;
}

}  // namespace flatzeta::cli
