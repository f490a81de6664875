#include "run_config.hpp"

#include "flatzeta/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace flatzeta::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  }
}

// Shortest text that reads back to the same double.
std::string exact(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

}  // namespace

SigmaSchedule ScheduleSpec::build(int b) const {
  return make_schedule(ScheduleKind::Geometric, X_start, ratio, count, b);
}

std::string ScheduleSpec::str() const {
  return "geo:" + exact(X_start) + "," + exact(ratio) + "," + std::to_string(count);
}

ScheduleSpec parse_schedule(const std::string& text) {
  const std::string prefix = "geo:";
  if (text.rfind(prefix, 0) != 0) throw ConfigError("schedule must look like geo:X0,ratio,count");
  std::stringstream ss(text.substr(prefix.size()));
  std::string a, b, c, extra;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',') ||
      std::getline(ss, extra, ','))
    throw ConfigError("schedule must look like geo:X0,ratio,count");
  ScheduleSpec s{to_double("schedule", trim(a)), to_double("schedule", trim(b)), to_int("schedule", trim(c))};
  try {
    s.build(2);
  } catch (const Error& e) {
    throw ConfigError(std::string("bad schedule: ") + e.what());
  }
  return s;
}

void RunConfig::validate() const {
  try {
    params.validate();
    numeric.validate();
    bump.validate();
    schedule.build(params.b);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& f : formats)
    if (f != "csv" && f != "json" && f != "svg") throw ConfigError("unknown output format '" + f + "'");
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  if (name == "supercritical")
    c.params = FamilyParams(0, 2, 2, Rational(2), 0.5, 0.5);
  else if (name == "critical")
    c.params = FamilyParams(0, 2, 2, Rational(1), 0.5, 0.5);
  else if (name == "greenblatt")
    c.params = FamilyParams(1, 2, 2, Rational(1, 4), 0.5, 0.5);
  else if (name == "monomial") {
    // f = x y^2 with the flat term switched off.
    c.params = FamilyParams(1, 2, 2, Rational(1, 4), 0.5, 0.5);
    c.numeric.flat_term = false;
  } else
    throw ConfigError("unknown preset '" + name + "'");
  return c;
}

std::set<std::string> parse_formats(const std::string& text) {
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item != "csv" && item != "json" && item != "svg") throw ConfigError("unknown output format '" + item + "'");
    out.insert(item);
  }
  return out;
}

RegimeKind parse_regime(const std::string& text) {
  if (text == "supercritical") return RegimeKind::SupercriticalFlat;
  if (text == "critical") return RegimeKind::CriticalFlat;
  if (text == "subcritical") return RegimeKind::SubcriticalFlat;
  throw ConfigError("unknown regime '" + text + "'");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  try {
    if (key == "a")
      cfg.params.a = to_int(key, v);
    else if (key == "b")
      cfg.params.b = to_int(key, v);
    else if (key == "q")
      cfg.params.q = to_int(key, v);
    else if (key == "p")
      cfg.params.p = Rational::parse(v);
    else if (key == "r1")
      cfg.params.r1 = to_double(key, v);
    else if (key == "r2")
      cfg.params.r2 = to_double(key, v);
    else if (key == "schedule")
      cfg.schedule = parse_schedule(v);
    else if (key == "tol_1d")
      cfg.numeric.tol_1d = to_double(key, v);
    else if (key == "tol_2d")
      cfg.numeric.tol_2d = to_double(key, v);
    else if (key == "flat_cutoff")
      cfg.numeric.flat_cutoff_exponent = to_double(key, v);
    else if (key == "flat") {
      if (v != "on" && v != "off") throw ConfigError("flat must be on or off");
      cfg.numeric.flat_term = v == "on";
    } else if (key == "regime")
      cfg.regime_override = parse_regime(v);
    else if (key == "out_dir")
      cfg.out_dir = v;
    else if (key == "formats")
      cfg.formats = parse_formats(v);
    else
      throw ConfigError("unknown config key '" + key + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  std::stringstream ss(text);
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key=value");
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  base.validate();
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  const FamilyParams& P = cfg.params;
  os << "a=" << P.a << "\n"
     << "b=" << P.b << "\n"
     << "q=" << P.q << "\n"
     << "p=" << P.p.num() << "/" << P.p.den() << "\n"
     << "r1=" << exact(P.r1) << "\n"
     << "r2=" << exact(P.r2) << "\n"
     << "schedule=" << cfg.schedule.str() << "\n"
     << "tol_1d=" << exact(cfg.numeric.tol_1d) << "\n"
     << "tol_2d=" << exact(cfg.numeric.tol_2d) << "\n"
     << "flat_cutoff=" << exact(cfg.numeric.flat_cutoff_exponent) << "\n"
     << "flat=" << (cfg.numeric.flat_term ? "on" : "off") << "\n";
  if (cfg.regime_override) os << "regime=" << to_string(*cfg.regime_override) << "\n";
  os << "out_dir=" << cfg.out_dir << "\n";
  os << "formats=";
  bool first = true;
  for (const auto& f : cfg.formats) {
    os << (first ? "" : ",") << f;
    first = false;
  }
  os << "\n";
  return os.str();
}

}  // namespace flatzeta::cli
