#include "report.hpp"

#include "flatzeta/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace flatzeta::cli {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// JSON has no inf or nan; they are written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json params_json(const FamilyParams& p) {
  json j;
  j["a"] = p.a;
  j["b"] = p.b;
  j["q"] = p.q;
  j["p"] = p.p.str();
  j["r1"] = p.r1;
  j["r2"] = p.r2;
  return j;
}

json regime_json(const Regime& r) {
  json j;
  j["kind"] = to_string(r.kind);
  j["epsilon0"] = r.epsilon0_exact.str();
  if (r.blowup_exponent) j["blowup_exponent"] = *r.blowup_exponent;
  return j;
}

json check_json(const VerificationReport& r, bool timing) {
  json j;
  j["id"] = r.check_id;
  if (r.is_interval())
    j["target"] = json::array({num(*r.target_lo), num(*r.target_hi)});
  else
    j["target"] = num(r.target);
  j["observed"] = num(r.observed);
  j["tolerance"] = num(r.tolerance);
  j["passed"] = r.passed;
  j["runtime_s"] = timing ? r.runtime_seconds : 0.0;
  j["detail"] = r.detail;
  json res = json::array();
  for (double v : r.residual_log) res.push_back(num(v));
  j["residuals"] = res;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_text(const std::vector<CsvRow>& rows) {
  std::string out = "sigma,X,Z,scaled,err\n";
  for (const auto& r : rows)
    out += g17(r.sigma) + "," + g17(r.X) + "," + g17(r.Z) + "," + g17(r.scaled) + "," + g17(r.err) + "\n";
  return out;
}

std::string svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, std::optional<double> target) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (target && std::isfinite(*target)) {
    ymin = std::min(ymin, *target);
    ymax = std::max(ymax, *target);
  }
  if (!(xmin < xmax)) {
    xmin -= 1;
    xmax += 1;
  }
  if (!(ymin < ymax)) {
    ymin -= 1;
    ymax += 1;
  }
  double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << escape_xml(title) << "</text>\n";
  os << "<path d=\"M" << L << " " << T << " V" << H - B << " H" << W - R << "\" stroke=\"black\" fill=\"none\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = xmin + (xmax - xmin) * i / 4, yv = ymin + (ymax - ymin) * i / 4;
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << g6(xv) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << g6(yv) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape_xml(xlabel) << "</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 " << (T + H - B) / 2
     << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape_xml(ylabel) << "</text>\n";
  if (target && std::isfinite(*target))
    os << "<path d=\"M" << L << " " << py(*target) << " H" << W - R
       << "\" stroke=\"#555\" stroke-dasharray=\"6 4\" fill=\"none\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = colors[k % 4];
    std::ostringstream d;
    bool started = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      d << (started ? " L" : "M") << px(s.x[i]) << " " << py(s.y[i]);
      started = true;
      os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    }
    if (started) os << "<path d=\"" << d.str() << "\" stroke=\"" << col << "\" fill=\"none\"/>\n";
    os << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 16 * (k + 1)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << col << "\">"
       << escape_xml(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

}  // namespace flatzeta::cli
