#include "emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hexb {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_number(double value) {
  if (value == static_cast<double>(static_cast<std::int64_t>(value)) &&
      std::abs(value) < 1e15) {
    return std::to_string(static_cast<std::int64_t>(value));
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string csv_regret_curve(std::span<const double> curve) {
  std::string out = "round,cumulative_regret\n";
  for (std::size_t t = 0; t < curve.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_number(curve[t]);
    out += '\n';
  }
  return out;
}

namespace {

std::string selector_label(int boundary, int j) {
  if (boundary == 0) return "B";
  return "a_" + std::to_string(j + 1) + "^" + std::to_string(boundary);
}

std::string child_label(const RunTrace& trace, int boundary, int c) {
  if (boundary == trace.num_layers) return "arm_" + std::to_string(c + 1);
  return "a_" + std::to_string(c + 1) + "^" + std::to_string(boundary + 1);
}

}  // namespace

std::string csv_selection_matrix(const RunTrace& trace, int boundary) {
  const auto& matrix = selection_matrix(trace, boundary);
  std::string out = "selector";
  for (std::size_t c = 0; c < matrix[0].size(); ++c) {
    out += ',';
    out += child_label(trace, boundary, static_cast<int>(c));
  }
  out += '\n';
  for (std::size_t j = 0; j < matrix.size(); ++j) {
    out += selector_label(boundary, static_cast<int>(j));
    for (std::int64_t count : matrix[j]) {
      out += ',';
      out += std::to_string(count);
    }
    out += '\n';
  }
  return out;
}

std::string jsonl_line(const Json& record) { return record.dump() + "\n"; }

// --- SVG ------------------------------------------------------------------

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string tick_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2g", value);
  return buf;
}

std::string coord(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::vector<double> nice_ticks(double lo, double hi) {
  if (hi <= lo) hi = lo + 1.0;
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push_back(v);
  }
  return ticks;
}

}  // namespace

std::string render_line_plot(const std::vector<Curve>& curves, const std::string& x_label,
                             const std::string& y_label) {
  if (curves.empty()) throw ConfigError("render_line_plot: need at least one curve");
  double x_lo = curves[0].x.front(), x_hi = curves[0].x.back();
  double y_lo = 0.0, y_hi = 0.0;
  bool first = true;
  for (const Curve& c : curves) {
    if (c.x.empty() || c.x.size() != c.y.size()) {
      throw ConfigError("render_line_plot: curves must be non-empty with matching x/y");
    }
    if (c.x.front() != x_lo || c.x.back() != x_hi) {
      throw ConfigError("render_line_plot: curves must share the same x range");
    }
    for (double v : c.y) {
      if (first) {
        y_lo = y_hi = v;
        first = false;
      }
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  if (x_hi == x_lo) x_hi = x_lo + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto map_x = [&](double v) { return kLeft + (v - x_lo) / (x_hi - x_lo) * plot_w; };
  auto map_y = [&](double v) { return kTop + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
         "font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

  // gridlines + tick labels
  for (double t : nice_ticks(x_lo, x_hi)) {
    const std::string x = coord(map_x(t));
    svg += "<line x1=\"" + x + "\" y1=\"" + coord(kTop) + "\" x2=\"" + x + "\" y2=\"" +
           coord(kTop + plot_h) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + x + "\" y=\"" + coord(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    const std::string y = coord(map_y(t));
    svg += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + y + "\" x2=\"" +
           coord(kLeft + plot_w) + "\" y2=\"" + y + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + coord(kLeft - 8) + "\" y=\"" + y +
           "\" text-anchor=\"end\" dominant-baseline=\"middle\">" + tick_label(t) +
           "</text>\n";
  }

  // axes box
  svg += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" +
         coord(plot_w) + "\" height=\"" + coord(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + coord(kLeft + plot_w / 2) + "\" y=\"" + coord(kHeight - 10) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + coord(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         coord(kTop + plot_h / 2) + ")\">" + y_label + "</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    for (std::size_t p = 0; p < curves[i].x.size(); ++p) {
      points += coord(map_x(curves[i].x[p])) + "," + coord(map_y(curves[i].y[p])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  // legend
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const double y = kTop + 16 + 18 * static_cast<double>(i);
    svg += "<line x1=\"" + coord(kLeft + 12) + "\" y1=\"" + coord(y) + "\" x2=\"" +
           coord(kLeft + 40) + "\" y2=\"" + coord(y) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + coord(kLeft + 46) + "\" y=\"" + coord(y + 4) + "\">" +
           curves[i].name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<Curve>& curves, const std::string& x_label,
               const std::string& y_label, const fs::path& path) {
  write_text_file(path, render_line_plot(curves, x_label, y_label));
}

// --- bound reports ----------------------------------------------------------

Json bound_report_json(const BoundReport& report, double n) {
  Json doc;
  doc["kind"] = report.kind;
  doc["coefficient"] = report.coefficient;
  doc["constant"] = report.constant ? Json(*report.constant) : Json(nullptr);
  doc["n"] = n;
  doc["value_at_n"] = report.value_at(n);
  if (report.i_star) doc["i_star"] = *report.i_star;
  if (report.alpha_star) doc["alpha_star"] = *report.alpha_star;
  if (!report.s_sets.empty()) {
    Json sets = Json::object();
    for (std::size_t m = 0; m < report.s_sets.size(); ++m) {
      sets[std::to_string(m + 2)] = report.s_sets[m];
    }
    doc["s_sets"] = std::move(sets);
  }
  if (!report.unquantified.empty()) doc["unquantified_constants"] = report.unquantified;
  if (!report.warnings.empty()) doc["warnings"] = report.warnings;
  return doc;
}

namespace {

std::string aligned_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key;
    out.append(width - key.size() + 2, ' ');
    out += value;
    out += '\n';
  }
  return out;
}

BoundsOutput report_output(const BoundReport& report, double n) {
  BoundsOutput out;
  out.report = bound_report_json(report, n);
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("bound", report.kind);
  rows.emplace_back("ln(n) coefficient", format_number(report.coefficient));
  rows.emplace_back("constant",
                    report.constant ? format_number(*report.constant) : "(unquantified)");
  rows.emplace_back("n", format_number(n));
  rows.emplace_back("value at n", format_number(report.value_at(n)));
  if (report.i_star) rows.emplace_back("i*", std::to_string(*report.i_star));
  if (report.alpha_star) rows.emplace_back("alpha*", format_number(*report.alpha_star));
  for (std::size_t m = 0; m < report.s_sets.size(); ++m) {
    std::string set = "{";
    for (std::size_t i = 0; i < report.s_sets[m].size(); ++i) {
      if (i > 0) set += ",";
      set += std::to_string(report.s_sets[m][i]);
    }
    set += "}";
    rows.emplace_back("S_" + std::to_string(m + 2), set);
  }
  for (const std::string& c : report.unquantified) {
    rows.emplace_back("unquantified", c);
  }
  for (const std::string& w : report.warnings) rows.emplace_back("warning", w);
  out.table = aligned_table(rows);
  return out;
}

}  // namespace

BoundsOutput evaluate_bounds_query(const BoundsQuery& query) {
  const std::vector<double>& gaps = query.arms.gaps();
  if (query.bound == "fact1") {
    return report_output(fact1_bound(gaps, query.alpha, query.n), query.n);
  }
  if (query.bound == "fact2") {
    const double value = fact2_lower_bound(query.arms.means(), query.n);
    BoundReport report;
    report.kind = "fact2";
    report.coefficient = value / std::log(query.n);
    BoundsOutput out = report_output(report, query.n);
    out.report["is_lower_bound"] = true;
    out.table += aligned_table({{"note", "asymptotic lower bound (liminf)"}});
    return out;
  }
  if (query.bound == "theorem1") {
    const double mu1 = query.arms.mean(0);
    const double muK = query.arms.mean(query.arms.size() - 1);
    const double divergence = kl(muK, mu1);
    const double r = static_cast<double>(query.layers);
    BoundReport report;
    report.kind = "theorem1";
    report.coefficient = (mu1 - muK) / (2.0 * divergence) * r;
    report.constant = -(mu1 - muK) / (2.0 * divergence) * r * r * std::log(4.0);
    BoundsOutput out = report_output(report, query.n);
    out.report["is_lower_bound"] = true;
    out.report["layers"] = query.layers;
    return out;
  }
  if (query.bound == "theorem3") {
    return report_output(theorem3_bound(gaps, query.bottom_alphas, query.n), query.n);
  }
  if (query.bound == "theorem4") {
    return report_output(theorem4_bound(query.beta, query.alpha1_per_layer, query.layer_sizes,
                                        gaps, query.n, query.epsilon),
                         query.n);
  }
  if (query.bound == "lemma1") {
    const auto per_arm = lemma1_pull_bounds(query.alpha, gaps, query.n, query.epsilon);
    BoundsOutput out;
    out.report["kind"] = "lemma1";
    out.report["n"] = query.n;
    out.report["alpha"] = query.alpha;
    out.report["epsilon"] = query.epsilon;
    out.report["lower_bound_asymptotic"] = true;
    Json arms = Json::array();
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("bound", "lemma1 (deterministic arms)");
    rows.emplace_back("n", format_number(query.n));
    for (const PullBounds& pb : per_arm) {
      Json entry;
      entry["arm"] = pb.arm;
      entry["upper"] = pb.upper;
      entry["lower"] = pb.lower;
      arms.push_back(std::move(entry));
      rows.emplace_back("arm " + std::to_string(pb.arm) + " pulls",
                        "[" + format_number(pb.lower) + ", " + format_number(pb.upper) +
                            "] (lower asymptotic)");
    }
    out.report["per_arm"] = std::move(arms);
    out.table = aligned_table(rows);
    return out;
  }
  throw ConfigError("unknown bound \"" + query.bound + "\"");
}

}  // namespace hexb
