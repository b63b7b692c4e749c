#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "config.hpp"
#include "hierarchy.hpp"

namespace hexb {

// Throws IoError on failure; creates parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// Deterministic number formatting shared by all emitted artifacts.
std::string format_number(double value);

// round,cumulative_regret with a round-0 baseline row.
std::string csv_regret_curve(std::span<const double> curve);

// Selector-by-child counts for one boundary, labelled like the record
// tables: rows B or a_j^k, columns a_j^{k+1} or arm_i.
std::string csv_selection_matrix(const RunTrace& trace, int boundary);

// One json object per line.
std::string jsonl_line(const Json& record);

// --- SVG plotting -------------------------------------------------------------

struct Curve {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Standalone 800x600 SVG: linear axes, tick labels at 2 significant digits,
// one polyline per curve, legend.
std::string render_line_plot(const std::vector<Curve>& curves, const std::string& x_label,
                             const std::string& y_label);

void emit_plot(const std::vector<Curve>& curves, const std::string& x_label,
               const std::string& y_label, const std::filesystem::path& path);

// --- bound reports ------------------------------------------------------------

Json bound_report_json(const BoundReport& report, double n);

struct BoundsOutput {
  Json report;        // JSON object form
  std::string table;  // aligned text table
};

// Evaluate a parsed `bounds` request both ways.
BoundsOutput evaluate_bounds_query(const BoundsQuery& query);

}  // namespace hexb
