#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellboard/criteria.hpp"
#include "cellboard/lattice_field.hpp"
#include "cellboard/sweep.hpp"

namespace cellboard {

inline constexpr const char* kCsvHeader = "criterion,n,L1,L2,J,h,T,value,unique";

// Nine significant digits, shortest %g form.
std::string format_number(double v);

nlohmann::json to_json(CellSize size);
CellSize cell_size_from_json(const nlohmann::json& j);
// {"L1": <int or "inf">, "L2": <int or "inf">, "h": <float>}
nlohmann::json to_json(const FieldSpec& spec);
FieldSpec field_spec_from_json(const nlohmann::json& j);
// {criterion, n, J, h, T, L1, L2, value, threshold, unique}
nlohmann::json to_json(const CriterionEvaluation& eval);
nlohmann::json to_json(const Curve& curve);

std::string to_csv(const Curve& curve);
void write_csv(const Curve& curve, const std::filesystem::path& path);

// Reads any CSV with (at least) h and T header columns. Empty cells are
// "none". The result is tagged as an external overlay.
Curve parse_overlay(const std::string& text);
Curve read_overlay(const std::filesystem::path& path);

struct CurveStyle {
  std::string label;
  std::string color;  // empty: picked from the palette
  bool dashed = false;
};

struct PlotEntry {
  Curve curve;
  CurveStyle style;
};

struct PlotSpec {
  std::string title;
  std::string x_label = "h/J";
  std::string y_label = "T/J";
  std::vector<PlotEntry> entries;
  std::vector<PlotEntry> overlays;
  int width = 800;
  int height = 600;
};

std::string to_svg(const PlotSpec& plot);
void render_svg(const PlotSpec& plot, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_manifest(const nlohmann::json& manifest, const std::filesystem::path& path);

}  // namespace cellboard
