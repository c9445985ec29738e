#include "cellboard/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "cellboard/error.hpp"

namespace cellboard {

namespace {

std::string opt_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  for (auto& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

std::optional<double> parse_cell(const std::string& cell, const std::string& column, int line) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) {
    throw ParseError("column '" + column + "': '" + cell + "' is not a number", line);
  }
  return v;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

nlohmann::json to_json(CellSize size) {
  if (size.is_infinite()) return "inf";
  return size.value();
}

CellSize cell_size_from_json(const nlohmann::json& j) {
  if (j.is_string()) return CellSize::parse(j.get<std::string>());
  if (j.is_number_integer()) return CellSize::finite(j.get<int>());
  throw ParameterError("cell size must be a positive integer or \"inf\"");
}

nlohmann::json to_json(const FieldSpec& spec) {
  return {{"L1", to_json(spec.L1)}, {"L2", to_json(spec.L2)}, {"h", spec.h}};
}

FieldSpec field_spec_from_json(const nlohmann::json& j) {
  try {
    FieldSpec spec{cell_size_from_json(j.at("L1")), cell_size_from_json(j.at("L2")),
                   j.at("h").get<double>()};
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("invalid field spec: ") + e.what());
  }
}

nlohmann::json to_json(const CriterionEvaluation& eval) {
  return {{"criterion", to_string(eval.criterion)},
          {"n", eval.n},
          {"J", eval.point.J},
          {"h", eval.point.h},
          {"T", eval.point.T},
          {"L1", to_json(eval.L1)},
          {"L2", to_json(eval.L2)},
          {"value", eval.value},
          {"threshold", eval.threshold},
          {"unique", eval.unique}};
}

nlohmann::json to_json(const Curve& curve) {
  nlohmann::json points = nlohmann::json::array();
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  for (const CurvePoint& p : curve.points) {
    points.push_back({{"h", opt(p.h)},
                      {"T", opt(p.T)},
                      {"value", opt(p.value)},
                      {"unique", p.unique ? nlohmann::json(*p.unique) : nlohmann::json(nullptr)},
                      {"truncated", p.truncated},
                      {"brackets", p.brackets}});
  }
  return {{"criterion", criterion_label(curve.kind)},
          {"curve", to_string(curve.kind)},
          {"n", curve.n},
          {"L1", to_json(curve.L1)},
          {"L2", to_json(curve.L2)},
          {"J", curve.J},
          {"points", points}};
}

std::string to_csv(const Curve& curve) {
  std::string out = kCsvHeader;
  out += '\n';
  const std::string prefix = std::string(criterion_label(curve.kind)) + ',' +
                             std::to_string(curve.n) + ',' + curve.L1.to_string() + ',' +
                             curve.L2.to_string() + ',' + format_number(curve.J) + ',';
  for (const CurvePoint& p : curve.points) {
    out += prefix;
    out += opt_number(p.h) + ',' + opt_number(p.T) + ',' + opt_number(p.value) + ',';
    if (p.unique) out += *p.unique ? "true" : "false";
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_csv(const Curve& curve, const std::filesystem::path& path) {
  write_text(path, to_csv(curve));
}

void write_manifest(const nlohmann::json& manifest, const std::filesystem::path& path) {
  write_text(path, manifest.dump(2) + "\n");
}

Curve parse_overlay(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) header = split_fields(line);
  }
  if (header.empty()) throw ParseError("overlay file is empty", line_no);

  auto column = [&header](const std::string& name) -> int {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int h_col = column("h");
  const int t_col = column("T");
  const int value_col = column("value");
  const int unique_col = column("unique");
  const int j_col = column("J");
  if (h_col < 0) throw ParseError("missing 'h' column", line_no);
  if (t_col < 0) throw ParseError("missing 'T' column", line_no);

  Curve curve;
  curve.kind = CurveKind::external_overlay;
  curve.J = std::numeric_limits<double>::quiet_NaN();
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    CurvePoint p;
    p.h = parse_cell(fields[h_col], "h", line_no);
    p.T = parse_cell(fields[t_col], "T", line_no);
    if (value_col >= 0) p.value = parse_cell(fields[value_col], "value", line_no);
    if (unique_col >= 0 && !fields[unique_col].empty()) {
      const std::string& u = fields[unique_col];
      if (u != "true" && u != "false") {
        throw ParseError("column 'unique': expected true/false, got '" + u + "'", line_no);
      }
      p.unique = u == "true";
    }
    if (j_col >= 0) {
      if (auto J = parse_cell(fields[j_col], "J", line_no)) curve.J = *J;
    }
    curve.points.push_back(p);
  }
  curve.manifest = {{"curve", to_string(curve.kind)}, {"rows", curve.points.size()}};
  return curve;
}

Curve read_overlay(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Curve c = parse_overlay(buffer.str());
  c.manifest["source"] = path.string();
  return c;
}

std::string to_svg(const PlotSpec& plot) {
  if (plot.entries.empty() && plot.overlays.empty()) {
    throw ParameterError("plot needs at least one curve");
  }
  if (plot.width < 200 || plot.height < 150) throw ParameterError("plot is too small");
  for (const auto& e : plot.entries) {
    if (e.curve.J != plot.entries.front().curve.J) {
      throw ParameterError("all plotted curves must share the same J");
    }
  }

  std::vector<const PlotEntry*> all;
  for (const auto& e : plot.entries) all.push_back(&e);
  for (const auto& e : plot.overlays) all.push_back(&e);

  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  for (const PlotEntry* e : all) {
    for (const CurvePoint& p : e->curve.points) {
      if (!p.h || !p.T) continue;
      x_hi = std::max(x_hi, *p.h);
      x_lo = std::min(x_lo, *p.h);
      y_hi = std::max(y_hi, *p.T);
      y_lo = std::min(y_lo, *p.T);
    }
  }
  if (x_hi - x_lo <= 0.0) x_hi = x_lo + 1.0;
  if (y_hi - y_lo <= 0.0) y_hi = y_lo + 1.0;
  const double x_step = nice_step(x_hi - x_lo, 8);
  const double y_step = nice_step(y_hi - y_lo, 8);
  x_hi = std::ceil(x_hi / x_step - 1e-9) * x_step;
  y_hi = std::ceil(y_hi / y_step - 1e-9) * y_step;
  x_lo = std::floor(x_lo / x_step + 1e-9) * x_step;
  y_lo = std::floor(y_lo / y_step + 1e-9) * y_step;

  const double left = 70.0, right = 190.0, top = 45.0, bottom = 60.0;
  const double pw = plot.width - left - right;
  const double ph = plot.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return top + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << plot.width
      << "\" height=\"" << plot.height << "\" viewBox=\"0 0 " << plot.width << ' '
      << plot.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" fill=\"white\"/>\n";
  if (!plot.title.empty()) {
    svg << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"25\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(plot.title)
        << "</text>\n";
  }

  svg << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + ph) << "\" x2=\""
      << fixed(left + pw) << "\" y2=\"" << fixed(top + ph) << "\"/>\n"
      << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left)
      << "\" y2=\"" << fixed(top + ph) << "\"/>\n";
  const int x_ticks = static_cast<int>(std::lround((x_hi - x_lo) / x_step));
  const int y_ticks = static_cast<int>(std::lround((y_hi - y_lo) / y_step));
  for (int i = 0; i <= x_ticks; ++i) {
    const double x = sx(x_lo + i * x_step);
    svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(x)
        << "\" y2=\"" << fixed(top + ph + 5) << "\"/>\n";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double y = sy(y_lo + i * y_step);
    svg << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(y) << "\" x2=\""
        << fixed(left) << "\" y2=\"" << fixed(y) << "\"/>\n";
  }
  svg << "</g>\n<g id=\"tick-labels\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= x_ticks; ++i) {
    const double v = x_lo + i * x_step;
    svg << "<text x=\"" << fixed(sx(v)) << "\" y=\"" << fixed(top + ph + 18)
        << "\" text-anchor=\"middle\">" << format_number(std::abs(v) < 1e-12 ? 0.0 : v)
        << "</text>\n";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = y_lo + i * y_step;
    svg << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(sy(v) + 4)
        << "\" text-anchor=\"end\">" << format_number(std::abs(v) < 1e-12 ? 0.0 : v)
        << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(plot.height - 15.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(plot.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
      << fixed(top + ph / 2) << ")\">" << xml_escape(plot.y_label) << "</text>\n";

  auto color_of = [](const PlotEntry& e, std::size_t i) {
    return e.style.color.empty() ? std::string(kPalette[i % std::size(kPalette)])
                                 : e.style.color;
  };

  svg << "<g id=\"curves\" fill=\"none\" stroke-width=\"2\">\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    const PlotEntry& e = *all[i];
    std::string points;
    for (const CurvePoint& p : e.curve.points) {
      if (!p.h || !p.T) continue;
      if (!points.empty()) points += ' ';
      points += fixed(sx(*p.h)) + ',' + fixed(sy(*p.T));
    }
    if (points.empty()) continue;
    svg << "<polyline stroke=\"" << xml_escape(color_of(e, i)) << "\"";
    if (e.style.dashed) svg << " stroke-dasharray=\"6,4\"";
    svg << " points=\"" << points << "\"/>\n";
  }
  svg << "</g>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    const PlotEntry& e = *all[i];
    const double y = top + 10.0 + 20.0 * static_cast<double>(i);
    const double x = left + pw + 15.0;
    svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(x + 25)
        << "\" y2=\"" << fixed(y) << "\" stroke=\"" << xml_escape(color_of(e, i))
        << "\" stroke-width=\"2\"";
    if (e.style.dashed) svg << " stroke-dasharray=\"6,4\"";
    svg << "/>\n<text x=\"" << fixed(x + 32) << "\" y=\"" << fixed(y + 4) << "\">"
        << xml_escape(e.style.label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void render_svg(const PlotSpec& plot, const std::filesystem::path& path) {
  write_text(path, to_svg(plot));
}

}  // namespace cellboard
