#include "cellboard/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "cellboard/error.hpp"
#include "cellboard/parallel.hpp"

#ifndef CELLBOARD_VERSION
#define CELLBOARD_VERSION "0.0.0"
#endif

namespace cellboard {

namespace {

nlohmann::json grid_json(const Grid1D& g) {
  return {{"start", g.start}, {"step", g.step}, {"count", g.count}, {"spec", g.to_string()}};
}

nlohmann::json base_manifest(CurveKind kind, int n, double J, CellSize L1, CellSize L2) {
  return {{"version", version()},
          {"curve", to_string(kind)},
          {"criterion", criterion_label(kind)},
          {"params", {{"J", J}, {"n", n}, {"L1", L1.to_string()}, {"L2", L2.to_string()}}}};
}

void check_J(double J) {
  if (!std::isfinite(J) || J <= 0.0) throw ParameterError("coupling J must be finite and > 0");
}

void check_tol(double tol) {
  if (!std::isfinite(tol) || tol <= 0.0) throw ParameterError("refine tolerance must be > 0");
}

nlohmann::json point_flags(const std::vector<CurvePoint>& points) {
  nlohmann::json flags = nlohmann::json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].truncated || points[i].brackets > 1) {
      flags.push_back({{"index", i}, {"truncated", points[i].truncated},
                       {"brackets", points[i].brackets}});
    }
  }
  return flags;
}

Curve temperature_curve(CurveKind kind, double J, const Grid1D& h_grid,
                        const RootOptions& options,
                        const std::function<CurvePoint(double)>& boundary) {
  check_J(J);
  h_grid.validate();
  options.T_grid.validate();
  check_tol(options.refine_tol);

  Curve curve;
  curve.kind = kind;
  curve.J = J;
  curve.points.resize(h_grid.count);
  parallel_for_index(curve.points.size(), options.threads, [&](std::size_t k) {
    CurvePoint p = boundary(h_grid.value(static_cast<int>(k)));
    p.h = h_grid.value(static_cast<int>(k));
    curve.points[k] = p;
  });

  curve.manifest = base_manifest(kind, 1, J, curve.L1, curve.L2);
  curve.manifest["grids"] = {{"h", grid_json(h_grid)}, {"T", grid_json(options.T_grid)}};
  curve.manifest["tolerances"] = {{"refine_tol", options.refine_tol}};
  curve.manifest["root_rule"] =
      "hottest downward threshold crossing on the T scan, bisected; T <= 0 grid values skipped";
  curve.manifest["flags"] = point_flags(curve.points);
  return curve;
}

nlohmann::json ds_manifest(CurveKind kind, const DsEvaluator& evaluator, double J,
                           const Grid1D& h_grid, const Grid1D& T_grid) {
  nlohmann::json m = base_manifest(kind, evaluator.n(), J, evaluator.L1(), evaluator.L2());
  m["grids"] = {{"h", grid_json(h_grid)}, {"T", grid_json(T_grid)}};
  m["tolerances"] = {{"threshold", kDobrushinShlosmanThreshold}};
  m["placement_mode"] = to_string(evaluator.options().placement_mode);
  m["placement_count"] = evaluator.placement_count();
  m["notes"] = nlohmann::json::array(
      {"placements: all offsets 0 <= i < 2*L1, 0 <= j < 2*L2 (a single offset on an infinite "
       "axis), exact duplicates removed",
       "field grid used as given; the default starts at h = 0.05, not h = 0"});
  return m;
}

}  // namespace

std::string_view version() { return CELLBOARD_VERSION; }

void Grid1D::validate() const {
  if (!std::isfinite(start) || !std::isfinite(step) || step <= 0.0 || count < 1 ||
      !std::isfinite(back())) {
    throw ParameterError("invalid grid " + to_string() +
                         " (need finite start, step > 0, count >= 1)");
  }
}

Grid1D Grid1D::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw ParameterError("grid '" + std::string(text) + "' must have the form start:step:count");
  }
  auto number = [&](std::string_view part) {
    const std::string s(part);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw ParameterError("grid '" + std::string(text) + "': bad number '" + s + "'");
    }
    return v;
  };
  Grid1D g;
  g.start = number(text.substr(0, first));
  g.step = number(text.substr(first + 1, second - first - 1));
  const std::string_view count = text.substr(second + 1);
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), g.count);
  if (ec != std::errc() || ptr != count.data() + count.size()) {
    throw ParameterError("grid '" + std::string(text) + "': bad count");
  }
  g.validate();
  return g;
}

std::string Grid1D::to_string() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.9g:%.9g:%d", start, step, count);
  return buf;
}

Grid1D th_temperature_grid() { return {0.0, 0.001, 7001}; }
Grid1D th_field_grid() { return {0.0, 0.1, 46}; }
Grid1D ds_temperature_grid() { return {0.002, 0.002, 205}; }
Grid1D ds_field_grid() { return {0.05, 0.05, 80}; }

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::dp_temperature: return "dp-temperature";
    case CurveKind::dc_temperature: return "dc-temperature";
    case CurveKind::ds_field_line: return "ds-field-line";
    case CurveKind::ds_temperature_line: return "ds-temperature-line";
    case CurveKind::external_overlay: return "external-overlay";
  }
  return "?";
}

std::string_view criterion_label(CurveKind kind) {
  switch (kind) {
    case CurveKind::dp_temperature: return "dp";
    case CurveKind::dc_temperature: return "dc";
    case CurveKind::ds_field_line:
    case CurveKind::ds_temperature_line: return "ds";
    case CurveKind::external_overlay: return "overlay";
  }
  return "?";
}

CurvePoint boundary_temperature(const std::function<double(double)>& criterion,
                                double threshold, const Grid1D& T_grid, double refine_tol) {
  T_grid.validate();
  check_tol(refine_tol);

  std::vector<double> temps;
  std::vector<bool> above;
  for (int k = 0; k < T_grid.count; ++k) {
    const double T = T_grid.value(k);
    if (T <= 0.0) continue;
    temps.push_back(T);
    above.push_back(criterion(T) >= threshold);
  }

  CurvePoint p;
  if (temps.empty()) throw ParameterError("temperature grid has no positive values");
  for (std::size_t k = 0; k + 1 < above.size(); ++k) {
    if (above[k] != above[k + 1]) ++p.brackets;
  }

  if (above.back()) {
    p.T = temps.back();
    p.value = criterion(temps.back());
    p.unique = false;
    p.truncated = true;
    return p;
  }
  std::size_t k = above.size() - 1;
  while (k > 0 && !above[k - 1]) --k;
  if (k == 0) {
    // Below threshold on the whole scan.
    p.unique = true;
    return p;
  }

  double lo = temps[k - 1];
  double hi = temps[k];
  while (hi - lo > refine_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (criterion(mid) >= threshold ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  p.T = root;
  p.value = criterion(root);
  p.unique = *p.value < threshold;
  return p;
}

CurvePoint dp_boundary(double J, double h, double pc_bound, const RootOptions& options) {
  if (!(pc_bound > 0.0 && pc_bound < 1.0)) throw ParameterError("pc bound must lie in (0, 1)");
  check_J(J);
  CurvePoint p = boundary_temperature([&](double T) { return dp_p({J, h, T}); }, pc_bound,
                                      options.T_grid, options.refine_tol);
  p.h = h;
  return p;
}

CurvePoint dc_boundary(double J, double h, const RootOptions& options) {
  check_J(J);
  CurvePoint p = boundary_temperature([&](double T) { return dc_gamma({J, h, T}); },
                                      kDobrushinThreshold, options.T_grid, options.refine_tol);
  p.h = h;
  return p;
}

Curve dp_curve(double J, const Grid1D& h_grid, double pc_bound, const RootOptions& options) {
  if (!(pc_bound > 0.0 && pc_bound < 1.0)) throw ParameterError("pc bound must lie in (0, 1)");
  Curve c = temperature_curve(CurveKind::dp_temperature, J, h_grid, options,
                              [&](double h) { return dp_boundary(J, h, pc_bound, options); });
  c.manifest["params"]["pc_bound"] = pc_bound;
  return c;
}

Curve dc_curve(double J, const Grid1D& h_grid, const RootOptions& options) {
  Curve c = temperature_curve(CurveKind::dc_temperature, J, h_grid, options,
                              [&](double h) { return dc_boundary(J, h, options); });
  c.manifest["tolerances"]["threshold"] = kDobrushinThreshold;
  return c;
}

Curve ds_h_line(int n, double J, CellSize L1, CellSize L2, const Grid1D& T_grid,
                const Grid1D& h_grid, const DsSweepOptions& options) {
  check_J(J);
  T_grid.validate();
  h_grid.validate();
  const DsEvaluator evaluator(n, L1, L2, options.ds);

  Curve curve;
  curve.kind = CurveKind::ds_field_line;
  curve.n = n;
  curve.L1 = L1;
  curve.L2 = L2;
  curve.J = J;
  curve.points.resize(T_grid.count);
  parallel_for_index(curve.points.size(), options.threads, [&](std::size_t i) {
    CurvePoint p;
    p.T = T_grid.value(static_cast<int>(i));
    if (*p.T <= 0.0) throw ParameterError("temperature grid values must be > 0");
    p.unique = false;
    for (int k = 0; k < h_grid.count; ++k) {
      const double h = h_grid.value(k);
      if (h < 0.0) continue;
      const double g = evaluator.gamma_until({J, h, *p.T}, kDobrushinShlosmanThreshold);
      if (g < kDobrushinShlosmanThreshold) {
        p.h = h;
        p.value = g;
        p.unique = true;
        break;
      }
    }
    curve.points[i] = p;
  });
  curve.manifest = ds_manifest(curve.kind, evaluator, J, h_grid, T_grid);
  return curve;
}

Curve ds_t_line(int n, double J, CellSize L1, CellSize L2, const Grid1D& h_grid,
                const Grid1D& T_grid, const DsSweepOptions& options) {
  check_J(J);
  T_grid.validate();
  h_grid.validate();
  const DsEvaluator evaluator(n, L1, L2, options.ds);

  Curve curve;
  curve.kind = CurveKind::ds_temperature_line;
  curve.n = n;
  curve.L1 = L1;
  curve.L2 = L2;
  curve.J = J;
  curve.points.resize(h_grid.count);
  parallel_for_index(curve.points.size(), options.threads, [&](std::size_t i) {
    CurvePoint p;
    p.h = h_grid.value(static_cast<int>(i));
    if (*p.h < 0.0) throw ParameterError("field grid values must be >= 0");
    p.unique = false;
    for (int k = 0; k < T_grid.count; ++k) {
      const double T = T_grid.value(k);
      if (T <= 0.0) continue;
      const double g = evaluator.gamma_until({J, *p.h, T}, kDobrushinShlosmanThreshold);
      if (g < kDobrushinShlosmanThreshold) {
        p.T = T;
        p.value = g;
        p.unique = true;
        break;
      }
    }
    curve.points[i] = p;
  });
  curve.manifest = ds_manifest(curve.kind, evaluator, J, h_grid, T_grid);
  return curve;
}

}  // namespace cellboard
