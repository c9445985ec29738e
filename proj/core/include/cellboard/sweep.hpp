#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cellboard/criteria.hpp"
#include "cellboard/lattice_field.hpp"

namespace cellboard {

std::string_view version();

// Values start + k * step for k = 0 .. count - 1.
struct Grid1D {
  double start = 0.0;
  double step = 1.0;
  int count = 1;

  double value(int k) const { return start + k * step; }
  double back() const { return value(count - 1); }
  void validate() const;

  // "start:step:count"
  static Grid1D parse(std::string_view text);
  std::string to_string() const;
};

// Grids used for the single-site criteria: T = 0.001 k (k <= 7000), h = 0.1 k (k <= 45).
Grid1D th_temperature_grid();
Grid1D th_field_grid();
// Grids used for the window criterion: T = 0.002 k (1 <= k <= 205), h = 0.05 k (1 <= k <= 80).
Grid1D ds_temperature_grid();
Grid1D ds_field_grid();

enum class CurveKind {
  dp_temperature,       // T^DP(h)
  dc_temperature,       // T^DC(h)
  ds_field_line,        // h^DS(T): smallest grid h with gamma_n < 1
  ds_temperature_line,  // T^DS(h): smallest grid T with gamma_n < 1
  external_overlay,     // user-supplied, never evaluated
};

std::string_view to_string(CurveKind kind);
// "dp", "dc", "ds" or "overlay".
std::string_view criterion_label(CurveKind kind);

// An absent h or T means "none": no boundary on the scanned grid.
struct CurvePoint {
  std::optional<double> h;
  std::optional<double> T;
  std::optional<double> value;
  std::optional<bool> unique;
  // Criterion still above threshold at the hottest grid temperature.
  bool truncated = false;
  // Number of threshold crossings seen on the scan (> 1 means the root
  // was not unique).
  int brackets = 0;
};

struct Curve {
  CurveKind kind = CurveKind::external_overlay;
  int n = 1;
  CellSize L1;
  CellSize L2;
  double J = 1.0;
  std::vector<CurvePoint> points;
  nlohmann::json manifest = nlohmann::json::object();
};

struct RootOptions {
  Grid1D T_grid = th_temperature_grid();
  double refine_tol = 1e-6;
  unsigned threads = 1;
};

struct DsSweepOptions {
  DsOptions ds;
  unsigned threads = 1;
};

// Largest temperature at which criterion(T) >= threshold: scan the positive
// grid temperatures, take the hottest downward crossing and bisect it to
// refine_tol. The point's h is left empty.
CurvePoint boundary_temperature(const std::function<double(double)>& criterion,
                                double threshold, const Grid1D& T_grid, double refine_tol);

CurvePoint dp_boundary(double J, double h, double pc_bound, const RootOptions& options = {});
CurvePoint dc_boundary(double J, double h, const RootOptions& options = {});

Curve dp_curve(double J, const Grid1D& h_grid, double pc_bound = kDefaultPcBound,
               const RootOptions& options = {});
Curve dc_curve(double J, const Grid1D& h_grid, const RootOptions& options = {});

Curve ds_h_line(int n, double J, CellSize L1, CellSize L2, const Grid1D& T_grid,
                const Grid1D& h_grid, const DsSweepOptions& options = {});
Curve ds_t_line(int n, double J, CellSize L1, CellSize L2, const Grid1D& h_grid,
                const Grid1D& T_grid, const DsSweepOptions& options = {});

}  // namespace cellboard
