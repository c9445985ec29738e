#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cellboard/criteria.hpp"
#include "cellboard/report.hpp"
#include "cellboard/sweep.hpp"

namespace cellboard::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kParameterError = 2,
  kBoundError = 3,
  kIoError = 4,
  kVerificationFailed = 5,
};

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Figure presets

struct FigureOptions {
  double J = 1.0;
  double pc_bound = kDefaultPcBound;
  double refine_tol = 1e-6;
  PlacementMode placement_mode = PlacementMode::full_period;
  unsigned threads = 1;
  // Overrides for the preset grids.
  std::optional<Grid1D> h_grid;
  std::optional<Grid1D> T_grid;
};

struct FigureCurve {
  std::string name;  // file stem
  Curve curve;
  CurveStyle style;
};

struct Figure {
  std::string id;
  std::string title;
  std::vector<FigureCurve> curves;
};

std::vector<std::string> figure_ids();
Figure build_figure(const std::string& id, const FigureOptions& options);

// ---------------------------------------------------------------------------
// Identity checks

struct CheckResult {
  std::string name;
  std::string description;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::vector<std::string> checks;  // empty: all
  double J = 1.0;
  std::optional<CellSize> L1;       // ground-state check only
  std::optional<CellSize> L2;
  double refine_tol = 1e-6;
  unsigned threads = 1;
};

std::vector<std::string> check_names();
std::vector<CheckResult> run_checks(const VerifyOptions& options);

}  // namespace cellboard::cli
