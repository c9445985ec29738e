#include <stdexcept>

#include "cli.hpp"
#include "cellboard/error.hpp"

namespace cellboard::cli {

namespace {

// The window-criterion line of the first figure is continued past h_c = 4
// so that the low-temperature end of the line lands on the grid.
Grid1D fig1_ds_field_grid() { return {0.05, 0.05, 90}; }

std::string stem(int n, CellSize L1, CellSize L2) {
  return "ds_n" + std::to_string(n) + "_" + L1.to_string() + "x" + L2.to_string();
}

std::string label(int n, CellSize L1, CellSize L2) {
  return "DS n=" + std::to_string(n) + " (" + L1.to_string() + "," + L2.to_string() + ")";
}

FigureCurve h_line(int n, CellSize L1, CellSize L2, const FigureOptions& o,
                   const Grid1D& default_h, bool dashed = false) {
  DsSweepOptions ds{{o.placement_mode, false}, o.threads};
  Curve c = ds_h_line(n, o.J, L1, L2, o.T_grid.value_or(ds_temperature_grid()),
                      o.h_grid.value_or(default_h), ds);
  return {stem(n, L1, L2), std::move(c), {label(n, L1, L2), "", dashed}};
}

}  // namespace

std::vector<std::string> figure_ids() { return {"fig1", "fig2a", "fig2b", "fig3"}; }

Figure build_figure(const std::string& id, const FigureOptions& o) {
  const CellSize one = CellSize::finite(1);
  const CellSize two = CellSize::finite(2);
  const CellSize inf = CellSize::infinite();
  Figure fig;
  fig.id = id;

  if (id == "fig1") {
    fig.title = "Uniqueness bounds, L1 = L2 = 1";
    const RootOptions roots{o.T_grid.value_or(th_temperature_grid()), o.refine_tol, o.threads};
    const Grid1D h_grid = o.h_grid.value_or(th_field_grid());
    fig.curves.push_back({"dp", dp_curve(o.J, h_grid, o.pc_bound, roots), {"DP", "", false}});
    fig.curves.push_back({"dc", dc_curve(o.J, h_grid, roots), {"DC", "", false}});
    fig.curves.push_back(h_line(3, one, one, o, fig1_ds_field_grid()));
  } else if (id == "fig2a") {
    fig.title = "DS lines, L1 = inf, L2 = 1";
    fig.curves.push_back(h_line(2, inf, one, o, ds_field_grid(), true));
    fig.curves.push_back(h_line(3, inf, one, o, ds_field_grid()));
  } else if (id == "fig2b") {
    fig.title = "DS lines, L1 = L2 = 2";
    fig.curves.push_back(h_line(2, two, two, o, ds_field_grid(), true));
    fig.curves.push_back(h_line(3, two, two, o, ds_field_grid()));
  } else if (id == "fig3") {
    fig.title = "DS lines, n = 3";
    fig.curves.push_back(h_line(3, two, one, o, ds_field_grid()));
    fig.curves.push_back(h_line(3, inf, one, o, ds_field_grid()));
    fig.curves.push_back(h_line(3, inf, two, o, ds_field_grid()));
    DsSweepOptions ds{{o.placement_mode, false}, o.threads};
    Curve t_line = ds_t_line(3, o.J, inf, two, o.h_grid.value_or(ds_field_grid()),
                             o.T_grid.value_or(ds_temperature_grid()), ds);
    fig.curves.push_back(
        {stem(3, inf, two) + "_tline", std::move(t_line), {"DS n=3 (inf,2), T-line", "", true}});
  } else {
    throw ParameterError("unknown figure '" + id + "' (expected fig1, fig2a, fig2b or fig3)");
  }
  return fig;
}

}  // namespace cellboard::cli
