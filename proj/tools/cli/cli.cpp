#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cellboard/error.hpp"
#include "cellboard/parallel.hpp"

namespace cellboard::cli {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string out = "cellboard";
  for (const auto& a : args) out += ' ' + a;
  return out;
}

// Raw option values, validated into library types once parsing is done.
struct Options {
  std::string criterion;
  std::string figure;
  int n = 1;
  double J = 1.0;
  double h = 0.0;
  double T = 1.0;
  std::string L1 = "1";
  std::string L2 = "1";
  std::string h_grid;
  std::string T_grid;
  double pc_bound = kDefaultPcBound;
  double refine_tol = 1e-6;
  std::string placement_mode = "full-period";
  std::string out = ".";
  std::string format = "csv";
  std::string line = "h";
  std::string overlay;
  bool plot = false;
  bool allow_large = false;
  unsigned threads = default_thread_count();
  std::vector<std::string> checks;
  std::string verify_L1;
  std::string verify_L2;
};

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--J", o.J, "Coupling constant")->capture_default_str();
  cmd->add_option("--n", o.n, "Window side for the ds criterion")->capture_default_str();
  cmd->add_option("--L1", o.L1, "Cell size along axis 1 (integer or inf)")->capture_default_str();
  cmd->add_option("--L2", o.L2, "Cell size along axis 2 (integer or inf)")->capture_default_str();
  cmd->add_option("--pc-bound", o.pc_bound, "Percolation threshold bound")->capture_default_str();
  cmd->add_option("--placement-mode", o.placement_mode, "full-period or signflip-dedup")
      ->capture_default_str();
  cmd->add_flag("--allow-large", o.allow_large, "Permit ds windows with n > 3");
}

DsOptions ds_options(const Options& o) {
  return {parse_placement_mode(o.placement_mode), o.allow_large};
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Criterion c = parse_criterion(o.criterion);
  const ThermoPoint point{o.J, o.h, o.T};
  const CellSize L1 = CellSize::parse(o.L1);
  const CellSize L2 = CellSize::parse(o.L2);
  CriterionEvaluation e;
  switch (c) {
    case Criterion::dp: e = dp_unique(point, o.pc_bound); break;
    case Criterion::dc: e = dc_unique(point); break;
    case Criterion::ds:
      if (o.h < 0.0) throw ParameterError("field h must be >= 0");
      e = ds_unique(o.n, point, L1, L2, ds_options(o));
      break;
  }
  e.L1 = L1;
  e.L2 = L2;
  if (o.format == "json") {
    out << to_json(e).dump() << '\n';
  } else {
    out << "criterion,n,L1,L2,J,h,T,value,threshold,unique\n"
        << to_string(e.criterion) << ',' << e.n << ',' << L1.to_string() << ','
        << L2.to_string() << ',' << format_number(e.point.J) << ',' << format_number(e.point.h)
        << ',' << format_number(e.point.T) << ',' << format_number(e.value) << ','
        << format_number(e.threshold) << ',' << (e.unique ? "true" : "false") << '\n';
  }
  return kOk;
}

nlohmann::json run_manifest(const std::vector<std::string>& args, const Options& o,
                            const std::string& started) {
  return {{"command", join_args(args)},
          {"version", version()},
          {"placement_mode", o.placement_mode},
          {"tolerances", {{"refine_tol", o.refine_tol}, {"pc_bound", o.pc_bound}}},
          {"timestamps", {{"started", started}, {"finished", utc_timestamp()}}}};
}

std::filesystem::path write_curve(const FigureCurve& fc, const Options& o,
                                  const nlohmann::json& run, const std::filesystem::path& dir) {
  const bool json = o.format == "json";
  const auto path = dir / (fc.name + (json ? ".json" : ".csv"));
  if (json) {
    write_text(path, to_json(fc.curve).dump(2) + "\n");
  } else {
    write_csv(fc.curve, path);
  }
  nlohmann::json manifest = run;
  manifest["output"] = path.filename().string();
  manifest["curve"] = fc.curve.manifest;
  manifest["params"] = fc.curve.manifest.value("params", nlohmann::json::object());
  manifest["grids"] = fc.curve.manifest.value("grids", nlohmann::json::object());
  write_manifest(manifest, dir / (fc.name + ".manifest.json"));
  return path;
}

int cmd_curve(const std::vector<std::string>& args, const Options& o, std::ostream& out) {
  if (o.format != "csv" && o.format != "json") throw ParameterError("--format must be csv or json");
  if (o.threads < 1) throw ParameterError("--threads must be >= 1");
  const std::string started = utc_timestamp();
  const std::filesystem::path dir(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::optional<Grid1D> h_grid;
  std::optional<Grid1D> T_grid;
  if (!o.h_grid.empty()) h_grid = Grid1D::parse(o.h_grid);
  if (!o.T_grid.empty()) T_grid = Grid1D::parse(o.T_grid);

  Figure fig;
  if (!o.figure.empty()) {
    FigureOptions fo;
    fo.J = o.J;
    fo.pc_bound = o.pc_bound;
    fo.refine_tol = o.refine_tol;
    fo.placement_mode = parse_placement_mode(o.placement_mode);
    fo.threads = o.threads;
    fo.h_grid = h_grid;
    fo.T_grid = T_grid;
    fig = build_figure(o.figure, fo);
  } else {
    if (o.criterion.empty()) throw ParameterError("curve needs --criterion or --figure");
    const Criterion c = parse_criterion(o.criterion);
    const CellSize L1 = CellSize::parse(o.L1);
    const CellSize L2 = CellSize::parse(o.L2);
    fig.id = "curve";
    if (c == Criterion::ds) {
      const DsSweepOptions ds{ds_options(o), o.threads};
      const Grid1D hg = h_grid.value_or(ds_field_grid());
      const Grid1D tg = T_grid.value_or(ds_temperature_grid());
      std::string name = "ds_n" + std::to_string(o.n) + "_" + L1.to_string() + "x" +
                         L2.to_string();
      Curve curve;
      if (o.line == "h") {
        curve = ds_h_line(o.n, o.J, L1, L2, tg, hg, ds);
      } else if (o.line == "T") {
        curve = ds_t_line(o.n, o.J, L1, L2, hg, tg, ds);
        name += "_tline";
      } else {
        throw ParameterError("--line must be h or T");
      }
      fig.curves.push_back({name, std::move(curve), {"DS n=" + std::to_string(o.n), "", false}});
    } else {
      const RootOptions roots{T_grid.value_or(th_temperature_grid()), o.refine_tol, o.threads};
      const Grid1D hg = h_grid.value_or(th_field_grid());
      Curve curve = c == Criterion::dp ? dp_curve(o.J, hg, o.pc_bound, roots)
                                       : dc_curve(o.J, hg, roots);
      curve.L1 = L1;
      curve.L2 = L2;
      curve.manifest["params"]["L1"] = L1.to_string();
      curve.manifest["params"]["L2"] = L2.to_string();
      fig.curves.push_back({std::string(to_string(c)), std::move(curve),
                            {c == Criterion::dp ? "DP" : "DC", "", false}});
    }
  }

  const nlohmann::json run = run_manifest(args, o, started);
  std::vector<std::string> outputs;
  for (const FigureCurve& fc : fig.curves) {
    const auto path = write_curve(fc, o, run, dir);
    outputs.push_back(path.filename().string());
    out << "wrote " << path.string() << '\n';
  }

  if (!o.figure.empty() || o.plot) {
    PlotSpec plot;
    plot.title = fig.title;
    for (const FigureCurve& fc : fig.curves) plot.entries.push_back({fc.curve, fc.style});
    if (!o.overlay.empty()) {
      plot.overlays.push_back({read_overlay(o.overlay), {"overlay", "#000000", true}});
    }
    const auto svg = dir / (fig.id + ".svg");
    render_svg(plot, svg);
    nlohmann::json manifest = run;
    manifest["output"] = svg.filename().string();
    manifest["figure"] = fig.id;
    manifest["curves"] = outputs;
    if (!o.overlay.empty()) manifest["overlay"] = o.overlay;
    write_manifest(manifest, dir / (fig.id + ".svg.manifest.json"));
    out << "wrote " << svg.string() << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions vo;
  vo.checks = o.checks;
  vo.J = o.J;
  if (o.verify_L1.empty() != o.verify_L2.empty()) {
    throw ParameterError("--L1 and --L2 must be given together");
  }
  if (!o.verify_L1.empty()) {
    vo.L1 = CellSize::parse(o.verify_L1);
    vo.L2 = CellSize::parse(o.verify_L2);
  }
  vo.refine_tol = o.refine_tol;
  vo.threads = o.threads;
  const auto results = run_checks(vo);
  bool ok = true;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  tol=" << format_number(r.tolerance)
        << "  max_dev=" << format_number(r.max_deviation) << "  " << r.description << '\n';
    ok = ok && r.passed;
  }
  out << (ok ? "all checks passed" : "verification FAILED") << '\n';
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gibbs-measure uniqueness regions of the cell-board Ising model", "cellboard"};
  // --h is the field amplitude, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  auto* eval = app.add_subcommand("eval", "Evaluate one criterion at a single (h, T) point");
  eval->add_option("--criterion", o.criterion, "dp, dc or ds")->required();
  eval->add_option("--h", o.h, "Field amplitude")->required();
  eval->add_option("--T", o.T, "Temperature")->required();
  eval->add_option("--format", o.format, "json or csv")->capture_default_str();
  add_model_flags(eval, o);

  auto* curve = app.add_subcommand("curve", "Trace a uniqueness boundary or a figure preset");
  curve->add_option("--criterion", o.criterion, "dp, dc or ds");
  curve->add_option("--figure", o.figure, "fig1, fig2a, fig2b or fig3");
  curve->add_option("--h-grid", o.h_grid, "Field grid start:step:count");
  curve->add_option("--T-grid", o.T_grid, "Temperature grid start:step:count");
  curve->add_option("--refine-tol", o.refine_tol, "Root bisection tolerance")
      ->capture_default_str();
  curve->add_option("--line", o.line, "ds line: h (h^DS per T) or T (T^DS per h)")
      ->capture_default_str();
  curve->add_option("--out", o.out, "Output directory")->capture_default_str();
  curve->add_option("--format", o.format, "csv or json");
  curve->add_flag("--plot", o.plot, "Also render an SVG plot");
  curve->add_option("--overlay", o.overlay, "CSV with h,T columns drawn on the plot");
  curve->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  add_model_flags(curve, o);

  auto* verify = app.add_subcommand("verify", "Run the identity and bound checks");
  verify->add_option("--check", o.checks, "Check name (repeatable); default all");
  verify->add_option("--J", o.J, "Coupling constant")->capture_default_str();
  verify->add_option("--L1", o.verify_L1, "Cell size for the groundstate check");
  verify->add_option("--L2", o.verify_L2, "Cell size for the groundstate check");
  verify->add_option("--refine-tol", o.refine_tol, "Root bisection tolerance")
      ->capture_default_str();
  verify->add_option("--threads", o.threads, "Worker threads")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    o.format = "csv";
    app.parse(reversed);
    if (eval->parsed() && eval->count("--format") == 0) o.format = "json";
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (curve->parsed()) return cmd_curve(args, o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    return kParameterError;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kParameterError;
  } catch (const BoundError& e) {
    err << "bound error: " << e.what() << '\n';
    return kBoundError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace cellboard::cli
