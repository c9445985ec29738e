#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "cli.hpp"
#include "cellboard/error.hpp"
#include "cellboard/lattice_field.hpp"

namespace cellboard::cli {

namespace {

struct Check {
  std::string name;
  std::function<CheckResult(const VerifyOptions&)> run;
};

CheckResult result(const std::string& name, const std::string& what, double tol, double dev,
                   bool exact = false) {
  return {name, what, tol, dev, exact ? dev == 0.0 : dev <= tol};
}

// Uniform (h, T) sample over the rectangle spanned by the default DS grids.
std::vector<std::pair<double, double>> ds_sample_points(int count, std::uint64_t seed) {
  const Grid1D hg = ds_field_grid();
  const Grid1D tg = ds_temperature_grid();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> field(hg.start, hg.back());
  std::uniform_real_distribution<double> temp(tg.start, tg.back());
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < count; ++i) {
    const double h = field(rng);
    out.push_back({h, temp(rng)});
  }
  return out;
}

double dc_root(double J, double h, const VerifyOptions& o) {
  const CurvePoint p = dc_boundary(J, h, {th_temperature_grid(), o.refine_tol, 1});
  if (!p.T || p.truncated) throw Error("no Dobrushin boundary found at h = " + std::to_string(h));
  return *p.T;
}

CheckResult check_dob0(const VerifyOptions& o) {
  const double J = o.J;
  double dev = 0.0;
  for (double x : {0.0, 0.3, 0.7, 1.0, 1.6}) {
    const double h = x * J;
    const double base = dc_root(J, h, o);
    for (double other : {2.0 * J - h, h + 2.0 * J, 4.0 * J - h}) {
      dev = std::max(dev, std::abs(base - dc_root(J, other, o)));
    }
  }
  return result("dob0", "T^DC(h) = T^DC(2J-h) = T^DC(h+2J) = T^DC(4J-h)", 2.0 * o.refine_tol,
                dev);
}

CheckResult check_dob1(const VerifyOptions& o) {
  const double J = o.J;
  const double lower = 4.0 * J / std::log(3.0);
  const double upper = 2.0 * J / std::log(5.0 / 3.0);
  double dev = std::max(std::abs(dc_root(J, 0.0, o) - lower), std::abs(dc_root(J, J, o) - upper));
  for (int k = 0; k <= 40; ++k) {
    const double T = dc_root(J, 0.1 * k * J, o);
    dev = std::max({dev, lower - T - o.refine_tol, T - upper - o.refine_tol});
  }
  return result("dob1", "4J/ln3 <= T^DC(h) <= 2J/ln(5/3) on [0,4J], attained at h = 0 and h = J",
                1e-5, std::max(dev, 0.0));
}

CheckResult check_gamma1(const VerifyOptions& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> temp(0.05, 10.0);
  std::uniform_real_distribution<double> field(0.0, 4.5);
  const DsEvaluator ds(1, CellSize::finite(1), CellSize::finite(1));
  double dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ThermoPoint p{o.J, field(rng) * o.J, temp(rng) * o.J};
    dev = std::max(dev, std::abs(ds.gamma(p) - 4.0 * dc_gamma(p)));
  }
  return result("gamma1", "gamma_1 = 4 gamma at 50 random points", 1e-12, dev);
}

CheckResult check_ds1(const VerifyOptions& o) {
  const DsEvaluator big(3, CellSize::finite(5), CellSize::finite(7));
  const DsEvaluator square(3, CellSize::finite(3), CellSize::finite(3));
  double dev = 0.0;
  for (auto [h, T] : ds_sample_points(10, 61)) {
    const ThermoPoint p{o.J, h * o.J, T * o.J};
    dev = std::max(dev, std::abs(big.gamma(p) - square.gamma(p)));
  }
  return result("ds1", "gamma_3(5,7) = gamma_3(3,3) exactly", 0.0, dev, true);
}

CheckResult check_ds2(const VerifyOptions& o) {
  double dev = 0.0;
  for (int n : {2, 3}) {
    const DsEvaluator lo(n, CellSize::finite(n - 1), CellSize::finite(n - 1));
    const DsEvaluator hi(n, CellSize::finite(n), CellSize::finite(n));
    for (auto [h, T] : ds_sample_points(10, 62)) {
      const ThermoPoint p{o.J, h * o.J, T * o.J};
      dev = std::max(dev, lo.gamma(p) - hi.gamma(p));
    }
  }
  return result("ds2", "gamma_n(n-1,n-1) <= gamma_n(n,n) for n = 2, 3", 0.0, std::max(dev, 0.0));
}

CheckResult check_eq15(const VerifyOptions& o) {
  const DsEvaluator a(2, CellSize::finite(2), CellSize::finite(2));
  const DsEvaluator b(2, CellSize::finite(1), CellSize::finite(1));
  double dev = 0.0;
  for (auto [h, T] : ds_sample_points(20, 15)) {
    const ThermoPoint p{o.J, h * o.J, T * o.J};
    dev = std::max(dev, std::abs(a.gamma(p) - b.gamma(p)));
  }
  return result("eq15", "gamma_2(2,2) = gamma_2(1,1) at 20 random points", 1e-10, dev);
}

CheckResult check_l21(const VerifyOptions& o) {
  const CellSize one = CellSize::finite(1);
  const DsEvaluator ref(3, CellSize::finite(2), one);
  double dev = 0.0;
  const auto points = ds_sample_points(5, 21);
  for (int L1 = 3; L1 <= 5; ++L1) {
    const DsEvaluator other(3, CellSize::finite(L1), one);
    for (auto [h, T] : points) {
      const ThermoPoint p{o.J, h * o.J, T * o.J};
      dev = std::max(dev, std::abs(ref.gamma(p) - other.gamma(p)));
    }
  }
  return result("l21", "gamma_3(L1,1) equal for L1 = 2..5", 1e-10, dev);
}

CheckResult check_groundstate(const VerifyOptions& o) {
  std::vector<std::pair<CellSize, CellSize>> sizes;
  if (o.L1 || o.L2) {
    sizes.push_back({o.L1.value_or(CellSize::finite(1)), o.L2.value_or(CellSize::finite(1))});
  } else {
    sizes = {{CellSize::finite(1), CellSize::finite(1)},
             {CellSize::finite(2), CellSize::finite(1)},
             {CellSize::finite(2), CellSize::finite(2)},
             {CellSize::finite(3), CellSize::finite(2)}};
  }
  double dev = 0.0;
  bool ordered = true;
  for (auto [L1, L2] : sizes) {
    const double hc = critical_field(o.J, L1, L2);
    dev = std::max(dev, std::abs(ground_state_crossing(o.J, L1, L2) - hc));
    for (double delta : {-0.5, -0.1, 0.1, 0.5}) {
      const ModelParams params{o.J, FieldSpec{L1, L2, std::max(0.0, hc + delta * o.J)}};
      const double plus = energy_density(GroundStateKind::plus, params);
      const double minus = energy_density(GroundStateKind::minus, params);
      const double board = energy_density(GroundStateKind::cellboard, params);
      if (params.field.h < hc) ordered = ordered && plus == minus && plus < board;
      if (params.field.h > hc) ordered = ordered && board < plus;
    }
  }
  CheckResult r = result("groundstate", "cell-board / constant energy crossing at h_c", 1e-12, dev);
  r.passed = r.passed && ordered;
  return r;
}

CheckResult check_dp4j(const VerifyOptions& o) {
  const Grid1D grid = th_temperature_grid();
  double worst = 0.0;
  bool strict = true;
  for (double h : {4.0, 4.2, 4.5}) {
    for (int k = 0; k < grid.count; ++k) {
      const double T = grid.value(k);
      if (T <= 0.0) continue;
      const ThermoPoint p{o.J, h * o.J, T * o.J};
      worst = std::max(worst, dp_p(p));
      strict = strict && std::isfinite(dp_log_half_gap(p));
    }
  }
  // p itself rounds to 1/2 at low T when h = 4J; the strict gap is checked in log form.
  CheckResult r = result("dp4j", "p < 1/2 for h >= 4J on the temperature grid", 0.5, worst);
  r.passed = worst <= 0.5 && strict;
  return r;
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"dob0", check_dob0}, {"dob1", check_dob1}, {"gamma1", check_gamma1},
      {"ds1", check_ds1},   {"ds2", check_ds2},   {"eq15", check_eq15},
      {"l21", check_l21},   {"groundstate", check_groundstate}, {"dp4j", check_dp4j},
  };
  return checks;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const Check& c : registry()) names.push_back(c.name);
  return names;
}

std::vector<CheckResult> run_checks(const VerifyOptions& options) {
  if (!std::isfinite(options.J) || options.J <= 0.0) {
    throw ParameterError("coupling J must be finite and > 0");
  }
  const auto names = check_names();
  for (const std::string& name : options.checks) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ParameterError("unknown check '" + name + "'");
    }
  }
  std::vector<CheckResult> results;
  for (const Check& c : registry()) {
    if (!options.checks.empty() &&
        std::find(options.checks.begin(), options.checks.end(), c.name) == options.checks.end()) {
      continue;
    }
    results.push_back(c.run(options));
  }
  return results;
}

}  // namespace cellboard::cli
