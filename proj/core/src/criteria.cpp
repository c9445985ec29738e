#include "cellboard/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cellboard/error.hpp"

namespace cellboard {

namespace {

// sinh(a) / (cosh(b) + cosh(a)) for a >= 0, without overflow for large
// arguments: numerator and denominator are both scaled by 2 exp(-max(a, |b|)).
double sinh_ratio(double a, double b) {
  b = std::abs(b);
  const double m = std::max(a, b);
  const double num = std::exp(a - m) * -std::expm1(-2.0 * a);
  const double den = std::exp(b - m) + std::exp(-b - m) + std::exp(a - m) + std::exp(-a - m);
  return num / den;
}

std::vector<std::vector<int>> sign_patterns(const SquareWindow& window, CellSize L1,
                                            CellSize L2, PlacementMode mode) {
  const FieldSpec unit{L1, L2, 1.0};
  std::vector<std::vector<int>> patterns;
  for (int i = 0; i < L1.period(); ++i) {
    for (int j = 0; j < L2.period(); ++j) {
      std::vector<int> signs;
      signs.reserve(window.interior.size());
      for (const Site& s : window.interior) signs.push_back(field_sign(s + Site{i, j}, unit));
      if (std::find(patterns.begin(), patterns.end(), signs) != patterns.end()) continue;
      if (mode == PlacementMode::signflip_dedup) {
        std::vector<int> flipped(signs);
        for (int& v : flipped) v = -v;
        if (std::find(patterns.begin(), patterns.end(), flipped) != patterns.end()) continue;
      }
      patterns.push_back(std::move(signs));
    }
  }
  return patterns;
}

CriterionEvaluation make_evaluation(Criterion c, int n, const ThermoPoint& point, CellSize L1,
                                    CellSize L2, double value, double threshold) {
  return CriterionEvaluation{c, n, point, L1, L2, value, threshold, value < threshold};
}

}  // namespace

void ThermoPoint::validate() const {
  if (!std::isfinite(J) || J <= 0.0) throw ParameterError("coupling J must be finite and > 0");
  if (!std::isfinite(h)) throw ParameterError("field h must be finite");
  if (!std::isfinite(T) || T <= 0.0) throw ParameterError("temperature T must be finite and > 0");
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::dp: return "dp";
    case Criterion::dc: return "dc";
    case Criterion::ds: return "ds";
  }
  return "?";
}

Criterion parse_criterion(std::string_view text) {
  if (text == "dp") return Criterion::dp;
  if (text == "dc") return Criterion::dc;
  if (text == "ds") return Criterion::ds;
  throw ParameterError("unknown criterion '" + std::string(text) + "' (expected dp, dc or ds)");
}

std::string_view to_string(PlacementMode mode) {
  return mode == PlacementMode::full_period ? "full-period" : "signflip-dedup";
}

PlacementMode parse_placement_mode(std::string_view text) {
  if (text == "full-period") return PlacementMode::full_period;
  if (text == "signflip-dedup") return PlacementMode::signflip_dedup;
  throw ParameterError("unknown placement mode '" + std::string(text) +
                       "' (expected full-period or signflip-dedup)");
}

double dp_p(const ThermoPoint& point) {
  point.validate();
  return sinh_ratio(8.0 * point.J / point.T, 2.0 * point.h / point.T);
}

double dp_log_half_gap(const ThermoPoint& point) {
  point.validate();
  const double a = 8.0 * point.J / point.T;
  const double b = 2.0 * std::abs(point.h) / point.T;
  // 1/2 - p = X / (2Y) with both sides scaled by exp(-max(a, b)).
  const double m = std::max(a, b);
  const double log_y =
      std::log(std::exp(b - m) + std::exp(-b - m) + std::exp(a - m) + std::exp(-a - m));
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double log_x = 0.0;
  if (b >= a) {
    double terms[3] = {a == b ? kNegInf : std::log(-std::expm1(a - b)), -2.0 * b,
                       std::log(3.0) - a - b};
    const double top = *std::max_element(terms, terms + 3);
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    log_x = top + std::log(sum);
  } else {
    const double x = std::exp(b - a) + std::exp(-b - a) - 1.0 + 3.0 * std::exp(-2.0 * a);
    if (x <= 0.0) return kNegInf;
    log_x = std::log(x);
  }
  return log_x - std::log(2.0) - log_y;
}

CriterionEvaluation dp_unique(const ThermoPoint& point, double pc_bound) {
  if (!(pc_bound > 0.0 && pc_bound < 1.0)) {
    throw ParameterError("pc bound must lie in (0, 1)");
  }
  return make_evaluation(Criterion::dp, 1, point, CellSize{}, CellSize{}, dp_p(point), pc_bound);
}

double dc_gamma(const ThermoPoint& point) {
  point.validate();
  const double a = 2.0 * point.J / point.T;
  double best = 0.0;
  for (int m : {-3, -1, 1, 3}) {
    best = std::max(best, sinh_ratio(a, 2.0 * (point.J * m + point.h) / point.T));
  }
  return best;
}

CriterionEvaluation dc_unique(const ThermoPoint& point) {
  return make_evaluation(Criterion::dc, 1, point, CellSize{}, CellSize{}, dc_gamma(point),
                         kDobrushinThreshold);
}

std::vector<FieldPlacement> enumerate_placements(int n, const FieldSpec& spec,
                                                 PlacementMode mode) {
  spec.validate();
  const SquareWindow window = build_window(n);
  std::vector<FieldPlacement> out;
  auto seen = [&out](const std::vector<double>& field) {
    return std::any_of(out.begin(), out.end(),
                       [&](const FieldPlacement& p) { return p.window_field == field; });
  };
  for (int i = 0; i < spec.L1.period(); ++i) {
    for (int j = 0; j < spec.L2.period(); ++j) {
      const Site offset{i, j};
      std::vector<double> field;
      field.reserve(window.interior.size());
      for (const Site& s : window.interior) field.push_back(field_value(s + offset, spec));
      if (seen(field)) continue;
      if (mode == PlacementMode::signflip_dedup) {
        std::vector<double> flipped(field);
        for (double& v : flipped) v = -v;
        if (seen(flipped)) continue;
      }
      out.push_back({offset, std::move(field)});
    }
  }
  return out;
}

std::vector<double> alpha_matrix(const EnergyTables& tables, double beta) {
  const SquareWindow& window = tables.window();
  const int sites = window.interior_size();
  const int nb = window.boundary_size();
  const std::size_t etas = window.boundary_configs();

  std::vector<double> marginals(etas * sites);
  std::vector<double> scratch(window.interior_configs());
  for (std::size_t eta = 0; eta < etas; ++eta) {
    marginals_plus_into(tables, static_cast<BoundaryConfig>(eta), beta, scratch,
                        std::span<double>(marginals.data() + eta * sites, sites));
  }

  std::vector<double> alpha(static_cast<std::size_t>(sites) * nb, 0.0);
  for (std::size_t eta = 0; eta < etas; ++eta) {
    const double* up = marginals.data() + eta * sites;
    for (int t = 0; t < nb; ++t) {
      if (!((eta >> t) & 1U)) continue;
      const double* down = marginals.data() + (eta ^ (std::size_t{1} << t)) * sites;
      for (int s = 0; s < sites; ++s) {
        double& a = alpha[static_cast<std::size_t>(s) * nb + t];
        a = std::max(a, std::abs(up[s] - down[s]));
      }
    }
  }
  return alpha;
}

double alpha_st(const EnergyTables& tables, int s_index, int t_index, double beta) {
  const SquareWindow& window = tables.window();
  if (s_index < 0 || s_index >= window.interior_size() || t_index < 0 ||
      t_index >= window.boundary_size()) {
    throw ParameterError("alpha_st: site index out of range");
  }
  const BoundaryConfig bit = BoundaryConfig{1} << t_index;
  std::vector<double> scratch(window.interior_configs());
  std::vector<double> up(window.interior_size());
  std::vector<double> down(window.interior_size());
  double best = 0.0;
  for (std::size_t eta = 0; eta < window.boundary_configs(); ++eta) {
    if (!(eta & bit)) continue;
    const auto plus = static_cast<BoundaryConfig>(eta);
    marginals_plus_into(tables, plus, beta, scratch, up);
    marginals_plus_into(tables, plus ^ bit, beta, scratch, down);
    best = std::max(best, std::abs(up[s_index] - down[s_index]));
  }
  return best;
}

DsEvaluator::DsEvaluator(int n, CellSize L1, CellSize L2, DsOptions options)
    : window_(build_window(n)), classes_(window_), L1_(L1), L2_(L2), options_(options) {
  if (n > kDefaultMaxDsSide && !options_.allow_large) {
    throw BoundError("window side n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kDefaultMaxDsSide) + "; pass allow_large to override");
  }
  const std::size_t entries =
      window_.interior_configs() * (1 + static_cast<std::size_t>(window_.boundary_size()));
  if (entries > kMaxTableEntries) {
    throw BoundError("window side n = " + std::to_string(n) +
                     " needs energy tables beyond the memory bound");
  }
  patterns_ = sign_patterns(window_, L1, L2, options_.placement_mode);
}

double DsEvaluator::placement_gamma(const std::vector<double>& window_field, double J,
                                    double beta, std::optional<double> stop_at) const {
  const EnergyTables tables = build_energy_tables(window_, window_field, J);
  const int sites = window_.interior_size();
  const int nb = window_.boundary_size();
  const std::size_t etas = window_.boundary_configs();

  // Marginals are computed lazily per boundary class so an early stop
  // skips the remaining partition sums.
  std::vector<double> marginals(classes_.size() * sites);
  std::vector<char> ready(classes_.size(), 0);
  std::vector<double> scratch(window_.interior_configs());
  auto marginal_row = [&](std::size_t eta) -> const double* {
    const std::uint32_t cls = classes_.class_of(static_cast<BoundaryConfig>(eta));
    double* row = marginals.data() + static_cast<std::size_t>(cls) * sites;
    if (!ready[cls]) {
      marginals_plus_into(tables, classes_.representative(cls), beta, scratch,
                          std::span<double>(row, sites));
      ready[cls] = 1;
    }
    return row;
  };

  const double limit = stop_at ? *stop_at * sites + 1e-9 : std::numeric_limits<double>::infinity();
  std::vector<double> alpha(static_cast<std::size_t>(sites) * nb, 0.0);
  double running = 0.0;
  for (std::size_t eta = 0; eta < etas; ++eta) {
    bool first = true;
    const double* up = nullptr;
    for (int t = 0; t < nb; ++t) {
      if (!((eta >> t) & 1U)) continue;
      if (first) {
        up = marginal_row(eta);
        first = false;
      }
      const double* down = marginal_row(eta ^ (std::size_t{1} << t));
      for (int s = 0; s < sites; ++s) {
        double& a = alpha[static_cast<std::size_t>(s) * nb + t];
        const double d = std::abs(up[s] - down[s]);
        if (d > a) {
          running += d - a;
          a = d;
        }
      }
    }
    if ((eta & 63U) == 63U && running >= limit) return running / sites;
  }

  double total = 0.0;
  for (double a : alpha) total += a;
  return total / sites;
}

double DsEvaluator::gamma_until(const ThermoPoint& point, double stop_at) const {
  point.validate();
  FieldSpec{L1_, L2_, point.h}.validate();
  const double beta = point.beta();
  double best = 0.0;
  std::vector<double> field(window_.interior.size());
  for (const auto& signs : patterns_) {
    for (std::size_t k = 0; k < signs.size(); ++k) field[k] = point.h * signs[k];
    best = std::max(best, placement_gamma(field, point.J, beta, stop_at));
    if (best >= stop_at) break;
  }
  return best;
}

double DsEvaluator::gamma(const ThermoPoint& point) const {
  return gamma_until(point, std::numeric_limits<double>::infinity());
}

double ds_gamma(int n, const ThermoPoint& point, CellSize L1, CellSize L2,
                const DsOptions& options) {
  return DsEvaluator(n, L1, L2, options).gamma(point);
}

CriterionEvaluation ds_unique(int n, const ThermoPoint& point, CellSize L1, CellSize L2,
                              const DsOptions& options) {
  return make_evaluation(Criterion::ds, n, point, L1, L2, ds_gamma(n, point, L1, L2, options),
                         kDobrushinShlosmanThreshold);
}

}  // namespace cellboard
