#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellboard/finite_gibbs.hpp"
#include "cellboard/lattice_field.hpp"

namespace cellboard {

// Lower bound on the site-percolation threshold of Z^2.
inline constexpr double kDefaultPcBound = 0.556;
inline constexpr double kDobrushinThreshold = 0.25;
inline constexpr double kDobrushinShlosmanThreshold = 1.0;
// Largest window side evaluated without an explicit override.
inline constexpr int kDefaultMaxDsSide = 3;

struct ThermoPoint {
  double J = 1.0;
  double h = 0.0;
  double T = 1.0;

  double beta() const { return 1.0 / T; }
  void validate() const;
};

enum class Criterion { dp, dc, ds };

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view text);

struct CriterionEvaluation {
  Criterion criterion = Criterion::dp;
  int n = 1;
  ThermoPoint point;
  CellSize L1;
  CellSize L2;
  double value = 0.0;
  double threshold = 0.0;
  bool unique = false;
};

// Disagreement percolation: p = sinh(8J/T) / (cosh(2h/T) + cosh(8J/T)).
double dp_p(const ThermoPoint& point);
// log(1/2 - p), evaluated without forming p, so the gap stays visible where
// p rounds to 1/2 (h >= 4J at low T). -inf when p >= 1/2.
double dp_log_half_gap(const ThermoPoint& point);
CriterionEvaluation dp_unique(const ThermoPoint& point, double pc_bound = kDefaultPcBound);

// Dobrushin: max over the neighbour sums m in {-3,-1,1,3} of
// sinh(2J/T) / (cosh(2(Jm + h)/T) + cosh(2J/T)).
double dc_gamma(const ThermoPoint& point);
CriterionEvaluation dc_unique(const ThermoPoint& point);

enum class PlacementMode {
  full_period,     // every distinct pattern over one 2L1 x 2L2 period
  signflip_dedup,  // keep one pattern of each global sign-flip pair
};

std::string_view to_string(PlacementMode mode);
PlacementMode parse_placement_mode(std::string_view text);

// Field restricted to S_n + offset, re-indexed row-major onto S_n.
struct FieldPlacement {
  Site offset;
  std::vector<double> window_field;
};

// Distinct field patterns seen by S_n over one field period, in
// lexicographic offset order (first occurrence wins).
std::vector<FieldPlacement> enumerate_placements(int n, const FieldSpec& spec,
                                                 PlacementMode mode = PlacementMode::full_period);

// max over eta (with eta(t) free) of |mu(sigma(s)=+1 | eta, +) - mu(... | eta, -)|.
double alpha_st(const EnergyTables& tables, int s_index, int t_index, double beta);

// alpha_st for every (s, t), row-major in s: result[s * |boundary| + t].
std::vector<double> alpha_matrix(const EnergyTables& tables, double beta);

struct DsOptions {
  PlacementMode placement_mode = PlacementMode::full_period;
  bool allow_large = false;
};

// Immutable Dobrushin-Shlosman evaluator for one (n, L1, L2). Sign patterns,
// the window and the boundary classes are built once; evaluations only
// rebuild the energy tables. Safe to share between threads.
class DsEvaluator {
 public:
  DsEvaluator(int n, CellSize L1, CellSize L2, DsOptions options = {});

  int n() const { return window_.n; }
  CellSize L1() const { return L1_; }
  CellSize L2() const { return L2_; }
  const DsOptions& options() const { return options_; }
  std::size_t placement_count() const { return patterns_.size(); }

  // gamma_n at `point`.
  double gamma(const ThermoPoint& point) const;

  // Like gamma(), but may stop as soon as the result is known to be
  // >= stop_at; the returned value is then only a lower bound that is
  // itself >= stop_at. Values below stop_at are exact.
  double gamma_until(const ThermoPoint& point, double stop_at) const;

  // (1/n^2) sum_{s,t} alpha_st for a single placement.
  double placement_gamma(const std::vector<double>& window_field, double J, double beta,
                         std::optional<double> stop_at = std::nullopt) const;

 private:
  SquareWindow window_;
  BoundaryClasses classes_;
  CellSize L1_;
  CellSize L2_;
  DsOptions options_;
  std::vector<std::vector<int>> patterns_;  // field signs per placement
};

double ds_gamma(int n, const ThermoPoint& point, CellSize L1, CellSize L2,
                const DsOptions& options = {});
CriterionEvaluation ds_unique(int n, const ThermoPoint& point, CellSize L1, CellSize L2,
                              const DsOptions& options = {});

}  // namespace cellboard
