#include "cellboard/lattice_field.hpp"

#include <charconv>
#include <cmath>

#include "cellboard/error.hpp"

namespace cellboard {

namespace {

constexpr int floor_div(int a, int b) {
  const int q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

CellSize CellSize::finite(int value) {
  if (value < 1) {
    throw ParameterError("cell size must be >= 1, got " + std::to_string(value));
  }
  return CellSize(Kind::finite, value);
}

CellSize CellSize::parse(std::string_view text) {
  if (text == "inf" || text == "INF" || text == "infinite") return infinite();
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("invalid cell size '" + std::string(text) +
                         "' (expected a positive integer or \"inf\")");
  }
  return finite(value);
}

int CellSize::value() const {
  if (is_infinite()) throw ParameterError("infinite cell size has no finite value");
  return value_;
}

double CellSize::reciprocal() const {
  return is_infinite() ? 0.0 : 1.0 / static_cast<double>(value_);
}

int CellSize::cell_index(int coordinate) const {
  return is_infinite() ? 0 : floor_div(coordinate, value_);
}

int CellSize::period() const { return is_infinite() ? 1 : 2 * value_; }

std::string CellSize::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(value_);
}

void FieldSpec::validate() const {
  if (!std::isfinite(h) || h < 0.0) {
    throw ParameterError("field amplitude h must be finite and >= 0");
  }
}

void ModelParams::validate() const {
  if (!std::isfinite(J) || J <= 0.0) {
    throw ParameterError("coupling J must be finite and > 0");
  }
  field.validate();
}

int field_sign(Site site, const FieldSpec& spec) {
  const int cells = spec.L1.cell_index(site.x) + spec.L2.cell_index(site.y);
  return (cells % 2 == 0) ? 1 : -1;
}

double field_value(Site site, const FieldSpec& spec) {
  return spec.h * field_sign(site, spec);
}

double critical_field(double J, CellSize L1, CellSize L2) {
  if (!std::isfinite(J) || J <= 0.0) throw ParameterError("coupling J must be finite and > 0");
  return 2.0 * J * L1.reciprocal() + 2.0 * J * L2.reciprocal();
}

double energy_density(GroundStateKind kind, const ModelParams& params) {
  params.validate();
  const double J = params.J;
  const double h = params.field.h;
  // The staggered field averages to zero over a period unless it is
  // homogeneous (both axes infinite).
  const double mean_sign =
      (params.field.L1.is_infinite() && params.field.L2.is_infinite()) ? 1.0 : 0.0;
  switch (kind) {
    case GroundStateKind::plus:
      return -2.0 * J - h * mean_sign;
    case GroundStateKind::minus:
      return -2.0 * J + h * mean_sign;
    case GroundStateKind::cellboard:
      return -2.0 * J +
             2.0 * J * (params.field.L1.reciprocal() + params.field.L2.reciprocal()) - h;
  }
  return 0.0;
}

double ground_state_crossing(double J, CellSize L1, CellSize L2) {
  auto gap = [&](double h) {
    const ModelParams params{J, FieldSpec{L1, L2, h}};
    return energy_density(GroundStateKind::cellboard, params) -
           energy_density(GroundStateKind::plus, params);
  };
  // The gap is affine in h.
  const double at_zero = gap(0.0);
  const double slope = gap(1.0) - at_zero;
  if (slope == 0.0) return critical_field(J, L1, L2);
  return -at_zero / slope;
}

}  // namespace cellboard
