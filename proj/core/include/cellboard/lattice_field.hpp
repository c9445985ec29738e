#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cellboard {

struct Site {
  int x = 0;
  int y = 0;

  friend constexpr Site operator+(Site a, Site b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr auto operator<=>(const Site&, const Site&) = default;
};

// Side length of a field cell along one axis. An infinite axis carries no
// sign alternation along that direction (cell index is always 0).
class CellSize {
 public:
  enum class Kind : std::uint8_t { finite, infinite };

  constexpr CellSize() = default;

  static CellSize finite(int value);
  static constexpr CellSize infinite() { return CellSize(Kind::infinite, 0); }

  // Accepts a positive integer or the token "inf".
  static CellSize parse(std::string_view text);

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_infinite() const { return kind_ == Kind::infinite; }
  // Precondition: !is_infinite().
  int value() const;
  // 1/L, with 1/inf = 0.
  double reciprocal() const;
  // Floored cell index of a coordinate along this axis.
  int cell_index(int coordinate) const;
  // Length of one full field period (2L); 1 for an infinite axis.
  int period() const;

  std::string to_string() const;

  friend constexpr bool operator==(const CellSize&, const CellSize&) = default;

 private:
  constexpr CellSize(Kind kind, int value) : kind_(kind), value_(value) {}

  Kind kind_ = Kind::finite;
  int value_ = 1;
};

struct FieldSpec {
  CellSize L1;
  CellSize L2;
  double h = 0.0;

  void validate() const;
};

struct ModelParams {
  double J = 1.0;
  FieldSpec field;

  void validate() const;
};

enum class GroundStateKind { plus, minus, cellboard };

// +1 on white cells (even cell-index sum), -1 on black cells.
int field_sign(Site site, const FieldSpec& spec);

double field_value(Site site, const FieldSpec& spec);

// h_c = 2J/L1 + 2J/L2.
double critical_field(double J, CellSize L1, CellSize L2);

// Energy per site of the periodic ground-state candidate, closed form.
double energy_density(GroundStateKind kind, const ModelParams& params);

// Field amplitude at which the cell-board configuration and the constant
// plus configuration have equal energy density.
double ground_state_crossing(double J, CellSize L1, CellSize L2);

}  // namespace cellboard
