#include <cmath>
#include <limits>

#include "cellboard/error.hpp"
#include "cellboard/lattice_field.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cellboard;

namespace {

FieldSpec spec(CellSize a, CellSize b, double h = 1.0) { return {a, b, h}; }
CellSize fin(int v) { return CellSize::finite(v); }
oracle::Size osize(CellSize c) {
  return c.is_infinite() ? oracle::Size{} : oracle::Size{c.value()};
}

}  // namespace

TEST_CASE("cell size parsing and arithmetic") {
  CHECK(CellSize::parse("3") == fin(3));
  CHECK(CellSize::parse("inf").is_infinite());
  CHECK(CellSize::infinite().reciprocal() == 0.0);
  CHECK(fin(4).reciprocal() == doctest::Approx(0.25));
  CHECK(fin(2).period() == 4);
  CHECK(CellSize::infinite().period() == 1);
  CHECK(fin(3).cell_index(-1) == -1);
  CHECK(fin(3).cell_index(-3) == -1);
  CHECK(fin(3).cell_index(-4) == -2);
  CHECK(CellSize::infinite().cell_index(-1000) == 0);
  CHECK_THROWS_AS(fin(0), ParameterError);
  CHECK_THROWS_AS(CellSize::parse("-2"), ParameterError);
  CHECK_THROWS_AS(CellSize::parse("two"), ParameterError);
  CHECK_THROWS_AS(CellSize::parse(""), ParameterError);
}

TEST_CASE("field sign") {
  CHECK(field_sign({0, 0}, spec(fin(1), fin(1))) == 1);
  CHECK(field_sign({0, 0}, spec(fin(3), fin(2))) == 1);
  CHECK(field_sign({0, 0}, spec(CellSize::infinite(), fin(5))) == 1);
  CHECK(field_sign({3, 0}, spec(fin(3), fin(2))) == -1);
  CHECK(field_sign({-1, 0}, spec(fin(1), fin(1))) == -1);
  CHECK(field_sign({-1, -1}, spec(fin(1), fin(1))) == 1);
}

TEST_CASE("field value") {
  CHECK(field_value({0, 0}, spec(fin(2), fin(3), 1.5)) == 1.5);
  CHECK(field_value({0, 1}, spec(fin(1), fin(1), 2.0)) == -2.0);
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y) CHECK(std::abs(field_value({x, y}, spec(fin(2), fin(1), 0.0))) == 0.0);
}

TEST_CASE("field periodicity, antiperiodicity and zero mean") {
  const CellSize sizes[] = {fin(1), fin(2), fin(3), fin(5)};
  for (CellSize a : sizes) {
    for (CellSize b : sizes) {
      const FieldSpec f = spec(a, b, 0.7);
      int total = 0;
      for (int x = 0; x < a.period(); ++x)
        for (int y = 0; y < b.period(); ++y) total += field_sign({x, y}, f);
      CHECK(total == 0);
      for (int x = -7; x <= 7; ++x) {
        for (int y = -7; y <= 7; ++y) {
          CHECK(field_value({x + a.period(), y}, f) == field_value({x, y}, f));
          CHECK(field_value({x, y + b.period()}, f) == field_value({x, y}, f));
          CHECK(field_value({x + a.value(), y}, f) == -field_value({x, y}, f));
          CHECK(field_value({x, y + b.value()}, f) == -field_value({x, y}, f));
          CHECK(field_sign({x, y}, f) == oracle::sign_at(x, y, a.value(), b.value()));
        }
      }
    }
  }
}

TEST_CASE("critical field") {
  CHECK(critical_field(1.0, fin(1), fin(1)) == 4.0);
  CHECK(critical_field(1.0, CellSize::infinite(), fin(1)) == 2.0);
  CHECK(critical_field(1.0, fin(2), fin(1)) == 3.0);
  CHECK(critical_field(1.0, fin(2), fin(2)) == 2.0);
  CHECK(critical_field(1.0, fin(3), fin(2)) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(critical_field(2.5, CellSize::infinite(), CellSize::infinite()) == 0.0);
  CHECK_THROWS_AS(critical_field(0.0, fin(1), fin(1)), ParameterError);
}

TEST_CASE("energy density closed forms") {
  const ModelParams any{1.0, spec(fin(2), fin(3), 1.3)};
  CHECK(energy_density(GroundStateKind::plus, any) == -2.0);
  CHECK(energy_density(GroundStateKind::minus, any) == -2.0);
  // every bond broken on the unit checkerboard
  CHECK(energy_density(GroundStateKind::cellboard, {1.0, spec(fin(1), fin(1), 0.0)}) == 2.0);
  for (auto [a, b] : {std::pair{fin(1), fin(1)}, {fin(2), fin(1)}, {fin(2), fin(2)}, {fin(3), fin(2)}}) {
    const double hc = critical_field(1.0, a, b);
    const ModelParams at{1.0, spec(a, b, hc)};
    CHECK(energy_density(GroundStateKind::cellboard, at) ==
          doctest::Approx(energy_density(GroundStateKind::plus, at)).epsilon(1e-15));
    CHECK(ground_state_crossing(1.0, a, b) == doctest::Approx(hc).epsilon(1e-14));
  }
}

TEST_CASE("energy density matches explicit period summation") {
  const CellSize sizes[] = {fin(1), fin(2), fin(3), fin(4), CellSize::infinite()};
  const GroundStateKind kinds[] = {GroundStateKind::plus, GroundStateKind::minus,
                                   GroundStateKind::cellboard};
  const oracle::State states[] = {oracle::State::plus, oracle::State::minus, oracle::State::board};
  for (CellSize a : sizes) {
    for (CellSize b : sizes) {
      for (double h : {0.0, 0.4, 1.7, 3.0, 5.5}) {
        for (double J : {0.5, 1.0, 2.0}) {
          const ModelParams p{J, spec(a, b, h)};
          for (int k = 0; k < 3; ++k) {
            const double closed = energy_density(kinds[k], p);
            const double summed = static_cast<double>(
                oracle::period_energy(states[k], J, osize(a), osize(b), h));
            CAPTURE(a.to_string());
            CAPTURE(b.to_string());
            CAPTURE(h);
            CAPTURE(k);
            CHECK(std::abs(closed - summed) <= 1e-12 * std::max(1.0, std::abs(summed)));
          }
        }
      }
    }
  }
}

TEST_CASE("ground-state ordering around the critical field") {
  for (auto [a, b] : {std::pair{fin(1), fin(1)}, {fin(2), fin(1)}, {fin(2), fin(2)}, {fin(3), fin(2)}}) {
    const double hc = critical_field(1.0, a, b);
    for (double d : {-1.0, -0.25, -0.01, 0.01, 0.25, 1.0}) {
      const double h = hc + d;
      if (h < 0.0) continue;
      const ModelParams p{1.0, spec(a, b, h)};
      const double plus = energy_density(GroundStateKind::plus, p);
      const double minus = energy_density(GroundStateKind::minus, p);
      const double board = energy_density(GroundStateKind::cellboard, p);
      if (d < 0) {
        CHECK(plus == minus);
        CHECK(plus < board);
      } else {
        CHECK(board < plus);
      }
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ModelParams{0.0, spec(fin(1), fin(1))}.validate()), ParameterError);
  CHECK_THROWS_AS((ModelParams{-1.0, spec(fin(1), fin(1))}.validate()), ParameterError);
  CHECK_THROWS_AS(spec(fin(1), fin(1), -0.5).validate(), ParameterError);
  CHECK_THROWS_AS(spec(fin(1), fin(1), std::numeric_limits<double>::quiet_NaN()).validate(),
                  ParameterError);
  CHECK_NOTHROW(spec(CellSize::infinite(), fin(1), 0.0).validate());
}
