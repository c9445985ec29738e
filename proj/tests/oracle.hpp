#pragma once

// Slow reference implementations used only by the tests. Nothing here touches
// the library kernels: geometry, field signs, energies and placements are all
// rebuilt from the model definition and summed directly in long double.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

// Cell size; nullopt is an infinite axis.
using Size = std::optional<int>;

inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline int sign_at(int x, int y, Size L1, Size L2) {
  const int cx = L1 ? floor_div(x, *L1) : 0;
  const int cy = L2 ? floor_div(y, *L2) : 0;
  return ((cx + cy) % 2 == 0) ? 1 : -1;
}

// Exterior neighbours of the n x n square: bottom, right, top, left.
inline std::vector<std::pair<int, int>> shell(int n) {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n; ++x) out.push_back({x, -1});
  for (int y = 0; y < n; ++y) out.push_back({n, y});
  for (int x = 0; x < n; ++x) out.push_back({x, n});
  for (int y = 0; y < n; ++y) out.push_back({-1, y});
  return out;
}

struct Window {
  int n;
  std::vector<std::pair<int, int>> boundary;

  explicit Window(int side) : n(side), boundary(shell(side)) {}

  int spin(std::uint32_t sigma, std::uint32_t eta, int x, int y) const {
    if (x >= 0 && x < n && y >= 0 && y < n) return ((sigma >> (y * n + x)) & 1U) ? 1 : -1;
    for (std::size_t t = 0; t < boundary.size(); ++t) {
      if (boundary[t].first == x && boundary[t].second == y) return ((eta >> t) & 1U) ? 1 : -1;
    }
    return 0;  // diagonal corners and beyond: no bond
  }

  // -J sum over bonds touching the interior - sum_s h(s) sigma(s).
  long double energy(const std::vector<double>& field, double J, std::uint32_t sigma,
                     std::uint32_t eta) const {
    long double e = 0.0L;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const int s = spin(sigma, eta, x, y);
        e -= static_cast<long double>(field[y * n + x]) * s;
        // right and up bonds from every interior site; left/down only across the edge
        e -= static_cast<long double>(J) * s * spin(sigma, eta, x + 1, y);
        e -= static_cast<long double>(J) * s * spin(sigma, eta, x, y + 1);
        if (x == 0) e -= static_cast<long double>(J) * s * spin(sigma, eta, x - 1, y);
        if (y == 0) e -= static_cast<long double>(J) * s * spin(sigma, eta, x, y - 1);
      }
    }
    return e;
  }

  // mu(sigma(s) = +1 | eta) for every s, by direct summation.
  std::vector<long double> marginals(const std::vector<double>& field, double J, double beta,
                                     std::uint32_t eta) const {
    const std::uint32_t configs = 1U << (n * n);
    std::vector<long double> e(configs);
    for (std::uint32_t sigma = 0; sigma < configs; ++sigma) e[sigma] = energy(field, J, sigma, eta);
    const long double ground = *std::min_element(e.begin(), e.end());
    std::vector<long double> plus(n * n, 0.0L);
    long double z = 0.0L;
    for (std::uint32_t sigma = 0; sigma < configs; ++sigma) {
      const long double w = std::exp(-static_cast<long double>(beta) * (e[sigma] - ground));
      z += w;
      for (int s = 0; s < n * n; ++s) {
        if ((sigma >> s) & 1U) plus[s] += w;
      }
    }
    for (auto& p : plus) p /= z;
    return plus;
  }

  // Same as marginals() but summing the minus events, for normalization checks.
  std::vector<long double> marginals_minus(const std::vector<double>& field, double J,
                                           double beta, std::uint32_t eta) const {
    const std::uint32_t configs = 1U << (n * n);
    std::vector<long double> e(configs);
    for (std::uint32_t sigma = 0; sigma < configs; ++sigma) e[sigma] = energy(field, J, sigma, eta);
    const long double ground = *std::min_element(e.begin(), e.end());
    std::vector<long double> minus(n * n, 0.0L);
    long double z = 0.0L;
    for (std::uint32_t sigma = 0; sigma < configs; ++sigma) {
      const long double w = std::exp(-static_cast<long double>(beta) * (e[sigma] - ground));
      z += w;
      for (int s = 0; s < n * n; ++s) {
        if (!((sigma >> s) & 1U)) minus[s] += w;
      }
    }
    for (auto& p : minus) p /= z;
    return minus;
  }

  // alpha[s][t] over every boundary config.
  std::vector<std::vector<long double>> alpha(const std::vector<double>& field, double J,
                                              double beta) const {
    const std::uint32_t etas = 1U << boundary.size();
    std::vector<std::vector<long double>> m(etas);
    for (std::uint32_t eta = 0; eta < etas; ++eta) m[eta] = marginals(field, J, beta, eta);
    std::vector<std::vector<long double>> a(n * n, std::vector<long double>(boundary.size(), 0.0L));
    for (int s = 0; s < n * n; ++s) {
      for (std::size_t t = 0; t < boundary.size(); ++t) {
        for (std::uint32_t eta = 0; eta < etas; ++eta) {
          const long double d = std::fabs(m[eta][s] - m[eta ^ (1U << t)][s]);
          a[s][t] = std::max(a[s][t], d);
        }
      }
    }
    return a;
  }

  long double gamma_of(const std::vector<double>& field, double J, double beta) const {
    long double sum = 0.0L;
    for (const auto& row : alpha(field, J, beta)) {
      for (long double v : row) sum += v;
    }
    return sum / (n * n);
  }
};

// Every field pattern on S_n + (i, j) over a full period, duplicates removed.
inline std::vector<std::vector<double>> placements(int n, Size L1, Size L2, double h) {
  const int p1 = L1 ? 2 * *L1 : 1;
  const int p2 = L2 ? 2 * *L2 : 1;
  std::vector<std::vector<double>> out;
  for (int i = 0; i < p1; ++i) {
    for (int j = 0; j < p2; ++j) {
      std::vector<double> f;
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) f.push_back(h * sign_at(x + i, y + j, L1, L2));
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
  }
  return out;
}

inline long double ds_gamma(int n, Size L1, Size L2, double J, double h, double T) {
  const Window w(n);
  long double best = 0.0L;
  for (const auto& f : placements(n, L1, L2, h)) best = std::max(best, w.gamma_of(f, J, 1.0 / T));
  return best;
}

// Energy per site of a periodic configuration, summed over one explicit
// 2L1 x 2L2 torus (length 1 along an infinite axis); each bond counted once.
enum class State { plus, minus, board };

inline long double period_energy(State state, double J, Size L1, Size L2, double h) {
  const int p1 = L1 ? 2 * *L1 : 1;
  const int p2 = L2 ? 2 * *L2 : 1;
  auto spin = [&](int x, int y) {
    switch (state) {
      case State::plus: return 1;
      case State::minus: return -1;
      case State::board: return sign_at(x, y, L1, L2);
    }
    return 0;
  };
  long double e = 0.0L;
  for (int x = 0; x < p1; ++x) {
    for (int y = 0; y < p2; ++y) {
      const int s = spin(x, y);
      e -= static_cast<long double>(J) * s * spin((x + 1) % p1, y);
      e -= static_cast<long double>(J) * s * spin(x, (y + 1) % p2);
      e -= static_cast<long double>(h) * sign_at(x, y, L1, L2) * s;
    }
  }
  return e / (p1 * p2);
}

// Dobrushin single-site function in its piecewise form on [0, 4J].
inline double dc_piecewise(double J, double h, double T) {
  const double m = h <= 2.0 * J ? -1.0 : -3.0;
  return std::sinh(2.0 * J / T) / (std::cosh(2.0 * (J * m + h) / T) + std::cosh(2.0 * J / T));
}

// Reference constants evaluated at 30 digits with mpmath and frozen.
inline constexpr double kTanh4 = 0.999329299739067043792;
inline constexpr double kFourOverLn3 = 3.64095690650734957446;
inline constexpr double kTwoOverLn5Thirds = 3.91523037794243537367;
inline constexpr double kDpRootAtZeroField = 6.37933533074193;  // 4 / atanh(0.556)
inline constexpr double kDpJ1H1T2 = 0.945881275898148363562;
inline constexpr double kDpJ1H25T07 = 0.986423074455610149953;

}  // namespace oracle
