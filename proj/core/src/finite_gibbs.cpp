#include "cellboard/finite_gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cellboard/error.hpp"

namespace cellboard {

namespace {

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw ParameterError("inverse temperature must be finite and > 0");
  }
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

SquareWindow build_window(int n) {
  if (n < 1 || n > kMaxWindowSide) {
    throw BoundError("window side n must lie in [1, " + std::to_string(kMaxWindowSide) +
                     "], got " + std::to_string(n));
  }
  SquareWindow w;
  w.n = n;
  auto index = [n](int x, int y) { return y * n + x; };

  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) w.interior.push_back({x, y});

  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      if (x + 1 < n) w.interior_bonds.push_back({index(x, y), index(x + 1, y)});
      if (y + 1 < n) w.interior_bonds.push_back({index(x, y), index(x, y + 1)});
    }

  auto add_boundary = [&](Site outside, Site inside) {
    const int t = static_cast<int>(w.boundary.size());
    const int s = index(inside.x, inside.y);
    w.boundary.push_back(outside);
    w.boundary_neighbour.push_back(s);
    w.crossing_bonds.push_back({s, t});
  };
  for (int x = 0; x < n; ++x) add_boundary({x, -1}, {x, 0});
  for (int y = 0; y < n; ++y) add_boundary({n, y}, {n - 1, y});
  for (int x = 0; x < n; ++x) add_boundary({x, n}, {x, n - 1});
  for (int y = 0; y < n; ++y) add_boundary({-1, y}, {0, y});
  return w;
}

EnergyTables::EnergyTables(const SquareWindow& window, std::span<const double> field, double J)
    : window_(window), J_(J), field_(field.begin(), field.end()) {
  if (!std::isfinite(J) || J <= 0.0) throw ParameterError("coupling J must be finite and > 0");
  if (static_cast<int>(field.size()) != window.interior_size()) {
    throw ParameterError("window field has " + std::to_string(field.size()) +
                         " entries, expected " + std::to_string(window.interior_size()));
  }
  for (double v : field) {
    if (!std::isfinite(v)) throw ParameterError("window field values must be finite");
  }
  if (window.interior_size() > kMaxInteriorBits || window.boundary_size() > kMaxBoundaryBits) {
    throw BoundError("window exceeds the enumeration bound");
  }
  configs_ = window.interior_configs();
  const std::size_t entries = configs_ * (1 + static_cast<std::size_t>(window.boundary_size()));
  if (entries > kMaxTableEntries) {
    throw BoundError("energy tables for n = " + std::to_string(window.n) + " need " +
                     std::to_string(entries) + " entries, above the limit of " +
                     std::to_string(kMaxTableEntries));
  }

  const int sites = window.interior_size();
  interior_energy_.assign(configs_, 0.0);
  for (std::size_t sigma = 0; sigma < configs_; ++sigma) {
    auto spin = [sigma](int k) { return ((sigma >> k) & 1U) ? 1.0 : -1.0; };
    double bonds = 0.0;
    for (const Bond& bond : window.interior_bonds) bonds += spin(bond.a) * spin(bond.b);
    double zeeman = 0.0;
    for (int k = 0; k < sites; ++k) zeeman += field_[k] * spin(k);
    interior_energy_[sigma] = -J * bonds - zeeman;
  }

  coupling_.assign(configs_ * window.boundary_size(), 0.0);
  for (int t = 0; t < window.boundary_size(); ++t) {
    const int s = window.boundary_neighbour[t];
    double* row = coupling_.data() + static_cast<std::size_t>(t) * configs_;
    for (std::size_t sigma = 0; sigma < configs_; ++sigma) {
      row[sigma] = ((sigma >> s) & 1U) ? -J : J;
    }
  }
}

double EnergyTables::energy(InteriorConfig sigma, BoundaryConfig eta) const {
  double e = interior_energy_[sigma];
  for (int t = 0; t < window_.boundary_size(); ++t) {
    e += (((eta >> t) & 1U) ? 1.0 : -1.0) * coupling(t, sigma);
  }
  return e;
}

void EnergyTables::energies(BoundaryConfig eta, std::span<double> out) const {
  std::copy(interior_energy_.begin(), interior_energy_.end(), out.begin());
  double* dst = out.data();
  for (int t = 0; t < window_.boundary_size(); ++t) {
    const double* row = coupling_.data() + static_cast<std::size_t>(t) * configs_;
    if ((eta >> t) & 1U) {
      for (std::size_t k = 0; k < configs_; ++k) dst[k] += row[k];
    } else {
      for (std::size_t k = 0; k < configs_; ++k) dst[k] -= row[k];
    }
  }
}

EnergyTables build_energy_tables(const SquareWindow& window, std::span<const double> field,
                                 double J) {
  return EnergyTables(window, field, J);
}

void marginals_plus_into(const EnergyTables& tables, BoundaryConfig eta, double beta,
                         std::span<double> scratch, std::span<double> out) {
  check_beta(beta);
  const SquareWindow& window = tables.window();
  const std::size_t configs = window.interior_configs();
  double* w = scratch.data();
  tables.energies(eta, scratch.first(configs));

  const double ground = *std::min_element(w, w + configs);
  double z = 0.0;
  for (std::size_t k = 0; k < configs; ++k) {
    w[k] = std::exp(-beta * (w[k] - ground));
    z += w[k];
  }

  // Configs with bit s set form blocks of length 2^s at stride 2^{s+1}.
  for (int s = 0; s < window.interior_size(); ++s) {
    const std::size_t block = std::size_t{1} << s;
    double up = 0.0;
    for (std::size_t base = block; base < configs; base += 2 * block) {
      for (std::size_t k = base; k < base + block; ++k) up += w[k];
    }
    out[s] = up / z;
  }
}

std::vector<double> marginals_plus(const EnergyTables& tables, BoundaryConfig eta, double beta) {
  std::vector<double> scratch(tables.window().interior_configs());
  std::vector<double> out(tables.window().interior_size());
  marginals_plus_into(tables, eta, beta, scratch, out);
  return out;
}

double single_site_tv(double J, double site_field, int eta_sum, int eta_sum_prime,
                      double beta) {
  check_beta(beta);
  return std::abs(logistic(2.0 * beta * (J * eta_sum + site_field)) -
                  logistic(2.0 * beta * (J * eta_sum_prime + site_field)));
}

BoundaryClasses::BoundaryClasses(const SquareWindow& window) {
  const int sites = window.interior_size();
  std::vector<int> degree(sites, 0);
  for (int s : window.boundary_neighbour) ++degree[s];
  // Mixed-radix key over the effective boundary field of each site.
  std::vector<std::uint32_t> radix(sites, 1);
  std::uint32_t keys = 1;
  for (int s = 0; s < sites; ++s) {
    radix[s] = keys;
    keys *= static_cast<std::uint32_t>(degree[s] + 1);
  }

  const std::size_t configs = window.boundary_configs();
  class_of_.resize(configs);
  std::vector<std::uint32_t> class_of_key(keys, UINT32_MAX);
  for (std::size_t eta = 0; eta < configs; ++eta) {
    std::uint32_t key = 0;
    for (int t = 0; t < window.boundary_size(); ++t) {
      if ((eta >> t) & 1U) key += radix[window.boundary_neighbour[t]];
    }
    if (class_of_key[key] == UINT32_MAX) {
      class_of_key[key] = static_cast<std::uint32_t>(representatives_.size());
      representatives_.push_back(static_cast<BoundaryConfig>(eta));
    }
    class_of_[eta] = class_of_key[key];
  }
}

}  // namespace cellboard
