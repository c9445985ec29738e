#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cellboard/lattice_field.hpp"

namespace cellboard {

// Bit k set <=> spin at interior[k] (resp. boundary[k]) is +1.
using InteriorConfig = std::uint32_t;
using BoundaryConfig = std::uint32_t;

inline constexpr int kMaxWindowSide = 5;
inline constexpr int kMaxInteriorBits = 25;
inline constexpr int kMaxBoundaryBits = 24;
// Largest EnergyTables allocation, in doubles (2 GiB).
inline constexpr std::size_t kMaxTableEntries = std::size_t{1} << 28;

struct Bond {
  int a;  // interior index
  int b;  // interior index, or boundary index for crossing bonds
};

// The square S_n = {(x, y) : 0 <= x, y < n} together with its exterior
// nearest-neighbour shell.
//
// Interior sites are row-major (index = y * n + x). Boundary sites are
// ordered bottom (y = -1), right (x = n), top (y = n), left (x = -1), each
// side by increasing free coordinate. Diagonal corners are not part of the
// shell because they share no bond with the interior.
struct SquareWindow {
  int n = 0;
  std::vector<Site> interior;
  std::vector<Site> boundary;
  std::vector<Bond> interior_bonds;
  std::vector<Bond> crossing_bonds;  // {interior index, boundary index}
  // boundary_neighbour[t] is the unique interior site bonded to boundary t.
  std::vector<int> boundary_neighbour;

  int interior_size() const { return static_cast<int>(interior.size()); }
  int boundary_size() const { return static_cast<int>(boundary.size()); }
  std::size_t interior_configs() const { return std::size_t{1} << interior.size(); }
  std::size_t boundary_configs() const { return std::size_t{1} << boundary.size(); }
};

SquareWindow build_window(int n);

// Splits H(sigma | eta) = E_int(sigma) + sum_t eta(t) * c_t(sigma) so that the
// interior work is shared by every boundary condition.
class EnergyTables {
 public:
  EnergyTables(const SquareWindow& window, std::span<const double> field, double J);

  const SquareWindow& window() const { return window_; }
  double J() const { return J_; }
  std::span<const double> field() const { return field_; }

  double interior_energy(InteriorConfig sigma) const { return interior_energy_[sigma]; }
  double coupling(int t, InteriorConfig sigma) const {
    return coupling_[static_cast<std::size_t>(t) * configs_ + sigma];
  }
  // All E_int values, indexed by InteriorConfig.
  std::span<const double> interior_energies() const { return interior_energy_; }
  // c_t(sigma) for one boundary site, indexed by InteriorConfig.
  std::span<const double> couplings(int t) const {
    return {coupling_.data() + static_cast<std::size_t>(t) * configs_, configs_};
  }

  double energy(InteriorConfig sigma, BoundaryConfig eta) const;

  // Fills energies[sigma] = H(sigma | eta) for every interior config.
  void energies(BoundaryConfig eta, std::span<double> out) const;

 private:
  SquareWindow window_;
  double J_;
  std::vector<double> field_;
  std::size_t configs_;
  std::vector<double> interior_energy_;
  std::vector<double> coupling_;
};

// Throws BoundError when the tables would exceed the enumeration bounds.
EnergyTables build_energy_tables(const SquareWindow& window, std::span<const double> field,
                                 double J);

// mu(sigma(s) = +1 | eta) for every interior site s, with max-shifted weights.
std::vector<double> marginals_plus(const EnergyTables& tables, BoundaryConfig eta, double beta);

// Same, writing into caller-owned buffers. `scratch` must hold
// interior_configs() doubles and `out` interior_size() doubles.
void marginals_plus_into(const EnergyTables& tables, BoundaryConfig eta, double beta,
                         std::span<double> scratch, std::span<double> out);

// |mu_s(+1 | sum eta) - mu_s(+1 | sum eta')| for a single site with four
// neighbours.
double single_site_tv(double J, double site_field, int eta_sum, int eta_sum_prime, double beta);

// Boundary conditions inducing the same effective field on every interior
// site give identical conditional distributions. This groups the 2^{4n}
// boundary configs into those classes.
class BoundaryClasses {
 public:
  explicit BoundaryClasses(const SquareWindow& window);

  std::size_t size() const { return representatives_.size(); }
  std::uint32_t class_of(BoundaryConfig eta) const { return class_of_[eta]; }
  BoundaryConfig representative(std::uint32_t cls) const { return representatives_[cls]; }

 private:
  std::vector<std::uint32_t> class_of_;
  std::vector<BoundaryConfig> representatives_;
};

}  // namespace cellboard
