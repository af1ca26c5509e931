#pragma once

#include <array>
#include <iosfwd>

#include "czlab/operators.hpp"
#include "czlab/spaces.hpp"

namespace czlab {

/// Fréchet-Kolmogorov profiles of a commutator image family: the uniform
/// bound, the translation modulus per shift z, and the tail norm per cutoff
/// alpha, all in the lattice Morrey norm.
struct FamilyReport {
  double bound = 0.0;
  std::vector<std::pair<double, double>> equicontinuity;  // (snapped z, sup modulus)
  std::vector<std::pair<double, double>> tail;            // (alpha, sup tail norm)
  void write_csv(std::ostream& out) const;  // sections bound / equicontinuity / tail
  /// log-log slope of the tail profile (least squares over its rows).
  double tail_slope() const;
};

/// Applies [b, C_Gamma] to every family member (all on b's grid) and measures
/// the three compactness conditions. Shifts are snapped to whole cells;
/// cells shifted past the window edge compare against 0. alpha beyond the
/// window raises out-of-window.
FamilyReport fk_report(const LipschitzCurve& curve, const GridFunction& b,
                       const std::vector<GridFunction>& family, const MorreyParams& params,
                       const std::vector<double>& z_list, const std::vector<double>& alpha_list,
                       const IntervalLattice& lattice);

/// Mollification at scale epsilon plus smooth compact truncation; the BMO
/// distance to the input is measured on the lattice.
struct SmoothedSymbol {
  GridFunction b_eps;
  double bmo_distance = 0.0;
};
SmoothedSymbol smooth_truncate_symbol(const GridFunction& b, double epsilon,
                                      const IntervalLattice& lattice,
                                      double truncation_radius = 0.0);

/// Optional diagnostic: Morrey norms of the four pieces of the translation
/// splitting at shift z with cutoff |z|/epsilon (the pieces sum to
/// [b,C]f(x) - [b,C]f(x+z) cellwise).
std::array<double, 4> equicontinuity_terms(const LipschitzCurve& curve, const GridFunction& b,
                                           const GridFunction& f, double z, double epsilon,
                                           const MorreyParams& params,
                                           const IntervalLattice& lattice);

}  // namespace czlab
