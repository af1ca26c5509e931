#pragma once

#include <iosfwd>
#include <optional>

#include "czlab/operators.hpp"
#include "czlab/spaces.hpp"

namespace czlab {

/// Output of the oscillation-set construction: E in I and F in the shifted
/// companion interval I~ = I(x0+4r, r), with
///   measure(E) = |I|/16 (+- one cell), measure(F) = |I~|/2 (+- one cell),
///   omega <= |b(x) - b(y)| and sign*(b(x) - b(y)) >= 0 on E x F.
/// A symbol that is constant at the 7/8 level on I has omega == 0 and is
/// flagged degenerate; the construction still returns sets with the measure
/// and sign conclusions intact, the domination reading 0 <= |b(x) - b(y)|.
struct OscillationSets {
  CellSet e_set;
  CellSet f_set;
  Interval interval{0.0, 1.0};  // snapped I
  Interval i_tilde{0.0, 1.0};   // I(x0+4r, r), snapped
  int sign = 1;
  double omega = 0.0;  // threshold actually used (>= the true local oscillation)
  double alpha = 0.0;  // median of b over I~
  bool degenerate = false;
};

OscillationSets oscillation_sets(const GridFunction& b, const Interval& interval);

/// Oscillation-aligned test function f_j = |I_j|^{-(1-lambda)/p} (f_j^1 - a_j chi_{I_j})
/// with f_j^1 = chi_{b > alpha} - chi_{b < alpha} on I_j. All invariants
/// (mean zero, |a_j| <= 1/2, samplewise sign alignment with b - alpha) are
/// verified before returning.
struct LowerBoundFn {
  GridFunction f;
  Interval interval{0.0, 1.0};  // I_j, snapped
  double a_j = 0.0;
  double alpha = 0.0;
  MorreyParams params;
};

LowerBoundFn lower_bound_testfn(const GridFunction& b, const Interval& interval,
                                const MorreyParams& params);

/// Commutator mass on the one-sided dyadic interval I_j^k and the two-sided
/// annulus 2^{k+1} I_j \ 2^k I_j, with the common comparison unit
/// |I_j|^{p-1+lambda} / |2^k I_j|^{p-1}.
struct AnnulusBounds {
  int k = 0;
  double lower_lhs = 0.0;
  double lower_rhs_unit = 0.0;
  double upper_lhs = 0.0;
  double upper_rhs_unit = 0.0;
};

AnnulusBounds annulus_bounds(const LipschitzCurve& curve, const GridFunction& b,
                             const LowerBoundFn& lb, int k, const MorreyParams& params);

enum class WitnessScenario { shrinking, growing, escaping };

struct WitnessOptions {
  double delta = 0.0;   // oscillation level; <= 0 means 0.5 * bmo_norm(b)
  double ratio = 2.0;   // scale / separation ratio between chosen intervals
  double distance_floor_factor = 0.1;  // pass bound: min distance >= factor * min single norm
};

struct WitnessReport {
  WitnessScenario scenario = WitnessScenario::shrinking;
  double delta = 0.0;
  double ratio_used = 0.0;      // the ratio the selection demanded
  double achieved_ratio = 0.0;  // smallest consecutive scale ratio actually realized
  std::vector<Interval> intervals;
  std::vector<double> oscillation;   // M(b, I_j)
  std::vector<double> single_norms;  // Morrey norms of the commutator images
  struct PairRow {
    int l = 0, m = 0;
    double distance = 0.0;
  };
  std::vector<PairRow> pairs;
  double min_distance = 0.0;
  double fitted_bound = 0.0;  // distance_floor_factor * min single norm
  bool passes() const { return !pairs.empty() && min_distance >= fitted_bound; }
  void write_csv(std::ostream& out) const;  // scenario,j,l,m,distance,unit,fitted_bound
};

/// Builds the f_j family on intervals with M(b, I_j) > delta arranged per the
/// scenario (shrinking / growing / escaping), applies the commutator and
/// reports all pairwise Morrey distances of the images.
WitnessReport noncompact_witness(const LipschitzCurve& curve, const GridFunction& b,
                                 WitnessScenario scenario, const MorreyParams& params, int count,
                                 const IntervalLattice& lattice, const WitnessOptions& options);

/// Separation ratio suggested by the fitted annulus constants: smallest
/// power of two A2 with 8^{1-p} c1 delta^p A1^{1-p} >
/// 2 c2 / ((1 - 2^{1-p}) 2^{floor(log2 A2)(p-1)}).
double recommended_separation_ratio(double c1, double c2, double delta, double a1,
                                    const MorreyParams& params);

}  // namespace czlab
