#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "czlab/grid.hpp"

namespace czlab {

/// Exponent pair (p, lambda) with 1 < p < inf, 0 < lambda < 1. Blocks reuse
/// the same type as (lambda, q).
struct MorreyParams {
  double p = 2.0;
  double lambda = 0.5;

  MorreyParams() = default;
  MorreyParams(double p_, double lambda_);
  double conjugate() const { return p / (p - 1.0); }
};

/// Dyadic interval lattice discretizing "sup over all intervals": at each
/// scale the window is covered by equal intervals, repeated under
/// `offsets` sub-length translations. All intervals are cell-aligned on the
/// grid geometry the lattice was built for; reported sups are lower bounds
/// of the true sup over all intervals.
class IntervalLattice {
 public:
  struct Entry {
    Interval interval;
    int depth = 0;
  };

  static IntervalLattice dyadic(const Interval& window, double step, int max_depth,
                                int offsets = 4);

  std::span<const Entry> entries() const { return entries_; }
  const Interval& window() const { return window_; }
  double step() const { return step_; }
  int max_depth() const { return max_depth_; }
  int offsets() const { return offsets_; }
  /// Same lattice with doubled translation offsets.
  IntervalLattice refined() const { return dyadic(window_, step_, max_depth_, 2 * offsets_); }
  /// Distinct interval lengths, descending.
  std::vector<double> scale_lengths() const;

 private:
  Interval window_{0.0, 1.0};
  double step_ = 0.0;
  int max_depth_ = 0;
  int offsets_ = 0;
  std::vector<Entry> entries_;
};

/// Morrey norm over the lattice: max over entries of
/// [(1/r^lambda) int_I |f|^p]^(1/p). The weight uses the interval radius
/// r^lambda, not the length |I|^lambda; the two differ by 2^(lambda/p).
double morrey_norm(const GridFunction& f, const MorreyParams& params,
                   const IntervalLattice& lattice);

/// M(f, I) = (1/|I|) int_I |f - f_I|.
double mean_oscillation(const GridFunction& b, const Interval& interval);

/// sup of M(b, .) over the lattice.
double bmo_norm(const GridFunction& b, const IntervalLattice& lattice);

/// Median alpha_I(b): minimizer of int_I |b - c| over real c. When the
/// minimizer set is a value interval the midpoint is returned, so symmetric
/// inputs get symmetric medians.
double median(const GridFunction& b, const Interval& interval);

/// omega_mu(b; I) = inf_c [(b-c) chi_I]*(mu |I|), minimized over candidate
/// c from the sample values on I and midpoints of consecutive values.
double local_mean_oscillation(const GridFunction& b, const Interval& interval, double mu);

/// Finite stand-ins for the three CMO limit conditions: sup oscillation over
/// lattice slices, as small-scale delta shrinks, large-scale R grows, and
/// distance-to-origin R grows.
struct CmoProfile {
  struct Row {
    double parameter = 0.0;
    double sup_oscillation = 0.0;
  };
  std::vector<Row> small_scale;      // |I| <= delta
  std::vector<Row> large_scale;      // |I| >= R
  std::vector<Row> far_from_origin;  // I disjoint from I(0, R)

  /// Every curve's final point <= threshold.
  bool vanishes(double threshold) const;
  void write_csv(std::ostream& out) const;  // condition,parameter,sup_oscillation
};
CmoProfile cmo_profile(const GridFunction& b, const IntervalLattice& lattice);

/// (lambda, q)-block test: supp(f) in I and ||f||_q <= |I|^(-lambda/q').
bool is_block(const GridFunction& f, const Interval& interval, const MorreyParams& lq);

/// Constructive upper bound for the block-space norm: greedy dyadic split of
/// the support, each piece priced as a maximal block, taking the cheaper of
/// whole vs split at every node. Always >= the true infimum.
double h_norm_upper(const GridFunction& g, const MorreyParams& lq);

}  // namespace czlab
