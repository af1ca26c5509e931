#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "czlab/error.hpp"

namespace czlab {

using cplx = std::complex<double>;

/// Open interval I(center, radius) = {y : |y - center| < radius}.
struct Interval {
  double center = 0.0;
  double radius = 1.0;

  Interval() = default;
  Interval(double c, double r);

  static Interval from_endpoints(double a, double b);

  double left() const { return center - radius; }
  double right() const { return center + radius; }
  double measure() const { return 2.0 * radius; }
  bool contains(double x) const { return x > left() && x < right(); }
  bool contains(const Interval& other) const {
    return other.left() >= left() && other.right() <= right();
  }
  bool disjoint(const Interval& other) const {
    return other.right() <= left() || other.left() >= right();
  }
  /// kI = I(center, k*radius), k > 0.
  Interval scaled(double k) const;
  Interval translated(double z) const { return Interval(center + z, radius); }
};

/// Compactly supported function sampled at cell midpoints of a uniform grid.
/// Cell i spans [origin + i*step, origin + (i+1)*step]; the sample lives at
/// the midpoint. Midpoint sums make integrals of piecewise-constant-on-cell
/// data exact, and no sample ever sits on a cell boundary shared between the
/// x and y grids of the singular kernel.
class GridFunction {
 public:
  GridFunction(double origin, double step, std::vector<cplx> values);

  static GridFunction zeros(double origin, double step, std::size_t n);
  /// Samples fn at every cell midpoint.
  static GridFunction sample(double origin, double step, std::size_t n,
                             const std::function<cplx(double)>& fn);
  /// Indicator of an interval, sampled on [window] geometry.
  static GridFunction indicator(double origin, double step, std::size_t n, const Interval& support);

  double origin() const { return origin_; }
  double step() const { return step_; }
  std::size_t size() const { return values_.size(); }
  double midpoint(std::size_t i) const { return origin_ + (static_cast<double>(i) + 0.5) * step_; }
  Interval window() const;

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  /// Index of the cell whose midpoint is nearest to x; not clamped, so the
  /// result may lie outside [0, size).
  long nearest_cell(double x) const;
  /// Nearest point of the midpoint lattice (extends beyond the window).
  double snap_to_midpoint(double x) const;
  /// Sample value at the cell containing x, 0 outside the window.
  cplx value_at(double x) const;

  bool same_grid(const GridFunction& other) const;
  /// First/last nonzero cell as a half-open range; (0,0) for the zero function.
  std::pair<std::size_t, std::size_t> support_cells() const;
  /// Smallest cell-aligned interval containing the support; nullopt if zero.
  bool is_zero() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(cplx scalar);
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(cplx scalar, GridFunction f) { return f *= scalar; }

  /// Samplewise product; grids must match.
  GridFunction pointwise_product(const GridFunction& other) const;

 private:
  double origin_;
  double step_;
  std::vector<cplx> values_;
};

/// Interval with endpoints moved to the nearest cell boundaries of g.
/// residual is the largest endpoint displacement (<= step/2).
struct SnappedInterval {
  Interval interval;
  double residual = 0.0;
};
SnappedInterval snap_to_cells(const GridFunction& g, const Interval& interval);

/// Half-open range [first, last) of cells whose midpoints lie in the open
/// interval, clamped to the grid.
struct CellRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t count() const { return last > first ? last - first : 0; }
  bool empty() const { return last <= first; }
};
CellRange cells_in(const GridFunction& g, const Interval& interval);

/// Subset of a grid's cells; measure = count * step.
struct CellSet {
  double step = 0.0;
  std::vector<std::size_t> cells;  // sorted, unique
  double measure() const { return static_cast<double>(cells.size()) * step; }
};

/// Midpoint-rule integral over the part of `over` inside the window.
/// Empty overlap gives 0.
cplx integrate(const GridFunction& f, const Interval& over);
/// Full-line integral (the window carries all of the support).
cplx integrate(const GridFunction& f);

/// (int_over |f|^p)^(1/p) by midpoint rule; requires p >= 1.
double lp_norm(const GridFunction& f, double p, const Interval& over);
double lp_norm(const GridFunction& f, double p);
double sup_norm(const GridFunction& f);

/// Non-increasing rearrangement of f*chi_I evaluated at t in (0, |I|]:
/// inf{alpha : |{x in I : |f(x)| > alpha}| < t}.
double rearrangement_value(const GridFunction& f, const Interval& interval, double t);

/// Shift by z snapped to a whole number of cells.
struct Translated {
  GridFunction fn;
  double applied_shift = 0.0;  // the snapped shift actually used
  double snap_residual = 0.0;  // |z - applied_shift| <= step/2
};
Translated translate(const GridFunction& f, double z);

/// CSV with header x,re,im; one row per cell midpoint, 17 significant digits.
void write_csv(const GridFunction& f, std::ostream& out);
GridFunction read_csv(std::istream& in);

/// Exact piecewise-constant resampling between grids whose steps differ by an
/// integer ratio. Coarsening averages (preserves integrals and means exactly,
/// never increases the sup norm); refining replicates.
GridFunction regrid(const GridFunction& f, double new_origin, double new_step, std::size_t new_n);

/// Formats a double with 17 significant digits (shortest round-trip superset).
std::string format_g17(double v);

}  // namespace czlab
