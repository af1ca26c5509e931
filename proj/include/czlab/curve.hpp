#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "czlab/grid.hpp"

namespace czlab {

/// Graph Lipschitz curve {(t, A(t))} with piecewise-linear A given by knots.
/// Outside the knot range A extends linearly with the boundary slope, so the
/// Lipschitz constant is exactly the largest knot-to-knot slope.
class LipschitzCurve {
 public:
  explicit LipschitzCurve(std::vector<std::pair<double, double>> knots);

  double eval(double t) const;
  double lip_const() const { return lip_const_; }
  bool is_flat() const { return lip_const_ == 0.0; }
  std::span<const std::pair<double, double>> knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;  // sorted by t
  double lip_const_ = 0.0;
};

/// Cauchy kernel (1/(pi i)) / (y - x + i [A(y) - A(x)]). Throws on x == y.
cplx cauchy_kernel(const LipschitzCurve& curve, double x, double y);

/// Kernel value from precomputed heights, for image sweeps.
cplx cauchy_kernel_values(double x, double ax, double y, double ay);

struct KernelSample {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// Deterministic low-discrepancy admissible triples: x across the window,
/// |x-y| log-uniform down to min_gap, |y-z| < |x-y|/2. The first n entries of
/// a longer lattice are the lattice of size n, so sample-doubling fits are
/// monotone and their stability measures coverage convergence.
std::vector<KernelSample> kernel_sample_lattice(std::size_t n, std::uint64_t seed,
                                                const Interval& window, double min_gap = 1e-3);

/// Smallest constants making the standard-kernel size/smoothness estimates
///   (i)  |K(x,y)| <= C / |x-y|
///   (ii) |K(x,y)-K(x,z)| + |K(y,x)-K(z,x)| <= C |y-z| / |x-y|^2
/// hold on the sample set. Samples violating x != y (or, for (ii),
/// |x-y| > 2|y-z|) are skipped and counted.
struct KernelFit {
  double c_size = 0.0;
  double c_smooth = 0.0;
  std::size_t used_size = 0;
  std::size_t used_smooth = 0;
  std::size_t skipped = 0;
};
KernelFit verify_kernel_estimates(const LipschitzCurve& curve,
                                  std::span<const KernelSample> samples);

// Built-in curve library used by the CLI experiments.
LipschitzCurve flat_curve();
LipschitzCurve sawtooth_curve(double lip, double period, double t0, double t1);
/// Smooth bump of given height sampled onto `knots` knots over [-halfwidth, halfwidth].
LipschitzCurve bump_curve(double height, double halfwidth, int knots);

/// CSV rows t,A. lip_const is recomputed on load; if declared_lip is given it
/// is validated against the recomputed value.
void write_curve_csv(const LipschitzCurve& curve, std::ostream& out);
LipschitzCurve read_curve_csv(std::istream& in, std::optional<double> declared_lip = std::nullopt);

}  // namespace czlab
