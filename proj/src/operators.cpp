#include "czlab/operators.hpp"

#include <algorithm>
#include <cmath>

namespace czlab {

namespace {

// A(midpoint) over a cell range, reused by every sweep.
std::vector<double> heights(const LipschitzCurve& curve, const GridFunction& f, std::size_t lo,
                            std::size_t hi) {
  std::vector<double> a(hi - lo, 0.0);
  if (!curve.is_flat())
    for (std::size_t i = lo; i < hi; ++i) a[i - lo] = curve.eval(f.midpoint(i));
  return a;
}

// Shared kernel-sum core: sum over support cells y with |x - y| > cutoff of
// K(x,y) f(y) h  (or the transposed kernel for the adjoint).
cplx kernel_sum(const LipschitzCurve& curve, const GridFunction& f, double x, double cutoff,
                bool transpose) {
  auto [lo, hi] = f.support_cells();
  if (lo >= hi) return cplx(0.0, 0.0);
  const double ax = curve.eval(x);
  std::vector<double> ay = heights(curve, f, lo, hi);
  cplx acc(0.0, 0.0);
  for (std::size_t i = lo; i < hi; ++i) {
    double y = f.midpoint(i);
    if (!(std::abs(x - y) > cutoff)) continue;
    cplx k = transpose ? cauchy_kernel_values(y, ay[i - lo], x, ax)
                       : cauchy_kernel_values(x, ax, y, ay[i - lo]);
    acc += k * f[i];
  }
  return acc * f.step();
}

}  // namespace

TruncationLattice TruncationLattice::geometric(double t_min, double t_max, double ratio) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || !(ratio > 1.0))
    fail(errc::invalid_argument, "truncation lattice needs 0 < t_min <= t_max, ratio > 1");
  TruncationLattice lat;
  for (double t = t_min; t <= t_max * (1.0 + 1e-12); t *= ratio) lat.radii.push_back(t);
  return lat;
}

cplx truncated_cauchy(const LipschitzCurve& curve, const GridFunction& f, double x, double t) {
  if (!(t >= f.step() * (1.0 - 1e-9)))
    fail(errc::invalid_truncation, "truncation radius below grid step");
  return kernel_sum(curve, f, f.snap_to_midpoint(x), t, false);
}

cplx pv_cauchy(const LipschitzCurve& curve, const GridFunction& f, double x) {
  return kernel_sum(curve, f, f.snap_to_midpoint(x), 0.5 * f.step(), false);
}

cplx adjoint_cauchy(const LipschitzCurve& curve, const GridFunction& f, double x) {
  return kernel_sum(curve, f, f.snap_to_midpoint(x), 0.5 * f.step(), true);
}

double maximal_truncated(const LipschitzCurve& curve, const GridFunction& f, double x,
                         const TruncationLattice& lattice) {
  if (lattice.radii.empty()) fail(errc::invalid_argument, "empty truncation lattice");
  double best = 0.0;
  for (double t : lattice.radii) best = std::max(best, std::abs(truncated_cauchy(curve, f, x, t)));
  return best;
}

cplx commutator(const LipschitzCurve& curve, const GridFunction& b, const GridFunction& f,
                double x) {
  if (!b.same_grid(f)) fail(errc::resample_required, "commutator needs b, f on one grid");
  double xs = f.snap_to_midpoint(x);
  return b.value_at(xs) * pv_cauchy(curve, f, xs) - pv_cauchy(curve, b.pointwise_product(f), xs);
}

double hl_maximal(const GridFunction& f, double x) {
  const std::size_t n = f.size();
  const double h = f.step();
  long ix = std::clamp<long>(f.nearest_cell(x), 0, static_cast<long>(n) - 1);
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::abs(f[i]) * h;
  double best = 0.0;
  for (long l = 0; l <= ix; ++l)
    for (long r = ix + 1; r <= static_cast<long>(n); ++r)
      best = std::max(best, (prefix[r] - prefix[l]) / (static_cast<double>(r - l) * h));
  return best;
}

GridFunction pv_cauchy_image(const LipschitzCurve& curve, const GridFunction& f) {
  GridFunction out = GridFunction::zeros(f.origin(), f.step(), f.size());
  auto [lo, hi] = f.support_cells();
  if (lo >= hi) return out;
  std::vector<double> ay = heights(curve, f, lo, hi);
  std::vector<double> ax = heights(curve, f, 0, f.size());
  const double h = f.step();
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x = f.midpoint(i);
    double axi = curve.is_flat() ? 0.0 : ax[i];
    cplx acc(0.0, 0.0);
    for (std::size_t j = lo; j < hi; ++j) {
      if (j == i) continue;
      acc += cauchy_kernel_values(x, axi, f.midpoint(j), ay[j - lo]) * f[j];
    }
    out[i] = acc * h;
  }
  return out;
}

GridFunction adjoint_cauchy_image(const LipschitzCurve& curve, const GridFunction& f) {
  // the kernel is exactly antisymmetric, so the transpose sweep is the
  // negated forward sweep; keep the explicit transposed sum anyway
  GridFunction out = GridFunction::zeros(f.origin(), f.step(), f.size());
  auto [lo, hi] = f.support_cells();
  if (lo >= hi) return out;
  std::vector<double> ay = heights(curve, f, lo, hi);
  std::vector<double> ax = heights(curve, f, 0, f.size());
  const double h = f.step();
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x = f.midpoint(i);
    double axi = curve.is_flat() ? 0.0 : ax[i];
    cplx acc(0.0, 0.0);
    for (std::size_t j = lo; j < hi; ++j) {
      if (j == i) continue;
      acc += cauchy_kernel_values(f.midpoint(j), ay[j - lo], x, axi) * f[j];
    }
    out[i] = acc * h;
  }
  return out;
}

GridFunction commutator_image(const LipschitzCurve& curve, const GridFunction& b,
                              const GridFunction& f) {
  if (!b.same_grid(f)) fail(errc::resample_required, "commutator needs b, f on one grid");
  GridFunction u = pv_cauchy_image(curve, f);
  GridFunction w = pv_cauchy_image(curve, b.pointwise_product(f));
  GridFunction out = GridFunction::zeros(f.origin(), f.step(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = b[i] * u[i] - w[i];
  return out;
}

std::vector<cplx> commutator_on_cells(const LipschitzCurve& curve, const GridFunction& b,
                                      const GridFunction& f, CellRange targets) {
  if (!b.same_grid(f)) fail(errc::resample_required, "commutator needs b, f on one grid");
  GridFunction bf = b.pointwise_product(f);
  std::vector<cplx> out;
  out.reserve(targets.count());
  for (std::size_t i = targets.first; i < targets.last; ++i) {
    double x = f.midpoint(i);
    out.push_back(b[i] * pv_cauchy(curve, f, x) - pv_cauchy(curve, bf, x));
  }
  return out;
}

}  // namespace czlab
