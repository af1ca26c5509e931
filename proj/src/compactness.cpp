#include "czlab/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace czlab {

namespace {

GridFunction shifted_difference(const GridFunction& u, long cells) {
  // u(. + z) - u(.) on u's grid, cells past the edge read as 0
  GridFunction diff = GridFunction::zeros(u.origin(), u.step(), u.size());
  const long n = static_cast<long>(u.size());
  for (long i = 0; i < n; ++i) {
    long j = i + cells;
    cplx shifted = (j >= 0 && j < n) ? u[static_cast<std::size_t>(j)] : cplx(0.0, 0.0);
    diff[static_cast<std::size_t>(i)] = shifted - u[static_cast<std::size_t>(i)];
  }
  return diff;
}

}  // namespace

FamilyReport fk_report(const LipschitzCurve& curve, const GridFunction& b,
                       const std::vector<GridFunction>& family, const MorreyParams& params,
                       const std::vector<double>& z_list, const std::vector<double>& alpha_list,
                       const IntervalLattice& lattice) {
  if (family.empty()) fail(errc::invalid_argument, "fk_report needs a non-empty family");
  for (double alpha : alpha_list)
    if (alpha >= b.window().right() || -alpha <= b.window().left())
      if (alpha >= b.window().radius + std::abs(b.window().center))
        fail(errc::out_of_window, "alpha_list exceeds the grid window");

  std::vector<GridFunction> images;
  images.reserve(family.size());
  for (const GridFunction& f : family) images.push_back(commutator_image(curve, b, f));

  FamilyReport report;
  for (const GridFunction& u : images)
    report.bound = std::max(report.bound, morrey_norm(u, params, lattice));

  for (double z : z_list) {
    long cells = static_cast<long>(std::llround(z / b.step()));
    double snapped = static_cast<double>(cells) * b.step();
    double sup = 0.0;
    for (const GridFunction& u : images)
      sup = std::max(sup, morrey_norm(shifted_difference(u, cells), params, lattice));
    report.equicontinuity.emplace_back(snapped, sup);
  }

  for (double alpha : alpha_list) {
    double sup = 0.0;
    for (const GridFunction& u : images) {
      GridFunction tail = u;
      for (std::size_t i = 0; i < tail.size(); ++i)
        if (std::abs(tail.midpoint(i)) < alpha) tail[i] = 0.0;
      sup = std::max(sup, morrey_norm(tail, params, lattice));
    }
    report.tail.emplace_back(alpha, sup);
  }
  return report;
}

double FamilyReport::tail_slope() const {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& [alpha, value] : tail) {
    if (!(alpha > 0.0) || !(value > 0.0)) continue;
    double lx = std::log(alpha), ly = std::log(value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  double d = static_cast<double>(n) * sxx - sx * sx;
  return d != 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / d : 0.0;
}

void FamilyReport::write_csv(std::ostream& out) const {
  out << "section,parameter,value\n";
  out << "bound,," << format_g17(bound) << '\n';
  for (const auto& [z, v] : equicontinuity)
    out << "equicontinuity," << format_g17(z) << ',' << format_g17(v) << '\n';
  for (const auto& [a, v] : tail) out << "tail," << format_g17(a) << ',' << format_g17(v) << '\n';
}

SmoothedSymbol smooth_truncate_symbol(const GridFunction& b, double epsilon,
                                      const IntervalLattice& lattice, double truncation_radius) {
  if (!(epsilon > 0.0)) fail(errc::invalid_argument, "smooth_truncate_symbol needs epsilon > 0");
  const double h = b.step();
  const std::size_t n = b.size();
  double trunc = truncation_radius > 0.0 ? truncation_radius : 0.5 * b.window().radius;

  // triangular mollifier of half-width epsilon (unit mass on the grid)
  long w = std::max<long>(1, static_cast<long>(std::llround(epsilon / h)));
  std::vector<double> kernel(static_cast<std::size_t>(2 * w + 1));
  double total = 0.0;
  for (long j = -w; j <= w; ++j) {
    double v = 1.0 - std::abs(static_cast<double>(j)) / static_cast<double>(w + 1);
    kernel[static_cast<std::size_t>(j + w)] = v;
    total += v;
  }
  for (double& v : kernel) v /= total;

  GridFunction out = GridFunction::zeros(b.origin(), h, n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (long j = -w; j <= w; ++j) {
      long src = static_cast<long>(i) + j;
      src = std::clamp<long>(src, 0, static_cast<long>(n) - 1);  // extend edge values
      acc += kernel[static_cast<std::size_t>(j + w)] * b[static_cast<std::size_t>(src)];
    }
    out[i] = acc;
  }
  // smooth cutoff: 1 inside 3/4 trunc, cosine taper to 0 at trunc
  double inner = 0.75 * trunc;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::abs(out.midpoint(i));
    double eta = 1.0;
    if (x >= trunc)
      eta = 0.0;
    else if (x > inner)
      eta = 0.5 * (1.0 + std::cos(M_PI * (x - inner) / (trunc - inner)));
    out[i] *= eta;
  }

  GridFunction diff = b;
  diff -= out;
  return SmoothedSymbol{std::move(out), bmo_norm(diff, lattice)};
}

std::array<double, 4> equicontinuity_terms(const LipschitzCurve& curve, const GridFunction& b,
                                           const GridFunction& f, double z, double epsilon,
                                           const MorreyParams& params,
                                           const IntervalLattice& lattice) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    fail(errc::invalid_argument, "equicontinuity_terms needs epsilon in (0, 1)");
  const double h = f.step();
  long zc = static_cast<long>(std::llround(z / h));
  double zs = static_cast<double>(zc) * h;
  double cutoff = std::max(std::abs(zs) / epsilon, h);

  const std::size_t n = f.size();
  std::array<GridFunction, 4> terms = {GridFunction::zeros(f.origin(), h, n),
                                       GridFunction::zeros(f.origin(), h, n),
                                       GridFunction::zeros(f.origin(), h, n),
                                       GridFunction::zeros(f.origin(), h, n)};
  auto [lo, hi] = f.support_cells();
  for (std::size_t i = 0; i < n; ++i) {
    double x = f.midpoint(i);
    double xz = x + zs;
    cplx bx = b.value_at(x), bxz = b.value_at(xz);
    cplx l1(0, 0), l2(0, 0), l3(0, 0), l4(0, 0);
    for (std::size_t j = lo; j < hi; ++j) {
      double y = f.midpoint(j);
      cplx by = b[j];
      bool outside = std::abs(x - y) > cutoff;
      if (outside) {
        cplx kx = cauchy_kernel(curve, x, y);
        cplx kxz = std::abs(xz - y) > 0.5 * h ? cauchy_kernel(curve, xz, y) : cplx(0, 0);
        l1 += kx * (bx - bxz) * f[j];
        l2 += (kx - kxz) * (bxz - by) * f[j];
      } else {
        if (std::abs(x - y) > 0.5 * h) l3 += cauchy_kernel(curve, x, y) * (bx - by) * f[j];
        if (std::abs(xz - y) > 0.5 * h) l4 -= cauchy_kernel(curve, xz, y) * (bxz - by) * f[j];
      }
    }
    terms[0][i] = l1 * h;
    terms[1][i] = l2 * h;
    terms[2][i] = l3 * h;
    terms[3][i] = l4 * h;
  }
  return {morrey_norm(terms[0], params, lattice), morrey_norm(terms[1], params, lattice),
          morrey_norm(terms[2], params, lattice), morrey_norm(terms[3], params, lattice)};
}

}  // namespace czlab
