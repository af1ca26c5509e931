#include "czlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace czlab {

namespace {

bool close(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(scale), std::abs(a), std::abs(b)});
}

}  // namespace

Interval::Interval(double c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(c))
    fail(errc::invalid_argument, "interval radius must be positive and finite");
}

Interval Interval::from_endpoints(double a, double b) {
  if (!(b > a)) fail(errc::invalid_argument, "interval endpoints must satisfy a < b");
  return Interval(0.5 * (a + b), 0.5 * (b - a));
}

Interval Interval::scaled(double k) const {
  if (!(k > 0.0)) fail(errc::invalid_argument, "interval scale factor must be positive");
  return Interval(center, k * radius);
}

GridFunction::GridFunction(double origin, double step, std::vector<cplx> values)
    : origin_(origin), step_(step), values_(std::move(values)) {
  if (!(step > 0.0) || !std::isfinite(step)) fail(errc::invalid_argument, "grid step must be positive");
  if (values_.empty()) fail(errc::invalid_argument, "grid must have at least one cell");
  for (const cplx& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(errc::invalid_argument, "grid values must be finite");
}

GridFunction GridFunction::zeros(double origin, double step, std::size_t n) {
  return GridFunction(origin, step, std::vector<cplx>(n, cplx(0.0, 0.0)));
}

GridFunction GridFunction::sample(double origin, double step, std::size_t n,
                                  const std::function<cplx(double)>& fn) {
  std::vector<cplx> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = fn(origin + (static_cast<double>(i) + 0.5) * step);
  return GridFunction(origin, step, std::move(vals));
}

GridFunction GridFunction::indicator(double origin, double step, std::size_t n,
                                     const Interval& support) {
  GridFunction g = zeros(origin, step, n);
  CellRange r = cells_in(g, support);
  for (std::size_t i = r.first; i < r.last; ++i) g[i] = 1.0;
  return g;
}

Interval GridFunction::window() const {
  return Interval::from_endpoints(origin_, origin_ + step_ * static_cast<double>(size()));
}

long GridFunction::nearest_cell(double x) const {
  return static_cast<long>(std::llround((x - origin_) / step_ - 0.5));
}

double GridFunction::snap_to_midpoint(double x) const {
  return origin_ + (static_cast<double>(nearest_cell(x)) + 0.5) * step_;
}

cplx GridFunction::value_at(double x) const {
  long i = static_cast<long>(std::floor((x - origin_) / step_));
  if (i < 0 || i >= static_cast<long>(size())) return cplx(0.0, 0.0);
  return values_[static_cast<std::size_t>(i)];
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return size() == other.size() && close(step_, other.step_, step_) &&
         std::abs(origin_ - other.origin_) <= 1e-9 * step_;
}

std::pair<std::size_t, std::size_t> GridFunction::support_cells() const {
  std::size_t first = 0, last = size();
  while (first < last && values_[first] == cplx(0.0, 0.0)) ++first;
  while (last > first && values_[last - 1] == cplx(0.0, 0.0)) --last;
  return {first, last};
}

bool GridFunction::is_zero() const {
  auto [f, l] = support_cells();
  return f >= l;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!same_grid(other)) fail(errc::resample_required, "grid mismatch in +=");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (!same_grid(other)) fail(errc::resample_required, "grid mismatch in -=");
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(cplx scalar) {
  for (cplx& v : values_) v *= scalar;
  return *this;
}

GridFunction GridFunction::pointwise_product(const GridFunction& other) const {
  if (!same_grid(other)) fail(errc::resample_required, "grid mismatch in pointwise product");
  std::vector<cplx> vals(size());
  for (std::size_t i = 0; i < size(); ++i) vals[i] = values_[i] * other.values_[i];
  return GridFunction(origin_, step_, std::move(vals));
}

SnappedInterval snap_to_cells(const GridFunction& g, const Interval& interval) {
  const double h = g.step();
  double left = g.origin() + std::llround((interval.left() - g.origin()) / h) * h;
  double right = g.origin() + std::llround((interval.right() - g.origin()) / h) * h;
  if (right <= left) right = left + h;  // keep at least one cell
  SnappedInterval out;
  out.interval = Interval::from_endpoints(left, right);
  out.residual = std::max(std::abs(left - interval.left()), std::abs(right - interval.right()));
  return out;
}

CellRange cells_in(const GridFunction& g, const Interval& interval) {
  const double h = g.step();
  // midpoint m_i = origin + (i + 1/2) h lies in the open interval; snapped
  // intervals keep midpoints half a cell clear of the edges, so the guard can
  // absorb coordinate rounding on very large grids
  const double eps = 1e-6;
  double lo = (interval.left() - g.origin()) / h - 0.5;
  double hi = (interval.right() - g.origin()) / h - 0.5;
  long first = static_cast<long>(std::ceil(lo + eps));
  long last = static_cast<long>(std::floor(hi - eps)) + 1;
  first = std::max<long>(first, 0);
  last = std::min<long>(last, static_cast<long>(g.size()));
  CellRange r;
  if (last > first) {
    r.first = static_cast<std::size_t>(first);
    r.last = static_cast<std::size_t>(last);
  }
  return r;
}

cplx integrate(const GridFunction& f, const Interval& over) {
  CellRange r = cells_in(f, over);
  cplx acc(0.0, 0.0);
  for (std::size_t i = r.first; i < r.last; ++i) acc += f[i];
  return acc * f.step();
}

cplx integrate(const GridFunction& f) { return integrate(f, f.window()); }

double lp_norm(const GridFunction& f, double p, const Interval& over) {
  if (!(p >= 1.0)) fail(errc::invalid_exponent, "lp_norm requires p >= 1");
  CellRange r = cells_in(f, over);
  double acc = 0.0;
  if (p == 1.0) {
    for (std::size_t i = r.first; i < r.last; ++i) acc += std::abs(f[i]);
  } else if (p == 2.0) {
    for (std::size_t i = r.first; i < r.last; ++i) acc += std::norm(f[i]);
  } else {
    for (std::size_t i = r.first; i < r.last; ++i) acc += std::pow(std::abs(f[i]), p);
  }
  return std::pow(acc * f.step(), 1.0 / p);
}

double lp_norm(const GridFunction& f, double p) { return lp_norm(f, p, f.window()); }

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double rearrangement_value(const GridFunction& f, const Interval& interval, double t) {
  if (!(t > 0.0)) fail(errc::invalid_argument, "rearrangement_value requires t > 0");
  CellRange r = cells_in(f, interval);
  if (r.empty()) return 0.0;
  std::vector<double> mags;
  mags.reserve(r.count());
  for (std::size_t i = r.first; i < r.last; ++i) mags.push_back(std::abs(f[i]));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double h = f.step();
  // distinct values w_1 > w_2 > ...; find the largest level whose strict
  // super-level set still has measure >= t, i.e. the last w_j with
  // h * #{|f| > w_j} < t.
  double result = 0.0;
  std::size_t idx = 0;
  const std::size_t n = mags.size();
  while (idx < n) {
    double w = mags[idx];
    std::size_t strictly_greater = idx;  // entries before idx are > w
    if (static_cast<double>(strictly_greater) * h < t)
      result = w;
    else
      break;
    while (idx < n && mags[idx] == w) ++idx;
  }
  // if even below the smallest value the super-level measure stays < t, the
  // infimum is 0
  if (static_cast<double>(n) * h < t) result = 0.0;
  return result;
}

Translated translate(const GridFunction& f, double z) {
  const double h = f.step();
  long cells = static_cast<long>(std::llround(z / h));
  Translated out{GridFunction(f.origin() + static_cast<double>(cells) * h, h,
                              std::vector<cplx>(f.values().begin(), f.values().end())),
                 static_cast<double>(cells) * h, 0.0};
  out.snap_residual = std::abs(z - out.applied_shift);
  return out;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const GridFunction& f, std::ostream& out) {
  out << "x,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << format_g17(f.midpoint(i)) << ',' << format_g17(f[i].real()) << ','
        << format_g17(f[i].imag()) << '\n';
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(errc::io_error, "empty grid csv");
  std::vector<double> xs;
  std::vector<cplx> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    double v[3];
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(row, tok, ',')) fail(errc::io_error, "grid csv row needs x,re,im");
      v[k] = std::stod(tok);
    }
    xs.push_back(v[0]);
    vals.emplace_back(v[1], v[2]);
  }
  if (xs.size() < 2) fail(errc::io_error, "grid csv needs at least two rows");
  double step = xs[1] - xs[0];
  if (!(step > 0)) fail(errc::io_error, "grid csv x column must increase");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs((xs[i] - xs[i - 1]) - step) > 1e-9 * step)
      fail(errc::io_error, "grid csv is not uniformly spaced");
  return GridFunction(xs[0] - 0.5 * step, step, std::move(vals));
}

GridFunction regrid(const GridFunction& f, double new_origin, double new_step, std::size_t new_n) {
  const double h = f.step();
  GridFunction out = GridFunction::zeros(new_origin, new_step, new_n);
  if (new_step >= h) {
    double ratio = new_step / h;
    long k = static_cast<long>(std::llround(ratio));
    if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9)
      fail(errc::resample_required, "regrid steps must differ by an integer ratio");
    double off = (new_origin - f.origin()) / h;
    long base = static_cast<long>(std::llround(off));
    if (std::abs(off - static_cast<double>(base)) > 1e-6)
      fail(errc::resample_required, "regrid origins must be cell-aligned");
    for (std::size_t i = 0; i < new_n; ++i) {
      cplx acc(0.0, 0.0);
      for (long j = 0; j < k; ++j) {
        long src = base + static_cast<long>(i) * k + j;
        if (src >= 0 && src < static_cast<long>(f.size())) acc += f[static_cast<std::size_t>(src)];
      }
      out[i] = acc / static_cast<double>(k);
    }
  } else {
    double ratio = h / new_step;
    long k = static_cast<long>(std::llround(ratio));
    if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9)
      fail(errc::resample_required, "regrid steps must differ by an integer ratio");
    for (std::size_t i = 0; i < new_n; ++i) out[i] = f.value_at(out.midpoint(i));
  }
  return out;
}

}  // namespace czlab
