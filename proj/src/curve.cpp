#include "czlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace czlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

LipschitzCurve::LipschitzCurve(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  if (knots_.empty()) fail(errc::invalid_argument, "curve needs at least one knot");
  std::sort(knots_.begin(), knots_.end());
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    double dt = knots_[i].first - knots_[i - 1].first;
    if (!(dt > 0.0)) fail(errc::invalid_argument, "curve knots must have distinct t");
    lip_const_ = std::max(lip_const_, std::abs(knots_[i].second - knots_[i - 1].second) / dt);
  }
}

double LipschitzCurve::eval(double t) const {
  if (knots_.size() == 1) return knots_.front().second;
  // segment via binary search; boundary slopes extend linearly
  auto it = std::upper_bound(knots_.begin(), knots_.end(), std::make_pair(t, -1e300));
  std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
  if (hi == 0) hi = 1;
  if (hi == knots_.size()) hi = knots_.size() - 1;
  const auto& [t0, a0] = knots_[hi - 1];
  const auto& [t1, a1] = knots_[hi];
  return a0 + (a1 - a0) * (t - t0) / (t1 - t0);
}

cplx cauchy_kernel_values(double x, double ax, double y, double ay) {
  // 1/(pi i) * 1/(y - x + i(A(y)-A(x)))
  cplx denom(y - x, ay - ax);
  return 1.0 / (cplx(0.0, kPi) * denom);
}

cplx cauchy_kernel(const LipschitzCurve& curve, double x, double y) {
  if (x == y) fail(errc::singularity, "cauchy_kernel is singular at x == y");
  return cauchy_kernel_values(x, curve.eval(x), y, curve.eval(y));
}

KernelFit verify_kernel_estimates(const LipschitzCurve& curve,
                                  std::span<const KernelSample> samples) {
  KernelFit fit;
  for (const KernelSample& s : samples) {
    if (s.x == s.y) {
      ++fit.skipped;
      continue;
    }
    double dxy = std::abs(s.x - s.y);
    fit.c_size = std::max(fit.c_size, std::abs(cauchy_kernel(curve, s.x, s.y)) * dxy);
    ++fit.used_size;
    double dyz = std::abs(s.y - s.z);
    if (!(dxy > 2.0 * dyz)) {
      ++fit.skipped;
      continue;
    }
    if (dyz == 0.0) {
      ++fit.used_smooth;  // degenerate y == z contributes 0 to (ii)
      continue;
    }
    double lhs = std::abs(cauchy_kernel(curve, s.x, s.y) - cauchy_kernel(curve, s.x, s.z)) +
                 std::abs(cauchy_kernel(curve, s.y, s.x) - cauchy_kernel(curve, s.z, s.x));
    fit.c_smooth = std::max(fit.c_smooth, lhs * dxy * dxy / dyz);
    ++fit.used_smooth;
  }
  return fit;
}

std::vector<KernelSample> kernel_sample_lattice(std::size_t n, std::uint64_t seed,
                                                const Interval& window, double min_gap) {
  // additive recurrence on the plastic-number lattice, phase set by the seed
  const double g = 1.2207440846057595;  // root of x^3 = x + 1
  const double a1 = 1.0 / g, a2 = 1.0 / (g * g), a3 = 1.0 / (g * g * g);
  auto frac = [](double v) { return v - std::floor(v); };
  double s1 = frac(static_cast<double>(seed % 100003) * 0.0137);
  double s2 = frac(static_cast<double>(seed % 99991) * 0.0149);
  double s3 = frac(static_cast<double>(seed % 99989) * 0.0151);
  const double hi = window.radius;
  std::vector<KernelSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u1 = frac(s1 + a1 * static_cast<double>(i + 1));
    double u2 = frac(s2 + a2 * static_cast<double>(i + 1));
    double u3 = frac(s3 + a3 * static_cast<double>(i + 1));
    KernelSample& s = out[i];
    s.x = window.left() + window.measure() * u1;
    double mag = std::exp(std::log(min_gap) + (std::log(hi) - std::log(min_gap)) * u2);
    s.y = s.x + (i % 2 == 0 ? mag : -mag);
    s.z = s.y + (2.0 * u3 - 1.0) * 0.49 * mag;
    if (i % 97 == 0) s.z = s.y;  // keep degenerate pairs in the mix
  }
  return out;
}

LipschitzCurve flat_curve() { return LipschitzCurve({{-1.0, 0.0}, {1.0, 0.0}}); }

LipschitzCurve sawtooth_curve(double lip, double period, double t0, double t1) {
  if (!(lip >= 0.0) || !(period > 0.0) || !(t1 > t0))
    fail(errc::invalid_argument, "sawtooth_curve needs lip >= 0, period > 0, t1 > t0");
  std::vector<std::pair<double, double>> knots;
  double half = 0.5 * period;
  bool up = true;
  knots.emplace_back(t0, 0.0);
  while (knots.back().first < t1) {
    double t_prev = knots.back().first;
    double a_prev = knots.back().second;
    double t = std::min(t_prev + half, t1);
    knots.emplace_back(t, a_prev + (up ? 1.0 : -1.0) * lip * (t - t_prev));
    up = !up;
  }
  return LipschitzCurve(std::move(knots));
}

LipschitzCurve bump_curve(double height, double halfwidth, int knots) {
  if (knots < 3 || !(halfwidth > 0.0)) fail(errc::invalid_argument, "bump_curve needs >= 3 knots");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(knots));
  for (int i = 0; i < knots; ++i) {
    double t = -halfwidth + 2.0 * halfwidth * static_cast<double>(i) / (knots - 1);
    double u = t / halfwidth;
    double a = std::abs(u) < 1.0 ? height * std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
    pts.emplace_back(t, a);
  }
  pts.front().second = 0.0;
  pts.back().second = 0.0;
  return LipschitzCurve(std::move(pts));
}

void write_curve_csv(const LipschitzCurve& curve, std::ostream& out) {
  out << "t,A\n";
  for (const auto& [t, a] : curve.knots()) out << format_g17(t) << ',' << format_g17(a) << '\n';
}

LipschitzCurve read_curve_csv(std::istream& in, std::optional<double> declared_lip) {
  std::string line;
  if (!std::getline(in, line)) fail(errc::io_error, "empty curve csv");
  std::vector<std::pair<double, double>> knots;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    if (!std::getline(row, tok, ',')) fail(errc::io_error, "curve csv row needs t,A");
    double t = std::stod(tok);
    if (!std::getline(row, tok, ',')) fail(errc::io_error, "curve csv row needs t,A");
    knots.emplace_back(t, std::stod(tok));
  }
  LipschitzCurve curve(std::move(knots));
  if (declared_lip && std::abs(curve.lip_const() - *declared_lip) >
                          1e-9 * std::max(1.0, std::abs(*declared_lip)))
    fail(errc::io_error, "declared lip_const does not match knots");
  return curve;
}

}  // namespace czlab
