#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "czlab/curve.hpp"
#include "doctest.h"

using namespace czlab;

namespace {
constexpr double kPi = std::numbers::pi;


}  // namespace

TEST_CASE("eval_A: flat, interpolation, linear extension") {
  CHECK(flat_curve().eval(7.0) == 0.0);
  LipschitzCurve diag({{0.0, 0.0}, {1.0, 1.0}});
  CHECK(diag.eval(0.5) == doctest::Approx(0.5));
  CHECK(diag.eval(2.0) == doctest::Approx(2.0));
  CHECK(diag.lip_const() == doctest::Approx(1.0));
}

TEST_CASE("lipschitz bound holds on knot pairs") {
  LipschitzCurve saw = sawtooth_curve(0.5, 1.0, -4.0, 4.0);
  auto knots = saw.knots();
  for (std::size_t i = 0; i < knots.size(); ++i)
    for (std::size_t j = i + 1; j < knots.size(); ++j)
      CHECK(std::abs(knots[j].second - knots[i].second) <=
            saw.lip_const() * std::abs(knots[j].first - knots[i].first) + 1e-12);
}

TEST_CASE("cauchy kernel closed-form values") {
  LipschitzCurve flat = flat_curve();
  cplx k1 = cauchy_kernel(flat, 0.0, 1.0);
  CHECK(std::abs(k1 - cplx(0.0, -1.0 / kPi)) <= 1e-15);
  cplx k2 = cauchy_kernel(flat, 0.0, -1.0);
  CHECK(std::abs(k2 - cplx(0.0, 1.0 / kPi)) <= 1e-15);
  CHECK_THROWS_AS(cauchy_kernel(flat, 0.3, 0.3), Error);
}

TEST_CASE("kernel modulus bound |K| <= (1/pi)/|x-y| with equality iff heights agree") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pt(-4.0, 4.0);
  LipschitzCurve saw = sawtooth_curve(0.8, 0.7, -8.0, 8.0);
  for (int trial = 0; trial < 200; ++trial) {
    double x = pt(rng), y = pt(rng);
    if (x == y) continue;
    double bound = (1.0 / kPi) / std::abs(x - y);
    double value = std::abs(cauchy_kernel(saw, x, y));
    CHECK(value <= bound * (1.0 + 1e-12));
    if (saw.eval(x) == saw.eval(y)) CHECK(value == doctest::Approx(bound));
  }
}

TEST_CASE("kernel antisymmetry K(x,y) = -K(y,x)") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pt(-4.0, 4.0);
  for (const LipschitzCurve& curve : {flat_curve(), sawtooth_curve(0.5, 1.0, -8.0, 8.0)}) {
    for (int trial = 0; trial < 100; ++trial) {
      double x = pt(rng), y = pt(rng);
      if (x == y) continue;
      cplx sum = cauchy_kernel(curve, x, y) + cauchy_kernel(curve, y, x);
      CHECK(std::abs(sum) <= 1e-15 / std::abs(x - y));
    }
  }
}

TEST_CASE("verify_kernel_estimates: flat gives exactly 1/pi") {
  auto samples = kernel_sample_lattice(500, 21, Interval(0.0, 8.0));
  KernelFit fit = verify_kernel_estimates(flat_curve(), samples);
  CHECK(std::abs(fit.c_size - 1.0 / kPi) <= 1e-12);
}

TEST_CASE("verify_kernel_estimates: fitted c_size within theory bounds, monotone, stable") {
  auto samples = kernel_sample_lattice(20000, 33, Interval(0.0, 8.0));
  LipschitzCurve saw = sawtooth_curve(0.5, 1.0, -16.0, 16.0);
  std::span<const KernelSample> all(samples);
  KernelFit half = verify_kernel_estimates(saw, all.subspan(0, 10000));
  KernelFit full = verify_kernel_estimates(saw, all);

  double lo = 1.0 / (kPi * std::sqrt(1.25)), hi = 1.0 / kPi;
  CHECK(half.c_size >= lo * (1 - 1e-12));
  CHECK(half.c_size <= hi * (1 + 1e-12));
  // adding samples never decreases the fit
  CHECK(full.c_size >= half.c_size);
  CHECK(full.c_smooth >= half.c_smooth);
  // stable under sample doubling
  CHECK(std::abs(full.c_smooth / half.c_smooth - 1.0) <= 0.10);
}

TEST_CASE("verify_kernel_estimates: degenerate and inadmissible samples") {
  LipschitzCurve flat = flat_curve();
  KernelSample same_xy{1.0, 1.0, 0.0};
  KernelSample same_yz{0.0, 1.0, 1.0};  // contributes 0 to (ii), still used
  KernelSample too_close{0.0, 1.0, 1.9};
  std::vector<KernelSample> samples{same_xy, same_yz, too_close};
  KernelFit fit = verify_kernel_estimates(flat, samples);
  CHECK(fit.skipped == 2);  // x == y, and |x-y| <= 2|y-z|
  CHECK(fit.used_smooth == 1);
  CHECK(fit.c_smooth == 0.0);
}

TEST_CASE("curve csv round trip validates the declared constant") {
  LipschitzCurve saw = sawtooth_curve(0.5, 1.0, -2.0, 2.0);
  std::ostringstream out;
  write_curve_csv(saw, out);
  std::istringstream in(out.str());
  LipschitzCurve back = read_curve_csv(in, 0.5);
  CHECK(back.lip_const() == doctest::Approx(0.5));
  std::istringstream in2(out.str());
  CHECK_THROWS_AS(read_curve_csv(in2, 0.7), Error);
}
