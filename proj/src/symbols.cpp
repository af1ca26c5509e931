#include "czlab/symbols.hpp"

#include <cmath>
#include <random>

namespace czlab {

GridFunction make_grid(const Interval& window, double step) {
  double cells = window.measure() / step;
  long n = static_cast<long>(std::llround(cells));
  if (n < 1 || std::abs(cells - static_cast<double>(n)) > 1e-9)
    fail(errc::invalid_argument, "window must span a whole number of cells");
  return GridFunction::zeros(window.left(), step, static_cast<std::size_t>(n));
}

GridFunction heaviside_symbol(const Interval& window, double step) {
  GridFunction g = make_grid(window, step);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = g.midpoint(i) >= 0.0 ? 1.0 : 0.0;
  return g;
}

GridFunction clipped_log_symbol(const Interval& window, double step) {
  GridFunction g = make_grid(window, step);
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = std::log(std::max(std::abs(g.midpoint(i)), step));
  return g;
}

GridFunction smooth_bump_symbol(const Interval& window, double step, double halfwidth) {
  GridFunction g = make_grid(window, step);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double u = g.midpoint(i) / halfwidth;
    g[i] = std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
  }
  return g;
}

GridFunction sawtooth_symbol(const Interval& window, double step, double lip, double period) {
  GridFunction g = make_grid(window, step);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double x = g.midpoint(i) / period;
    double frac = x - std::floor(x);
    double tri = frac < 0.5 ? frac : 1.0 - frac;  // in [0, 1/2], slope +-1 in x/period
    g[i] = lip * period * tri;
  }
  return g;
}

GridFunction random_step_symbol(const Interval& window, double step, std::uint64_t seed,
                                int pieces, const Interval& support, double amplitude) {
  if (pieces < 1) fail(errc::invalid_argument, "random_step_symbol needs pieces >= 1");
  GridFunction g = make_grid(window, step);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> level(-amplitude, amplitude);
  double piece_len = support.measure() / static_cast<double>(pieces);
  std::vector<double> levels(static_cast<std::size_t>(pieces));
  for (double& v : levels) v = level(rng);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double x = g.midpoint(i);
    if (!support.contains(x)) continue;
    long k = static_cast<long>(std::floor((x - support.left()) / piece_len));
    k = std::clamp<long>(k, 0, pieces - 1);
    g[i] = levels[static_cast<std::size_t>(k)];
  }
  return g;
}

GridFunction symbol_by_name(const std::string& name, const Interval& window, double step) {
  if (name == "heaviside") return heaviside_symbol(window, step);
  if (name == "clipped-log") return clipped_log_symbol(window, step);
  if (name == "smooth-bump") return smooth_bump_symbol(window, step);
  if (name == "sawtooth-bmo") return sawtooth_symbol(window, step);
  if (name == "constant") {
    GridFunction g = make_grid(window, step);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1.0;
    return g;
  }
  const std::string prefix = "random-step:";
  if (name.rfind(prefix, 0) == 0) {
    std::uint64_t seed = std::stoull(name.substr(prefix.size()));
    return random_step_symbol(window, step, seed);
  }
  fail(errc::config_error, "unknown symbol name: " + name);
}

}  // namespace czlab
