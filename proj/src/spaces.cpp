#include "czlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace czlab {

MorreyParams::MorreyParams(double p_, double lambda_) : p(p_), lambda(lambda_) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(errc::invalid_exponent, "MorreyParams needs p in (1, inf)");
  if (!(lambda > 0.0) || !(lambda < 1.0))
    fail(errc::invalid_exponent, "MorreyParams needs lambda in (0, 1)");
}

IntervalLattice IntervalLattice::dyadic(const Interval& window, double step, int max_depth,
                                        int offsets) {
  if (!(step > 0.0) || max_depth < 0 || offsets < 1)
    fail(errc::invalid_argument, "lattice needs step > 0, max_depth >= 0, offsets >= 1");
  IntervalLattice lat;
  lat.window_ = window;
  lat.step_ = step;
  lat.max_depth_ = max_depth;
  lat.offsets_ = offsets;
  // dummy carrier for snapping arithmetic
  GridFunction geom = GridFunction::zeros(
      window.left(), step,
      static_cast<std::size_t>(std::llround(window.measure() / step)));
  for (int d = 0; d <= max_depth; ++d) {
    double len = window.measure() / std::pow(2.0, d);
    if (len < 4.0 * step) break;  // keep a few cells per interval
    for (int j = 0; j < offsets; ++j) {
      double shift = len * static_cast<double>(j) / static_cast<double>(offsets);
      for (double left = window.left() + shift; left + len <= window.right() + 1e-9 * step;
           left += len) {
        SnappedInterval snapped = snap_to_cells(geom, Interval::from_endpoints(left, left + len));
        lat.entries_.push_back({snapped.interval, d});
      }
    }
  }
  if (lat.entries_.empty()) fail(errc::invalid_argument, "lattice window too small for its step");
  return lat;
}

std::vector<double> IntervalLattice::scale_lengths() const {
  std::vector<double> lens;
  for (const Entry& e : entries_) lens.push_back(e.interval.measure());
  std::sort(lens.begin(), lens.end(), std::greater<>());
  lens.erase(std::unique(lens.begin(), lens.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12 * (a + b); }),
             lens.end());
  return lens;
}

double morrey_norm(const GridFunction& f, const MorreyParams& params,
                   const IntervalLattice& lattice) {
  const double h = f.step();
  const std::size_t n = f.size();
  std::vector<double> prefix(n + 1, 0.0);
  if (params.p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::norm(f[i]) * h;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      prefix[i + 1] = prefix[i] + std::pow(std::abs(f[i]), params.p) * h;
  }
  double best = 0.0;
  for (const auto& e : lattice.entries()) {
    SnappedInterval s = snap_to_cells(f, e.interval);
    CellRange r = cells_in(f, s.interval);
    if (r.empty()) continue;
    double mass = prefix[r.last] - prefix[r.first];
    best = std::max(best, mass / std::pow(s.interval.radius, params.lambda));
  }
  return std::pow(best, 1.0 / params.p);
}

double mean_oscillation(const GridFunction& b, const Interval& interval) {
  if (!b.window().contains(snap_to_cells(b, interval).interval))
    fail(errc::out_of_window, "mean_oscillation interval exceeds the grid window");
  CellRange r = cells_in(b, interval);
  if (r.empty()) fail(errc::out_of_window, "mean_oscillation interval holds no cells");
  cplx mean(0.0, 0.0);
  for (std::size_t i = r.first; i < r.last; ++i) mean += b[i];
  mean /= static_cast<double>(r.count());
  double acc = 0.0;
  for (std::size_t i = r.first; i < r.last; ++i) acc += std::abs(b[i] - mean);
  return acc / static_cast<double>(r.count());
}

double bmo_norm(const GridFunction& b, const IntervalLattice& lattice) {
  double best = 0.0;
  for (const auto& e : lattice.entries()) {
    SnappedInterval s = snap_to_cells(b, e.interval);
    CellRange r = cells_in(b, s.interval);
    if (r.empty()) continue;
    cplx mean(0.0, 0.0);
    for (std::size_t i = r.first; i < r.last; ++i) mean += b[i];
    mean /= static_cast<double>(r.count());
    double acc = 0.0;
    for (std::size_t i = r.first; i < r.last; ++i) acc += std::abs(b[i] - mean);
    best = std::max(best, acc / static_cast<double>(r.count()));
  }
  return best;
}

double median(const GridFunction& b, const Interval& interval) {
  CellRange r = cells_in(b, interval);
  if (r.empty()) fail(errc::out_of_window, "median interval holds no cells");
  std::vector<double> vals;
  vals.reserve(r.count());
  for (std::size_t i = r.first; i < r.last; ++i) vals.push_back(b[i].real());
  std::sort(vals.begin(), vals.end());
  const std::size_t m = vals.size();
  if (m % 2 == 1) return vals[m / 2];
  return 0.5 * (vals[m / 2 - 1] + vals[m / 2]);  // midpoint of the minimizer set
}

namespace {

// rearrangement of a bag of |values| with equal cell weights h at level t
double rearrangement_of_mags(std::vector<double>& mags, double h, double t) {
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double result = 0.0;
  std::size_t idx = 0;
  const std::size_t n = mags.size();
  while (idx < n) {
    double w = mags[idx];
    if (static_cast<double>(idx) * h < t)
      result = w;
    else
      break;
    while (idx < n && mags[idx] == w) ++idx;
  }
  if (static_cast<double>(n) * h < t) result = 0.0;
  return result;
}

}  // namespace

double local_mean_oscillation(const GridFunction& b, const Interval& interval, double mu) {
  if (!(mu > 0.0) || !(mu < 1.0)) fail(errc::invalid_argument, "local oscillation needs mu in (0,1)");
  SnappedInterval s = snap_to_cells(b, interval);
  CellRange r = cells_in(b, s.interval);
  if (r.empty()) fail(errc::out_of_window, "local oscillation interval holds no cells");
  const double t = mu * s.interval.measure();
  std::vector<double> levels;
  levels.reserve(r.count());
  for (std::size_t i = r.first; i < r.last; ++i) levels.push_back(b[i].real());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<double> candidates = levels;
  for (std::size_t i = 1; i < levels.size(); ++i)
    candidates.push_back(0.5 * (levels[i - 1] + levels[i]));
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> mags(r.count());
  for (double c : candidates) {
    for (std::size_t i = r.first; i < r.last; ++i) mags[i - r.first] = std::abs(b[i] - c);
    best = std::min(best, rearrangement_of_mags(mags, b.step(), t));
  }
  return best;
}

CmoProfile cmo_profile(const GridFunction& b, const IntervalLattice& lattice) {
  std::vector<double> scales = lattice.scale_lengths();
  if (scales.size() < 4) fail(errc::invalid_argument, "cmo_profile needs >= 4 dyadic scales");
  std::vector<double> osc(lattice.entries().size());
  std::vector<double> len(lattice.entries().size());
  for (std::size_t i = 0; i < lattice.entries().size(); ++i) {
    const Interval& I = lattice.entries()[i].interval;
    osc[i] = mean_oscillation(b, I);
    len[i] = I.measure();
  }
  CmoProfile profile;
  // (i) small scales: delta descending over the lattice lengths
  for (double delta : scales) {
    double sup = 0.0;
    for (std::size_t i = 0; i < osc.size(); ++i)
      if (len[i] <= delta * (1.0 + 1e-9)) sup = std::max(sup, osc[i]);
    profile.small_scale.push_back({delta, sup});
  }
  // (ii) large scales: R ascending
  for (auto it = scales.rbegin(); it != scales.rend(); ++it) {
    double sup = 0.0;
    for (std::size_t i = 0; i < osc.size(); ++i)
      if (len[i] >= *it * (1.0 - 1e-9)) sup = std::max(sup, osc[i]);
    profile.large_scale.push_back({*it, sup});
  }
  // (iii) intervals missing I(0, R): R ascending up to half the window
  double r_max = lattice.window().radius * 0.5;
  std::vector<double> ladder;
  for (double rr = r_max; rr >= 4.0 * lattice.step() && ladder.size() < 12; rr *= 0.5)
    ladder.push_back(rr);
  std::reverse(ladder.begin(), ladder.end());
  for (double rr : ladder) {
    Interval ball(0.0, rr);
    double sup = 0.0;
    for (std::size_t i = 0; i < osc.size(); ++i)
      if (lattice.entries()[i].interval.disjoint(ball)) sup = std::max(sup, osc[i]);
    profile.far_from_origin.push_back({rr, sup});
  }
  return profile;
}

bool CmoProfile::vanishes(double threshold) const {
  auto last_ok = [threshold](const std::vector<Row>& rows) {
    return !rows.empty() && rows.back().sup_oscillation <= threshold;
  };
  return last_ok(small_scale) && last_ok(large_scale) && last_ok(far_from_origin);
}

void CmoProfile::write_csv(std::ostream& out) const {
  out << "condition,parameter,sup_oscillation\n";
  auto dump = [&out](const char* name, const std::vector<Row>& rows) {
    for (const Row& r : rows)
      out << name << ',' << format_g17(r.parameter) << ',' << format_g17(r.sup_oscillation)
          << '\n';
  };
  dump("small_scale", small_scale);
  dump("large_scale", large_scale);
  dump("far_from_origin", far_from_origin);
}

bool is_block(const GridFunction& f, const Interval& interval, const MorreyParams& lq) {
  auto [lo, hi] = f.support_cells();
  if (lo < hi) {
    CellRange inside = cells_in(f, snap_to_cells(f, interval).interval);
    if (lo < inside.first || hi > inside.last) return false;
  }
  double qprime = lq.p / (lq.p - 1.0);
  double bound = std::pow(interval.measure(), -lq.lambda / qprime);
  return lp_norm(f, lq.p) <= bound * (1.0 + 1e-9);
}

namespace {

struct BlockSplitter {
  const GridFunction& g;
  double q, lam_over_qprime, h;
  std::vector<double> prefix;  // of |g|^q * h

  double cost(std::size_t lo, std::size_t hi) const {
    double mass = prefix[hi] - prefix[lo];
    if (mass == 0.0) return 0.0;
    double measure = static_cast<double>(hi - lo) * h;
    double coeff = std::pow(mass, 1.0 / q) * std::pow(measure, lam_over_qprime);
    if (hi - lo <= 1) return coeff;
    std::size_t mid = lo + (hi - lo) / 2;
    return std::min(coeff, cost(lo, mid) + cost(mid, hi));
  }
};

}  // namespace

double h_norm_upper(const GridFunction& g, const MorreyParams& lq) {
  auto [lo, hi] = g.support_cells();
  if (lo >= hi) return 0.0;
  const double h = g.step();
  BlockSplitter splitter{g, lq.p, lq.lambda * (lq.p - 1.0) / lq.p, h, {}};
  splitter.prefix.assign(g.size() + 1, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    splitter.prefix[i + 1] = splitter.prefix[i] + std::pow(std::abs(g[i]), lq.p) * h;
  // pad the support to a power-of-two cell count so halving stays aligned
  std::size_t count = hi - lo;
  std::size_t len = 1;
  while (len < count) len *= 2;
  std::size_t root_hi = std::min(lo + len, g.size());
  return splitter.cost(lo, root_hi);
}

}  // namespace czlab
