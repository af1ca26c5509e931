#include "czlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace czlab {

namespace {

// drop-order: ascending margin, leftmost first among ties
std::vector<std::size_t> keep_largest(const std::vector<std::pair<double, std::size_t>>& margins,
                                      std::size_t keep) {
  std::vector<std::pair<double, std::size_t>> order = margins;
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  order.resize(std::min(keep, order.size()));
  std::vector<std::size_t> cells;
  cells.reserve(order.size());
  for (const auto& [margin, idx] : order) cells.push_back(idx);
  std::sort(cells.begin(), cells.end());
  return cells;
}

}  // namespace

OscillationSets oscillation_sets(const GridFunction& b, const Interval& interval) {
  SnappedInterval snapped = snap_to_cells(b, interval);
  const Interval I = snapped.interval;
  const double r = I.radius;
  if (!b.window().contains(I.scaled(5.0)))
    fail(errc::out_of_window, "oscillation_sets needs 5I inside the grid window");
  const Interval i_tilde = snap_to_cells(b, Interval(I.center + 4.0 * r, r)).interval;

  OscillationSets out;
  out.interval = I;
  out.i_tilde = i_tilde;
  out.alpha = median(b, i_tilde);

  // threshold: the candidate-based local oscillation, capped by the
  // rearrangement level at c = alpha so the 1/8-level set is guaranteed to
  // carry measure >= |I|/8
  CellRange ri = cells_in(b, I);
  std::vector<double> mags;
  mags.reserve(ri.count());
  for (std::size_t i = ri.first; i < ri.last; ++i) mags.push_back(std::abs(b[i] - out.alpha));
  std::vector<double> sorted = mags;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double t0 = 0.0;
  {
    double t = I.measure() / 8.0;
    std::size_t idx = 0;
    while (idx < sorted.size()) {
      double w = sorted[idx];
      if (static_cast<double>(idx) * b.step() < t)
        t0 = w;
      else
        break;
      while (idx < sorted.size() && sorted[idx] == w) ++idx;
    }
    if (static_cast<double>(sorted.size()) * b.step() < t) t0 = 0.0;
  }
  out.omega = std::min(local_mean_oscillation(b, I, 0.125), t0);

  // omega == 0 (b nearly constant at the 7/8 level on I) is a degenerate
  // success; the construction below still applies verbatim and keeps the
  // measure and sign conclusions, with the domination reading 0 <= |b(x)-b(y)|
  const double scale = std::max(1.0, sup_norm(b));
  if (out.omega <= 1e-14 * scale) {
    out.omega = 0.0;
    out.degenerate = true;
  }

  // curly-E: cells of I with |b - alpha| >= omega, trimmed to |I|/8
  std::vector<std::pair<double, std::size_t>> qualifying;
  for (std::size_t i = ri.first; i < ri.last; ++i) {
    double margin = std::abs(b[i] - out.alpha);
    if (margin >= out.omega) qualifying.emplace_back(margin, i);
  }
  std::size_t m_curly = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(static_cast<double>(ri.count()) / 8.0)), 1,
      qualifying.size());
  std::vector<std::size_t> curly = keep_largest(qualifying, m_curly);

  // split by sign of b - alpha, keep the larger half (ties take the >= side)
  std::vector<std::pair<double, std::size_t>> plus, minus;
  for (std::size_t i : curly) {
    double diff = b[i].real() - out.alpha;
    if (diff >= 0.0)
      plus.emplace_back(std::abs(b[i] - out.alpha), i);
    else
      minus.emplace_back(std::abs(b[i] - out.alpha), i);
  }
  bool take_plus = plus.size() >= minus.size();
  const auto& side = take_plus ? plus : minus;
  out.sign = take_plus ? 1 : -1;
  std::size_t m_e = std::clamp<std::size_t>((curly.size() + 1) / 2, 1, side.size());
  out.e_set.step = b.step();
  out.e_set.cells = keep_largest(side, m_e);

  // matching half of I~: b <= alpha when E sits above the median, b >= alpha
  // otherwise; the median property guarantees at least half of I~ qualifies
  CellRange rt = cells_in(b, i_tilde);
  std::vector<std::pair<double, std::size_t>> f_candidates;
  for (std::size_t i = rt.first; i < rt.last; ++i) {
    double diff = b[i].real() - out.alpha;
    bool ok = take_plus ? diff <= 0.0 : diff >= 0.0;
    if (ok) f_candidates.emplace_back(std::abs(b[i] - out.alpha), i);
  }
  std::size_t m_f = std::clamp<std::size_t>((rt.count() + 1) / 2, 1, f_candidates.size());
  out.f_set.step = b.step();
  out.f_set.cells = keep_largest(f_candidates, m_f);
  return out;
}

LowerBoundFn lower_bound_testfn(const GridFunction& b, const Interval& interval,
                                const MorreyParams& params) {
  SnappedInterval snapped = snap_to_cells(b, interval);
  const Interval I = snapped.interval;
  if (!b.window().contains(I)) fail(errc::out_of_window, "lower_bound_testfn interval outside window");
  CellRange r = cells_in(b, I);
  if (r.empty()) fail(errc::out_of_window, "lower_bound_testfn interval holds no cells");

  LowerBoundFn out{GridFunction::zeros(b.origin(), b.step(), b.size()), I, 0.0,
                   median(b, I), params};
  long n_plus = 0, n_minus = 0;
  for (std::size_t i = r.first; i < r.last; ++i) {
    double diff = b[i].real() - out.alpha;
    if (diff > 0.0)
      ++n_plus;
    else if (diff < 0.0)
      ++n_minus;
  }
  const double m_total = static_cast<double>(r.count());
  out.a_j = static_cast<double>(n_plus - n_minus) / m_total;
  const double scale = std::pow(I.measure(), -(1.0 - params.lambda) / params.p);
  for (std::size_t i = r.first; i < r.last; ++i) {
    double diff = b[i].real() - out.alpha;
    double f1 = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    out.f[i] = scale * (f1 - out.a_j);
  }

  // verify the construction before handing it out
  std::ostringstream diag;
  if (std::abs(out.a_j) > 0.5 + 1e-12) diag << "|a_j| = " << std::abs(out.a_j) << " > 1/2; ";
  double mean = std::abs(integrate(out.f));
  double l1 = lp_norm(out.f, 1.0);
  if (mean > 1e-10 * std::max(l1, 1e-300)) diag << "mean " << mean << " not zero; ";
  for (std::size_t i = r.first; i < r.last; ++i) {
    double align = out.f[i].real() * (b[i].real() - out.alpha);
    if (align < -1e-12 * std::max(1.0, std::abs(out.alpha))) {
      diag << "sign misaligned at cell " << i << "; ";
      break;
    }
  }
  std::string problems = diag.str();
  if (!problems.empty())
    fail(errc::construction_failed, "lower_bound_testfn invariants failed: " + problems);
  return out;
}

AnnulusBounds annulus_bounds(const LipschitzCurve& curve, const GridFunction& b,
                             const LowerBoundFn& lb, int k, const MorreyParams& params) {
  if (k < 2) fail(errc::invalid_argument, "annulus_bounds needs k >= floor(log2 A1) >= 2");
  const Interval& I = lb.interval;
  const double r = I.radius;
  const double pk = std::pow(2.0, k);
  Interval big = I.scaled(2.0 * pk);  // 2^{k+1} I_j
  if (!b.window().contains(big)) fail(errc::out_of_window, "annulus_bounds needs 2^{k+1} I_j inside window");

  const double p = params.p;
  auto mass = [&](const Interval& piece) {
    CellRange cells = cells_in(b, snap_to_cells(b, piece).interval);
    if (cells.empty()) return 0.0;
    std::vector<cplx> vals = commutator_on_cells(curve, b, lb.f, cells);
    double acc = 0.0;
    for (const cplx& v : vals) acc += std::pow(std::abs(v), p);
    return acc * b.step();
  };

  AnnulusBounds out;
  out.k = k;
  double right_mass = mass(Interval::from_endpoints(I.center + pk * r, I.center + 2.0 * pk * r));
  double left_mass = mass(Interval::from_endpoints(I.center - 2.0 * pk * r, I.center - pk * r));
  out.lower_lhs = right_mass;          // I_j^k is the right-hand dyadic interval
  out.upper_lhs = right_mass + left_mass;
  // |2^k I_j| = 2^k |I_j|
  double unit =
      std::pow(I.measure(), p - 1.0 + params.lambda) / std::pow(pk * I.measure(), p - 1.0);
  out.lower_rhs_unit = unit;
  out.upper_rhs_unit = unit;
  return out;
}

double recommended_separation_ratio(double c1, double c2, double delta, double a1,
                                    const MorreyParams& params) {
  const double p = params.p;
  double a3_base = std::pow(8.0, 1.0 - p) * c1 * std::pow(delta, p) * std::pow(a1, 1.0 - p);
  if (!(a3_base > 0.0)) return 0.0;
  for (int e = 1; e <= 60; ++e) {
    double rhs = 2.0 * c2 / ((1.0 - std::pow(2.0, 1.0 - p)) * std::pow(2.0, e * (p - 1.0)));
    if (a3_base > rhs) return std::pow(2.0, e);
  }
  return 0.0;
}

WitnessReport noncompact_witness(const LipschitzCurve& curve, const GridFunction& b,
                                 WitnessScenario scenario, const MorreyParams& params, int count,
                                 const IntervalLattice& lattice, const WitnessOptions& options) {
  if (count < 2) fail(errc::invalid_argument, "witness needs count >= 2");
  WitnessReport report;
  report.scenario = scenario;
  report.delta = options.delta > 0.0 ? options.delta : 0.5 * bmo_norm(b, lattice);
  report.ratio_used = options.ratio;

  // candidates: lattice intervals with oscillation above delta
  struct Candidate {
    Interval interval;
    double osc;
  };
  std::vector<Candidate> candidates;
  for (const auto& e : lattice.entries()) {
    double osc = mean_oscillation(b, e.interval);
    if (osc > report.delta) candidates.push_back({e.interval, osc});
  }
  if (candidates.empty())
    fail(errc::witness_unavailable, "no lattice interval has oscillation above delta");

  auto by_length_then_osc = [](const Candidate& a, const Candidate& c) {
    if (a.interval.radius != c.interval.radius) return a.interval.radius > c.interval.radius;
    if (a.osc != c.osc) return a.osc > c.osc;
    return a.interval.center < c.interval.center;
  };
  std::sort(candidates.begin(), candidates.end(), by_length_then_osc);

  std::vector<Candidate> chosen;
  const double ratio = options.ratio;
  if (scenario == WitnessScenario::shrinking) {
    for (const Candidate& c : candidates) {
      if (static_cast<int>(chosen.size()) >= count) break;
      if (chosen.empty() ||
          c.interval.radius <= chosen.back().interval.radius / ratio * (1.0 + 1e-9))
        chosen.push_back(c);
    }
  } else if (scenario == WitnessScenario::growing) {
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      if (static_cast<int>(chosen.size()) >= count) break;
      if (chosen.empty() ||
          it->interval.radius >= chosen.back().interval.radius * ratio * (1.0 - 1e-9))
        chosen.push_back(*it);
    }
  } else {  // escaping: bounded radii marching to infinity, ratio-separated
    std::vector<Candidate> by_distance = candidates;
    std::sort(by_distance.begin(), by_distance.end(), [](const Candidate& a, const Candidate& c) {
      if (std::abs(a.interval.center) != std::abs(c.interval.center))
        return std::abs(a.interval.center) < std::abs(c.interval.center);
      if (a.interval.radius != c.interval.radius) return a.interval.radius < c.interval.radius;
      return a.interval.center < c.interval.center;
    });
    for (const Candidate& c : by_distance) {
      if (static_cast<int>(chosen.size()) >= count) break;
      bool separated = true;
      for (const Candidate& prev : chosen)
        if (!prev.interval.scaled(ratio).disjoint(c.interval.scaled(ratio))) {
          separated = false;
          break;
        }
      if (separated) chosen.push_back(c);
    }
  }
  if (static_cast<int>(chosen.size()) < count)
    fail(errc::witness_unavailable, "could not arrange " + std::to_string(count) +
                                        " qualifying intervals for the scenario");

  report.achieved_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < chosen.size(); ++j) {
    double a = chosen[j - 1].interval.radius, b2 = chosen[j].interval.radius;
    report.achieved_ratio = std::min(report.achieved_ratio, std::max(a, b2) / std::min(a, b2));
  }
  if (!std::isfinite(report.achieved_ratio)) report.achieved_ratio = 0.0;

  std::vector<GridFunction> images;
  for (const Candidate& c : chosen) {
    LowerBoundFn lb = lower_bound_testfn(b, c.interval, params);
    report.intervals.push_back(lb.interval);
    report.oscillation.push_back(c.osc);
    images.push_back(commutator_image(curve, b, lb.f));
    report.single_norms.push_back(morrey_norm(images.back(), params, lattice));
  }
  report.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < images.size(); ++l)
    for (std::size_t m = l + 1; m < images.size(); ++m) {
      GridFunction diff = images[l];
      diff -= images[m];
      double dist = morrey_norm(diff, params, lattice);
      report.pairs.push_back({static_cast<int>(l), static_cast<int>(m), dist});
      report.min_distance = std::min(report.min_distance, dist);
    }
  double min_single = *std::min_element(report.single_norms.begin(), report.single_norms.end());
  report.fitted_bound = options.distance_floor_factor * min_single;
  return report;
}

void WitnessReport::write_csv(std::ostream& out) const {
  const char* name = scenario == WitnessScenario::shrinking   ? "shrinking"
                     : scenario == WitnessScenario::growing   ? "growing"
                                                              : "escaping";
  out << "scenario,j,l,m,distance,unit,fitted_bound\n";
  double min_single =
      single_norms.empty() ? 0.0 : *std::min_element(single_norms.begin(), single_norms.end());
  for (std::size_t j = 0; j < pairs.size(); ++j)
    out << name << ',' << j << ',' << pairs[j].l << ',' << pairs[j].m << ','
        << format_g17(pairs[j].distance) << ',' << format_g17(min_single) << ','
        << format_g17(fitted_bound) << '\n';
}

}  // namespace czlab
