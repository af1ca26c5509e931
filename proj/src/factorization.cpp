#include "czlab/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "json.hpp"

namespace czlab {

namespace {

long exact_cells(double length, double h, const char* what) {
  double ratio = length / h;
  long cells = static_cast<long>(std::llround(ratio));
  if (cells < 1 || std::abs(ratio - static_cast<double>(cells)) > 1e-6)
    fail(errc::resample_required, std::string(what) + " must span a whole number of cells");
  return cells;
}

int v2(long long x) {
  int k = 0;
  while (x > 0 && (x & 1) == 0) {
    x >>= 1;
    ++k;
  }
  return k;
}

// unit-mass indicator on I(center, radius) painted onto a grid
void add_bump(GridFunction& g, double center, double radius, cplx mass) {
  CellRange r = cells_in(g, Interval(center, radius));
  cplx value = mass / (2.0 * radius);
  for (std::size_t i = r.first; i < r.last; ++i) g[i] += value;
}

std::pair<cplx, Atom> to_atom(GridFunction piece, const Interval& interval) {
  double sup = sup_norm(piece);
  double coeff = sup * interval.radius;
  piece *= cplx(1.0 / coeff, 0.0);
  return {cplx(coeff, 0.0), make_atom(piece, interval)};
}

}  // namespace

Atom make_atom(const GridFunction& f, const Interval& interval, bool rescale) {
  SnappedInterval snapped = snap_to_cells(f, interval);
  const Interval I = snapped.interval;
  GridFunction fn = f;
  if (rescale) {
    double factor = std::max(1.0, I.radius * sup_norm(fn));
    fn *= cplx(1.0 / factor, 0.0);
  }
  auto [lo, hi] = fn.support_cells();
  if (lo < hi) {
    CellRange inside = cells_in(fn, I);
    if (lo < inside.first || hi > inside.last)
      fail(errc::invalid_argument, "atom support exceeds its interval");
  }
  double bound = (1.0 / I.radius) * (1.0 + fn.step() / I.radius + 1e-12);
  if (sup_norm(fn) > bound)
    fail(errc::invalid_argument, "atom sup norm exceeds 1/r (one-cell slack)");
  double mean = std::abs(integrate(fn));
  double l1 = lp_norm(fn, 1.0);
  if (l1 > 0.0 && mean > 1e-12 * l1)
    fail(errc::cancellation, "atom mean " + format_g17(mean) + " exceeds 1e-12 * ||f||_1 (l1 " +
                                 format_g17(l1) + ", interval " + format_g17(I.center) + " +- " +
                                 format_g17(I.radius) + ", step " + format_g17(fn.step()) + ")");
  return Atom{std::move(fn), I};
}

FactorPair make_pair(const LipschitzCurve& curve, const Atom& atom, int n_sep, bool leftward,
                     const std::optional<Interval>& window) {
  if (n_sep <= 10) fail(errc::invalid_argument, "make_pair needs N in (10, inf)");
  const double h = atom.f.step();
  const double r = atom.r();
  exact_cells(r, h, "atom radius");
  const double y0 = atom.x0() + (leftward ? -1.0 : 1.0) * static_cast<double>(n_sep) * r;
  Interval g_interval(y0, r);
  if (window && !window->contains(g_interval))
    fail(errc::out_of_window, "pair interval I(y0, r) exceeds the configured window");

  long cells = exact_cells(2.0 * r, h, "pair interval");
  GridFunction g(y0 - r, h, std::vector<cplx>(static_cast<std::size_t>(cells), cplx(1.0, 0.0)));
  cplx denom = pv_cauchy(curve, g, atom.x0());
  if (std::abs(denom) < 1e-12)
    fail(errc::degenerate_denominator, "|C_Gamma g(x0)| below 1e-12");
  GridFunction hfn = atom.f;
  hfn *= -1.0 / denom;
  return FactorPair{std::move(g), std::move(hfn), denom, n_sep, g_interval, atom.interval};
}

ResidualInfo residual(const LipschitzCurve& curve, const Atom& atom, const FactorPair& pair) {
  const double h = atom.f.step();
  double origin = std::min(atom.f.origin(), pair.g.origin());
  double end = std::max(atom.f.origin() + h * static_cast<double>(atom.f.size()),
                        pair.g.origin() + h * static_cast<double>(pair.g.size()));
  long n = exact_cells(end - origin, h, "residual window");
  GridFunction res = GridFunction::zeros(origin, h, static_cast<std::size_t>(n));

  long a_off = static_cast<long>(std::llround((atom.f.origin() - origin) / h));
  for (std::size_t i = 0; i < atom.f.size(); ++i) res[static_cast<std::size_t>(a_off) + i] = atom.f[i];

  // -g * C*h on the cells of I(y0, r)
  long g_off = static_cast<long>(std::llround((pair.g.origin() - origin) / h));
  auto [glo, ghi] = pair.g.support_cells();
  for (std::size_t i = glo; i < ghi; ++i) {
    double x = pair.g.midpoint(i);
    res[static_cast<std::size_t>(g_off) + i] -= pair.g[i] * adjoint_cauchy(curve, pair.h, x);
  }
  // + h * C_Gamma g on the atom support
  auto [alo, ahi] = pair.h.support_cells();
  for (std::size_t i = alo; i < ahi; ++i) {
    double x = pair.h.midpoint(i);
    res[static_cast<std::size_t>(a_off) + i] += pair.h[i] * pv_cauchy(curve, pair.g, x);
  }

  ResidualInfo info{std::move(res), 0.0, 0.0};
  info.fitted_c = sup_norm(info.res) * static_cast<double>(pair.n_sep) * atom.r();
  double l1 = lp_norm(atom.f, 1.0);
  info.mean_rel = std::abs(integrate(info.res)) / std::max(l1, 1e-300);
  return info;
}

double AtomicDecomposition::coefficient_sum() const {
  double acc = 0.0;
  for (const auto& [coeff, atom] : terms) acc += std::abs(coeff);
  return acc;
}

double AtomicDecomposition::reconstruction_error(const GridFunction& u) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double x = u.midpoint(i);
    cplx acc(0.0, 0.0);
    for (const auto& [coeff, atom] : terms) acc += coeff * atom.f.value_at(x);
    worst = std::max(worst, std::abs(acc - u[i]));
  }
  return worst;
}

AtomicDecomposition chain_atoms(const GridFunction& u, double x0, double y0, int n_sep) {
  if (n_sep < 1) fail(errc::invalid_argument, "chain_atoms needs N >= 1");
  const double h = u.step();
  double l1 = lp_norm(u, 1.0);
  if (std::abs(integrate(u)) > 1e-10 * std::max(l1, 1e-300))
    fail(errc::cancellation, "chain_atoms input must have mean zero");
  AtomicDecomposition out;
  if (l1 == 0.0) return out;
  const double sup = sup_norm(u);

  if (std::abs(y0 - x0) < 0.5 * h) {
    // single-bump input: one atom on its tight support interval
    auto [lo, hi] = u.support_cells();
    double left = u.origin() + h * static_cast<double>(lo);
    double right = u.origin() + h * static_cast<double>(hi);
    double rad = std::max(std::abs(left - x0), std::abs(right - x0));
    Interval I(x0, std::max(rad, h));
    GridFunction piece = u;
    out.terms.push_back(to_atom(std::move(piece), snap_to_cells(u, I).interval));
    return out;
  }

  const double rhat = std::abs(y0 - x0) / static_cast<double>(n_sep);
  const long mr = exact_cells(rhat, h, "chain bump radius");
  const long offs_cells = exact_cells(std::abs(y0 - x0), h, "chain bump separation");
  if (offs_cells % 2 != 0)
    fail(errc::invalid_argument, "chain_atoms needs an even bump separation in cells");

  // two-bump precondition
  Interval bx(x0, rhat), by(y0, rhat);
  for (std::size_t i = 0; i < u.size(); ++i) {
    double x = u.midpoint(i);
    if (!bx.contains(x) && !by.contains(x) && std::abs(u[i]) > 1e-12 * sup)
      fail(errc::not_two_bump, "chain_atoms input is not supported by the two bumps");
  }

  // per-side masses keep every piece mean-zero in floating point; the input's
  // own mean defect (|int u| <= 1e-10 ||u||_1) is absorbed into the widest
  // transfer bump, costing a reconstruction error of |int u| / (2 * 4^J rhat)
  CellRange rx = cells_in(u, bx);
  cplx m_x(0.0, 0.0);
  for (std::size_t i = rx.first; i < rx.last; ++i) m_x += u[i];
  m_x *= h;
  CellRange ry = cells_in(u, by);
  cplx m_y(0.0, 0.0);
  for (std::size_t i = ry.first; i < ry.last; ++i) m_y += u[i];
  m_y *= -h;

  int J = 1;
  while (std::pow(4.0, J) < static_cast<double>(n_sep)) ++J;

  auto end_piece = [&](double center, const Interval& bump, cplx mass_sign) {
    // u restricted to the bump, minus/plus the unit bump on I(center, 4 rhat)
    double radius = 4.0 * rhat;
    long cells = 8 * mr + 4;
    GridFunction piece = GridFunction::zeros(center - radius - 2.0 * h, h,
                                             static_cast<std::size_t>(cells));
    CellRange rb = cells_in(u, bump);
    long off = static_cast<long>(std::llround((u.origin() - piece.origin()) / h));
    for (std::size_t i = rb.first; i < rb.last; ++i)
      piece[static_cast<std::size_t>(off + static_cast<long>(i))] = u[i];
    add_bump(piece, center, radius, mass_sign);
    return piece;
  };

  GridFunction piece_x = end_piece(x0, bx, -m_x);
  if (!piece_x.is_zero())
    out.terms.push_back(to_atom(std::move(piece_x), Interval(x0, 4.0 * rhat)));

  auto chain_piece = [&](double center, int j, cplx inner_mass) {
    // inner_mass * (psi_j - psi_{j+1}) around `center`
    double sigma = std::pow(4.0, j) * h;
    double radius = std::pow(4.0, j + 1) * rhat;
    long cells = 8 * mr + 4;
    GridFunction piece =
        GridFunction::zeros(center - radius - 2.0 * sigma, sigma, static_cast<std::size_t>(cells));
    add_bump(piece, center, std::pow(4.0, j) * rhat, inner_mass);
    add_bump(piece, center, radius, -inner_mass);
    return piece;
  };

  for (int j = 1; j < J; ++j) {
    GridFunction piece = chain_piece(x0, j, m_x);
    if (!piece.is_zero())
      out.terms.push_back(to_atom(std::move(piece), Interval(x0, std::pow(4.0, j + 1) * rhat)));
  }

  // middle transfer m (psi^x_J - psi^y_J) on a grid whose step divides every
  // indicator edge offset; radius is a power-of-two multiple of rhat
  {
    double rj = std::pow(4.0, J) * rhat;
    long rj_cells = static_cast<long>(std::llround(std::pow(4.0, J))) * mr;
    long q_cells = mr;
    while (static_cast<double>(q_cells) < 0.5 * static_cast<double>(offs_cells) +
                                              static_cast<double>(rj_cells))
      q_cells *= 2;
    double center_mid = 0.5 * (x0 + y0);
    long span = offs_cells + 2 * rj_cells;
    long align = std::gcd(std::gcd(rj_cells, offs_cells / 2), q_cells);
    int k = v2(align);
    while ((span >> k) < 64 && k > 0) --k;
    if ((span >> k) > 2000000)
      fail(errc::invalid_argument, "chain separation too large for an aligned transfer grid");
    double sigma = static_cast<double>(1L << k) * h;
    double radius = static_cast<double>(q_cells) * h;
    long cells = span / (1L << k) + 4;
    // the grid hugs the two indicator bumps; the atom interval I(center_mid,
    // radius) may extend past it, which only the interval arithmetic sees
    GridFunction piece = GridFunction::zeros(std::min(x0, y0) - rj - 2.0 * sigma, sigma,
                                             static_cast<std::size_t>(cells));
    add_bump(piece, x0, rj, m_y);
    add_bump(piece, y0, rj, -m_y);
    if (!piece.is_zero())
      out.terms.push_back(to_atom(std::move(piece), Interval(center_mid, radius)));
  }

  for (int j = J - 1; j >= 1; --j) {
    GridFunction piece = chain_piece(y0, j, -m_y);
    if (!piece.is_zero())
      out.terms.push_back(to_atom(std::move(piece), Interval(y0, std::pow(4.0, j + 1) * rhat)));
  }

  GridFunction piece_y = end_piece(y0, by, m_y);
  if (!piece_y.is_zero())
    out.terms.push_back(to_atom(std::move(piece_y), Interval(y0, 4.0 * rhat)));

  return out;
}

Atom normalize_atom_grid(const Atom& atom, long cells_per_radius) {
  if (cells_per_radius < 4 || (cells_per_radius & (cells_per_radius - 1)) != 0)
    fail(errc::invalid_argument, "cells_per_radius must be a power of two >= 4");
  const double target = atom.r() / static_cast<double>(cells_per_radius);
  const double h = atom.f.step();
  double ratio = target >= h ? target / h : h / target;
  long k = static_cast<long>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(k)) > 1e-9 || (k & (k - 1)) != 0)
    fail(errc::resample_required, "atom step and r/cells_per_radius must differ by a power of two");
  if (k == 1 && std::abs(target - h) < 1e-12 * h) return atom;
  std::size_t n = static_cast<std::size_t>(2 * cells_per_radius + 4);
  double origin = atom.x0() - atom.r() - 2.0 * target;
  GridFunction f = regrid(atom.f, origin, target, n);
  return make_atom(f, atom.interval);
}

FactorizationResult factorize(const LipschitzCurve& curve, const AtomicDecomposition& decomp,
                              int n_sep, int rounds, const MorreyParams& params,
                              const FactorizeOptions& options) {
  if (n_sep <= 10 || n_sep % 2 != 0)
    fail(errc::invalid_argument, "factorize needs an even N in (10, inf)");
  if (options.window)
    for (const auto& [coeff, atom] : decomp.terms)
      if (!options.window->contains(
              Interval(atom.x0() + 2.0 * static_cast<double>(n_sep) * atom.r(), atom.r())))
        fail(errc::out_of_window, "window must cover x0 + 2 N r_max for every input atom");

  FactorizationResult result;
  std::vector<std::pair<cplx, Atom>> current;
  for (const auto& [coeff, atom] : decomp.terms)
    if (std::abs(coeff) > 0.0)
      current.emplace_back(coeff, normalize_atom_grid(atom, options.cells_per_radius));

  const MorreyParams block_params(params.conjugate(), params.lambda);
  for (int l = 1; l <= rounds; ++l) {
    FactorizationRound round;
    round.round = l;
    round.atoms_in = current.size();
    double mass_in = 0.0;
    for (const auto& [coeff, atom] : current) mass_in += std::abs(coeff);
    round.mass_in = mass_in;
    if (current.empty()) {
      result.rounds.push_back(std::move(round));
      break;
    }

    std::vector<std::pair<cplx, Atom>> next;
    for (const auto& [coeff, atom] : current) {
      FactorPair pair = make_pair(curve, atom, n_sep, options.leftward, options.window);
      ResidualInfo ri = residual(curve, atom, pair);
      result.max_mean_rel = std::max(result.max_mean_rel, ri.mean_rel);

      FactorizationRound::PairMeta meta;
      meta.coeff = coeff;
      meta.n_sep = n_sep;
      meta.x0 = atom.x0();
      meta.y0 = pair.g_interval.center;
      meta.r = atom.r();
      if (options.norms) {
        IntervalLattice g_lat = IntervalLattice::dyadic(pair.g.window(), pair.g.step(), 6, 4);
        meta.g_morrey = morrey_norm(pair.g, params, g_lat);
        meta.h_block_upper = h_norm_upper(pair.h, block_params);
        round.pairing_mass += std::abs(coeff) * meta.g_morrey * meta.h_block_upper;
      }
      round.pairs.push_back(meta);

      AtomicDecomposition chain =
          chain_atoms(ri.res, atom.x0(), pair.g_interval.center, n_sep);
      if (options.verify) {
        double err = chain.reconstruction_error(ri.res);
        double scale = std::max(sup_norm(ri.res), 1e-300);
        result.max_identity_violation = std::max(result.max_identity_violation, err / scale);
      }
      for (auto& [c2, a2] : chain.terms)
        next.emplace_back(coeff * c2, normalize_atom_grid(a2, options.cells_per_radius));
    }

    double mass_out = 0.0;
    for (const auto& [coeff, atom] : next) mass_out += std::abs(coeff);
    round.kappa = mass_in > 0.0 ? mass_out / mass_in : 0.0;
    result.rounds.push_back(std::move(round));
    if (mass_in > 0.0 && mass_out / mass_in >= 1.0)
      fail(errc::no_contraction,
           "measured round contraction kappa = " + format_g17(mass_out / mass_in) +
               " >= 1; increase N");
    current = std::move(next);
  }

  for (const auto& [coeff, atom] : current) {
    result.final_residual.push_back({coeff, atom.interval});
    result.final_mass += std::abs(coeff);
  }
  return result;
}

void FactorizationResult::write_json(std::ostream& out) const {
  nlohmann::json j;
  j["rounds"] = nlohmann::json::array();
  for (const auto& r : rounds) {
    nlohmann::json jr;
    jr["round"] = r.round;
    jr["atoms_in"] = r.atoms_in;
    jr["mass_in"] = r.mass_in;
    jr["kappa"] = r.kappa;
    jr["pairing_mass"] = r.pairing_mass;
    jr["pairs"] = nlohmann::json::array();
    for (const auto& p : r.pairs)
      jr["pairs"].push_back({{"coeff_re", p.coeff.real()},
                             {"coeff_im", p.coeff.imag()},
                             {"N", p.n_sep},
                             {"x0", p.x0},
                             {"y0", p.y0},
                             {"r", p.r},
                             {"g_morrey", p.g_morrey},
                             {"h_block_upper", p.h_block_upper}});
    j["rounds"].push_back(std::move(jr));
  }
  j["final_mass"] = final_mass;
  j["final_residual"] = nlohmann::json::array();
  for (const auto& m : final_residual)
    j["final_residual"].push_back({{"coeff_re", m.coeff.real()},
                                   {"coeff_im", m.coeff.imag()},
                                   {"x0", m.interval.center},
                                   {"r", m.interval.radius}});
  j["max_mean_rel"] = max_mean_rel;
  j["max_identity_violation"] = max_identity_violation;
  out << j.dump(2) << '\n';
}

}  // namespace czlab
