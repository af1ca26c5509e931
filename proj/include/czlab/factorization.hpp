#pragma once

#include <iosfwd>
#include <optional>

#include "czlab/operators.hpp"
#include "czlab/spaces.hpp"

namespace czlab {

/// Mean-zero function supported in I(x0, r) with sup norm <= 1/r. Atoms carry
/// their own grid; different atoms of a decomposition may live at different
/// scales and positions.
struct Atom {
  GridFunction f;
  Interval interval{0.0, 1.0};

  double x0() const { return interval.center; }
  double r() const { return interval.radius; }
};

/// Validates both atom conditions. With rescale set, f is divided by
/// max(1, r * sup|f|) first. A nonzero mean beyond 1e-12 * ||f||_1 is a
/// cancellation error.
Atom make_atom(const GridFunction& f, const Interval& interval, bool rescale = false);

/// The factorization pair of an atom: g = chi_{I(y0, r)} with |x0 - y0| = N r
/// (y0 placed rightward by default) and h = -a / C_Gamma g(x0).
struct FactorPair {
  GridFunction g;
  GridFunction h;
  cplx denominator;  // C_Gamma g(x0)
  int n_sep = 0;
  Interval g_interval{0.0, 1.0};
  Interval atom_interval{0.0, 1.0};
};

FactorPair make_pair(const LipschitzCurve& curve, const Atom& atom, int n_sep,
                     bool leftward = false,
                     const std::optional<Interval>& window = std::nullopt);

/// a - (g C*h - h C g) on the combined grid spanning both bumps, plus the
/// fitted constant of |res| <= C / (N r) on the two supports and the
/// relative residual mean (an exact discrete cancellation identity).
struct ResidualInfo {
  GridFunction res;
  double fitted_c = 0.0;   // max |res| * N * r
  double mean_rel = 0.0;   // |int res| / ||a||_1
};
ResidualInfo residual(const LipschitzCurve& curve, const Atom& atom, const FactorPair& pair);

struct AtomicDecomposition {
  std::vector<std::pair<cplx, Atom>> terms;

  double coefficient_sum() const;
  /// max over u's cells of |sum_k coeff_k atom_k(x) - u(x)|.
  double reconstruction_error(const GridFunction& u) const;
};

/// Constructive two-bump atomization: u with mean zero and
/// |u| <= M (chi_{I(x0,rhat)} + chi_{I(y0,rhat)}), rhat = |y0-x0|/N, splits
/// into <= ceil(log2 N) + 2 atoms along a symmetric chain of quadrupling
/// intervals anchored at both bumps, with coefficient sum O(M rhat log2 N).
AtomicDecomposition chain_atoms(const GridFunction& u, double x0, double y0, int n_sep);

struct FactorizeOptions {
  bool verify = true;          // per-atom reconstruction bookkeeping
  bool leftward = false;       // pair direction
  bool norms = true;           // compute per-pair Morrey/block norms
  std::optional<Interval> window;  // optional global window bound
  double max_mean_rel = 1e-10;     // residual cancellation gate
  long cells_per_radius = 32;      // atom grid resolution (refinement doubles it)
};

struct FactorizationRound {
  int round = 0;
  std::size_t atoms_in = 0;
  double mass_in = 0.0;
  double kappa = 0.0;  // mass_out / mass_in
  double pairing_mass = 0.0;  // sum |coeff| * ||g||_Morrey * h_norm_upper(h)
  struct PairMeta {
    cplx coeff;
    int n_sep = 0;
    double x0 = 0.0, y0 = 0.0, r = 0.0;
    double g_morrey = 0.0, h_block_upper = 0.0;
  };
  std::vector<PairMeta> pairs;
};

struct FactorizationResult {
  std::vector<FactorizationRound> rounds;
  struct ResidualMeta {
    cplx coeff;
    Interval interval{0.0, 1.0};
  };
  std::vector<ResidualMeta> final_residual;
  double final_mass = 0.0;
  double max_mean_rel = 0.0;          // worst residual-cancellation violation
  double max_identity_violation = 0.0;  // worst per-atom chain reconstruction error (relative)
  void write_json(std::ostream& out) const;
};

/// Iterative factorization: per round, build a pair for every atom, form the
/// residual, re-atomize it with chain_atoms, recurse. kappa >= 1 raises a
/// no-contraction error advising a larger N.
FactorizationResult factorize(const LipschitzCurve& curve, const AtomicDecomposition& decomp,
                              int n_sep, int rounds, const MorreyParams& params,
                              const FactorizeOptions& options = {});

/// Exact regrid of an atom so its grid step is r/cells_per_radius; steps must
/// differ by a power of two, which the factorization pipeline guarantees.
Atom normalize_atom_grid(const Atom& atom, long cells_per_radius = 32);

}  // namespace czlab
