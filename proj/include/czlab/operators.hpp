#pragma once

#include "czlab/curve.hpp"
#include "czlab/grid.hpp"

namespace czlab {

/// Geometric family of truncation radii discretizing sup_{t>0}.
struct TruncationLattice {
  std::vector<double> radii;  // strictly increasing, radii.front() >= grid step

  /// Default ratio 2^(1/4): dense enough that the discrete sup underestimates
  /// a monotone family's sup by <= 10%.
  static TruncationLattice geometric(double t_min, double t_max, double ratio = 1.189207115002721);
};

/// Truncated Cauchy integral: midpoint sum of K(x,y)f(y) over cells with
/// |x - y_mid| > t. Requires t >= step; x is snapped to the midpoint lattice.
cplx truncated_cauchy(const LipschitzCurve& curve, const GridFunction& f, double x, double t);

/// Principal value by symmetric one-cell exclusion: x snaps to a cell
/// midpoint and only that cell is skipped. Across the excluded window the
/// odd part of the kernel cancels, leaving an O(step) remainder.
cplx pv_cauchy(const LipschitzCurve& curve, const GridFunction& f, double x);

/// Bilinear-pairing adjoint: the pv sum with kernel arguments swapped.
cplx adjoint_cauchy(const LipschitzCurve& curve, const GridFunction& f, double x);

/// sup over the lattice radii of |truncated_cauchy|.
double maximal_truncated(const LipschitzCurve& curve, const GridFunction& f, double x,
                         const TruncationLattice& lattice);

/// [b, C]f(x) = b(x) C(f)(x) - C(bf)(x); b and f must share a grid.
cplx commutator(const LipschitzCurve& curve, const GridFunction& b, const GridFunction& f,
                double x);

/// Hardy-Littlewood maximal function over cell-aligned intervals containing x.
double hl_maximal(const GridFunction& f, double x);

// Full-image sweeps evaluated at every cell midpoint of f's grid. Direct
// O(n * support) summation; no acceleration at desk scale.
GridFunction pv_cauchy_image(const LipschitzCurve& curve, const GridFunction& f);
GridFunction adjoint_cauchy_image(const LipschitzCurve& curve, const GridFunction& f);
GridFunction commutator_image(const LipschitzCurve& curve, const GridFunction& b,
                              const GridFunction& f);

/// commutator values on a cell subrange of the common grid only.
std::vector<cplx> commutator_on_cells(const LipschitzCurve& curve, const GridFunction& b,
                                      const GridFunction& f, CellRange targets);

}  // namespace czlab
