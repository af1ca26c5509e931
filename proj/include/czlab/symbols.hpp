#pragma once

#include <cstdint>
#include <string>

#include "czlab/grid.hpp"

namespace czlab {

/// Zero grid over the window (cell count must divide exactly).
GridFunction make_grid(const Interval& window, double step);

// Built-in symbol corpus. All symbols are real-valued on the complex carrier
// and truncated at the window by construction.
GridFunction heaviside_symbol(const Interval& window, double step);
/// log|x| clipped at the grid scale: log(max(|x|, step)).
GridFunction clipped_log_symbol(const Interval& window, double step);
/// C_c^inf bump exp(1 - 1/(1 - (x/w)^2)) on |x| < w.
GridFunction smooth_bump_symbol(const Interval& window, double step, double halfwidth = 1.0);
/// Triangle wave with slope +-lip and the given period (a bounded BMO symbol).
GridFunction sawtooth_symbol(const Interval& window, double step, double lip = 1.0,
                             double period = 1.0);
/// Seeded step function: `pieces` constant pieces on `support` with values
/// uniform in [-amplitude, amplitude].
GridFunction random_step_symbol(const Interval& window, double step, std::uint64_t seed,
                                int pieces = 12, const Interval& support = Interval(0.0, 4.0),
                                double amplitude = 1.0);

/// Parses corpus entries: heaviside | clipped-log | smooth-bump |
/// sawtooth-bmo | constant | random-step:<seed>.
GridFunction symbol_by_name(const std::string& name, const Interval& window, double step);

}  // namespace czlab
