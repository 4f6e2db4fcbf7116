#pragma once

#include "rank_arrange/exactmath.hpp"

#include <optional>
#include <span>
#include <vector>

namespace rank_arrange {

/// a . x >= b, or a . x > b when strict.
struct LinearConstraint {
    RationalVector a;
    Rational b;
    bool strict = true;

    bool satisfied_by(const RationalVector& x) const;
};

struct LpSolution {
    RationalVector point;
    /// Margin achieved on the strict rows (1 when there are none; capped at 1).
    Rational margin;
    /// Indices of the rows binding at the returned point.
    std::vector<std::size_t> binding;
};

/// Exact feasibility kernel for a mixed strict / non-strict system in `dim` variables.
///
/// Maximizes a common margin t <= 1 over the strict rows, i.e. the LP
///   max t  s.t.  a_i . x - t >= b_i (strict rows),  a_i . x >= b_i (other rows),
/// by running a two-phase simplex with Bland's rule on its dual, whose size is
/// (dim + 1) x (rows + 1). The primal point is read off the final simplex
/// multipliers. Returns nullopt when the system has no solution.
std::optional<LpSolution> solve_margin_lp(std::span<const LinearConstraint> rows, std::size_t dim);

/// Same answer as solve_margin_lp, computed by constraint generation: the LP is
/// solved on a working set seeded with `seed` and grown by violated rows until
/// its solution satisfies the whole system. `lp_count` (optional) receives the
/// number of LPs solved.
std::optional<LpSolution> find_feasible_point(std::span<const LinearConstraint> rows, std::size_t dim,
                                              std::span<const std::size_t> seed = {},
                                              std::size_t* lp_count = nullptr);
/// Overload over borrowed rows, for callers assembling systems from shared constraint pools.
std::optional<LpSolution> find_feasible_point(std::span<const LinearConstraint* const> rows, std::size_t dim,
                                              std::span<const std::size_t> seed = {},
                                              std::size_t* lp_count = nullptr);

}  // namespace rank_arrange
