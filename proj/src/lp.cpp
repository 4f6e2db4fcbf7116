#include "rank_arrange/lp.hpp"

#include "rank_arrange/errors.hpp"

#include <algorithm>

namespace rank_arrange {

bool LinearConstraint::satisfied_by(const RationalVector& x) const
{
    const Rational lhs = dot(a, x);
    return strict ? lhs > b : lhs >= b;
}

namespace {

// Dense simplex tableau over the rationals for
//   min h.y  s.t.  M y = c,  y >= 0,
// with one artificial column per row appended after the structural columns.
class DualTableau {
public:
    DualTableau(std::size_t rows, std::size_t structural)
        : rows_(rows), structural_(structural), cols_(structural + rows), t_(rows * cols_, Rational(0)),
          rhs_(rows, Rational(0)), reduced_(cols_, Rational(0)), basis_(rows)
    {
        for (std::size_t r = 0; r < rows_; ++r) {
            at(r, structural_ + r) = 1;
            basis_[r] = structural_ + r;
        }
    }

    Rational& at(std::size_t r, std::size_t c) { return t_[r * cols_ + c]; }
    Rational& rhs(std::size_t r) { return rhs_[r]; }

    // Phase one: drive the artificial variables to zero. Always feasible for
    // the margin LP (y_t = 1 solves it), so only degenerate exits remain.
    void phase_one()
    {
        std::vector<Rational> cost(cols_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r) cost[structural_ + r] = 1;
        price(cost);
        iterate();
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < structural_) continue;
            for (std::size_t c = 0; c < structural_; ++c)
                if (at(r, c) != 0) {
                    pivot(r, c);
                    break;
                }
            // a row left with an artificial basic is redundant and stays at zero
        }
    }

    // Phase two with the given structural costs. Returns false if unbounded.
    bool phase_two(const std::vector<Rational>& structural_cost)
    {
        std::vector<Rational> cost(cols_, Rational(0));
        std::copy(structural_cost.begin(), structural_cost.end(), cost.begin());
        price(cost);
        return iterate();
    }

    // Simplex multipliers c_B B^{-1}: artificial columns start as the identity.
    RationalVector multipliers() const
    {
        RationalVector pi(rows_);
        for (std::size_t r = 0; r < rows_; ++r) pi[r] = -reduced_[structural_ + r];
        return pi;
    }

private:
    void price(const std::vector<Rational>& cost)
    {
        for (std::size_t c = 0; c < cols_; ++c) {
            Rational v = cost[c];
            for (std::size_t r = 0; r < rows_; ++r) {
                const Rational& cb = cost[basis_[r]];
                if (cb != 0 && t_[r * cols_ + c] != 0) v -= cb * t_[r * cols_ + c];
            }
            reduced_[c] = v;
        }
    }

    // Bland's rule; artificial columns never re-enter. Returns false if unbounded.
    bool iterate()
    {
        while (true) {
            std::size_t entering = structural_;
            for (std::size_t c = 0; c < structural_; ++c)
                if (reduced_[c] < 0) {
                    entering = c;
                    break;
                }
            if (entering == structural_) return true;

            std::size_t leave = rows_;
            Rational best;
            for (std::size_t r = 0; r < rows_; ++r) {
                const Rational& e = at(r, entering);
                if (e <= 0) continue;
                Rational ratio = rhs_[r] / e;
                if (leave == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
                    best = std::move(ratio);
                    leave = r;
                }
            }
            if (leave == rows_) return false;
            pivot(leave, entering);
        }
    }

    void pivot(std::size_t pr, std::size_t pc)
    {
        const Rational inv = 1 / at(pr, pc);
        for (std::size_t c = 0; c < cols_; ++c)
            if (at(pr, c) != 0) at(pr, c) *= inv;
        rhs_[pr] *= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const Rational f = at(r, pc);
            if (f == 0) continue;
            for (std::size_t c = 0; c < cols_; ++c)
                if (at(pr, c) != 0) at(r, c) -= f * at(pr, c);
            rhs_[r] -= f * rhs_[pr];
        }
        const Rational f = reduced_[pc];
        if (f != 0)
            for (std::size_t c = 0; c < cols_; ++c)
                if (at(pr, c) != 0) reduced_[c] -= f * at(pr, c);
        basis_[pr] = pc;
    }

    std::size_t rows_;
    std::size_t structural_;
    std::size_t cols_;
    std::vector<Rational> t_;
    std::vector<Rational> rhs_;
    std::vector<Rational> reduced_;
    std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<LpSolution> solve_margin_lp(std::span<const LinearConstraint> rows, std::size_t dim)
{
    for (const auto& row : rows)
        if (row.a.size() != dim) throw DimensionMismatch("constraint of wrong dimension");

    // Primal variables z = (x, t); primal rows G z <= h with
    //   G_i = (-a_i, strict_i), h_i = -b_i, and the cap t <= 1.
    // Dual: min h.y s.t. G^T y = (0, ..., 0, 1), y >= 0.
    const std::size_t k = rows.size();
    DualTableau tab(dim + 1, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < dim; ++j)
            if (rows[i].a[j] != 0) tab.at(j, i) = -rows[i].a[j];
        if (rows[i].strict) tab.at(dim, i) = 1;
    }
    tab.at(dim, k) = 1;
    tab.rhs(dim) = 1;

    std::vector<Rational> cost(k + 1);
    for (std::size_t i = 0; i < k; ++i) cost[i] = -rows[i].b;
    cost[k] = 1;

    tab.phase_one();
    if (!tab.phase_two(cost)) return std::nullopt;  // dual unbounded: primal infeasible

    const RationalVector pi = tab.multipliers();
    LpSolution sol;
    sol.point.assign(pi.begin(), pi.begin() + static_cast<long>(dim));
    sol.margin = pi[dim];
    const bool any_strict = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.strict; });
    if (any_strict && sol.margin <= 0) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) {
        const Rational slack = dot(rows[i].a, sol.point) - rows[i].b;
        if (slack < 0 || (rows[i].strict && slack < sol.margin))
            throw Error("internal: simplex multipliers violate the primal system");
        if (slack == (rows[i].strict ? sol.margin : Rational(0))) sol.binding.push_back(i);
    }
    return sol;
}

std::optional<LpSolution> find_feasible_point(std::span<const LinearConstraint> rows, std::size_t dim,
                                              std::span<const std::size_t> seed, std::size_t* lp_count)
{
    std::vector<const LinearConstraint*> refs;
    refs.reserve(rows.size());
    for (const auto& r : rows) refs.push_back(&r);
    return find_feasible_point(std::span<const LinearConstraint* const>(refs), dim, seed, lp_count);
}

std::optional<LpSolution> find_feasible_point(std::span<const LinearConstraint* const> rows, std::size_t dim,
                                              std::span<const std::size_t> seed, std::size_t* lp_count)
{
    std::vector<char> in_set(rows.size(), 0);
    std::vector<std::size_t> working;
    for (auto s : seed)
        if (s < rows.size() && !in_set[s]) {
            in_set[s] = 1;
            working.push_back(s);
        }
    std::size_t solved = 0;
    std::vector<LinearConstraint> subset;
    while (true) {
        subset.clear();
        for (auto i : working) subset.push_back(*rows[i]);
        ++solved;
        auto sol = solve_margin_lp(subset, dim);
        if (!sol) {
            if (lp_count) *lp_count = solved;
            return std::nullopt;
        }
        bool added = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (in_set[i] || rows[i]->satisfied_by(sol->point)) continue;
            in_set[i] = 1;
            working.push_back(i);
            added = true;
        }
        if (!added) {
            if (lp_count) *lp_count = solved;
            LpSolution out;
            out.point = std::move(sol->point);
            out.margin = sol->margin;
            for (auto b : sol->binding) out.binding.push_back(working[b]);
            return out;
        }
    }
}

}  // namespace rank_arrange
