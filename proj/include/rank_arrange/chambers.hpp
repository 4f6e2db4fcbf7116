#pragma once

#include "rank_arrange/arrangement.hpp"
#include "rank_arrange/budget.hpp"
#include "rank_arrange/exactmath.hpp"
#include "rank_arrange/lp.hpp"

#include <map>
#include <string>
#include <vector>

namespace rank_arrange {

/// One strict sign per hyperplane, in arrangement order (+1 / -1).
struct SignVector {
    std::vector<signed char> signs;

    std::size_t size() const { return signs.size(); }
    signed char operator[](std::size_t i) const { return signs[i]; }
    /// String over "+-".
    std::string to_string() const;
    static SignVector parse(const std::string& text);

    friend bool operator==(const SignVector&, const SignVector&) = default;
    friend auto operator<=>(const SignVector&, const SignVector&) = default;
};

struct Chamber {
    SignVector signs;
    RationalVector witness;  // strictly inside the chamber
};

/// Conjunction of strict linear inequalities a . x > b in a fixed dimension.
struct ConstraintRegion {
    std::size_t dim = 0;
    std::vector<LinearConstraint> rows;

    /// C0 = {x_1 < x_2 < ... < x_m} in R^m.
    static ConstraintRegion increasing_chain(std::size_t m);
    bool contains(const RationalVector& x) const;
};

/// Linear constraint expressing sign * (normal . x - offset) > 0.
LinearConstraint side_constraint(const Hyperplane& h, int sign);

/// All chambers of `a` (intersected with `within` when given), one per
/// connected component, in ascending sign-vector order.
///
/// Incremental insertion: hyperplanes are added in canonical order; each
/// existing chamber whose witness lies on one side is tested for the other
/// side with one exact LP, and split when both sides are nonempty. Splits of
/// distinct chambers run in parallel; the result is independent of the worker count.
///
/// Throws InfeasibleRegion if `within` is empty and BudgetExceeded on budget overrun.
std::vector<Chamber> enumerate_chambers(const Arrangement& a, const ConstraintRegion* within = nullptr,
                                        BudgetMeter* meter = nullptr);

struct ZaslavskyCounts {
    BigInt total;
    BigInt bounded;
};

/// total = (-1)^d chi(-1); bounded = (-1)^d chi(1) for an essential arrangement
/// (rank == ambient_dim) and 0 otherwise.
ZaslavskyCounts zaslavsky_counts(const IntPolynomial& chi, std::size_t ambient_dim, std::size_t rank);
inline ZaslavskyCounts zaslavsky_counts(const IntPolynomial& chi, std::size_t ambient_dim)
{
    return zaslavsky_counts(chi, ambient_dim, ambient_dim);
}

/// True iff the closure of the chamber has trivial recession cone.
bool is_bounded(const Chamber& c, const Arrangement& a, const ConstraintRegion* within = nullptr);

/// True iff hyperplane k supports a facet of the chamber with sign vector `signs`.
bool is_facet(const SignVector& signs, const Arrangement& a, std::size_t k);

// ---------------------------------------------------------------------------
// Intersection posets.

/// A nonempty intersection of hyperplanes (a flat).
struct Flat {
    /// Reduced row-echelon form of the augmented system [A | b]; rows = rank.
    RationalMatrix equations;
    std::size_t rank = 0;
    /// Indices of the hyperplanes containing this flat, ascending.
    std::vector<std::size_t> containing;
};

/// Flats ordered by reverse inclusion. Element 0 is the ambient space.
struct IntersectionPoset {
    std::vector<Flat> elements;

    /// x <= y  iff  flat y is contained in flat x.
    bool leq(std::size_t x, std::size_t y) const;
    std::size_t size() const { return elements.size(); }
    std::size_t count_of_rank(std::size_t r) const;
};

/// All flats of rank <= max_rank; throws BudgetExceeded beyond max_elements.
IntersectionPoset intersection_poset(const Arrangement& a, std::size_t max_rank,
                                     std::size_t max_elements = 200000);

/// Set partition of [m] as a restricted growth string (block ids in order of first appearance).
using SetPartition = std::vector<int>;

std::size_t partition_rank(const SetPartition& p);
/// p refines q (p <= q in the partition lattice).
bool refines(const SetPartition& p, const SetPartition& q);
/// All set partitions of [m] with rank (m - #blocks) at most max_rank.
std::vector<SetPartition> set_partitions(std::size_t m, std::size_t max_rank);
std::string partition_to_string(const SetPartition& p);

/// The partition of [m] into classes i ~ j iff the flat lies in the bisector H_ij.
/// Requires an arrangement whose hyperplanes carry pair labels (unfolding, braid).
SetPartition partition_map(const Arrangement& a, const Flat& x);

struct PosetCheck {
    bool ok = false;
    std::size_t poset_size = 0;
    std::size_t partition_count = 0;
    std::string witness;  // first failure, empty when ok
};

/// Checks that X -> I_X is an order isomorphism from the intersection poset of
/// the unfolding arrangement onto the rank-n truncated partition lattice.
PosetCheck verify_poset_isomorphism(const ObjectConfig& config);

}  // namespace rank_arrange
