#pragma once

#include "rank_arrange/exactmath.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rank_arrange {

/// Closed rational interval [lo, hi].
struct RationalInterval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    RationalInterval operator*(const RationalInterval& o) const;  // both nonnegative
    RationalInterval pow(unsigned long k) const;                   // nonnegative base
};

/// Enclosure of e from its Taylor series: [sum_{k<=N} 1/k!, that + 2/(N+1)!].
/// The default N = 45 gives width below 10^-56.
RationalInterval e_enclosure(unsigned terms = 45);

/// Exact power of a rational.
Rational pow_rational(const Rational& x, unsigned long k);

/// l(m) = 2 (3/4)^(m-4) ((m-3)!)^2, m >= 4.
Rational lower_ell(std::size_t m);
/// Enclosure of u(m) = 2/m! (e m (m-1)^2 / 8)^(m-2), m >= 4.
RationalInterval upper_u(std::size_t m);
/// a(m) = (m-2)((m-2)^(m-3) - 1)(m-4)!/(m-3), m >= 4.
BigInt a_seq(std::size_t m);
/// f(m) = (m(m-1)/2)! prod_{i<=m-2} i! / prod_{i<=m-1} (2i-1)!, m >= 3.
BigInt f_seq(std::size_t m);

/// Floor of an enclosure; throws ConsistencyFailure if the interval straddles an integer.
BigInt floor_of_interval(const RationalInterval& x);

/// Integer with comma thousands separators ("18,744").
std::string group_thousands(const BigInt& x);
/// Positive integer with at most three significant digits as "d.dd x 10^k".
std::string scientific3(const BigInt& x);

struct BoundsRow {
    std::size_t m = 0;
    std::optional<BigInt> r0;   // from the reference constants
    BigInt a;
    Rational ell;
    BigInt ell_ceil;
    RationalInterval u;
    BigInt u_floor;
    BigInt f;

    /// Values rounded as in the printed table.
    BigInt ell_display_value;
    BigInt u_display_value;
    /// Cells formatted as in the printed table.
    std::string r0_cell, a_cell, ell_cell, u_cell, f_cell;
};

/// Rows m = 4..m_max (m_max <= 12). Cells follow the printed conventions:
/// ceil(l) for m <= 9, ceil(l/10^4) 10^4 for m = 10 and a three-significant-digit
/// ceiling above; floor(u) for m <= 6 and a three-significant-digit floor above.
std::vector<BoundsRow> bounds_table(std::size_t m_max);

enum class AsymptoticSide { Upper, Lower };

/// Limit constant of {x(m)}^(1/m)/m^2: e^2/8 for u, 3/(4e^2) for l.
RationalInterval asymptotic_limit(AsymptoticSide side);

/// True iff {x(m)}^(1/m)/m^2 lies within relative `tolerance` of its limit,
/// decided exactly (x^(1/m) <= c m^2 iff x <= (c m^2)^m) with outward rounding.
bool asymptotic_within(std::size_t m, AsymptoticSide side, const Rational& tolerance);

/// Bracket [lo, hi] of width 10^-digits containing {x(m)}^(1/m)/m^2 divided
/// by its limit, found by exact bisection.
RationalInterval asymptotic_ratio(std::size_t m, AsymptoticSide side, unsigned digits = 3);

}  // namespace rank_arrange
