#pragma once

#include "rank_arrange/arrangement.hpp"
#include "rank_arrange/budget.hpp"
#include "rank_arrange/chambers.hpp"
#include "rank_arrange/exactmath.hpp"
#include "rank_arrange/finitefield.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace rank_arrange {

/// Permutation of [m] in one-line notation, most preferred object first (1-based).
class Ranking {
public:
    explicit Ranking(std::vector<int> order);

    std::size_t size() const { return order_.size(); }
    const std::vector<int>& order() const { return order_; }
    int operator[](std::size_t i) const { return order_[i]; }

    /// Applies a relabeling sigma (1-based, sigma[i-1] = image of i) to every entry.
    Ranking relabeled(const std::vector<int>& sigma) const;
    /// Digit string for m <= 9 ("2134"), dash-separated otherwise ("2-1-3-4-...").
    std::string to_string() const;

    friend bool operator==(const Ranking&, const Ranking&) = default;
    friend auto operator<=>(const Ranking&, const Ranking&) = default;

private:
    std::vector<int> order_;
};

/// Canonically sorted set of rankings.
using RankingPattern = std::set<Ranking>;

RankingPattern relabel(const RankingPattern& p, const std::vector<int>& sigma);
std::vector<std::string> pattern_strings(const RankingPattern& p);

/// Exact ray representative of a braid slice: the hyperplane {x in H0 : dir . x = offset}
/// with dir in ambient coordinates (entries sum to zero) and offset = |dir|^2.
struct SliceDirection {
    RationalVector direction;
    Rational offset;
};

/// Ranking of judge y: objects by strictly increasing squared distance.
/// Throws TiedDistances when y is equidistant from two objects.
Ranking rank_of_judge(const ObjectConfig& config, const RationalVector& y);

/// One ranking per chamber of the unfolding arrangement. Throws NotGeneric.
RankingPattern admissible_rankings(const ObjectConfig& config, BudgetMeter* meter = nullptr);

struct AdmissibleCount {
    BigInt total;
    BigInt bounded;
};

/// Stirling sums for a generic configuration of m objects in R^n, 1 <= n <= m-2.
AdmissibleCount count_admissible(std::size_t m, std::size_t n);

/// Admissible rankings of a generic configuration on the line, computed by
/// sweeping the sorted midpoints (no arrangement involved). Throws TiedMidpoints.
RankingPattern pattern_1d(const ObjectConfig& config);

/// Ranking patterns of n = 1 configurations in C0, counted by enumerating the
/// chambers of N_m inside C0 and evaluating pattern_1d at every witness.
BigInt r0_enumerate(std::size_t m, BudgetMeter* meter = nullptr);

/// Characteristic polynomial of M_m: embedded for m = 9, 10, computed otherwise.
IntPolynomial mid_charpoly(std::size_t m, PointCountCache* cache = nullptr, BudgetMeter* meter = nullptr);

/// r0(m) = (-1)^m chi(M_m, -1) / m!.
BigInt r0_from_charpoly(std::size_t m, PointCountCache* cache = nullptr, BudgetMeter* meter = nullptr);
/// r(m) = m! r0(m) / 2.
BigInt r_total(std::size_t m, PointCountCache* cache = nullptr, BudgetMeter* meter = nullptr);
/// r_IE(3) = 1, r_IE(m) = r0(m) / 2 for m >= 4.
BigInt r_ie(std::size_t m, PointCountCache* cache = nullptr, BudgetMeter* meter = nullptr);

/// Slice direction of a codimension-one configuration (n = m - 2).
///
/// Recenters the objects, sets u_i = -(|x_i|^2 - s)/2 with s the mean squared
/// norm, and returns dir = u - proj_{col W}(u), offset = |dir|^2, where W has
/// the recentered objects as rows. Throws NotGeneric if the configuration
/// fails (A1)/(A2) or dir has a vanishing proper subset sum, and
/// DegenerateProjection if dir = 0.
SliceDirection v_map(const ObjectConfig& config);

/// True iff no proper nonempty subset of the coordinates sums to zero.
bool is_subset_sum_free(const RationalVector& v);

/// Rankings whose braid chamber B_{i1..im} = {x in H0 : x_i1 > ... > x_im} meets the slice.
RankingPattern braid_slice_pattern(const SliceDirection& dir, std::size_t m, BudgetMeter* meter = nullptr);

/// q(m) = (-1)^{m-1} chi(A_m^0, -1) - m.
BigInt q_from_charpoly(std::size_t m, PointCountCache* cache = nullptr, BudgetMeter* meter = nullptr);

struct CodimOneCensus {
    std::size_t chambers = 0;
    std::size_t two_sided = 0;      // at least two positive and two negative coordinates
    std::size_t one_positive = 0;   // D_i type
    std::size_t one_negative = 0;   // -D_i type
    std::size_t distinct_slice_patterns = 0;
    BigInt q;                       // chambers - one_negative
};

/// Enumerates the chambers of A_m^0, classifies each witness by its coordinate
/// signs, and (when `check_bijection`) counts distinct braid-slice patterns
/// over the witnesses.
CodimOneCensus q_enumerate(std::size_t m, bool check_bijection = true, BudgetMeter* meter = nullptr);

struct QieBound {
    BigInt value;
    /// True for m <= 6, where the bound is known to be attained.
    bool exact;
};

/// q_IE(m) <= |ch(A_m^0 u B_m^0)| / m! - 1.
QieBound q_ie_upper(std::size_t m, PointCountCache* cache = nullptr, BudgetMeter* meter = nullptr);

/// Seeded sampler of generic configurations with integer coordinates in [-10^4, 10^4].
class GenericConfigSampler {
public:
    explicit GenericConfigSampler(std::uint64_t seed) : rng_(seed) {}
    ObjectConfig sample(std::size_t m, std::size_t n);
    /// Sorted (C0) one-dimensional sample.
    ObjectConfig sample_increasing_1d(std::size_t m);
    std::size_t rejections() const { return rejections_; }

private:
    std::mt19937_64 rng_;
    std::size_t rejections_ = 0;
};

}  // namespace rank_arrange
