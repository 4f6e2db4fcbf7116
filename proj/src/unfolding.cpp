#include "rank_arrange/unfolding.hpp"

#include "rank_arrange/errors.hpp"
#include "rank_arrange/reference.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <numeric>

namespace rank_arrange {

Ranking::Ranking(std::vector<int> order) : order_(std::move(order))
{
    std::vector<int> sorted = order_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i + 1)) throw Error("ranking is not a permutation of [m]");
}

Ranking Ranking::relabeled(const std::vector<int>& sigma) const
{
    std::vector<int> out;
    out.reserve(order_.size());
    for (int i : order_) out.push_back(sigma.at(static_cast<std::size_t>(i - 1)));
    return Ranking(std::move(out));
}

std::string Ranking::to_string() const
{
    std::string s;
    const bool digits = order_.size() <= 9;
    for (std::size_t k = 0; k < order_.size(); ++k) {
        if (!digits && k) s += '-';
        s += std::to_string(order_[k]);
    }
    return s;
}

RankingPattern relabel(const RankingPattern& p, const std::vector<int>& sigma)
{
    RankingPattern out;
    for (const auto& r : p) out.insert(r.relabeled(sigma));
    return out;
}

std::vector<std::string> pattern_strings(const RankingPattern& p)
{
    std::vector<std::string> out;
    for (const auto& r : p) out.push_back(r.to_string());
    return out;
}

// ---------------------------------------------------------------------------

Ranking rank_of_judge(const ObjectConfig& config, const RationalVector& y)
{
    if (y.size() != config.n()) throw DimensionMismatch("judge point has the wrong dimension");
    std::vector<Rational> dist(config.m());
    for (std::size_t i = 0; i < config.m(); ++i) {
        Rational s = 0;
        for (std::size_t c = 0; c < y.size(); ++c) {
            const Rational d = y[c] - config.point(i)[c];
            s += d * d;
        }
        dist[i] = s;
    }
    std::vector<int> order(config.m());
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a - 1] < dist[b - 1]; });
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
        if (dist[order[k] - 1] == dist[order[k + 1] - 1])
            throw TiedDistances("judge is equidistant from objects " + std::to_string(std::min(order[k], order[k + 1])) +
                                " and " + std::to_string(std::max(order[k], order[k + 1])));
    return Ranking(std::move(order));
}

RankingPattern admissible_rankings(const ObjectConfig& config, BudgetMeter* meter)
{
    const GenericityReport report = check_generic(config);
    if (!report.ok()) throw NotGeneric(report.describe());
    const Arrangement a = unfolding_arrangement(config);
    const auto chambers = enumerate_chambers(a, nullptr, meter);
    RankingPattern pattern;
    for (const auto& c : chambers) pattern.insert(rank_of_judge(config, c.witness));
    if (pattern.size() != chambers.size()) throw ConsistencyFailure("two chambers produced the same ranking");
    return pattern;
}

AdmissibleCount count_admissible(std::size_t m, std::size_t n)
{
    if (m < 3 || n < 1 || n + 2 > m) throw RangeError("count_admissible needs m >= 3 and 1 <= n <= m-2");
    AdmissibleCount c{0, 0};
    for (std::size_t j = 0; j <= n; ++j) {
        const BigInt s = stirling_first_signless(static_cast<unsigned>(m), static_cast<long>(m - n + j));
        c.total += s;
        c.bounded += j % 2 == 0 ? s : BigInt(-s);
    }
    return c;
}

RankingPattern pattern_1d(const ObjectConfig& config)
{
    if (config.n() != 1) throw RangeError("pattern_1d needs objects on a line");
    const std::size_t m = config.m();
    struct Midpoint {
        Rational at;
        int left, right;  // objects with x_left < x_right
    };
    std::vector<Midpoint> mids;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Rational& xi = config.point(i)[0];
            const Rational& xj = config.point(j)[0];
            const bool i_left = xi < xj;
            mids.push_back({(xi + xj) / 2, int(i_left ? i + 1 : j + 1), int(i_left ? j + 1 : i + 1)});
        }
    std::sort(mids.begin(), mids.end(), [](const Midpoint& a, const Midpoint& b) { return a.at < b.at; });
    for (std::size_t k = 0; k + 1 < mids.size(); ++k)
        if (mids[k].at == mids[k + 1].at)
            throw TiedMidpoints("midpoints of {" + std::to_string(mids[k].left) + "," + std::to_string(mids[k].right) +
                                "} and {" + std::to_string(mids[k + 1].left) + "," +
                                std::to_string(mids[k + 1].right) + "} coincide");

    // Far to the left, objects rank by ascending coordinate.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return config.point(a - 1)[0] < config.point(b - 1)[0]; });
    std::vector<std::size_t> pos(m + 1);
    for (std::size_t k = 0; k < m; ++k) pos[order[k]] = k;

    RankingPattern pattern;
    pattern.insert(Ranking(order));
    for (const auto& mid : mids) {
        const std::size_t pl = pos[mid.left];
        const std::size_t pr = pos[mid.right];
        if (pr != pl + 1)
            throw NonAdjacentSwap("crossing the midpoint of " + std::to_string(mid.left) + " and " +
                                  std::to_string(mid.right) + " swaps non-adjacent objects");
        std::swap(order[pl], order[pr]);
        pos[mid.left] = pr;
        pos[mid.right] = pl;
        pattern.insert(Ranking(order));
    }
    return pattern;
}

BigInt r0_enumerate(std::size_t m, BudgetMeter* meter)
{
    if (m < 3) throw RangeError("r0 needs m >= 3");
    const Arrangement quads = mid_quadruples(m);
    const ConstraintRegion c0 = ConstraintRegion::increasing_chain(m);
    const auto chambers = enumerate_chambers(quads, &c0, meter);
    std::set<RankingPattern> patterns;
    for (const auto& c : chambers) {
        std::vector<RationalVector> pts;
        for (const auto& x : c.witness) pts.push_back({x});
        patterns.insert(pattern_1d(ObjectConfig(std::move(pts))));
    }
    return BigInt(static_cast<unsigned long>(patterns.size()));
}

IntPolynomial mid_charpoly(std::size_t m, PointCountCache* cache, BudgetMeter* meter)
{
    const auto& ref = reference_data();
    if (auto it = ref.chi_mid.find(m); it != ref.chi_mid.end()) return it->second.value;
    if (m < 3) throw RangeError("mid-hyperplane arrangement needs m >= 3");
    CharPolyResult r = charpoly(Family::Mid, m, {}, cache, meter);
    if (!r.consistency_verified) throw MissingCharpoly("characteristic polynomial of M_" + std::to_string(m) + " unverified");
    return r.poly;
}

BigInt r0_from_charpoly(std::size_t m, PointCountCache* cache, BudgetMeter* meter)
{
    const IntPolynomial chi = mid_charpoly(m, cache, meter);
    const ZaslavskyCounts z = zaslavsky_counts(chi, m, m - 1);
    const BigInt f = factorial(static_cast<unsigned>(m));
    if (z.total % f != 0) throw ConsistencyFailure("chamber count of M_m not divisible by m!");
    return z.total / f;
}

BigInt r_total(std::size_t m, PointCountCache* cache, BudgetMeter* meter)
{
    return factorial(static_cast<unsigned>(m)) * r0_from_charpoly(m, cache, meter) / 2;
}

BigInt r_ie(std::size_t m, PointCountCache* cache, BudgetMeter* meter)
{
    if (m < 3) throw RangeError("r_IE needs m >= 3");
    if (m == 3) return r0_from_charpoly(3, cache, meter);
    return r0_from_charpoly(m, cache, meter) / 2;
}

// ---------------------------------------------------------------------------

bool is_subset_sum_free(const RationalVector& v)
{
    const std::size_t m = v.size();
    if (m > 24) throw RangeError("subset-sum test limited to 24 coordinates");
    const unsigned long full = (1ul << m) - 1;
    for (unsigned long mask = 1; mask < full; ++mask) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1ul << i)) s += v[i];
        if (s == 0) return false;
    }
    return true;
}

SliceDirection v_map(const ObjectConfig& config)
{
    const std::size_t m = config.m();
    const std::size_t n = config.n();
    if (n + 2 != m) throw RangeError("v_map needs codimension one (n = m - 2)");
    const GenericityReport report = check_generic(config);
    if (!report.ok()) throw NotGeneric(report.describe());

    RationalVector mean(n, Rational(0));
    for (const auto& p : config.points())
        for (std::size_t c = 0; c < n; ++c) mean[c] += p[c];
    for (auto& c : mean) c /= static_cast<long>(m);

    RationalMatrix w(m, n);
    RationalVector norms(m);
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < n; ++c) w(i, c) = config.point(i)[c] - mean[c];
        norms[i] = dot(w.row(i), w.row(i));
        s += norms[i];
    }
    s /= static_cast<long>(m);
    RationalVector u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = -(norms[i] - s) / 2;

    const RationalVector p = project_onto_column_space(w, u);
    SliceDirection dir;
    dir.direction.resize(m);
    for (std::size_t i = 0; i < m; ++i) dir.direction[i] = u[i] - p[i];
    if (std::all_of(dir.direction.begin(), dir.direction.end(), [](const Rational& x) { return x == 0; }))
        throw DegenerateProjection("u lies in the column space of W");
    if (!is_subset_sum_free(dir.direction)) throw NotGeneric("slice direction lies on a hyperplane of A_m^0");
    dir.offset = dot(dir.direction, dir.direction);
    return dir;
}

namespace {

// Ambient coefficient vector c (length m) as a linear form in H0 coordinates.
RationalVector to_h0_form(const RationalVector& c)
{
    RationalVector out(c.size() - 1);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) out[i] = c[i] - c.back();
    return out;
}

}  // namespace

RankingPattern braid_slice_pattern(const SliceDirection& dir, std::size_t m, BudgetMeter* meter_arg)
{
    if (dir.direction.size() != m) throw DimensionMismatch("slice direction has the wrong length");
    if (m > 8) throw BudgetExceeded("braid slice sweep limited to m <= 8");
    BudgetMeter local_meter;
    BudgetMeter& meter = meter_arg ? *meter_arg : local_meter;
    const std::size_t d = m - 1;

    std::vector<std::vector<int>> perms;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    // The slice {dir . x = offset} as two non-strict rows.
    const RationalVector form = to_h0_form(dir.direction);
    RationalVector neg_form = form;
    for (auto& c : neg_form) c = -c;
    const LinearConstraint at_least{form, dir.offset, false};
    const LinearConstraint at_most{neg_form, -dir.offset, false};

    std::vector<char> meets(perms.size(), 0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count(meter.budget()))
    for (std::size_t k = 0; k < perms.size(); ++k) {
        try {
            std::vector<LinearConstraint> rows{at_least, at_most};
            for (std::size_t t = 0; t + 1 < m; ++t) {
                RationalVector c(m, Rational(0));
                c[perms[k][t] - 1] += 1;
                c[perms[k][t + 1] - 1] -= 1;
                rows.push_back({to_h0_form(c), Rational(0), true});
            }
            meter.charge_lps();
            meets[k] = solve_margin_lp(rows, d).has_value() ? 1 : 0;
        } catch (...) {
#pragma omp critical(rank_arrange_slice_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    RankingPattern pattern;
    for (std::size_t k = 0; k < perms.size(); ++k)
        if (meets[k]) pattern.insert(Ranking(perms[k]));
    return pattern;
}

BigInt q_from_charpoly(std::size_t m, PointCountCache* cache, BudgetMeter* meter)
{
    if (m < 3) throw RangeError("q needs m >= 3");
    const CharPolyResult r = charpoly(Family::AllSubset0, m, {}, cache, meter);
    if (!r.consistency_verified) throw MissingCharpoly("unverified characteristic polynomial of A_m^0");
    const ZaslavskyCounts z = zaslavsky_counts(r.poly, m - 1);
    return z.total - static_cast<unsigned long>(m);
}

CodimOneCensus q_enumerate(std::size_t m, bool check_bijection, BudgetMeter* meter_arg)
{
    if (m < 3) throw RangeError("q needs m >= 3");
    BudgetMeter local_meter;
    BudgetMeter& meter = meter_arg ? *meter_arg : local_meter;
    const auto chambers = enumerate_chambers(all_subset_restricted(m), nullptr, &meter);
    CodimOneCensus census;
    census.chambers = chambers.size();
    std::set<RankingPattern> patterns;
    for (const auto& c : chambers) {
        const RationalVector v = lift_from_h0(c.witness);
        std::size_t pos = 0, neg = 0;
        for (const auto& x : v) {
            if (x > 0) ++pos;
            if (x < 0) ++neg;
        }
        if (pos + neg != m) throw ConsistencyFailure("chamber witness has a zero coordinate");
        if (pos == 1)
            ++census.one_positive;
        else if (neg == 1)
            ++census.one_negative;
        else
            ++census.two_sided;
        if (check_bijection) patterns.insert(braid_slice_pattern({v, dot(v, v)}, m, &meter));
    }
    census.distinct_slice_patterns = patterns.size();
    census.q = BigInt(static_cast<unsigned long>(census.chambers - census.one_negative));
    return census;
}

QieBound q_ie_upper(std::size_t m, PointCountCache* cache, BudgetMeter* meter)
{
    if (m < 3) throw RangeError("q_IE needs m >= 3");
    const CharPolyResult r = charpoly(Family::AllSubset0UnionBraid0, m, {}, cache, meter);
    if (!r.consistency_verified) throw MissingCharpoly("unverified characteristic polynomial of A_m^0 u B_m^0");
    const BigInt total = zaslavsky_counts(r.poly, m - 1).total;
    const BigInt f = factorial(static_cast<unsigned>(m));
    if (total % f != 0) throw ConsistencyFailure("chamber count of A_m^0 u B_m^0 not divisible by m!");
    return {total / f - 1, m <= 6};
}

// ---------------------------------------------------------------------------

ObjectConfig GenericConfigSampler::sample(std::size_t m, std::size_t n)
{
    std::uniform_int_distribution<long> coord(-10000, 10000);
    while (true) {
        std::vector<RationalVector> pts(m, RationalVector(n));
        for (auto& p : pts)
            for (auto& c : p) c = coord(rng_);
        try {
            ObjectConfig config(std::move(pts));
            if (check_generic(config).ok()) return config;
        } catch (const DuplicatePoints&) {
        }
        ++rejections_;
    }
}

ObjectConfig GenericConfigSampler::sample_increasing_1d(std::size_t m)
{
    while (true) {
        ObjectConfig c = sample(m, 1);
        std::vector<RationalVector> pts = c.points();
        std::sort(pts.begin(), pts.end());
        ObjectConfig sorted(std::move(pts));
        if (check_generic(sorted).ok()) return sorted;
    }
}

}  // namespace rank_arrange
