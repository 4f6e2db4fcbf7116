#include "rank_arrange/finitefield.hpp"

#include "rank_arrange/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <exception>
#include <fstream>
#include <sstream>

namespace rank_arrange {

bool is_prime(std::uint64_t q)
{
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (std::uint64_t f = 3; f * f <= q; f += 2)
        if (q % f == 0) return false;
    return true;
}

std::uint64_t next_prime(std::uint64_t q)
{
    std::uint64_t p = q + 1;
    while (!is_prime(p)) ++p;
    return p;
}

namespace {

// Dense set of residues mod q, one bit per residue, stored as rows of a stack.
class ResidueStack {
public:
    ResidueStack(std::size_t levels, std::uint64_t q) : q_(q), words_((q + 63) / 64), bits_(levels * words_, 0) {}

    std::uint64_t* level(std::size_t d) { return bits_.data() + d * words_; }
    std::size_t words() const { return words_; }

    static bool test(const std::uint64_t* s, std::uint64_t v) { return (s[v >> 6] >> (v & 63)) & 1u; }
    static void set(std::uint64_t* s, std::uint64_t v) { s[v >> 6] |= std::uint64_t{1} << (v & 63); }

    std::uint64_t popcount(const std::uint64_t* s) const
    {
        std::uint64_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::uint64_t>(std::popcount(s[w]));
        return c;
    }

    void copy(std::size_t from, std::size_t to)
    {
        std::copy_n(level(from), words_, level(to));
    }

private:
    std::uint64_t q_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

void require_prime(std::uint64_t q)
{
    if (!is_prime(q)) throw BadPrime(std::to_string(q) + " is not prime");
}

// Runs body(v) for every residue v, in parallel, and returns the per-residue
// results in residue order. Exceptions are rethrown after the region.
template <class Body>
std::vector<std::uint64_t> for_each_residue(std::uint64_t q, int workers, Body body)
{
    std::vector<std::uint64_t> partial(q, 0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(q); ++v) {
        try {
            partial[static_cast<std::size_t>(v)] = body(static_cast<std::uint64_t>(v));
        } catch (...) {
#pragma omp critical(rank_arrange_ff_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return partial;
}

BigInt sum_in_order(const std::vector<std::uint64_t>& partial)
{
    BigInt total = 0;
    for (auto p : partial) {
        BigInt t;
        mpz_set_ui(t.get_mpz_t(), p);
        total += t;
    }
    return total;
}

BigInt from_u64(std::uint64_t v)
{
    BigInt b;
    mpz_set_ui(b.get_mpz_t(), v);
    return b;
}

// ---------------------------------------------------------------------------
// Generic counter.

struct ReducedArrangement {
    std::size_t dim;
    std::uint64_t q;
    std::vector<std::vector<std::uint64_t>> columns;  // columns[c][h] = normal_h[c] mod q
    std::vector<std::uint64_t> start;                 // -offset_h mod q, value at the origin
};

std::uint64_t reduce(const BigInt& v, std::uint64_t q)
{
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), q);
    return r.get_ui();
}

ReducedArrangement reduce_arrangement(const Arrangement& a, std::uint64_t q)
{
    require_prime(q);
    ReducedArrangement r{a.dim(), q, std::vector<std::vector<std::uint64_t>>(a.dim()), {}};
    for (std::size_t h = 0; h < a.size(); ++h) {
        bool nonzero = false;
        for (std::size_t c = 0; c < a.dim(); ++c) {
            r.columns[c].push_back(reduce(a[h].normal()[c], q));
            nonzero = nonzero || r.columns[c].back() != 0;
        }
        if (!nonzero) throw BadPrime("normal of " + a[h].label().to_string() + " vanishes mod " + std::to_string(q));
        r.start.push_back(reduce(-a[h].offset(), q));
    }
    return r;
}

// Counts complement points whose first coordinate equals `first`.
std::uint64_t count_generic_stratum(const ReducedArrangement& r, std::uint64_t first)
{
    const std::size_t nh = r.start.size();
    const std::uint64_t q = r.q;
    std::vector<std::uint64_t> vals(r.start);
    if (r.dim == 0) return std::all_of(vals.begin(), vals.end(), [](auto v) { return v != 0; }) ? 1 : 0;
    for (std::size_t h = 0; h < nh; ++h) vals[h] = (vals[h] + first * r.columns[0][h]) % q;

    std::vector<std::uint64_t> odo(r.dim, 0);
    std::uint64_t count = 0;
    while (true) {
        bool off = true;
        for (std::size_t h = 0; h < nh && off; ++h) off = vals[h] != 0;
        count += off ? 1 : 0;
        // increment coordinates 1..dim-1; each unit step adds that column mod q
        std::size_t c = 1;
        for (; c < r.dim; ++c) {
            const auto& col = r.columns[c];
            for (std::size_t h = 0; h < nh; ++h) {
                vals[h] += col[h];
                if (vals[h] >= q) vals[h] -= q;
            }
            if (++odo[c] < q) break;
            odo[c] = 0;
        }
        if (c >= r.dim) break;
    }
    return count;
}

}  // namespace

BigInt count_complement_generic_serial(const Arrangement& a, std::uint64_t q)
{
    const ReducedArrangement r = reduce_arrangement(a, q);
    if (r.dim == 0) return from_u64(count_generic_stratum(r, 0));
    BigInt total = 0;
    for (std::uint64_t v = 0; v < q; ++v) total += from_u64(count_generic_stratum(r, v));
    return total;
}

BigInt count_complement_generic(const Arrangement& a, std::uint64_t q, BudgetMeter* meter_arg)
{
    BudgetMeter local_meter;
    BudgetMeter& meter = meter_arg ? *meter_arg : local_meter;
    const ReducedArrangement r = reduce_arrangement(a, q);
    BigInt points;
    mpz_ui_pow_ui(points.get_mpz_t(), q, r.dim);
    if (points > from_u64(meter.budget().max_point_tests))
        throw BudgetExceeded("generic count needs " + points.get_str() + " point tests");
    if (r.dim == 0) return from_u64(count_generic_stratum(r, 0));
    const auto partial = for_each_residue(q, worker_count(meter.budget()), [&](std::uint64_t v) {
        meter.check_clock();
        return count_generic_stratum(r, v);
    });
    meter.charge_points(points.get_ui());
    return sum_in_order(partial);
}

// ---------------------------------------------------------------------------
// Mid-hyperplane search. Coordinates are assigned in index order; level d of
// the stack holds the values forbidden for every unassigned coordinate given
// x_0..x_{d-1}. All unassigned coordinates share that set because the
// arrangement is symmetric in them.

namespace {

class MidSearch {
public:
    MidSearch(std::size_t m, std::uint64_t q, bool quadruples)
        : m_(m), q_(q), quadruples_(quadruples), x_(m, 0), forbidden_(m + 1, q)
    {
    }

    // Assigns x_d = v on top of level d, producing level d + 1.
    void assign(std::size_t d, std::uint64_t v)
    {
        x_[d] = v;
        forbidden_.copy(d, d + 1);
        std::uint64_t* next = forbidden_.level(d + 1);
        ResidueStack::set(next, v);
        if (!quadruples_) return;
        const std::uint64_t q = q_;
        // y + x_d = x_k + x_l  =>  y = x_k + x_l - x_d
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = k + 1; l < d; ++l) ResidueStack::set(next, (x_[k] + x_[l] + q - v) % q);
        // y + x_j = x_d + x_l  =>  y = x_d + x_l - x_j
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t l = 0; l < d; ++l)
                if (l != j) ResidueStack::set(next, (v + x_[l] + q - x_[j]) % q);
    }

    // Completions of a prefix of length d (level d is current).
    std::uint64_t count_from(std::size_t d)
    {
        const std::uint64_t* forb = forbidden_.level(d);
        if (d + 1 == m_) return q_ - forbidden_.popcount(forb);
        std::uint64_t total = 0;
        for (std::uint64_t v = 0; v < q_; ++v) {
            if (ResidueStack::test(forb, v)) continue;
            assign(d, v);
            total += count_from(d + 1);
            forb = forbidden_.level(d);
        }
        return total;
    }

    bool allowed(std::size_t d, std::uint64_t v) { return !ResidueStack::test(forbidden_.level(d), v); }

private:
    std::size_t m_;
    std::uint64_t q_;
    bool quadruples_;
    std::vector<std::uint64_t> x_;
    ResidueStack forbidden_;
};

// Number of tuples with x_1 = 0, x_2 = 1 (0-based x_0, x_1) and x_2 = v.
std::uint64_t normalized_stratum(std::size_t m, std::uint64_t q, bool quadruples, std::uint64_t v)
{
    MidSearch s(m, q, quadruples);
    s.assign(0, 0);
    s.assign(1, 1);
    if (!s.allowed(2, v)) return 0;
    if (m == 3) return 1;
    s.assign(2, v);
    return s.count_from(3);
}

void check_mid_prime(std::size_t m, std::uint64_t q)
{
    require_prime(q);
    if (q == 2 || q <= m)
        throw BadPrime("mid-hyperplane counting needs an odd prime above m, got " + std::to_string(q));
}

BigInt affine_orbit_factor(std::uint64_t q) { return from_u64(q) * from_u64(q - 1); }

BigInt small_distinct_count(std::size_t m, std::uint64_t q)
{
    BigInt c = 1;
    for (std::size_t i = 0; i < m; ++i) c *= q >= i ? from_u64(q - i) : BigInt(0);
    return c;
}

BigInt mid_like_count(std::size_t m, std::uint64_t q, bool quadruples, BudgetMeter* meter_arg, bool parallel)
{
    if (m < 3 || q < 3) return small_distinct_count(m, q);
    BudgetMeter local_meter;
    BudgetMeter& meter = meter_arg ? *meter_arg : local_meter;
    std::vector<std::uint64_t> partial;
    if (parallel) {
        partial = for_each_residue(q, worker_count(meter.budget()), [&](std::uint64_t v) {
            meter.check_clock();
            return normalized_stratum(m, q, quadruples, v);
        });
    } else {
        for (std::uint64_t v = 0; v < q; ++v) partial.push_back(normalized_stratum(m, q, quadruples, v));
    }
    return affine_orbit_factor(q) * sum_in_order(partial);
}

}  // namespace

BigInt count_mid_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter)
{
    check_mid_prime(m, q);
    return mid_like_count(m, q, true, meter, true);
}

BigInt count_mid_complement_serial(std::size_t m, std::uint64_t q)
{
    check_mid_prime(m, q);
    return mid_like_count(m, q, true, nullptr, false);
}

BigInt count_braid_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter)
{
    require_prime(q);
    return mid_like_count(m, q, false, meter, true);
}

// ---------------------------------------------------------------------------
// All-subset search over the free coordinates x_0..x_{m-2}; x_{m-1} is minus
// their sum. Level d of `sums` holds the subset sums (empty set included) of
// x_0..x_{d-1}; x_d must avoid their negatives.

namespace {

class SubsetSearch {
public:
    SubsetSearch(std::size_t m, std::uint64_t q, bool distinct)
        : free_(m - 1), q_(q), distinct_(distinct), x_(m, 0), sums_(m, q), scratch_(1, q)
    {
        ResidueStack::set(sums_.level(0), 0);
        if (distinct_) half_ = (q + 1) / 2;  // inverse of 2 mod odd q
    }

    void assign(std::size_t d, std::uint64_t v)
    {
        x_[d] = v;
        const std::uint64_t* cur = sums_.level(d);
        std::uint64_t* next = sums_.level(d + 1);
        std::copy_n(cur, sums_.words(), next);
        for (std::size_t w = 0; w < sums_.words(); ++w) {
            std::uint64_t bits = cur[w];
            while (bits) {
                const std::uint64_t s = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
                bits &= bits - 1;
                std::uint64_t t = s + v;
                if (t >= q_) t -= q_;
                ResidueStack::set(next, t);
            }
        }
    }

    bool allowed(std::size_t d, std::uint64_t v) const
    {
        const std::uint64_t neg = v == 0 ? 0 : q_ - v;
        if (ResidueStack::test(sums_level(d), neg)) return false;
        if (distinct_)
            for (std::size_t i = 0; i < d; ++i)
                if (x_[i] == v) return false;
        return true;
    }

    std::uint64_t count_from(std::size_t d)
    {
        if (d + 1 == free_) return count_last(d);
        std::uint64_t total = 0;
        for (std::uint64_t v = 0; v < q_; ++v) {
            if (!allowed(d, v)) continue;
            assign(d, v);
            total += count_from(d + 1);
        }
        return total;
    }

private:
    const std::uint64_t* sums_level(std::size_t d) const
    {
        return const_cast<ResidueStack&>(sums_).level(d);
    }

    // The last free coordinate: count residues avoiding every constraint at once.
    std::uint64_t count_last(std::size_t d)
    {
        std::uint64_t* forb = scratch_.level(0);
        std::fill_n(forb, scratch_.words(), 0);
        const std::uint64_t* sums = sums_level(d);
        for (std::size_t w = 0; w < sums_.words(); ++w) {
            std::uint64_t bits = sums[w];
            while (bits) {
                const std::uint64_t s = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
                bits &= bits - 1;
                ResidueStack::set(forb, s == 0 ? 0 : q_ - s);
            }
        }
        if (distinct_) {
            std::uint64_t prefix = 0;
            for (std::size_t i = 0; i < d; ++i) prefix = (prefix + x_[i]) % q_;
            const std::uint64_t neg_prefix = prefix == 0 ? 0 : q_ - prefix;
            for (std::size_t i = 0; i < d; ++i) {
                ResidueStack::set(forb, x_[i]);
                // x_{m-1} = -(prefix + v) must differ from x_i
                ResidueStack::set(forb, (neg_prefix + q_ - x_[i]) % q_);
            }
            // x_{m-1} must differ from v itself: 2v != -prefix
            ResidueStack::set(forb, (neg_prefix * half_) % q_);
        }
        return q_ - scratch_.popcount(forb);
    }

    std::size_t free_;
    std::uint64_t q_;
    bool distinct_;
    std::uint64_t half_ = 0;
    std::vector<std::uint64_t> x_;
    ResidueStack sums_;
    ResidueStack scratch_;
};

std::uint64_t subset_stratum(std::size_t m, std::uint64_t q, bool distinct, std::uint64_t v)
{
    SubsetSearch s(m, q, distinct);
    if (m == 2) {
        // single free coordinate: x_0 = v, x_1 = -v
        return s.allowed(0, v) && !(distinct && (2 * v) % q == 0) ? 1 : 0;
    }
    if (!s.allowed(0, v)) return 0;
    s.assign(0, v);
    return s.count_from(1);
}

BigInt subset_count(std::size_t m, std::uint64_t q, bool distinct, BudgetMeter* meter_arg, bool parallel)
{
    require_prime(q);
    if (m < 2) throw RangeError("all-subset counting needs m >= 2");
    if (distinct && q == 2) throw BadPrime("all-subset plus braid counting needs an odd prime");
    BudgetMeter local_meter;
    BudgetMeter& meter = meter_arg ? *meter_arg : local_meter;
    std::vector<std::uint64_t> partial;
    if (parallel) {
        partial = for_each_residue(q, worker_count(meter.budget()), [&](std::uint64_t v) {
            meter.check_clock();
            return subset_stratum(m, q, distinct, v);
        });
    } else {
        for (std::uint64_t v = 0; v < q; ++v) partial.push_back(subset_stratum(m, q, distinct, v));
    }
    return sum_in_order(partial);
}

}  // namespace

BigInt count_allsubset_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter)
{
    return subset_count(m, q, false, meter, true);
}

BigInt count_allsubset_complement_serial(std::size_t m, std::uint64_t q)
{
    return subset_count(m, q, false, nullptr, false);
}

BigInt count_allsubset_braid_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter)
{
    return subset_count(m, q, true, meter, true);
}

BigInt count_allsubset_braid_complement_serial(std::size_t m, std::uint64_t q)
{
    return subset_count(m, q, true, nullptr, false);
}

// ---------------------------------------------------------------------------

PointCountCache::PointCountCache(std::filesystem::path path) : path_(std::move(path))
{
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string fam, count;
        std::size_t m = 0;
        std::uint64_t q = 0;
        if (!(fields >> fam >> m >> q >> count)) continue;
        const auto family = parse_family(fam);
        if (!family) continue;
        entries_[{*family, m, q}] = BigInt(count);
    }
}

std::optional<BigInt> PointCountCache::lookup(Family family, std::size_t m, std::uint64_t q) const
{
    std::lock_guard lock(mutex_);
    const auto it = entries_.find({family, m, q});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void PointCountCache::store(const PointCountRecord& r)
{
    std::lock_guard lock(mutex_);
    if (!entries_.emplace(std::make_tuple(r.family, r.m, r.q), r.count).second) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw Error("cannot append to counts cache " + path_.string());
    out << family_name(r.family) << '\t' << r.m << '\t' << r.q << '\t' << r.count.get_str() << '\n';
}

std::size_t PointCountCache::size() const
{
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::size_t family_dimension(Family family, std::size_t m)
{
    switch (family) {
    case Family::Braid:
    case Family::Mid:
    case Family::MidQuadruples: return m;
    case Family::Braid0:
    case Family::AllSubset0:
    case Family::AllSubset0UnionBraid0: return m - 1;
    default: throw Error("family " + family_name(family) + " has no fixed dimension");
    }
}

BigInt count_family_complement(Family family, std::size_t m, std::uint64_t q, BudgetMeter* meter)
{
    switch (family) {
    case Family::Braid: return count_braid_complement(m, q, meter);
    case Family::Mid: return count_mid_complement(m, q, meter);
    case Family::AllSubset0: return count_allsubset_complement(m, q, meter);
    case Family::AllSubset0UnionBraid0: return count_allsubset_braid_complement(m, q, meter);
    default: throw Error("no specialized counter for family " + family_name(family));
    }
}

CharPolyResult charpoly(Family family, std::size_t m, const PrimePolicy& policy, PointCountCache* cache,
                        BudgetMeter* meter_arg)
{
    BudgetMeter local_meter;
    BudgetMeter& meter = meter_arg ? *meter_arg : local_meter;
    const std::size_t degree = family_dimension(family, m);
    const std::size_t window = degree + 1 + policy.extra_checks;
    const std::uint64_t floor_prime = policy.min_exclusive ? policy.min_exclusive : m * (m - 1) / 2;

    std::vector<PointCountRecord> samples;
    auto count_at = [&](std::uint64_t q) {
        PointCountRecord r{family, m, q, 0};
        if (auto hit = cache ? cache->lookup(family, m, q) : std::nullopt) {
            r.count = *hit;
        } else {
            r.count = count_family_complement(family, m, q, &meter);
            if (cache) cache->store(r);
        }
        return r;
    };

    std::uint64_t p = floor_prime;
    for (std::size_t i = 0; i < window; ++i) samples.push_back(count_at(p = next_prime(p)));

    std::string last_problem;
    for (std::size_t slide = 0; slide <= policy.max_slides; ++slide) {
        try {
            std::vector<IntSample> pts;
            for (const auto& s : samples) pts.push_back({from_u64(s.q), s.count});
            IntPolynomial poly = interpolate_integer_polynomial(pts, degree);
            bool consistent = poly.is_monic() && poly.degree() == static_cast<long>(degree);
            for (std::size_t e = degree + 1; e < samples.size() && consistent; ++e)
                consistent = poly.evaluate(from_u64(samples[e].q)) == samples[e].count;
            if (consistent) {
                CharPolyResult result;
                result.family = family;
                result.m = m;
                result.poly = std::move(poly);
                for (const auto& s : samples) result.primes_used.push_back(s.q);
                result.counts = samples;
                result.consistency_verified = policy.extra_checks > 0;
                return result;
            }
            last_problem = "held-out prime disagrees with the interpolant";
        } catch (const NonIntegralCoefficient& e) {
            last_problem = e.what();
        } catch (const ConsistencyFailure& e) {
            last_problem = e.what();
        }
        samples.erase(samples.begin());
        samples.push_back(count_at(p = next_prime(p)));
    }
    throw ConsistencyFailure("characteristic polynomial of " + family_name(family) + " m=" + std::to_string(m) +
                             " did not stabilize: " + last_problem);
}

}  // namespace rank_arrange
