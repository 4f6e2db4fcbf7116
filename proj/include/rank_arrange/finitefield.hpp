#pragma once

#include "rank_arrange/arrangement.hpp"
#include "rank_arrange/budget.hpp"
#include "rank_arrange/exactmath.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace rank_arrange {

bool is_prime(std::uint64_t q);
/// Smallest prime strictly greater than q.
std::uint64_t next_prime(std::uint64_t q);

// ---------------------------------------------------------------------------
// Complement point counts over F_q.
//
// Each kernel exists twice: an OpenMP version that splits the search by the
// residue of the first free coordinate and sums the strata in residue order,
// and a single-threaded reference kept for testing and benchmarking.

/// Points of F_q^dim on no hyperplane (equations reduced mod q).
/// Throws BadPrime if q is not prime or some normal vanishes mod q.
BigInt count_complement_generic(const Arrangement& a, std::uint64_t q, BudgetMeter* meter = nullptr);
BigInt count_complement_generic_serial(const Arrangement& a, std::uint64_t q);

/// Complement count of the mid-hyperplane arrangement M_m: q(q-1) times the
/// number of tuples with x_1 = 0, x_2 = 1, all coordinates distinct and all
/// pair sums over disjoint pairs distinct. Throws BadPrime for q <= m, q = 2
/// or q composite.
BigInt count_mid_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter = nullptr);
BigInt count_mid_complement_serial(std::size_t m, std::uint64_t q);

/// Complement count of the braid arrangement B_m (distinct coordinates), by the same search.
BigInt count_braid_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter = nullptr);

/// Points x of F_q^m with sum 0 and every proper nonempty subset sum nonzero
/// (the complement of A_m^0 in the zero-sum hyperplane).
BigInt count_allsubset_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter = nullptr);
BigInt count_allsubset_complement_serial(std::size_t m, std::uint64_t q);

/// Complement of A_m^0 u B_m^0: as above with all coordinates distinct as well. q must be odd.
BigInt count_allsubset_braid_complement(std::size_t m, std::uint64_t q, BudgetMeter* meter = nullptr);
BigInt count_allsubset_braid_complement_serial(std::size_t m, std::uint64_t q);

// ---------------------------------------------------------------------------

struct PointCountRecord {
    Family family;
    std::size_t m;
    std::uint64_t q;
    BigInt count;
};

/// Line-oriented cache `family<TAB>m<TAB>q<TAB>count`, appended on store.
class PointCountCache {
public:
    explicit PointCountCache(std::filesystem::path path);

    std::optional<BigInt> lookup(Family family, std::size_t m, std::uint64_t q) const;
    void store(const PointCountRecord& record);
    std::size_t size() const;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<std::tuple<Family, std::size_t, std::uint64_t>, BigInt> entries_;
};

/// Specialized complement count for a named family (braid, mid, allsubset0,
/// allsubset0_union_braid0) in its ambient coordinates.
BigInt count_family_complement(Family family, std::size_t m, std::uint64_t q, BudgetMeter* meter = nullptr);
/// Ambient dimension of the family's arrangement (m, or m - 1 inside the zero-sum hyperplane).
std::size_t family_dimension(Family family, std::size_t m);

struct PrimePolicy {
    /// Only primes above this bound are used; 0 means m(m-1)/2.
    std::uint64_t min_exclusive = 0;
    /// Evaluations held out to validate the interpolant.
    std::size_t extra_checks = 1;
    /// How many times the prime window may slide after a failed validation.
    std::size_t max_slides = 16;
};

struct CharPolyResult {
    Family family = Family::Custom;
    std::size_t m = 0;
    IntPolynomial poly;
    std::vector<std::uint64_t> primes_used;
    std::vector<PointCountRecord> counts;
    bool consistency_verified = false;
};

/// Characteristic polynomial by the finite field method: complement counts at
/// deg+1 good primes are interpolated, then checked against held-out primes.
/// On a non-integral interpolant or a failed check the smallest prime is
/// dropped and the window slides; ConsistencyFailure once slides run out.
CharPolyResult charpoly(Family family, std::size_t m, const PrimePolicy& policy = {},
                        PointCountCache* cache = nullptr, BudgetMeter* meter = nullptr);

}  // namespace rank_arrange
