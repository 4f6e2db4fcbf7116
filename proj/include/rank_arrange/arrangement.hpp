#pragma once

#include "rank_arrange/exactmath.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rank_arrange {

enum class LabelKind {
    Pair,       // K_ij : x_i = x_j
    Quadruple,  // H_ijkl : x_i + x_j = x_k + x_l
    Subset,     // H_I : sum_{i in I} x_i = 0
    Bisector,   // perpendicular bisector of objects i and j
    Custom,
};

/// Structured, 1-based tag naming where a hyperplane came from.
struct HyperplaneLabel {
    LabelKind kind = LabelKind::Custom;
    std::vector<int> indices;

    std::string to_string() const;
    friend bool operator==(const HyperplaneLabel&, const HyperplaneLabel&) = default;
};

/// Affine hyperplane {x : normal . x = offset} with integer data in canonical
/// form: gcd of all entries (normal and offset) is 1 and the first nonzero
/// normal entry is positive.
class Hyperplane {
public:
    /// Canonicalizes any rational equation; throws Error for a zero normal.
    Hyperplane(const RationalVector& normal, const Rational& offset, HyperplaneLabel label = {});
    Hyperplane(const std::vector<long>& normal, long offset, HyperplaneLabel label = {});

    std::size_t dim() const { return normal_.size(); }
    const std::vector<BigInt>& normal() const { return normal_; }
    const BigInt& offset() const { return offset_; }
    const HyperplaneLabel& label() const { return label_; }
    bool is_linear() const { return offset_ == 0; }

    /// normal . x - offset
    Rational evaluate(const RationalVector& x) const;
    RationalVector normal_rational() const;

    /// Equality of the geometric hyperplane (labels ignored).
    bool same_as(const Hyperplane& other) const
    {
        return normal_ == other.normal_ && offset_ == other.offset_;
    }
    /// Lexicographic order on (normal, offset); labels ignored.
    bool canonical_less(const Hyperplane& other) const;

private:
    std::vector<BigInt> normal_;
    BigInt offset_;
    HyperplaneLabel label_;
};

enum class Family {
    Braid,                 // B_m in R^m
    Mid,                   // M_m = B_m u N_m in R^m
    MidQuadruples,         // N_m in R^m
    Braid0,                // B_m restricted to the zero-sum hyperplane
    AllSubset0,            // A_m restricted to the zero-sum hyperplane
    AllSubset0UnionBraid0, // union of the two above
    Unfolding,             // perpendicular bisectors of an object configuration
    Custom,
};

std::string family_name(Family f);
/// Accepts the CLI spellings: braid, mid, mid_quadruples, braid0, allsubset0,
/// allsubset0_union_braid0, unfolding, custom.
std::optional<Family> parse_family(const std::string& name);

/// Ordered, duplicate-free list of hyperplanes of a common dimension.
class Arrangement {
public:
    Arrangement(std::size_t dim, Family family = Family::Custom, std::size_t m = 0);
    /// Appends unless an identical hyperplane is already present; returns true when added.
    bool add(Hyperplane h);

    std::size_t dim() const { return dim_; }
    Family family() const { return family_; }
    /// Number of objects / coordinates the family was built from (0 if not applicable).
    std::size_t m() const { return m_; }
    std::size_t size() const { return planes_.size(); }
    bool empty() const { return planes_.empty(); }
    const std::vector<Hyperplane>& hyperplanes() const { return planes_; }
    const Hyperplane& operator[](std::size_t i) const { return planes_[i]; }

    bool is_central() const;
    /// Rank of the normal matrix.
    std::size_t rank() const;
    RationalMatrix normal_matrix() const;

    void set_family(Family f, std::size_t m) { family_ = f; m_ = m; }

private:
    std::size_t dim_;
    Family family_;
    std::size_t m_;
    std::vector<Hyperplane> planes_;
};

/// m distinct rational points in R^n (objects of an unfolding model).
class ObjectConfig {
public:
    /// Throws DuplicatePoints naming the first coinciding pair, Error for ragged input.
    explicit ObjectConfig(std::vector<RationalVector> points);

    std::size_t m() const { return points_.size(); }
    std::size_t n() const { return n_; }
    const std::vector<RationalVector>& points() const { return points_; }
    const RationalVector& point(std::size_t i) const { return points_[i]; }

    ObjectConfig scaled(const Rational& lambda) const;
    ObjectConfig negated() const { return scaled(Rational(-1)); }

private:
    std::size_t n_;
    std::vector<RationalVector> points_;
};

ObjectConfig make_config_1d(const std::vector<long>& xs);

Arrangement braid(std::size_t m);
/// N_m: x_i + x_j = x_k + x_l over quadruples with i the smallest index.
Arrangement mid_quadruples(std::size_t m);
/// M_m = B_m u N_m.
Arrangement mid_hyperplane(std::size_t m);
/// B_m^0 in coordinates x_1..x_{m-1} of the zero-sum hyperplane (x_m eliminated).
Arrangement braid_restricted(std::size_t m);
/// A_m^0 in coordinates x_1..x_{m-1}; complementary subsets collapse to one hyperplane.
Arrangement all_subset_restricted(std::size_t m);
/// Perpendicular bisectors of all object pairs.
Arrangement unfolding_arrangement(const ObjectConfig& config);
/// Canonical dedup of a followed by b; throws DimensionMismatch.
Arrangement arrangement_union(const Arrangement& a, const Arrangement& b);
/// Arrangement in coordinates of the quotient by the lineality space of the normals.
Arrangement essentialize(const Arrangement& a);

/// Lifts a point of the zero-sum hyperplane from H0 coordinates to R^m.
RationalVector lift_from_h0(const RationalVector& z);

enum class GenericCondition {
    A1,         // forests of n edges have independent object differences
    A2,         // the same for points lifted onto the paraboloid, forests of n+1 edges
    A1Spanning, // n >= m-1: spanning trees (m-1 edges) have independent differences
};

std::string condition_name(GenericCondition c);

struct GenericViolation {
    GenericCondition condition;
    std::vector<std::pair<int, int>> edges;  // 1-based object pairs
};

struct GenericityReport {
    std::vector<GenericViolation> violations;  // first witness per failing condition
    bool ok() const { return violations.empty(); }
    std::string describe() const;
};

GenericityReport check_generic(const ObjectConfig& config);

}  // namespace rank_arrange
