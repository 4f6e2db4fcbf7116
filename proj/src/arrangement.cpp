#include "rank_arrange/arrangement.hpp"

#include "rank_arrange/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rank_arrange {

std::string HyperplaneLabel::to_string() const
{
    std::ostringstream out;
    auto list = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; ++i) out << (i > from ? "," : "") << indices[i];
    };
    switch (kind) {
    case LabelKind::Pair:
        out << "K(";
        list(0, indices.size());
        out << ")";
        break;
    case LabelKind::Quadruple:
        out << "H(";
        list(0, std::min<std::size_t>(2, indices.size()));
        out << ";";
        list(std::min<std::size_t>(2, indices.size()), indices.size());
        out << ")";
        break;
    case LabelKind::Subset:
        out << "H{";
        list(0, indices.size());
        out << "}";
        break;
    case LabelKind::Bisector:
        out << "bisector(";
        list(0, indices.size());
        out << ")";
        break;
    case LabelKind::Custom:
        out << "custom";
        if (!indices.empty()) {
            out << "(";
            list(0, indices.size());
            out << ")";
        }
        break;
    }
    return out.str();
}

// ---------------------------------------------------------------------------

Hyperplane::Hyperplane(const RationalVector& normal, const Rational& offset, HyperplaneLabel label)
    : label_(std::move(label))
{
    BigInt lcm = offset.get_den();
    for (const auto& a : normal) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.get_den_mpz_t());
    normal_.reserve(normal.size());
    for (const auto& a : normal) normal_.push_back(a.get_num() * (lcm / a.get_den()));
    offset_ = offset.get_num() * (lcm / offset.get_den());

    BigInt g = 0;
    for (const auto& a : normal_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 0) throw Error("hyperplane with zero normal");
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), offset_.get_mpz_t());
    const auto first = std::find_if(normal_.begin(), normal_.end(), [](const BigInt& a) { return a != 0; });
    if (*first < 0) g = -g;
    for (auto& a : normal_) a /= g;
    offset_ /= g;
}

namespace {

RationalVector to_rational(const std::vector<long>& v)
{
    RationalVector out;
    out.reserve(v.size());
    for (long a : v) out.emplace_back(a);
    return out;
}

}  // namespace

Hyperplane::Hyperplane(const std::vector<long>& normal, long offset, HyperplaneLabel label)
    : Hyperplane(to_rational(normal), Rational(offset), std::move(label))
{
}

Rational Hyperplane::evaluate(const RationalVector& x) const
{
    if (x.size() != normal_.size()) throw DimensionMismatch("hyperplane evaluated at a point of wrong dimension");
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (normal_[i] != 0) s += x[i] * normal_[i];
    return s - offset_;
}

RationalVector Hyperplane::normal_rational() const
{
    RationalVector v;
    v.reserve(normal_.size());
    for (const auto& a : normal_) v.emplace_back(a);
    return v;
}

bool Hyperplane::canonical_less(const Hyperplane& other) const
{
    if (normal_ != other.normal_) return normal_ < other.normal_;
    return offset_ < other.offset_;
}

// ---------------------------------------------------------------------------

std::string family_name(Family f)
{
    switch (f) {
    case Family::Braid: return "braid";
    case Family::Mid: return "mid";
    case Family::MidQuadruples: return "mid_quadruples";
    case Family::Braid0: return "braid0";
    case Family::AllSubset0: return "allsubset0";
    case Family::AllSubset0UnionBraid0: return "allsubset0_union_braid0";
    case Family::Unfolding: return "unfolding";
    case Family::Custom: return "custom";
    }
    return "custom";
}

std::optional<Family> parse_family(const std::string& name)
{
    for (Family f : {Family::Braid, Family::Mid, Family::MidQuadruples, Family::Braid0, Family::AllSubset0,
                     Family::AllSubset0UnionBraid0, Family::Unfolding, Family::Custom})
        if (family_name(f) == name) return f;
    return std::nullopt;
}

Arrangement::Arrangement(std::size_t dim, Family family, std::size_t m) : dim_(dim), family_(family), m_(m) {}

bool Arrangement::add(Hyperplane h)
{
    if (h.dim() != dim_) throw DimensionMismatch("hyperplane dimension does not match arrangement");
    for (const auto& p : planes_)
        if (p.same_as(h)) return false;
    planes_.push_back(std::move(h));
    return true;
}

bool Arrangement::is_central() const
{
    return std::all_of(planes_.begin(), planes_.end(), [](const Hyperplane& h) { return h.is_linear(); });
}

RationalMatrix Arrangement::normal_matrix() const
{
    RationalMatrix a(planes_.size(), dim_);
    for (std::size_t r = 0; r < planes_.size(); ++r)
        for (std::size_t c = 0; c < dim_; ++c) a(r, c) = planes_[r].normal()[c];
    return a;
}

std::size_t Arrangement::rank() const { return planes_.empty() ? 0 : rank_arrange::rank(normal_matrix()); }

// ---------------------------------------------------------------------------

ObjectConfig::ObjectConfig(std::vector<RationalVector> points) : n_(0), points_(std::move(points))
{
    if (points_.empty()) throw Error("object configuration is empty");
    n_ = points_.front().size();
    if (n_ == 0) throw Error("objects must live in R^n with n >= 1");
    for (const auto& p : points_)
        if (p.size() != n_) throw DimensionMismatch("objects have differing dimensions");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (points_[i] == points_[j])
                throw DuplicatePoints("objects " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                      " coincide");
}

ObjectConfig ObjectConfig::scaled(const Rational& lambda) const
{
    std::vector<RationalVector> pts = points_;
    for (auto& p : pts)
        for (auto& c : p) c *= lambda;
    return ObjectConfig(std::move(pts));
}

ObjectConfig make_config_1d(const std::vector<long>& xs)
{
    std::vector<RationalVector> pts;
    for (long x : xs) pts.push_back({Rational(x)});
    return ObjectConfig(std::move(pts));
}

// ---------------------------------------------------------------------------

Arrangement braid(std::size_t m)
{
    Arrangement a(m, Family::Braid, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            std::vector<long> n(m, 0);
            n[i] = 1;
            n[j] = -1;
            a.add(Hyperplane(n, 0, {LabelKind::Pair, {int(i + 1), int(j + 1)}}));
        }
    return a;
}

Arrangement mid_quadruples(std::size_t m)
{
    Arrangement a(m, Family::MidQuadruples, m);
    // i < j, i < k < l, all distinct: for each 4-set, i is its minimum.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = i + 1; k < m; ++k)
                for (std::size_t l = k + 1; l < m; ++l) {
                    if (k == j || l == j) continue;
                    std::vector<long> n(m, 0);
                    n[i] = n[j] = 1;
                    n[k] = n[l] = -1;
                    a.add(Hyperplane(n, 0,
                                     {LabelKind::Quadruple, {int(i + 1), int(j + 1), int(k + 1), int(l + 1)}}));
                }
    return a;
}

Arrangement mid_hyperplane(std::size_t m)
{
    Arrangement a = arrangement_union(braid(m), mid_quadruples(m));
    a.set_family(Family::Mid, m);
    return a;
}

Arrangement braid_restricted(std::size_t m)
{
    if (m < 2) throw RangeError("braid_restricted needs m >= 2");
    const std::size_t d = m - 1;
    Arrangement a(d, Family::Braid0, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            std::vector<long> n(d, 0);
            if (j < d) {
                n[i] = 1;
                n[j] = -1;
            } else {
                // x_i - x_m with x_m = -(x_1 + ... + x_{m-1})
                for (auto& c : n) c = 1;
                n[i] = 2;
            }
            a.add(Hyperplane(n, 0, {LabelKind::Pair, {int(i + 1), int(j + 1)}}));
        }
    return a;
}

Arrangement all_subset_restricted(std::size_t m)
{
    if (m < 3) throw RangeError("all_subset_restricted needs m >= 3");
    const std::size_t d = m - 1;
    Arrangement a(d, Family::AllSubset0, m);
    // Subsets containing m coincide with their complements, so subsets of [m-1] suffice.
    for (unsigned long mask = 1; mask < (1ul << d); ++mask) {
        std::vector<long> n(d, 0);
        std::vector<int> members;
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (1ul << i)) {
                n[i] = 1;
                members.push_back(int(i + 1));
            }
        a.add(Hyperplane(n, 0, {LabelKind::Subset, members}));
    }
    return a;
}

Arrangement unfolding_arrangement(const ObjectConfig& config)
{
    const std::size_t n = config.n();
    const std::size_t m = config.m();
    Arrangement a(n, Family::Unfolding, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto& xi = config.point(i);
            const auto& xj = config.point(j);
            RationalVector normal(n);
            for (std::size_t c = 0; c < n; ++c) normal[c] = xi[c] - xj[c];
            // (x_i - x_j) . y = (|x_i|^2 - |x_j|^2) / 2
            const Rational offset = (dot(xi, xi) - dot(xj, xj)) / 2;
            a.add(Hyperplane(normal, offset, {LabelKind::Bisector, {int(i + 1), int(j + 1)}}));
        }
    return a;
}

Arrangement arrangement_union(const Arrangement& a, const Arrangement& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("union of arrangements of different dimension");
    Family f = Family::Custom;
    if (a.family() == b.family())
        f = a.family();
    else if ((a.family() == Family::AllSubset0 && b.family() == Family::Braid0) ||
             (a.family() == Family::Braid0 && b.family() == Family::AllSubset0))
        f = Family::AllSubset0UnionBraid0;
    const std::size_t m = a.m() == b.m() ? a.m() : std::max(a.m(), b.m());
    Arrangement out(a.dim(), f, m);
    for (const auto& h : a.hyperplanes()) out.add(h);
    for (const auto& h : b.hyperplanes()) out.add(h);
    return out;
}

Arrangement essentialize(const Arrangement& a)
{
    if (a.empty()) return Arrangement(0, a.family(), a.m());
    // Coordinates z = B x where the rows of B are independent normals of the arrangement.
    const RationalMatrix normals = a.normal_matrix();
    const EchelonForm ef = reduced_row_echelon(normals.transposed());
    const std::size_t r = ef.rank();
    RationalMatrix basis_t(a.dim(), r);  // columns = chosen normals
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t c = 0; c < a.dim(); ++c) basis_t(c, k) = normals(ef.pivots[k], c);
    Arrangement out(r, a.family(), a.m());
    for (const auto& h : a.hyperplanes()) {
        const RationalVector coeffs = solve(basis_t, h.normal_rational());
        out.add(Hyperplane(coeffs, Rational(h.offset()), h.label()));
    }
    return out;
}

RationalVector lift_from_h0(const RationalVector& z)
{
    RationalVector x = z;
    Rational s = 0;
    for (const auto& c : z) s += c;
    x.push_back(-s);
    return x;
}

// ---------------------------------------------------------------------------

std::string condition_name(GenericCondition c)
{
    switch (c) {
    case GenericCondition::A1: return "A1";
    case GenericCondition::A2: return "A2";
    case GenericCondition::A1Spanning: return "A1-spanning";
    }
    return "?";
}

std::string GenericityReport::describe() const
{
    if (ok()) return "generic";
    std::ostringstream out;
    for (std::size_t v = 0; v < violations.size(); ++v) {
        if (v) out << "; ";
        out << condition_name(violations[v].condition) << " violated by edges";
        for (auto [i, j] : violations[v].edges) out << " {" << i << "," << j << "}";
    }
    return out.str();
}

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// First nu-edge forest whose difference vectors are dependent, if any.
std::optional<std::vector<std::pair<int, int>>> first_dependent_forest(const std::vector<RationalVector>& pts,
                                                                       std::size_t nu)
{
    const std::size_t m = pts.size();
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) edges.emplace_back(int(i), int(j));
    if (nu == 0 || nu > edges.size()) return std::nullopt;

    std::vector<std::size_t> pick(nu);
    std::iota(pick.begin(), pick.end(), 0);
    const std::size_t dim = pts.front().size();
    while (true) {
        DisjointSets ds(m);
        bool forest = true;
        for (auto e : pick) forest = forest && ds.unite(edges[e].first, edges[e].second);
        if (forest) {
            RationalMatrix diffs(nu, dim);
            for (std::size_t r = 0; r < nu; ++r) {
                const auto [i, j] = edges[pick[r]];
                for (std::size_t c = 0; c < dim; ++c) diffs(r, c) = pts[i][c] - pts[j][c];
            }
            if (rank(diffs) != nu) {
                std::vector<std::pair<int, int>> out;
                for (auto e : pick) out.emplace_back(edges[e].first + 1, edges[e].second + 1);
                return out;
            }
        }
        // next combination
        std::size_t k = nu;
        while (k > 0 && pick[k - 1] == edges.size() - nu + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t t = k; t < nu; ++t) pick[t] = pick[t - 1] + 1;
    }
    return std::nullopt;
}

}  // namespace

GenericityReport check_generic(const ObjectConfig& config)
{
    GenericityReport report;
    const std::size_t m = config.m();
    const std::size_t n = config.n();
    if (n + 2 <= m) {
        if (auto w = first_dependent_forest(config.points(), n))
            report.violations.push_back({GenericCondition::A1, *w});
        std::vector<RationalVector> lifted;
        for (const auto& p : config.points()) {
            RationalVector q = p;
            q.push_back(dot(p, p));
            lifted.push_back(std::move(q));
        }
        if (auto w = first_dependent_forest(lifted, n + 1))
            report.violations.push_back({GenericCondition::A2, *w});
    } else {
        if (auto w = first_dependent_forest(config.points(), m - 1))
            report.violations.push_back({GenericCondition::A1Spanning, *w});
    }
    return report;
}

}  // namespace rank_arrange
