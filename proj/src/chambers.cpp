#include "rank_arrange/chambers.hpp"

#include "rank_arrange/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>

namespace rank_arrange {

std::string SignVector::to_string() const
{
    std::string s;
    s.reserve(signs.size());
    for (auto v : signs) s.push_back(v > 0 ? '+' : '-');
    return s;
}

SignVector SignVector::parse(const std::string& text)
{
    SignVector sv;
    for (char ch : text) {
        if (ch == '+')
            sv.signs.push_back(1);
        else if (ch == '-')
            sv.signs.push_back(-1);
        else
            throw Error("sign vector may only contain '+' and '-'");
    }
    return sv;
}

ConstraintRegion ConstraintRegion::increasing_chain(std::size_t m)
{
    ConstraintRegion region;
    region.dim = m;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        RationalVector a(m, Rational(0));
        a[i + 1] = 1;
        a[i] = -1;
        region.rows.push_back({std::move(a), Rational(0), true});
    }
    return region;
}

bool ConstraintRegion::contains(const RationalVector& x) const
{
    return std::all_of(rows.begin(), rows.end(), [&](const LinearConstraint& c) { return c.satisfied_by(x); });
}

LinearConstraint side_constraint(const Hyperplane& h, int sign)
{
    LinearConstraint c;
    c.a = h.normal_rational();
    c.b = Rational(h.offset());
    if (sign < 0) {
        for (auto& v : c.a) v = -v;
        c.b = -c.b;
    }
    c.strict = true;
    return c;
}

namespace {

struct Cell {
    std::vector<signed char> signs;  // insertion order
    RationalVector witness;
    std::vector<std::size_t> hint;  // binding rows of the LP that produced the witness
};

// Shared, read-only constraint pool: region rows, then (+,-) sides of every hyperplane.
struct ConstraintPool {
    std::vector<LinearConstraint> region;
    std::vector<LinearConstraint> plus;
    std::vector<LinearConstraint> minus;
};

}  // namespace

std::vector<Chamber> enumerate_chambers(const Arrangement& a, const ConstraintRegion* within, BudgetMeter* meter_arg)
{
    BudgetMeter local_meter;
    BudgetMeter& meter = meter_arg ? *meter_arg : local_meter;
    const std::size_t d = a.dim();
    if (within && within->dim != d) throw DimensionMismatch("region and arrangement dimensions differ");

    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x].canonical_less(a[y]); });

    ConstraintPool pool;
    if (within) pool.region = within->rows;
    for (std::size_t k : order) {
        pool.plus.push_back(side_constraint(a[k], 1));
        pool.minus.push_back(side_constraint(a[k], -1));
    }

    std::vector<Cell> cells;
    {
        Cell root;
        if (within && !within->rows.empty()) {
            meter.charge_lps();
            auto sol = find_feasible_point(std::span<const LinearConstraint>(pool.region), d);
            if (!sol) throw InfeasibleRegion("constraint region is empty");
            root.witness = std::move(sol->point);
        } else {
            root.witness.assign(d, Rational(0));
        }
        cells.push_back(std::move(root));
    }

    const int workers = worker_count(meter.budget());
    const std::size_t nregion = pool.region.size();
    for (std::size_t step = 0; step < order.size(); ++step) {
        const Hyperplane& h = a[order[step]];
        std::vector<std::vector<Cell>> children(cells.size());
        std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            try {
                Cell& cell = cells[ci];
                // rows: region, inserted hyperplanes with their signs, then the candidate side
                std::vector<const LinearConstraint*> rows;
                rows.reserve(nregion + step + 1);
                for (const auto& r : pool.region) rows.push_back(&r);
                for (std::size_t s = 0; s < step; ++s)
                    rows.push_back(cell.signs[s] > 0 ? &pool.plus[s] : &pool.minus[s]);
                std::vector<std::size_t> seed = cell.hint;
                seed.push_back(rows.size());

                auto probe = [&](int side) -> std::optional<LpSolution> {
                    rows.push_back(side > 0 ? &pool.plus[step] : &pool.minus[step]);
                    std::size_t lps = 0;
                    auto sol = find_feasible_point(std::span<const LinearConstraint* const>(rows), d, seed, &lps);
                    rows.pop_back();
                    meter.charge_lps(lps);
                    return sol;
                };
                auto child = [&](int side, RationalVector witness, std::vector<std::size_t> hint) {
                    Cell c;
                    c.signs = cell.signs;
                    c.signs.push_back(static_cast<signed char>(side));
                    c.witness = std::move(witness);
                    c.hint = std::move(hint);
                    return c;
                };

                const Rational value = h.evaluate(cell.witness);
                if (value != 0) {
                    const int here = value > 0 ? 1 : -1;
                    auto other = probe(-here);
                    children[ci].push_back(child(here, cell.witness, cell.hint));
                    if (other) children[ci].push_back(child(-here, std::move(other->point), std::move(other->binding)));
                } else {
                    for (int side : {1, -1})
                        if (auto sol = probe(side))
                            children[ci].push_back(child(side, std::move(sol->point), std::move(sol->binding)));
                }
            } catch (...) {
#pragma omp critical(rank_arrange_chamber_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        std::vector<Cell> next;
        for (auto& group : children)
            for (auto& c : group) next.push_back(std::move(c));
        cells = std::move(next);
        meter.check_chambers(cells.size());
    }

    std::vector<Chamber> out;
    out.reserve(cells.size());
    for (auto& cell : cells) {
        Chamber ch;
        ch.signs.signs.assign(a.size(), 0);
        for (std::size_t s = 0; s < order.size(); ++s) ch.signs.signs[order[s]] = cell.signs[s];
        ch.witness = std::move(cell.witness);
        out.push_back(std::move(ch));
    }
    std::sort(out.begin(), out.end(), [](const Chamber& x, const Chamber& y) { return x.signs < y.signs; });
    return out;
}

ZaslavskyCounts zaslavsky_counts(const IntPolynomial& chi, std::size_t ambient_dim, std::size_t rank)
{
    const BigInt sign = ambient_dim % 2 == 0 ? 1 : -1;
    ZaslavskyCounts z;
    z.total = sign * chi.evaluate(BigInt(-1));
    z.bounded = rank < ambient_dim ? BigInt(0) : BigInt(sign * chi.evaluate(BigInt(1)));
    return z;
}

bool is_bounded(const Chamber& c, const Arrangement& a, const ConstraintRegion* within)
{
    const std::size_t d = a.dim();
    // Recession cone of the closure: sign_i * normal_i . v >= 0, plus homogeneous region rows.
    std::vector<LinearConstraint> cone;
    for (std::size_t i = 0; i < a.size(); ++i) {
        LinearConstraint row = side_constraint(a[i], c.signs[i]);
        row.b = 0;
        row.strict = false;
        cone.push_back(std::move(row));
    }
    if (within)
        for (const auto& r : within->rows) cone.push_back({r.a, Rational(0), false});
    for (std::size_t j = 0; j < d; ++j)
        for (int s : {1, -1}) {
            RationalVector e(d, Rational(0));
            e[j] = s;
            cone.push_back({std::move(e), Rational(1), false});
            const bool escapes = solve_margin_lp(cone, d).has_value();
            cone.pop_back();
            if (escapes) return false;
        }
    return true;
}

bool is_facet(const SignVector& signs, const Arrangement& a, std::size_t k)
{
    std::vector<LinearConstraint> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == k) {
            LinearConstraint ge = side_constraint(a[i], 1);
            LinearConstraint le = side_constraint(a[i], -1);
            ge.strict = le.strict = false;
            rows.push_back(std::move(ge));
            rows.push_back(std::move(le));
        } else {
            rows.push_back(side_constraint(a[i], signs[i]));
        }
    }
    return find_feasible_point(std::span<const LinearConstraint>(rows), a.dim()).has_value();
}

// ---------------------------------------------------------------------------

bool IntersectionPoset::leq(std::size_t x, std::size_t y) const
{
    const auto& cx = elements[x].containing;
    const auto& cy = elements[y].containing;
    return std::includes(cy.begin(), cy.end(), cx.begin(), cx.end());
}

std::size_t IntersectionPoset::count_of_rank(std::size_t r) const
{
    return static_cast<std::size_t>(
        std::count_if(elements.begin(), elements.end(), [r](const Flat& f) { return f.rank == r; }));
}

namespace {

RationalMatrix augmented_row(const Hyperplane& h)
{
    RationalMatrix row(1, h.dim() + 1);
    for (std::size_t c = 0; c < h.dim(); ++c) row(0, c) = h.normal()[c];
    row(0, h.dim()) = h.offset();
    return row;
}

RationalMatrix stack(const RationalMatrix& top, const RationalMatrix& bottom)
{
    RationalMatrix out(top.rows() + bottom.rows(), bottom.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < bottom.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
    return out;
}

std::string key_of(const RationalMatrix& m)
{
    std::string key;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) key += to_string(m(r, c)) + ",";
        key += ";";
    }
    return key;
}

}  // namespace

IntersectionPoset intersection_poset(const Arrangement& a, std::size_t max_rank, std::size_t max_elements)
{
    const std::size_t d = a.dim();
    std::vector<RationalMatrix> rows;
    for (const auto& h : a.hyperplanes()) rows.push_back(augmented_row(h));

    IntersectionPoset poset;
    Flat ambient;
    ambient.equations = RationalMatrix(0, d + 1);
    poset.elements.push_back(ambient);
    std::map<std::string, std::size_t> index{{key_of(ambient.equations), 0}};

    std::size_t layer_begin = 0;
    for (std::size_t r = 0; r < std::min(max_rank, d); ++r) {
        const std::size_t layer_end = poset.elements.size();
        for (std::size_t e = layer_begin; e < layer_end; ++e) {
            for (std::size_t k = 0; k < a.size(); ++k) {
                const Flat& base = poset.elements[e];
                if (std::binary_search(base.containing.begin(), base.containing.end(), k)) continue;
                EchelonForm ef = reduced_row_echelon(stack(base.equations, rows[k]));
                if (!ef.pivots.empty() && ef.pivots.back() == d) continue;  // empty intersection
                if (ef.rank() != r + 1) continue;
                RationalMatrix eqs(ef.rank(), d + 1);
                for (std::size_t i = 0; i < ef.rank(); ++i)
                    for (std::size_t c = 0; c <= d; ++c) eqs(i, c) = ef.reduced(i, c);
                const std::string key = key_of(eqs);
                if (index.count(key)) continue;
                Flat flat;
                flat.rank = ef.rank();
                for (std::size_t j = 0; j < a.size(); ++j)
                    if (rank_arrange::rank(stack(eqs, rows[j])) == flat.rank) flat.containing.push_back(j);
                flat.equations = std::move(eqs);
                index.emplace(key, poset.elements.size());
                poset.elements.push_back(std::move(flat));
                if (poset.elements.size() > max_elements)
                    throw BudgetExceeded("intersection poset exceeds " + std::to_string(max_elements) + " elements");
            }
        }
        layer_begin = layer_end;
    }
    return poset;
}

std::size_t partition_rank(const SetPartition& p)
{
    if (p.empty()) return 0;
    const int blocks = *std::max_element(p.begin(), p.end()) + 1;
    return p.size() - static_cast<std::size_t>(blocks);
}

bool refines(const SetPartition& p, const SetPartition& q)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] == p[j] && q[i] != q[j]) return false;
    return true;
}

std::vector<SetPartition> set_partitions(std::size_t m, std::size_t max_rank)
{
    std::vector<SetPartition> out;
    SetPartition cur(m, 0);
    auto rec = [&](auto&& self, std::size_t i, int blocks) -> void {
        if (i == m) {
            if (m - static_cast<std::size_t>(blocks) <= max_rank) out.push_back(cur);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            cur[i] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    if (m == 0) return {SetPartition{}};
    cur[0] = 0;
    rec(rec, 1, 1);
    return out;
}

std::string partition_to_string(const SetPartition& p)
{
    std::ostringstream out;
    const int blocks = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
    out << "{";
    for (int b = 0; b < blocks; ++b) {
        out << (b ? "," : "") << "{";
        bool first = true;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] == b) {
                out << (first ? "" : ",") << i + 1;
                first = false;
            }
        out << "}";
    }
    out << "}";
    return out.str();
}

SetPartition partition_map(const Arrangement& a, const Flat& x)
{
    const std::size_t m = a.m();
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t k : x.containing) {
        const auto& lab = a[k].label();
        if ((lab.kind != LabelKind::Bisector && lab.kind != LabelKind::Pair) || lab.indices.size() != 2)
            throw Error("partition_map needs pair-labelled hyperplanes");
        const int i = find(lab.indices[0] - 1);
        const int j = find(lab.indices[1] - 1);
        if (i != j) parent[std::max(i, j)] = std::min(i, j);
    }
    SetPartition p(m);
    std::vector<int> id(m, -1);
    int next = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const int root = find(static_cast<int>(i));
        if (id[root] < 0) id[root] = next++;
        p[i] = id[root];
    }
    return p;
}

PosetCheck verify_poset_isomorphism(const ObjectConfig& config)
{
    PosetCheck check;
    const std::size_t m = config.m();
    const std::size_t n = config.n();
    const std::size_t top = std::min(n, m - 1);
    const Arrangement a = unfolding_arrangement(config);
    if (a.size() != m * (m - 1) / 2) {
        check.witness = "two bisectors coincide";
        return check;
    }
    const IntersectionPoset poset = intersection_poset(a, top);
    const std::vector<SetPartition> parts = set_partitions(m, top);
    check.poset_size = poset.size();
    check.partition_count = parts.size();

    std::vector<SetPartition> images;
    for (std::size_t e = 0; e < poset.size(); ++e) {
        SetPartition p = partition_map(a, poset.elements[e]);
        // every pair inside a block must really contain the flat
        for (std::size_t k = 0; k < a.size(); ++k) {
            const auto& lab = a[k].label();
            const bool same = p[lab.indices[0] - 1] == p[lab.indices[1] - 1];
            const bool contains = std::binary_search(poset.elements[e].containing.begin(),
                                                     poset.elements[e].containing.end(), k);
            if (same != contains) {
                check.witness = "flat " + std::to_string(e) + " induces a non-transitive relation";
                return check;
            }
        }
        if (partition_rank(p) != poset.elements[e].rank) {
            check.witness = "flat " + std::to_string(e) + " of rank " + std::to_string(poset.elements[e].rank) +
                            " maps to " + partition_to_string(p);
            return check;
        }
        images.push_back(std::move(p));
    }
    std::vector<SetPartition> sorted_images = images;
    std::sort(sorted_images.begin(), sorted_images.end());
    if (std::adjacent_find(sorted_images.begin(), sorted_images.end()) != sorted_images.end()) {
        check.witness = "partition map is not injective";
        return check;
    }
    std::vector<SetPartition> sorted_parts = parts;
    std::sort(sorted_parts.begin(), sorted_parts.end());
    if (sorted_images != sorted_parts) {
        check.witness = "partition map is not onto the truncated partition lattice (" +
                        std::to_string(images.size()) + " flats vs " + std::to_string(parts.size()) + " partitions)";
        return check;
    }
    for (std::size_t x = 0; x < poset.size(); ++x)
        for (std::size_t y = 0; y < poset.size(); ++y)
            if (poset.leq(x, y) != refines(images[x], images[y])) {
                check.witness = "order mismatch between " + partition_to_string(images[x]) + " and " +
                                partition_to_string(images[y]);
                return check;
            }
    check.ok = true;
    return check;
}

}  // namespace rank_arrange
