#include "rank_arrange/chambers.hpp"
#include "rank_arrange/errors.hpp"
#include "rank_arrange/finitefield.hpp"
#include "rank_arrange/lp.hpp"
#include "rank_arrange/unfolding.hpp"

#include <doctest.h>

using namespace rank_arrange;

namespace {

BudgetMeter meter_with_threads(int threads)
{
    RunBudget b;
    b.threads = threads;
    return BudgetMeter(b);
}

void check_witnesses(const Arrangement& a, const std::vector<Chamber>& chambers)
{
    for (const auto& c : chambers) {
        REQUIRE(c.signs.size() == a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            const Rational v = a[k].evaluate(c.witness);
            CHECK(v != 0);
            CHECK((v > 0) == (c.signs[k] > 0));
        }
    }
}

}  // namespace

TEST_CASE("lp: strict system with a solution")
{
    // x > 0, y > 0, x + y < 1
    const std::vector<LinearConstraint> rows{{{1, 0}, 0, true}, {{0, 1}, 0, true}, {{-1, -1}, -1, true}};
    const auto sol = solve_margin_lp(rows, 2);
    REQUIRE(sol.has_value());
    for (const auto& r : rows) CHECK(r.satisfied_by(sol->point));
    CHECK(sol->margin > 0);
}

TEST_CASE("lp: infeasible strict systems")
{
    // x > 1 and x < 1
    CHECK_FALSE(solve_margin_lp(std::vector<LinearConstraint>{{{1}, 1, true}, {{-1}, -1, true}}, 1).has_value());
    // x >= 1 and x < 1
    CHECK_FALSE(solve_margin_lp(std::vector<LinearConstraint>{{{1}, 1, false}, {{-1}, -1, true}}, 1).has_value());
}

TEST_CASE("lp: equality through two closed rows")
{
    // x + y = 3 with x > y > 0
    const std::vector<LinearConstraint> rows{
        {{1, 1}, 3, false}, {{-1, -1}, -3, false}, {{1, -1}, 0, true}, {{0, 1}, 0, true}};
    const auto sol = solve_margin_lp(rows, 2);
    REQUIRE(sol.has_value());
    CHECK(sol->point[0] + sol->point[1] == 3);
    for (const auto& r : rows) CHECK(r.satisfied_by(sol->point));
}

TEST_CASE("lp: constraint generation agrees with the direct solve")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<LinearConstraint> rows;
        for (int k = 0; k < 12; ++k) rows.push_back({{d(rng), d(rng), d(rng)}, d(rng), k % 3 != 0});
        const auto direct = solve_margin_lp(rows, 3);
        std::size_t lps = 0;
        const auto generated = find_feasible_point(rows, 3, {}, &lps);
        CHECK(direct.has_value() == generated.has_value());
        if (generated)
            for (const auto& r : rows) CHECK(r.satisfied_by(generated->point));
        CHECK(lps >= 1);
    }
}

TEST_CASE("chambers: examples")
{
    Arrangement line(1);
    line.add(Hyperplane(std::vector<long>{1}, 0));
    CHECK(enumerate_chambers(line).size() == 2);
    CHECK(enumerate_chambers(essentialize(braid(3))).size() == 6);
    const ConstraintRegion c0 = ConstraintRegion::increasing_chain(6);
    CHECK(enumerate_chambers(mid_quadruples(6), &c0).size() == 168);
}

TEST_CASE("chambers: empty region")
{
    ConstraintRegion empty{1, {{{1}, 1, true}, {{-1}, -1, true}}};
    Arrangement line(1);
    line.add(Hyperplane(std::vector<long>{1}, 0));
    CHECK_THROWS_AS(enumerate_chambers(line, &empty), InfeasibleRegion);
}

TEST_CASE("chambers: witnesses are strict and sign vectors are sorted")
{
    for (const Arrangement& a : {braid(4), all_subset_restricted(4), mid_hyperplane(4),
                                 unfolding_arrangement(GenericConfigSampler(5).sample(5, 2))}) {
        const auto ch = enumerate_chambers(a);
        check_witnesses(a, ch);
        for (std::size_t i = 0; i + 1 < ch.size(); ++i) CHECK(ch[i].signs < ch[i + 1].signs);
    }
}

TEST_CASE("chambers: chambers differing in one sign share that facet")
{
    const Arrangement a = all_subset_restricted(4);
    const auto ch = enumerate_chambers(a);
    std::size_t adjacent = 0;
    for (std::size_t i = 0; i < ch.size(); ++i)
        for (std::size_t j = i + 1; j < ch.size(); ++j) {
            std::size_t diff = 0, at = 0;
            for (std::size_t k = 0; k < a.size(); ++k)
                if (ch[i].signs[k] != ch[j].signs[k]) ++diff, at = k;
            if (diff != 1) continue;
            ++adjacent;
            CHECK(is_facet(ch[i].signs, a, at));
            CHECK(is_facet(ch[j].signs, a, at));
        }
    CHECK(adjacent > 0);
}

TEST_CASE("chambers: identical output for any worker count")
{
    const Arrangement a = unfolding_arrangement(GenericConfigSampler(11).sample(6, 2));
    BudgetMeter one = meter_with_threads(1);
    BudgetMeter four = meter_with_threads(4);
    const auto x = enumerate_chambers(a, nullptr, &one);
    const auto y = enumerate_chambers(a, nullptr, &four);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].signs == y[i].signs);
        CHECK(x[i].witness == y[i].witness);
    }
}

TEST_CASE("chambers: budget guard")
{
    RunBudget b;
    b.max_chambers = 10;
    BudgetMeter meter(b);
    CHECK_THROWS_AS(enumerate_chambers(braid(5), nullptr, &meter), BudgetExceeded);
}

TEST_CASE("zaslavsky: examples")
{
    const ZaslavskyCounts b3 = zaslavsky_counts(IntPolynomial::from_roots({0, 1, 2}), 3, 2);
    CHECK(b3.total == 6);
    CHECK(b3.bounded == 0);
    const ZaslavskyCounts pts = zaslavsky_counts(IntPolynomial::from_roots({3}), 1);
    CHECK(pts.total == 4);
    CHECK(pts.bounded == 2);
}

TEST_CASE("zaslavsky totals agree with enumeration")
{
    for (std::size_t m = 3; m <= 5; ++m) {
        CHECK(enumerate_chambers(braid(m)).size() ==
              zaslavsky_counts(charpoly(Family::Braid, m).poly, m, m - 1).total);
        CHECK(enumerate_chambers(all_subset_restricted(m)).size() ==
              zaslavsky_counts(charpoly(Family::AllSubset0, m).poly, m - 1).total);
    }
    for (std::size_t m = 4; m <= 5; ++m)
        CHECK(enumerate_chambers(mid_hyperplane(m)).size() ==
              zaslavsky_counts(charpoly(Family::Mid, m).poly, m, m - 1).total);
    for (std::size_t m = 4; m <= 6; ++m) {
        const ConstraintRegion c0 = ConstraintRegion::increasing_chain(m);
        CHECK(enumerate_chambers(mid_quadruples(m), &c0).size() * factorial(static_cast<unsigned>(m)) ==
              zaslavsky_counts(charpoly(Family::Mid, m).poly, m, m - 1).total);
    }
}

TEST_CASE("bounded chambers")
{
    const Arrangement two = unfolding_arrangement(make_config_1d({0, 2, 6}));
    const auto ch = enumerate_chambers(two);
    std::size_t bounded = 0;
    for (const auto& c : ch) {
        const bool b = is_bounded(c, two);
        bounded += b;
        const Rational x = c.witness[0];
        CHECK(b == (x > 1 && x < 4));
    }
    CHECK(bounded == 2);

    const Arrangement a41 = unfolding_arrangement(GenericConfigSampler(1).sample(4, 1));
    std::size_t b41 = 0;
    for (const auto& c : enumerate_chambers(a41)) b41 += is_bounded(c, a41);
    CHECK(b41 == 5);

    for (std::size_t m = 3; m <= 4; ++m) {
        const Arrangement b = braid(m);
        for (const auto& c : enumerate_chambers(b)) CHECK_FALSE(is_bounded(c, b));
    }
}

TEST_CASE("intersection poset examples")
{
    Arrangement cross(2);
    cross.add(Hyperplane(std::vector<long>{1, 0}, 0));
    cross.add(Hyperplane(std::vector<long>{0, 1}, 0));
    const IntersectionPoset p = intersection_poset(cross, 2);
    CHECK(p.size() == 4);
    CHECK(p.count_of_rank(0) == 1);
    CHECK(p.count_of_rank(1) == 2);
    CHECK(p.count_of_rank(2) == 1);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.leq(0, i));

    // generic 1-d: parallel bisectors never meet
    const IntersectionPoset line = intersection_poset(unfolding_arrangement(make_config_1d({0, 1, 3, 7})), 2);
    CHECK(line.size() == 7);
    CHECK(line.count_of_rank(2) == 0);

    const ObjectConfig g42 = GenericConfigSampler(4).sample(4, 2);
    const IntersectionPoset p42 = intersection_poset(unfolding_arrangement(g42), 2);
    CHECK(p42.size() == 14);
    CHECK(p42.size() == set_partitions(4, 2).size());
}

TEST_CASE("partition lattice helpers")
{
    CHECK(set_partitions(4, 3).size() == 15);
    CHECK(set_partitions(4, 1).size() == 7);
    CHECK(set_partitions(5, 4).size() == 52);
    CHECK(refines({0, 1, 2}, {0, 0, 1}));
    CHECK_FALSE(refines({0, 0, 1}, {0, 1, 1}));
    CHECK(partition_rank({0, 0, 1, 2}) == 1);
}

TEST_CASE("partition map examples")
{
    const ObjectConfig config = GenericConfigSampler(8).sample(4, 2);
    const Arrangement a = unfolding_arrangement(config);
    const IntersectionPoset p = intersection_poset(a, 2);
    CHECK(partition_map(a, p.elements[0]) == SetPartition{0, 1, 2, 3});
    for (const auto& x : p.elements) {
        const SetPartition part = partition_map(a, x);
        CHECK(partition_rank(part) == x.rank);
        if (x.rank == 1) {
            const auto& lab = a[x.containing[0]].label().indices;
            CHECK(part[lab[0] - 1] == part[lab[1] - 1]);
        }
        if (x.rank == 2 && x.containing.size() == 3) {
            // H_ij and H_ik meet inside H_jk: a triple block
            std::size_t largest = 0;
            for (int b = 0; b < 4; ++b) largest = std::max<std::size_t>(largest, std::count(part.begin(), part.end(), b));
            CHECK(largest == 3);
        }
    }
}

TEST_CASE("poset isomorphism on small generic configurations")
{
    GenericConfigSampler s(12);
    for (const auto& [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {4, 2}, {5, 2}}) {
        const PosetCheck pc = verify_poset_isomorphism(s.sample(m, n));
        CHECK(pc.ok);
        CHECK(pc.poset_size == pc.partition_count);
    }
    CHECK(verify_poset_isomorphism(s.sample(4, 1)).poset_size == 7);
    CHECK(verify_poset_isomorphism(s.sample(4, 2)).poset_size == 14);
}
