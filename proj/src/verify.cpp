#include "rank_arrange/verify.hpp"

#include "rank_arrange/bounds.hpp"
#include "rank_arrange/errors.hpp"
#include "rank_arrange/reference.hpp"
#include "rank_arrange/unfolding.hpp"

#include <chrono>
#include <functional>

namespace rank_arrange {

std::string scope_name(VerifyScope s)
{
    switch (s) {
    case VerifyScope::Fast: return "fast";
    case VerifyScope::Full: return "full";
    case VerifyScope::Extended: return "extended";
    }
    return "fast";
}

std::optional<VerifyScope> parse_scope(const std::string& name)
{
    if (name == "fast") return VerifyScope::Fast;
    if (name == "full") return VerifyScope::Full;
    if (name == "extended") return VerifyScope::Extended;
    return std::nullopt;
}

bool VerifyReport::ok() const
{
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

struct Outcome {
    std::string expected;
    std::string actual;
};

class Runner {
public:
    explicit Runner(VerifyReport& report) : report_(report) {}

    void check(const std::string& name, const std::function<Outcome()>& body)
    {
        VerifyCheck c;
        c.name = name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = body();
            c.expected = o.expected;
            c.actual = o.actual;
            c.pass = o.expected == o.actual;
        } catch (const std::exception& e) {
            c.actual = std::string("error: ") + e.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report_.checks.push_back(std::move(c));
    }

private:
    VerifyReport& report_;
};

std::string str(const BigInt& x) { return x.get_str(); }
std::string str(std::size_t x) { return std::to_string(x); }

}  // namespace

VerifyReport run_verify(VerifyScope scope, std::uint64_t seed, PointCountCache* cache, BudgetMeter* meter)
{
    VerifyReport report;
    report.scope = scope;
    Runner run(report);
    const auto& ref = reference_data();
    const bool full = scope != VerifyScope::Fast;
    const bool extended = scope == VerifyScope::Extended;

    const std::size_t r0_cp_max = extended ? 8 : full ? 7 : 5;
    for (std::size_t m = 4; m <= r0_cp_max; ++m)
        run.check("r0(" + str(m) + ") by characteristic polynomial",
                  [&] { return Outcome{str(ref.r0.at(m).value), str(r0_from_charpoly(m, cache, meter))}; });

    const std::size_t r0_en_max = full ? 7 : 5;
    for (std::size_t m = 4; m <= r0_en_max; ++m)
        run.check("r0(" + str(m) + ") by chamber enumeration",
                  [&] { return Outcome{str(ref.r0.at(m).value), str(r0_enumerate(m, meter))}; });

    for (std::size_t m = 9; m <= 10; ++m)
        run.check("chi(M_" + str(m) + ", -1) = (-1)^m m! r0(m)", [&] {
            const IntPolynomial& chi = ref.chi_mid.at(m).value;
            BigInt v = chi.evaluate(BigInt(-1));
            if (m % 2) v = -v;
            return Outcome{str(factorial(static_cast<unsigned>(m)) * ref.r0.at(m).value), str(v)};
        });

    const std::size_t q_cp_max = extended ? 6 : 5;
    for (std::size_t m = 3; m <= q_cp_max; ++m)
        run.check("q(" + str(m) + ") by characteristic polynomial",
                  [&] { return Outcome{str(ref.q.at(m).value), str(q_from_charpoly(m, cache, meter))}; });

    const std::size_t q_en_max = full ? 5 : 4;
    for (std::size_t m = 3; m <= q_en_max; ++m)
        run.check("q(" + str(m) + ") by chamber census", [&] {
            const CodimOneCensus c = q_enumerate(m, false, meter);
            const std::string census = str(c.q) + " (D: " + str(c.one_positive) + ", -D: " + str(c.one_negative) + ")";
            return Outcome{str(ref.q.at(m).value) + " (D: " + str(m) + ", -D: " + str(m) + ")", census};
        });

    run.check("distinct slice patterns over the chambers of A_4^0", [&] {
        const CodimOneCensus c = q_enumerate(4, true, meter);
        return Outcome{str(c.chambers), str(c.distinct_slice_patterns)};
    });

    const std::size_t qie_max = extended ? 6 : full ? 5 : 4;
    for (std::size_t m = 3; m <= qie_max; ++m)
        run.check("q_IE(" + str(m) + ") upper bound",
                  [&] { return Outcome{str(ref.q_ie.at(m).value), str(q_ie_upper(m, cache, meter).value)}; });

    run.check("bounds table cells", [&] {
        const auto rows = bounds_table(10);
        std::string expected, actual;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& p = ref.bounds_table.at(i);
            const auto& r = rows[i];
            expected += p.r0 + "|" + p.a + "|" + p.ell + "|" + p.u + "|" + p.f + ";";
            actual += r.r0_cell + "|" + r.a_cell + "|" + r.ell_cell + "|" + r.u_cell + "|" + r.f_cell + ";";
        }
        return Outcome{expected, actual};
    });

    GenericConfigSampler sampler(seed);
    const std::size_t m_max = full ? 6 : 5;
    for (std::size_t m = 4; m <= m_max; ++m)
        for (std::size_t n = 1; n + 2 <= m && n <= 3; ++n)
            run.check("admissible rankings of a generic (" + str(m) + "," + str(n) + ") configuration", [&] {
                const ObjectConfig config = sampler.sample(m, n);
                const AdmissibleCount expect = count_admissible(m, n);
                const Arrangement a = unfolding_arrangement(config);
                const auto chambers = enumerate_chambers(a, nullptr, meter);
                std::size_t bounded = 0;
                for (const auto& c : chambers) bounded += is_bounded(c, a) ? 1 : 0;
                return Outcome{str(expect.total) + "/" + str(expect.bounded),
                               str(admissible_rankings(config, meter).size()) + "/" + str(bounded)};
            });

    for (const auto& [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {4, 2}, {5, 2}, {5, 3}}) {
        if (!full && m == 5) continue;
        run.check("intersection poset of a generic (" + str(m) + "," + str(n) + ") configuration", [&] {
            const PosetCheck pc = verify_poset_isomorphism(sampler.sample(m, n));
            return Outcome{"isomorphic", pc.ok ? "isomorphic" : pc.witness};
        });
    }

    if (full)
        for (std::size_t m = 4; m <= 5; ++m)
            run.check("slice pattern equals ranking pattern, 10 samples at m = " + str(m), [&] {
                std::size_t agree = 0;
                for (int k = 0; k < 10; ++k) {
                    const ObjectConfig config = sampler.sample(m, m - 2);
                    if (admissible_rankings(config, meter) == braid_slice_pattern(v_map(config), m, meter)) ++agree;
                }
                return Outcome{"10", str(agree)};
            });

    return report;
}

Json verify_json(const VerifyReport& report)
{
    Json doc = schema_document();
    doc["scope"] = scope_name(report.scope);
    doc["ok"] = report.ok();
    Json list = Json::array();
    for (const auto& c : report.checks)
        list.push_back({{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
    doc["checks"] = std::move(list);
    return doc;
}

}  // namespace rank_arrange
