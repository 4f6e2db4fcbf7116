#include "rank_arrange/bounds.hpp"
#include "rank_arrange/errors.hpp"
#include "rank_arrange/io.hpp"
#include "rank_arrange/reference.hpp"
#include "rank_arrange/unfolding.hpp"
#include "rank_arrange/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>

using namespace rank_arrange;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Options {
    int threads = 0;
    std::uint64_t seed = 1;
    bool extended = false;
    std::string counts_cache;
    std::size_t m = 0;
    std::size_t n = 0;
    std::string family;
    std::string config;
    std::string method;
    std::string format = "json";
    std::string scope;
    std::size_t max_m = 10;
};

class UsageError : public Error {
public:
    using Error::Error;
};

void emit(const Json& doc) { std::cout << doc.dump() << '\n'; }

Family require_family(const std::string& name)
{
    const auto f = parse_family(name);
    if (!f) throw UsageError("unknown family '" + name + "'");
    return *f;
}

void require(bool cond, const std::string& message)
{
    if (!cond) throw UsageError(message);
}

Arrangement family_arrangement(Family f, std::size_t m)
{
    switch (f) {
    case Family::Braid: return braid(m);
    case Family::Mid: return mid_hyperplane(m);
    case Family::MidQuadruples: return mid_quadruples(m);
    case Family::Braid0: return braid_restricted(m);
    case Family::AllSubset0: return all_subset_restricted(m);
    case Family::AllSubset0UnionBraid0: return arrangement_union(all_subset_restricted(m), braid_restricted(m));
    default: throw UsageError("family needs --config");
    }
}

Arrangement selected_arrangement(const Options& o)
{
    if (!o.config.empty()) return unfolding_arrangement(read_config_file(o.config));
    require(!o.family.empty() && o.m > 0, "give --config, or --family with --m");
    return family_arrangement(require_family(o.family), o.m);
}

ObjectConfig selected_config(const Options& o)
{
    if (!o.config.empty()) return read_config_file(o.config);
    require(o.m > 0 && o.n > 0, "give --config, or --m and --n for a sampled configuration");
    GenericConfigSampler sampler(o.seed);
    return sampler.sample(o.m, o.n);
}

struct Context {
    Options opt;
    std::unique_ptr<PointCountCache> cache;
    std::unique_ptr<BudgetMeter> meter;
};

int run_charpoly(Context& ctx)
{
    const Options& o = ctx.opt;
    require(o.m >= 2, "--m is required");
    const Family f = require_family(o.family.empty() ? "mid" : o.family);
    const auto& ref = reference_data();
    if (f == Family::Mid && ref.chi_mid.count(o.m) && !o.extended) {
        CharPolyResult r;
        r.family = f;
        r.m = o.m;
        r.poly = ref.chi_mid.at(o.m).value;
        Json doc = charpoly_json(r);
        doc["verified"] = nullptr;
        doc["source"] = "reference";
        emit(doc);
        return 0;
    }
    Json doc = charpoly_json(charpoly(f, o.m, {}, ctx.cache.get(), ctx.meter.get()));
    doc["source"] = "finite-field";
    emit(doc);
    return doc["verified"].get<bool>() ? 0 : kExitMismatch;
}

int run_chambers(Context& ctx)
{
    const Arrangement a = selected_arrangement(ctx.opt);
    const auto chambers = enumerate_chambers(a, nullptr, ctx.meter.get());
    Json doc = chambers_json(a, chambers);
    if (ctx.opt.format == "summary") doc.erase("chambers");
    emit(doc);
    return 0;
}

int run_arrangement(Context& ctx)
{
    emit(arrangement_json(selected_arrangement(ctx.opt)));
    return 0;
}

int run_pattern(Context& ctx)
{
    const ObjectConfig config = selected_config(ctx.opt);
    const std::string method = ctx.opt.method.empty() ? "arrangement" : ctx.opt.method;
    RankingPattern p;
    if (method == "arrangement")
        p = admissible_rankings(config, ctx.meter.get());
    else if (method == "sweep")
        p = pattern_1d(config);
    else if (method == "slice")
        p = braid_slice_pattern(v_map(config), config.m(), ctx.meter.get());
    else
        throw UsageError("--method must be arrangement, sweep or slice");
    Json doc = pattern_json(p);
    doc["m"] = config.m();
    doc["n"] = config.n();
    doc["method"] = method;
    emit(doc);
    return 0;
}

int run_r0(Context& ctx)
{
    const Options& o = ctx.opt;
    require(o.m >= 3, "--m >= 3 is required");
    const std::string method = o.method.empty() ? "charpoly" : o.method;
    BigInt value;
    if (method == "charpoly") {
        if (o.m > 8 && !reference_data().chi_mid.count(o.m)) throw BudgetExceeded("r0 beyond m = 10 is out of reach");
        if (o.m == 8 && !o.extended) throw BudgetExceeded("r0(8) by characteristic polynomial needs --extended");
        value = r0_from_charpoly(o.m, ctx.cache.get(), ctx.meter.get());
    } else if (method == "enumerate") {
        if (o.m >= 8 && !o.extended) throw BudgetExceeded("r0 enumeration for m >= 8 needs --extended");
        value = r0_enumerate(o.m, ctx.meter.get());
    } else {
        throw UsageError("--method must be enumerate or charpoly");
    }
    Json doc = schema_document();
    doc["m"] = o.m;
    doc["r0"] = value.get_str();
    doc["method"] = method;
    emit(doc);
    return 0;
}

int run_q(Context& ctx)
{
    const Options& o = ctx.opt;
    require(o.m >= 3, "--m >= 3 is required");
    const std::string method = o.method.empty() ? "charpoly" : o.method;
    Json doc = schema_document();
    doc["m"] = o.m;
    if (method == "charpoly") {
        if (o.m >= 7 && !o.extended) throw BudgetExceeded("q(m) for m >= 7 needs --extended");
        doc["q"] = q_from_charpoly(o.m, ctx.cache.get(), ctx.meter.get()).get_str();
    } else if (method == "enumerate") {
        if (o.m >= 7 && !o.extended) throw BudgetExceeded("q enumeration for m >= 7 needs --extended");
        const CodimOneCensus c = q_enumerate(o.m, o.m <= 5, ctx.meter.get());
        doc["q"] = c.q.get_str();
        doc["chambers"] = c.chambers;
        doc["two_sided"] = c.two_sided;
        doc["one_positive"] = c.one_positive;
        doc["one_negative"] = c.one_negative;
        if (o.m <= 5) doc["distinct_slice_patterns"] = c.distinct_slice_patterns;
    } else {
        throw UsageError("--method must be enumerate or charpoly");
    }
    doc["method"] = method;
    emit(doc);
    return 0;
}

int run_qie(Context& ctx)
{
    const Options& o = ctx.opt;
    require(o.m >= 3, "--m >= 3 is required");
    if (o.m >= 7 && !o.extended) throw BudgetExceeded("q_IE bound for m >= 7 needs --extended");
    const QieBound b = q_ie_upper(o.m, ctx.cache.get(), ctx.meter.get());
    Json doc = schema_document();
    doc["m"] = o.m;
    doc["q_ie_upper"] = b.value.get_str();
    doc["status"] = b.exact ? "exact" : "upper bound only";
    emit(doc);
    return 0;
}

int run_bounds(Context& ctx)
{
    const Options& o = ctx.opt;
    require(o.max_m >= 4 && o.max_m <= 12, "--max-m must lie in 4..12");
    const auto rows = bounds_table(o.max_m);
    if (o.format == "csv")
        std::cout << bounds_csv(rows);
    else if (o.format == "json")
        emit(bounds_json(rows));
    else
        throw UsageError("--format must be json or csv");
    return 0;
}

int run_poset_check(Context& ctx)
{
    const ObjectConfig config = selected_config(ctx.opt);
    const PosetCheck pc = verify_poset_isomorphism(config);
    Json doc = schema_document();
    doc["m"] = config.m();
    doc["n"] = config.n();
    doc["ok"] = pc.ok;
    doc["poset_size"] = pc.poset_size;
    doc["partition_count"] = pc.partition_count;
    if (!pc.ok) doc["witness"] = pc.witness;
    emit(doc);
    return pc.ok ? 0 : kExitMismatch;
}

int run_sample(Context& ctx)
{
    const Options& o = ctx.opt;
    require(o.m >= 2 && o.n >= 1, "--m and --n are required");
    GenericConfigSampler sampler(o.seed);
    emit(config_json(sampler.sample(o.m, o.n)));
    return 0;
}

int run_verify_cmd(Context& ctx)
{
    std::string name = ctx.opt.scope.empty() ? (ctx.opt.extended ? "extended" : "fast") : ctx.opt.scope;
    const auto scope = parse_scope(name);
    if (!scope) throw UsageError("--scope must be fast, full or extended");
    const VerifyReport report = run_verify(*scope, ctx.opt.seed, ctx.cache.get(), ctx.meter.get());
    emit(verify_json(report));
    return report.ok() ? 0 : kExitMismatch;
}

void error_json(const std::string& kind, const std::string& message)
{
    Json doc = schema_document();
    doc["error"] = kind;
    doc["message"] = message;
    std::cerr << doc.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact ranking-pattern and hyperplane-arrangement computations"};
    app.require_subcommand(1);
    app.fallthrough();
    Context ctx;
    Options& o = ctx.opt;
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", o.seed, "Seed for sampled configurations");
    app.add_flag("--extended", o.extended, "Allow computations with no runtime promise");
    app.add_option("--counts-cache", o.counts_cache, "TSV cache of finite-field point counts");

    auto add_m = [&](CLI::App* s) { return s->add_option("--m", o.m, "Number of objects"); };
    auto add_shape = [&](CLI::App* s) {
        add_m(s);
        s->add_option("--n", o.n, "Dimension of the object space");
        s->add_option("--config", o.config, "Configuration JSON file");
    };

    std::string selected;
    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&selected, name] { selected = name; });
        return s;
    };

    CLI::App* cp = sub("charpoly", "Characteristic polynomial by the finite field method");
    add_m(cp)->required();
    cp->add_option("--family", o.family, "mid, braid, braid0, allsubset0, allsubset0_union_braid0");
    CLI::App* ch = sub("chambers", "Enumerate chambers with witnesses");
    add_shape(ch);
    ch->add_option("--family", o.family, "Arrangement family");
    ch->add_option("--format", o.format, "json or summary");
    CLI::App* ar = sub("arrangement", "Print an arrangement");
    add_shape(ar);
    ar->add_option("--family", o.family, "Arrangement family");
    CLI::App* pa = sub("pattern", "Ranking pattern of a configuration");
    add_shape(pa);
    pa->add_option("--method", o.method, "arrangement, sweep (n = 1) or slice (n = m-2)");
    CLI::App* r0 = sub("r0", "Number of one-dimensional ranking patterns");
    add_m(r0)->required();
    r0->add_option("--method", o.method, "charpoly or enumerate");
    CLI::App* q = sub("q", "Number of codimension-one ranking patterns");
    add_m(q)->required();
    q->add_option("--method", o.method, "charpoly or enumerate");
    CLI::App* qie = sub("qie-upper", "Upper bound on codimension-one patterns up to relabeling");
    add_m(qie)->required();
    CLI::App* bo = sub("bounds", "Bounds table");
    bo->add_option("--max-m", o.max_m, "Last row");
    bo->add_option("--format", o.format, "json or csv");
    CLI::App* po = sub("poset-check", "Intersection poset versus the truncated partition lattice");
    add_shape(po);
    CLI::App* sa = sub("sample", "Sample a generic configuration");
    add_shape(sa);
    CLI::App* ve = sub("verify", "Reproduction suite");
    ve->add_option("--scope", o.scope, "fast, full or extended");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        RunBudget budget = RunBudget::from_env();
        if (o.threads > 0) budget.threads = o.threads;
        ctx.meter = std::make_unique<BudgetMeter>(budget);
        if (!o.counts_cache.empty()) ctx.cache = std::make_unique<PointCountCache>(o.counts_cache);

        if (selected == "charpoly") return run_charpoly(ctx);
        if (selected == "chambers") return run_chambers(ctx);
        if (selected == "arrangement") return run_arrangement(ctx);
        if (selected == "pattern") return run_pattern(ctx);
        if (selected == "r0") return run_r0(ctx);
        if (selected == "q") return run_q(ctx);
        if (selected == "qie-upper") return run_qie(ctx);
        if (selected == "bounds") return run_bounds(ctx);
        if (selected == "poset-check") return run_poset_check(ctx);
        if (selected == "sample") return run_sample(ctx);
        if (selected == "verify") return run_verify_cmd(ctx);
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        error_json("budget", e.what());
        return kExitBudget;
    } catch (const ConsistencyFailure& e) {
        error_json("mismatch", e.what());
        return kExitMismatch;
    } catch (const Error& e) {
        error_json("input", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        error_json("internal", e.what());
        return kExitMismatch;
    }
}
