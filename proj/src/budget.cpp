#include "rank_arrange/budget.hpp"

#include "rank_arrange/errors.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace rank_arrange {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view key, std::string_view text)
{
    const std::string owned(text);
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size() || !(v > 0))
        throw Error("budget override '" + std::string(key) + "' needs a positive number, got '" + owned + "'");
    return v;
}

}  // namespace

RunBudget RunBudget::from_env()
{
    RunBudget b;
    if (const char* env = std::getenv("RANK_ARRANGE_BUDGET"); env != nullptr) b.apply_overrides(env);
    return b;
}

void RunBudget::apply_overrides(std::string_view overrides)
{
    while (!overrides.empty()) {
        const auto comma = overrides.find(',');
        const std::string_view item = trim(overrides.substr(0, comma));
        overrides = comma == std::string_view::npos ? std::string_view{} : overrides.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw Error("budget override '" + std::string(item) + "' lacks '='");
        const std::string_view key = trim(item.substr(0, eq));
        const double v = parse_number(key, trim(item.substr(eq + 1)));
        if (key == "lps")
            max_lps = static_cast<std::uint64_t>(v);
        else if (key == "points")
            max_point_tests = static_cast<std::uint64_t>(v);
        else if (key == "chambers")
            max_chambers = static_cast<std::uint64_t>(v);
        else if (key == "seconds")
            max_seconds = v;
        else if (key == "threads")
            threads = static_cast<int>(v);
        else
            throw Error("unknown budget key '" + std::string(key) + "'");
    }
}

BudgetMeter::BudgetMeter(RunBudget budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

void BudgetMeter::charge_lps(std::uint64_t n)
{
    const auto used = lps_.fetch_add(n, std::memory_order_relaxed) + n;
    if (used > budget_.max_lps)
        throw BudgetExceeded("LP budget of " + std::to_string(budget_.max_lps) + " exceeded");
    if ((used & 0xff) == 0) check_clock();
}

void BudgetMeter::charge_points(std::uint64_t n)
{
    const auto used = points_.fetch_add(n, std::memory_order_relaxed) + n;
    if (used > budget_.max_point_tests)
        throw BudgetExceeded("point-test budget of " + std::to_string(budget_.max_point_tests) + " exceeded");
    check_clock();
}

void BudgetMeter::check_chambers(std::uint64_t current) const
{
    if (current > budget_.max_chambers)
        throw BudgetExceeded("chamber budget of " + std::to_string(budget_.max_chambers) + " exceeded");
}

void BudgetMeter::check_clock() const
{
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed.count() > budget_.max_seconds)
        throw BudgetExceeded("wall-clock budget of " + std::to_string(budget_.max_seconds) + " s exceeded");
}

int worker_count(const RunBudget& budget)
{
    return budget.threads > 0 ? budget.threads : omp_get_max_threads();
}

}  // namespace rank_arrange
