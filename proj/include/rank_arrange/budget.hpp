#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string_view>

namespace rank_arrange {

/// Resource ceilings for long-running operations.
///
/// Defaults can be overridden by the RANK_ARRANGE_BUDGET environment variable,
/// a comma-separated list of `key=value` pairs with keys `lps`, `points`,
/// `chambers`, `seconds` and `threads`, e.g. `lps=2e6,seconds=120`.
struct RunBudget {
    std::uint64_t max_lps = 5'000'000;
    std::uint64_t max_point_tests = 1'000'000'000;
    std::uint64_t max_chambers = 1'000'000;
    double max_seconds = 3600.0;
    int threads = 0;  // 0 = machine parallelism

    static RunBudget defaults() { return {}; }
    /// Defaults with RANK_ARRANGE_BUDGET applied.
    static RunBudget from_env();
    /// Applies a `key=value,...` override string; throws Error on malformed input.
    void apply_overrides(std::string_view overrides);
};

/// Thread-safe meter charged cooperatively by long loops. Every charge checks
/// the wall clock as well; exceeding any ceiling throws BudgetExceeded.
class BudgetMeter {
public:
    explicit BudgetMeter(RunBudget budget = RunBudget::from_env());

    void charge_lps(std::uint64_t n = 1);
    void charge_points(std::uint64_t n);
    void check_chambers(std::uint64_t current) const;
    void check_clock() const;

    const RunBudget& budget() const { return budget_; }
    std::uint64_t lps_used() const { return lps_.load(std::memory_order_relaxed); }
    std::uint64_t points_used() const { return points_.load(std::memory_order_relaxed); }

private:
    RunBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::atomic<std::uint64_t> lps_{0};
    std::atomic<std::uint64_t> points_{0};
};

/// Worker count to use for OpenMP regions under this budget.
int worker_count(const RunBudget& budget);

}  // namespace rank_arrange
