#pragma once

#include "rank_arrange/budget.hpp"
#include "rank_arrange/finitefield.hpp"
#include "rank_arrange/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rank_arrange {

enum class VerifyScope { Fast, Full, Extended };

std::string scope_name(VerifyScope s);
std::optional<VerifyScope> parse_scope(const std::string& name);

struct VerifyCheck {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
    double seconds = 0;
};

struct VerifyReport {
    VerifyScope scope = VerifyScope::Fast;
    std::vector<VerifyCheck> checks;
    bool ok() const;
};

/// Reproduction suite against the embedded reference constants.
/// fast: m <= 5 pipelines and the bounds table; full adds r0(6), r0(7), q(5),
/// q_IE(5) and slice-pattern sampling; extended adds r0(8), q(6), q_IE(6).
/// Exceptions inside a check become failed entries.
VerifyReport run_verify(VerifyScope scope, std::uint64_t seed = 1, PointCountCache* cache = nullptr,
                        BudgetMeter* meter = nullptr);

Json verify_json(const VerifyReport& report);

}  // namespace rank_arrange
