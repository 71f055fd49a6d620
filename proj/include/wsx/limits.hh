#ifndef WSX_LIMITS_HH
#define WSX_LIMITS_HH 1

#include <cstdint>

namespace wsx
{
    /// Caps applied to every exhaustive search. `workers` only changes how work is
    /// split, never the order or content of results.
    struct SearchLimits
    {
        std::uint64_t node_budget = 10'000'000;
        unsigned workers = 1;
    };

    /// Throws SearchBudgetExceeded when `cost` exceeds the budget.
    void require_budget(const SearchLimits & limits, std::uint64_t cost, const char * what);

    /// base^exp, saturating at UINT64_MAX.
    auto saturating_pow(std::uint64_t base, std::uint64_t exp) -> std::uint64_t;
    auto saturating_mul(std::uint64_t a, std::uint64_t b) -> std::uint64_t;
}

#endif
