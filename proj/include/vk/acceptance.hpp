#pragma once

#include <functional>
#include <string>
#include <vector>

// End-to-end checks of the analytic limits the library must reproduce.
namespace vk::acceptance {

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    std::string detail;
    double seconds{0.0};
    double time_limit{0.0};
};

inline constexpr int criterion_count = 11;

/// Runs criterion `id` (1..11). Exceeding the time limit fails it.
CriterionResult run_criterion(int id);

/// All criteria in order; `on_result` sees each one as it finishes.
std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 transient relaxation (12.3 s / 60 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace vk::acceptance
