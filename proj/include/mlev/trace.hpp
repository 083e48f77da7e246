#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mlev {

/// How a run ended. Fixed-budget levels end by exhausting their allocation,
/// so a tc-0 run that walks the whole schedule also reports budget-exhausted;
/// the run summary's censored flag separates that from a global-budget abort.
enum class TerminalStatus { TargetHit, Stagnated, BudgetExhausted };

std::string to_string(TerminalStatus s);
TerminalStatus status_from_string(const std::string& s);

/// One row per objective evaluation. For the elitist strategy the objective
/// column carries the parent value after selection; for the recombinant one
/// it carries the candidate's own value. sigma_star is NaN (empty in CSV)
/// unless the problem has a theoretical step-size reference.
struct EvalRecord {
    std::uint64_t eval_index; // 1-based, strictly increasing
    double objective;
    double sigma;
    double sigma_star;
    std::uint32_t level; // 1-based
    std::uint32_t dim;   // n at that level
};

struct RunTrace {
    std::vector<EvalRecord> records;
    TerminalStatus status = TerminalStatus::BudgetExhausted;

    void write_csv(const std::string& path) const;
    static RunTrace read_csv(const std::string& path);
};

} // namespace mlev
