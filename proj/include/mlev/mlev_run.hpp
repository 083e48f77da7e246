#pragma once

#include "mlev/one_plus_one.hpp"
#include "mlev/problem.hpp"
#include "mlev/schedule.hpp"
#include "mlev/sep_cma.hpp"
#include "mlev/termination.hpp"
#include "mlev/trace.hpp"
#include "mlev/upscale.hpp"

#include <cstdint>

namespace mlev {

/// Lifts the elitist state onto the doubled grid: decision vector upscaled
/// by the chosen operator, sigma divided by sqrt(2), success window cleared
/// at capacity 10*n_next. best_f becomes NaN until the seed is re-evaluated.
void level_up(OnePlusOneState& state, std::size_t n_next, UpscaleOp op, bool periodic);

/// Lifts the recombinant state: mean and individual step-sizes upscaled by
/// the same operator, evolution paths reset to zero, sigma divided by
/// sqrt(2), population sizes and learning constants recomputed.
void level_up(SepCmaState& state, std::size_t n_next, UpscaleOp op, bool periodic);

struct MlevOptions {
    double sigma0 = 1.0;
    std::uint64_t global_budget = 0; // 0: unbounded
    bool record_trace = true;
};

struct MlevResult {
    DecisionVector minimizer; // best evaluated point of the deepest level reached
    double final_f = 0.0;
    std::uint64_t total_evaluations = 0;
    std::vector<std::uint64_t> per_level_evaluations;
    RunTrace trace;
    TerminalStatus status = TerminalStatus::BudgetExhausted;
    bool aborted = false; // global budget ran out mid-schedule
};

/// Runs the multi-level scheme: random init at the first level, then per
/// level solve until the termination criterion fires, upscale, and repeat
/// until the final dimension completes or the global budget runs out.
/// A single-level schedule degenerates to a direct run.
MlevResult run_mlev(const ProblemModel& model, const LevelSchedule& schedule,
                    const TerminationCriterion& tc, StrategyKind strategy, UpscaleOp op,
                    std::uint64_t seed, const MlevOptions& opts);

} // namespace mlev
