#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace mlev {

enum class StrategyKind { OnePlusOne, SepCma };

std::string to_string(StrategyKind s);
StrategyKind strategy_from_string(const std::string& s);

/// How a fixed per-level budget is counted. Auto resolves to evaluations
/// for the elitist strategy and generations for the recombinant one.
enum class BudgetUnit { Evaluations, Generations, Auto };

/// Stagnation sliding-window size: ceil(100 log10 n) for the single-child
/// strategy, ceil(lambda log10 n) for the recombinant one.
std::size_t window_size(StrategyKind strategy, std::size_t n, std::size_t lambda);

/// Per-level termination: fixed budget (tc-0), fixed target (tc-1) or
/// stagnation of the selected-individual values (tc-2).
class TerminationCriterion {
  public:
    enum class Kind { FixedBudget, FixedTarget, Stagnation };
    using WindowRule = std::function<std::size_t(std::size_t)>;

    static TerminationCriterion fixed_budget(std::uint64_t per_level,
                                             BudgetUnit unit = BudgetUnit::Auto);
    static TerminationCriterion fixed_target(double epsilon);
    static TerminationCriterion stagnation(double theta, WindowRule rule);
    /// Stagnation with the default window rule of the given strategy.
    static TerminationCriterion stagnation_for(StrategyKind strategy, double theta);

    Kind kind() const { return kind_; }
    double epsilon() const { return epsilon_; }
    double theta() const { return theta_; }
    std::uint64_t budget() const { return budget_; }
    BudgetUnit unit() const { return unit_; }

    /// Window capacity at level dimension n; 1 for non-stagnation criteria
    /// (only the latest selected value is needed).
    std::size_t window_for(std::size_t n) const;

    std::string describe() const;

  private:
    TerminationCriterion() = default;
    Kind kind_ = Kind::FixedTarget;
    double epsilon_ = 0.0;
    double theta_ = 0.0;
    std::uint64_t budget_ = 0;
    BudgetUnit unit_ = BudgetUnit::Auto;
    WindowRule window_rule_;
};

/// True when the level is finished. `recent_values` holds the last selected
/// objective values, latest last; `units_this_level` counts evaluations or
/// generations according to the criterion's budget unit. An empty window is
/// never an error: the criterion is simply not ready.
bool check_termination(std::span<const double> recent_values, const TerminationCriterion& tc,
                       std::uint64_t units_this_level, std::size_t n_level);

} // namespace mlev
