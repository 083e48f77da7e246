#include "mlev/termination.hpp"

#include "mlev/errors.hpp"
#include "mlev/sep_cma.hpp"

#include <algorithm>
#include <cmath>

namespace mlev {

std::string to_string(StrategyKind s) {
    return s == StrategyKind::OnePlusOne ? "1p1" : "sepC";
}

StrategyKind strategy_from_string(const std::string& s) {
    if (s == "1p1") return StrategyKind::OnePlusOne;
    if (s == "sepC") return StrategyKind::SepCma;
    throw ConfigError("unknown strategy: " + s);
}

std::size_t window_size(StrategyKind strategy, std::size_t n, std::size_t lambda) {
    if (n < 2) throw InvalidDimensionError("window_size: n must be >= 2");
    const double log_n = std::log10(static_cast<double>(n));
    const double w = strategy == StrategyKind::OnePlusOne
                         ? 100.0 * log_n
                         : static_cast<double>(lambda) * log_n;
    return static_cast<std::size_t>(std::ceil(w));
}

TerminationCriterion TerminationCriterion::fixed_budget(std::uint64_t per_level,
                                                        BudgetUnit unit) {
    if (per_level == 0) throw ConfigError("fixed budget per level must be positive");
    TerminationCriterion tc;
    tc.kind_ = Kind::FixedBudget;
    tc.budget_ = per_level;
    tc.unit_ = unit;
    return tc;
}

TerminationCriterion TerminationCriterion::fixed_target(double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("fixed target epsilon must be positive");
    TerminationCriterion tc;
    tc.kind_ = Kind::FixedTarget;
    tc.epsilon_ = epsilon;
    return tc;
}

TerminationCriterion TerminationCriterion::stagnation(double theta, WindowRule rule) {
    if (!(theta > 0.0)) throw ConfigError("stagnation threshold theta must be positive");
    if (!rule) throw ConfigError("stagnation criterion needs a window rule");
    TerminationCriterion tc;
    tc.kind_ = Kind::Stagnation;
    tc.theta_ = theta;
    tc.window_rule_ = std::move(rule);
    return tc;
}

TerminationCriterion TerminationCriterion::stagnation_for(StrategyKind strategy, double theta) {
    return stagnation(theta, [strategy](std::size_t n) {
        const std::size_t lambda =
            strategy == StrategyKind::SepCma ? population_sizes(n).lambda : 0;
        return window_size(strategy, n, lambda);
    });
}

std::size_t TerminationCriterion::window_for(std::size_t n) const {
    if (kind_ != Kind::Stagnation) return 1;
    const std::size_t w = window_rule_(n);
    if (w < 2) throw ConfigError("stagnation window must be >= 2");
    return w;
}

std::string TerminationCriterion::describe() const {
    switch (kind_) {
    case Kind::FixedBudget: return "tc-0 (budget " + std::to_string(budget_) + " per level)";
    case Kind::FixedTarget: return "tc-1 (epsilon " + std::to_string(epsilon_) + ")";
    case Kind::Stagnation: return "tc-2 (theta " + std::to_string(theta_) + ")";
    }
    return "?";
}

bool check_termination(std::span<const double> recent_values, const TerminationCriterion& tc,
                       std::uint64_t units_this_level, std::size_t n_level) {
    switch (tc.kind()) {
    case TerminationCriterion::Kind::FixedBudget:
        return units_this_level >= tc.budget();
    case TerminationCriterion::Kind::FixedTarget:
        return !recent_values.empty() && recent_values.back() <= tc.epsilon();
    case TerminationCriterion::Kind::Stagnation: {
        const std::size_t w = tc.window_for(n_level);
        if (recent_values.size() < w) return false;
        const auto [lo, hi] = std::minmax_element(recent_values.begin(), recent_values.end());
        return *hi - *lo <= tc.theta();
    }
    }
    return false;
}

} // namespace mlev
