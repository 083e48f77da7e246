#include "mlev/mlev_run.hpp"

#include "mlev/errors.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace mlev {

namespace {

void check_doubling(std::size_t n_cur, std::size_t n_next) {
    if (n_next != LevelSchedule::kRatio * n_cur)
        throw InvalidDimensionError("level_up: expected doubling " + std::to_string(n_cur) +
                                    " -> " + std::to_string(2 * n_cur) + ", got " +
                                    std::to_string(n_next));
}

double level_sigma(double sigma, std::size_t n_cur, std::size_t n_next) {
    return sigma / std::sqrt(static_cast<double>(n_next) / static_cast<double>(n_cur));
}

} // namespace

void level_up(OnePlusOneState& state, std::size_t n_next, UpscaleOp op, bool periodic) {
    const std::size_t n_cur = state.dim();
    check_doubling(n_cur, n_next);
    DecisionVector lifted = upscale(state.x, n_next, op);
    if (periodic) wrap_periodic(std::span<double>(lifted));
    const double sigma = level_sigma(state.sigma, n_cur, n_next);
    state = OnePlusOneState::make(std::move(lifted), sigma);
}

void level_up(SepCmaState& state, std::size_t n_next, UpscaleOp op, bool periodic) {
    const std::size_t n_cur = state.dim();
    check_doubling(n_cur, n_next);
    DecisionVector mean = upscale(state.mean, n_next, op);
    if (periodic) wrap_periodic(std::span<double>(mean));
    state.mean = std::move(mean);
    state.d = upscale(state.d, n_next, op);
    state.p_s.assign(n_next, 0.0);
    state.p_c.assign(n_next, 0.0);
    state.sigma = level_sigma(state.sigma, n_cur, n_next);
    state.generation = 0;
    state.configure_for_dimension();
}

namespace {

/// Selected-value window with the capacity demanded by the criterion.
class LevelWindow {
  public:
    explicit LevelWindow(std::size_t capacity) : cap_(capacity) {}
    void push(double v) {
        values_.push_back(v);
        if (values_.size() > cap_) values_.erase(values_.begin());
    }
    std::span<const double> view() const { return values_; }

  private:
    std::size_t cap_;
    std::vector<double> values_;
};

} // namespace

MlevResult run_mlev(const ProblemModel& model, const LevelSchedule& schedule,
                    const TerminationCriterion& tc, StrategyKind strategy, UpscaleOp op,
                    std::uint64_t seed, const MlevOptions& opts) {
    const auto dims = schedule.dims();
    auto counter = std::make_shared<EvalCounter>();
    Rng rng(seed);

    MlevResult result;
    const bool sigma_star = model.has_sigma_star();
    const bool periodic = model.periodic();
    const bool count_generations =
        tc.kind() == TerminationCriterion::Kind::FixedBudget &&
        (tc.unit() == BudgetUnit::Generations ||
         (tc.unit() == BudgetUnit::Auto && strategy == StrategyKind::SepCma));

    auto record = [&](std::uint64_t index, double objective, double sigma, std::uint32_t level,
                      std::uint32_t dim) {
        if (!opts.record_trace) return;
        const double sstar = sigma_star
                                 ? optimal_sphere_sigma(std::max(objective, 0.0), dim)
                                 : std::numeric_limits<double>::quiet_NaN();
        result.trace.records.push_back({index, objective, sigma, sstar, level, dim});
    };
    auto budget_exhausted = [&] {
        return opts.global_budget != 0 && counter->count() >= opts.global_budget;
    };

    std::optional<OnePlusOneState> one;
    std::optional<SepCmaState> cma;

    DecisionVector best_x;
    double best_f = std::numeric_limits<double>::infinity();
    DecisionVector prev_level_x; // fallback when a level aborts before evaluating
    double prev_level_f = std::numeric_limits<double>::infinity();
    bool aborted = false;

    try {
        for (std::size_t li = 0; li < dims.size(); ++li) {
            const std::size_t n = dims[li];
            const auto level = static_cast<std::uint32_t>(li + 1);
            const ProblemInstance problem = model.instantiate(n, counter);
            const std::uint64_t level_start = counter->count();

            if (li == 0) {
                DecisionVector x0(n);
                for (auto& v : x0) v = rng.uniform(model.init_lo(), model.init_hi());
                if (periodic) wrap_periodic(std::span<double>(x0));
                if (strategy == StrategyKind::OnePlusOne)
                    one = OnePlusOneState::make(std::move(x0), opts.sigma0);
                else
                    cma = SepCmaState::make(std::move(x0), opts.sigma0);
            } else if (one) {
                level_up(*one, n, op, periodic);
            } else {
                cma->mean = best_x; // carry the level minimizer as the next seed
                level_up(*cma, n, op, periodic);
            }

            LevelWindow window(tc.window_for(n));
            std::uint64_t generations = 0;
            prev_level_x = std::move(best_x);
            prev_level_f = best_f;
            best_f = std::numeric_limits<double>::infinity();
            best_x.clear();
            bool level_done = false;

            if (one) {
                if (budget_exhausted()) {
                    aborted = true;
                } else {
                    const double f0 = evaluate_seed(*one, problem);
                    record(counter->count(), f0, one->sigma, level, static_cast<std::uint32_t>(n));
                    best_f = f0;
                    best_x = one->x;
                    window.push(f0);
                    level_done = check_termination(window.view(), tc,
                                                   counter->count() - level_start, n);
                }
            }

            while (!level_done && !aborted) {
                if (budget_exhausted()) {
                    aborted = true;
                    break;
                }
                if (one) {
                    const OneStepResult r = one_plus_one_step(*one, problem, rng);
                    record(counter->count(), r.parent_f, r.sigma_used, level,
                           static_cast<std::uint32_t>(n));
                    if (r.parent_f <= best_f) {
                        best_f = r.parent_f;
                        best_x = one->x;
                    }
                    window.push(r.parent_f);
                } else {
                    const SepCmaGenResult r = sep_cma_step(*cma, problem, rng);
                    const std::uint64_t base = counter->count() - r.candidate_f.size();
                    for (std::size_t k = 0; k < r.candidate_f.size(); ++k)
                        record(base + k + 1, r.candidate_f[k], r.sigma_used, level,
                               static_cast<std::uint32_t>(n));
                    ++generations;
                    if (r.gen_best_f < best_f) {
                        best_f = r.gen_best_f;
                        best_x = r.gen_best_x;
                    }
                    window.push(r.gen_best_f);
                }
                const std::uint64_t units =
                    count_generations ? generations : counter->count() - level_start;
                level_done = check_termination(window.view(), tc, units, n);
            }

            result.per_level_evaluations.push_back(counter->count() - level_start);
            if (aborted) break;
        }
    } catch (const EvaluationError& e) {
        throw EvaluationError(std::string(e.what()) + " [" + model.name() + ", seed " +
                              std::to_string(seed) + ", evaluation " +
                              std::to_string(counter->count()) + "]");
    }

    if (aborted && best_x.empty()) {
        best_x = std::move(prev_level_x);
        best_f = prev_level_f;
    }

    if (aborted)
        result.status = TerminalStatus::BudgetExhausted;
    else if (tc.kind() == TerminationCriterion::Kind::FixedTarget)
        result.status = TerminalStatus::TargetHit;
    else if (tc.kind() == TerminationCriterion::Kind::Stagnation)
        result.status = TerminalStatus::Stagnated;
    else
        result.status = TerminalStatus::BudgetExhausted;

    result.minimizer = std::move(best_x);
    result.final_f = best_f;
    result.total_evaluations = counter->count();
    result.trace.status = result.status;
    result.aborted = aborted;
    return result;
}

} // namespace mlev
