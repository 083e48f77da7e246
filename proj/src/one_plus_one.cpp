#include "mlev/one_plus_one.hpp"

#include "mlev/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace mlev {

SuccessWindow::SuccessWindow(std::size_t capacity) : buf_(capacity, 0) {}

void SuccessWindow::push(bool success) {
    if (size_ == buf_.size()) {
        successes_ -= buf_[head_];
    } else {
        ++size_;
    }
    buf_[head_] = success ? 1 : 0;
    successes_ += buf_[head_];
    head_ = (head_ + 1) % buf_.size();
}

double SuccessWindow::success_rate() const {
    if (size_ == 0) return 0.0;
    return static_cast<double>(successes_) / static_cast<double>(size_);
}

double one_fifth_update(double sigma, double success_rate) {
    if (success_rate > 0.2) return sigma / kOneFifthC;
    if (success_rate < 0.2) return sigma * kOneFifthC;
    return sigma;
}

bool OnePlusOneState::seeded() const { return !std::isnan(best_f); }

OnePlusOneState OnePlusOneState::make(DecisionVector x0, double sigma0) {
    OnePlusOneState s;
    const std::size_t n = x0.size();
    s.x = std::move(x0);
    s.sigma = sigma0;
    s.best_f = std::numeric_limits<double>::quiet_NaN();
    s.history = SuccessWindow(10 * n);
    s.trial_.resize(n);
    return s;
}

double evaluate_seed(OnePlusOneState& state, const ProblemInstance& problem) {
    const double f = problem(state.x);
    if (!std::isfinite(f)) throw EvaluationError("non-finite objective value at seed point");
    state.best_f = f;
    return f;
}

OneStepResult one_plus_one_step(OnePlusOneState& state, const ProblemInstance& problem,
                                Rng& rng) {
    const std::size_t n = state.dim();
    DecisionVector& trial = state.trial_;
    trial.resize(n);

    const double sigma_used = state.sigma;
    for (std::size_t i = 0; i < n; ++i) trial[i] = state.x[i] + sigma_used * rng.normal();
    if (problem.periodic()) wrap_periodic(trial);

    const double f = problem(trial);
    if (!std::isfinite(f))
        throw EvaluationError("non-finite objective value from mutation at n=" +
                              std::to_string(n));

    const bool accepted = f <= state.best_f;
    if (accepted) {
        std::swap(state.x, trial);
        state.best_f = f;
    }
    state.history.push(accepted);

    if (++state.mutations_since_adjust >= n) {
        state.sigma = one_fifth_update(state.sigma, state.history.success_rate());
        state.mutations_since_adjust = 0;
    }
    return {f, state.best_f, sigma_used, accepted};
}

} // namespace mlev
