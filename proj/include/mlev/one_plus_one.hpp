#pragma once

#include "mlev/problem.hpp"
#include "mlev/rng.hpp"

#include <cstdint>
#include <vector>

namespace mlev {

/// Ring buffer of recent mutation outcomes; capacity 10*n at level n.
class SuccessWindow {
  public:
    explicit SuccessWindow(std::size_t capacity);

    void push(bool success);
    std::size_t size() const { return size_; }
    std::size_t capacity() const { return buf_.size(); }

    /// Fraction of successes over the filled part of the window.
    double success_rate() const;

  private:
    std::vector<std::uint8_t> buf_;
    std::size_t head_ = 0;
    std::size_t size_ = 0;
    std::size_t successes_ = 0;
};

/// Multiplicative step-size constant of the 1/5th success rule.
inline constexpr double kOneFifthC = 0.817;

/// sigma*c on low success, sigma/c on high success, unchanged at 1/5.
double one_fifth_update(double sigma, double success_rate);

struct OneStepResult {
    double candidate_f;
    double parent_f;   // after selection
    double sigma_used; // sigma that generated the offspring
    bool accepted;
};

/// Elitist single-child strategy state. best_f is NaN until the seed point
/// has been evaluated (evaluate_seed), and afterwards always equals the
/// objective value of x.
struct OnePlusOneState {
    DecisionVector x;
    double sigma = 0.0;
    double best_f = 0.0;
    SuccessWindow history{1};
    std::uint64_t mutations_since_adjust = 0;

    std::size_t dim() const { return x.size(); }
    bool seeded() const;

    static OnePlusOneState make(DecisionVector x0, double sigma0);

  private:
    DecisionVector trial_; // reused mutation buffer
    friend OneStepResult one_plus_one_step(OnePlusOneState&, const ProblemInstance&, Rng&);
};

/// Evaluates the (possibly upscaled) seed point; consumes one objective call.
double evaluate_seed(OnePlusOneState& state, const ProblemInstance& problem);

/// One mutation-selection cycle: x' = x + sigma*N(0,I) (wrapped for periodic
/// problems), offspring replaces the parent iff not worse; sigma is adjusted
/// every n mutations from the success rate over the window.
OneStepResult one_plus_one_step(OnePlusOneState& state, const ProblemInstance& problem,
                                Rng& rng);

} // namespace mlev
