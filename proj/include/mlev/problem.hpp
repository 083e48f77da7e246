#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mlev {

/// Ordered real control values on a 1-D grid. Radians in [0, 2pi) for
/// periodic (phase-shaping) problems, unitless otherwise.
using DecisionVector = std::vector<double>;

/// Counts objective calls; one per run, shared between levels and the trace.
class EvalCounter {
  public:
    void increment() { ++count_; }
    std::uint64_t count() const { return count_; }

  private:
    std::uint64_t count_ = 0;
};

/// Wraps every entry into [0, 2pi). Applied immediately after mutation for
/// periodic problems, and again after level-up interpolation.
void wrap_periodic(std::span<double> x);
DecisionVector wrap_periodic(DecisionVector x_copy);
double wrap_angle(double v);

/// A problem fixed at one dimensionality; counts every evaluation.
class ProblemInstance {
  public:
    using EvalFn = std::function<double(const DecisionVector&)>;

    ProblemInstance(std::size_t dim, bool periodic, EvalFn fn,
                    std::shared_ptr<EvalCounter> counter)
        : dim_(dim), periodic_(periodic), fn_(std::move(fn)), counter_(std::move(counter)) {}

    std::size_t dim() const { return dim_; }
    bool periodic() const { return periodic_; }

    double operator()(const DecisionVector& x) const {
        counter_->increment();
        return fn_(x);
    }

    const EvalCounter& counter() const { return *counter_; }

  private:
    std::size_t dim_;
    bool periodic_;
    EvalFn fn_;
    std::shared_ptr<EvalCounter> counter_;
};

/// A problem family instantiable at every grid size of a schedule.
class ProblemModel {
  public:
    virtual ~ProblemModel() = default;

    virtual std::string name() const = 0;
    virtual bool periodic() const = 0;

    /// Uniform initialization domain for the first level.
    virtual double init_lo() const = 0;
    virtual double init_hi() const = 0;

    virtual double default_sigma0() const = 0;

    /// True when the theoretically optimal step-size reference applies
    /// (quadratic model); enables the sigma* trace column.
    virtual bool has_sigma_star() const { return false; }

    virtual ProblemInstance instantiate(std::size_t n,
                                        std::shared_ptr<EvalCounter> counter) const = 0;
};

} // namespace mlev
