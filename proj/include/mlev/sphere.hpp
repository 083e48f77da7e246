#pragma once

#include "mlev/problem.hpp"

#include <span>

namespace mlev {

/// Sum of squares. Plain sequential summation: duplicating every entry
/// doubles the value exactly, which the level-up tests rely on.
double sphere_eval(std::span<const double> x);

/// The quadratic model placed on a grid; well-defined at every dimension.
class SphereModel final : public ProblemModel {
  public:
    std::string name() const override { return "sphere"; }
    bool periodic() const override { return false; }
    double init_lo() const override { return -5.0; }
    double init_hi() const override { return 5.0; }
    double default_sigma0() const override { return 10.0 / 3.0; }
    bool has_sigma_star() const override { return true; }

    ProblemInstance instantiate(std::size_t n,
                                std::shared_ptr<EvalCounter> counter) const override;
};

} // namespace mlev
