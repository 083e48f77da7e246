#include "mlev/problem.hpp"

#include <cmath>
#include <numbers>

namespace mlev {

double wrap_angle(double v) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = v - two_pi * std::floor(v / two_pi);
    if (w >= two_pi) w = 0.0; // guard against rounding at the seam
    return w;
}

void wrap_periodic(std::span<double> x) {
    for (auto& v : x) v = wrap_angle(v);
}

DecisionVector wrap_periodic(DecisionVector x_copy) {
    wrap_periodic(std::span<double>(x_copy));
    return x_copy;
}

} // namespace mlev
