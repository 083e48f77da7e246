#pragma once

#include <stdexcept>
#include <string>

namespace mlev {

/// Invalid experiment configuration (bad keys, inconsistent dimensions, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An objective call returned a non-finite value, or could not be performed.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A strategy parameter degenerated numerically (e.g. an individual
/// step-size underflowed to zero).
struct NumericalDegeneracyError : std::runtime_error {
    explicit NumericalDegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Upscale operator preconditions violated (downscale request, too few points).
struct InterpolationError : std::invalid_argument {
    explicit InterpolationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Pixel grid does not embed into the simulation grid.
struct GridMismatchError : std::invalid_argument {
    explicit GridMismatchError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct InvalidDimensionError : std::invalid_argument {
    explicit InvalidDimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct StatsError : std::invalid_argument {
    explicit StatsError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace mlev
