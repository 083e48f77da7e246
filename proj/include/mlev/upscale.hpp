#pragma once

#include "mlev/problem.hpp"

#include <span>
#include <string>

namespace mlev {

/// Interpolation operator used when lifting decision variables and
/// individual step-sizes onto the next, finer grid.
enum class UpscaleOp { Nearest, Linear, Cubic };

std::string to_string(UpscaleOp op);
UpscaleOp upscale_op_from_string(const std::string& s);

/// All three operators share the grid mapping: input index i sits at
/// i/(n-1) of the unit interval, output index j at j/(m-1). Endpoints are
/// therefore fixed exactly, and upscaling to the same size is the identity.

/// Nearest-neighbor; midpoint ties break toward the lower index.
DecisionVector upscale_nearest(std::span<const double> v, std::size_t m);

/// Piecewise linear between bracketing grid points. Needs >= 2 points.
DecisionVector upscale_linear(std::span<const double> v, std::size_t m);

/// Shape-preserving piecewise cubic (Fritsch-Carlson slopes): monotone data
/// stays monotone and output never leaves the local data range.
/// Needs >= 4 points.
DecisionVector upscale_cubic(std::span<const double> v, std::size_t m);

DecisionVector upscale(std::span<const double> v, std::size_t m, UpscaleOp op);

} // namespace mlev
