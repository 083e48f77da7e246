#include "mlev/upscale.hpp"

#include "mlev/errors.hpp"

#include <cmath>
#include <cstddef>

namespace mlev {

std::string to_string(UpscaleOp op) {
    switch (op) {
    case UpscaleOp::Nearest: return "U-1";
    case UpscaleOp::Linear: return "U-2";
    case UpscaleOp::Cubic: return "U-3";
    }
    return "?";
}

UpscaleOp upscale_op_from_string(const std::string& s) {
    if (s == "U-1" || s == "nearest") return UpscaleOp::Nearest;
    if (s == "U-2" || s == "linear") return UpscaleOp::Linear;
    if (s == "U-3" || s == "cubic") return UpscaleOp::Cubic;
    throw ConfigError("unknown upscale operator: " + s);
}

namespace {

void check_upscale(std::size_t n, std::size_t m, std::size_t min_points, const char* what) {
    if (n < min_points)
        throw InterpolationError(std::string(what) + ": needs at least " +
                                 std::to_string(min_points) + " grid points, got " +
                                 std::to_string(n));
    if (m < n)
        throw InterpolationError(std::string(what) + ": downscale unsupported (" +
                                 std::to_string(n) + " -> " + std::to_string(m) + ")");
}

// Position of output index j on the input index axis [0, n-1].
inline double map_index(std::size_t j, std::size_t n, std::size_t m) {
    return static_cast<double>(j) * static_cast<double>(n - 1) / static_cast<double>(m - 1);
}

} // namespace

DecisionVector upscale_nearest(std::span<const double> v, std::size_t m) {
    const std::size_t n = v.size();
    check_upscale(n, m, 1, "upscale_nearest");
    if (n == 1) return DecisionVector(m, v[0]);
    if (m == n) return DecisionVector(v.begin(), v.end());

    DecisionVector out(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double t = map_index(j, n, m);
        // round half toward the lower index
        auto i = static_cast<std::size_t>(std::ceil(t - 0.5));
        if (i > n - 1) i = n - 1;
        out[j] = v[i];
    }
    return out;
}

DecisionVector upscale_linear(std::span<const double> v, std::size_t m) {
    const std::size_t n = v.size();
    check_upscale(n, m, 2, "upscale_linear");
    if (m == n) return DecisionVector(v.begin(), v.end());

    DecisionVector out(m);
    out[0] = v[0];
    out[m - 1] = v[n - 1];
    for (std::size_t j = 1; j + 1 < m; ++j) {
        const double t = map_index(j, n, m);
        auto k = static_cast<std::size_t>(std::floor(t));
        if (k >= n - 1) k = n - 2;
        const double s = t - static_cast<double>(k);
        out[j] = v[k] + s * (v[k + 1] - v[k]);
    }
    return out;
}

DecisionVector upscale_cubic(std::span<const double> v, std::size_t m) {
    const std::size_t n = v.size();
    check_upscale(n, m, 4, "upscale_cubic");
    if (m == n) return DecisionVector(v.begin(), v.end());

    // Secants and Fritsch-Carlson slopes on the uniform index grid (h = 1).
    std::vector<double> delta(n - 1), slope(n);
    for (std::size_t k = 0; k + 1 < n; ++k) delta[k] = v[k + 1] - v[k];

    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0)
            slope[k] = 0.0;
        else
            slope[k] = 2.0 * delta[k - 1] * delta[k] / (delta[k - 1] + delta[k]);
    }
    auto end_slope = [](double d0, double d1) {
        double s = (3.0 * d0 - d1) / 2.0;
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    slope[0] = end_slope(delta[0], delta[1]);
    slope[n - 1] = end_slope(delta[n - 2], delta[n - 3]);

    DecisionVector out(m);
    out[0] = v[0];
    out[m - 1] = v[n - 1];
    for (std::size_t j = 1; j + 1 < m; ++j) {
        const double t = map_index(j, n, m);
        auto k = static_cast<std::size_t>(std::floor(t));
        if (k >= n - 1) k = n - 2;
        const double s = t - static_cast<double>(k);
        if (s == 0.0) {
            out[j] = v[k];
            continue;
        }
        const double u = 1.0 - s;
        const double h01 = s * s * (3.0 - 2.0 * s);
        const double h10 = s * u * u;
        const double h11 = s * s * (s - 1.0);
        out[j] = v[k] + h01 * delta[k] + h10 * slope[k] + h11 * slope[k + 1];
    }
    return out;
}

DecisionVector upscale(std::span<const double> v, std::size_t m, UpscaleOp op) {
    switch (op) {
    case UpscaleOp::Nearest: return upscale_nearest(v, m);
    case UpscaleOp::Linear: return upscale_linear(v, m);
    case UpscaleOp::Cubic: return upscale_cubic(v, m);
    }
    throw InterpolationError("unknown upscale operator");
}

} // namespace mlev
