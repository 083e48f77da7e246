#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mlev/errors.hpp"
#include "mlev/rng.hpp"
#include "mlev/sphere.hpp"
#include "mlev/upscale.hpp"

#include <algorithm>
#include <cmath>

using namespace mlev;

namespace {

// Independent monotone-cubic reference: textbook Fritsch-Carlson slopes and
// a Hermite evaluation in the plain basis-function form. Deliberately kept
// separate from the library implementation.
double reference_pchip(const std::vector<double>& y, double t) {
    const std::size_t n = y.size();
    std::vector<double> d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = y[i + 1] - y[i];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            m[i] = 0.0;
        else
            m[i] = 2.0 / (1.0 / d[i - 1] + 1.0 / d[i]);
    }
    auto edge = [](double d0, double d1) {
        double s = 1.5 * d0 - 0.5 * d1;
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return s;
    };
    m[0] = edge(d[0], d[1]);
    m[n - 1] = edge(d[n - 2], d[n - 3]);

    auto k = static_cast<std::size_t>(std::floor(t));
    if (k >= n - 1) k = n - 2;
    const double s = t - static_cast<double>(k);
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * y[k] + h10 * m[k] + h01 * y[k + 1] + h11 * m[k + 1];
}

} // namespace

TEST_CASE("nearest neighbor examples") {
    CHECK(upscale_nearest(std::vector<double>{1, 3}, 4) == DecisionVector{1, 1, 3, 3});
    CHECK(upscale_nearest(std::vector<double>{5}, 4) == DecisionVector{5, 5, 5, 5});
    CHECK(upscale_nearest(std::vector<double>{0, 1, 2}, 3) == DecisionVector{0, 1, 2});
}

TEST_CASE("nearest neighbor midpoint tie breaks left") {
    // n=2, m=3: the middle output sits exactly between the two inputs.
    CHECK(upscale_nearest(std::vector<double>{10, 20}, 3) == DecisionVector{10, 10, 20});
}

TEST_CASE("linear examples") {
    const DecisionVector ramp = upscale_linear(std::vector<double>{0, 2}, 4);
    REQUIRE(ramp.size() == 4);
    CHECK(ramp[0] == 0.0);
    CHECK(ramp[1] == doctest::Approx(2.0 / 3.0));
    CHECK(ramp[2] == doctest::Approx(4.0 / 3.0));
    CHECK(ramp[3] == 2.0);

    CHECK(upscale_linear(std::vector<double>{1, 1, 1}, 6) == DecisionVector(6, 1.0));

    const DecisionVector tent = upscale_linear(std::vector<double>{0, 1, 0}, 5);
    CHECK(tent == DecisionVector{0, 0.5, 1, 0.5, 0});
}

TEST_CASE("cubic examples") {
    CHECK(upscale_cubic(std::vector<double>{1, 1, 1, 1}, 8) == DecisionVector(8, 1.0));

    const DecisionVector mono = upscale_cubic(std::vector<double>{0, 1, 2, 3}, 7);
    REQUIRE(mono.size() == 7);
    CHECK(mono.front() == 0.0);
    CHECK(mono.back() == 3.0);
    CHECK(std::is_sorted(mono.begin(), mono.end()));

    const std::vector<double> zig{0, 1, 0, 1};
    const DecisionVector out = upscale_cubic(zig, 8);
    for (double v : out) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    // matches the independent reference on the same knots
    for (std::size_t j = 0; j < 8; ++j) {
        const double t = static_cast<double>(j) * 3.0 / 7.0;
        CHECK(out[j] == doctest::Approx(reference_pchip(zig, t)).epsilon(1e-12));
    }
}

TEST_CASE("upscale errors") {
    CHECK_THROWS_AS(upscale_nearest(std::vector<double>{1, 2, 3}, 2), InterpolationError);
    CHECK_THROWS_AS(upscale_linear(std::vector<double>{1}, 4), InterpolationError);
    CHECK_THROWS_AS(upscale_cubic(std::vector<double>{1, 2, 3}, 6), InterpolationError);
}

TEST_CASE("endpoint fixing and idempotence for all operators") {
    Rng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform(0, 30));
        const std::size_t m = n + static_cast<std::size_t>(rng.uniform(0, 60));
        std::vector<double> v(n);
        for (auto& x : v) x = rng.uniform(-10, 10);

        for (UpscaleOp op : {UpscaleOp::Nearest, UpscaleOp::Linear, UpscaleOp::Cubic}) {
            const DecisionVector out = upscale(v, m, op);
            REQUIRE(out.size() == m);
            CHECK(out.front() == v.front());
            CHECK(out.back() == v.back());
            CHECK(upscale(v, n, op) == v); // identity at the same size
        }
    }
}

TEST_CASE("nearest doubling duplicates every value exactly twice") {
    Rng rng(11);
    for (std::size_t n = 1; n <= 64; ++n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) + rng.uniform01();
        const DecisionVector out = upscale_nearest(v, 2 * n);
        REQUIRE(out.size() == 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(out[2 * i] == v[i]);
            CHECK(out[2 * i + 1] == v[i]);
        }
    }
}

TEST_CASE("sphere value doubles exactly under nearest duplication") {
    Rng rng(13);
    CHECK(sphere_eval(std::vector<double>{3, 4}) == 25.0);
    CHECK(sphere_eval(upscale_nearest(std::vector<double>{3, 4}, 4)) == 50.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 40));
        std::vector<double> v(n);
        for (auto& x : v) x = rng.uniform(-5, 5);
        CHECK(sphere_eval(upscale_nearest(v, 2 * n)) == 2.0 * sphere_eval(v));
    }
}

TEST_CASE("cubic preserves monotonicity on random monotone data") {
    Rng rng(17);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform(0, 20));
        std::vector<double> v(n);
        double acc = rng.uniform(-3, 3);
        for (auto& x : v) {
            acc += rng.uniform01();
            x = acc;
        }
        const DecisionVector out = upscale_cubic(v, 3 * n);
        CHECK(std::is_sorted(out.begin(), out.end()));
    }
}
