#include "mlev/rng.hpp"

#include <cmath>

namespace mlev {
namespace detail {

ZigTables::ZigTables() {
    const double m1 = 2147483648.0; // 2^31
    double dn = 3.442619855899;
    double tn = dn;
    const double vn = 9.91256303526217e-3;

    const double q = vn / std::exp(-0.5 * dn * dn);
    kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
    kn[1] = 0;
    wn[0] = q / m1;
    wn[127] = dn / m1;
    fn[0] = 1.0;
    fn[127] = std::exp(-0.5 * dn * dn);
    for (int i = 126; i >= 1; --i) {
        dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
        kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
        tn = dn;
        fn[i] = std::exp(-0.5 * dn * dn);
        wn[i] = dn / m1;
    }
}

const ZigTables zig{};

} // namespace detail

double Rng::normal_fix(std::int32_t hz, std::size_t iz) {
    constexpr double r = 3.442619855899; // rightmost layer edge
    for (;;) {
        if (iz == 0) {
            // Tail sample beyond r.
            double x, y;
            do {
                x = -std::log(uniform01()) / r;
                y = -std::log(uniform01());
            } while (y + y < x * x);
            return hz > 0 ? r + x : -r - x;
        }
        const double x = hz * detail::zig.wn[iz];
        const double f0 = detail::zig.fn[iz];
        const double f1 = detail::zig.fn[iz - 1];
        if (f0 + uniform01() * (f1 - f0) < std::exp(-0.5 * x * x)) return x;

        const auto bits = gen_();
        hz = static_cast<std::int32_t>(bits >> 32);
        iz = static_cast<std::size_t>(hz & 127);
        const auto az = hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
                               : static_cast<std::uint32_t>(hz);
        if (az < detail::zig.kn[iz]) return hz * detail::zig.wn[iz];
    }
}

} // namespace mlev
