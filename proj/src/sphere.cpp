#include "mlev/sphere.hpp"

#include <vector>

namespace mlev {

double sphere_eval(std::span<const double> x) {
    // Bottom-up pairwise summation aligned at even indexes. Duplicating
    // every entry then scales each partial sum by exactly two, so the
    // doubled-grid identity f(dup(v)) = 2 f(v) holds bitwise.
    const std::size_t m = x.size();
    if (m == 0) return 0.0;
    static thread_local std::vector<double> buf;
    buf.resize((m + 1) / 2);

    std::size_t out = 0;
    std::size_t i = 0;
    for (; i + 1 < m; i += 2) buf[out++] = x[i] * x[i] + x[i + 1] * x[i + 1];
    if (i < m) buf[out++] = x[i] * x[i];

    std::size_t len = out;
    while (len > 1) {
        out = 0;
        std::size_t j = 0;
        for (; j + 1 < len; j += 2) buf[out++] = buf[j] + buf[j + 1];
        if (j < len) buf[out++] = buf[j];
        len = out;
    }
    return buf[0];
}

ProblemInstance SphereModel::instantiate(std::size_t n,
                                         std::shared_ptr<EvalCounter> counter) const {
    return ProblemInstance(
        n, /*periodic=*/false,
        [](const DecisionVector& x) { return sphere_eval(x); }, std::move(counter));
}

} // namespace mlev
