#include "mlev/stats.hpp"

#include "mlev/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mlev {

namespace {

double ln_gamma(double x) { return std::lgamma(x); }

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

// Lower regularized incomplete gamma by series.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 3e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
}

// Upper regularized incomplete gamma by continued fraction.
double gamma_q_cf(double a, double x) {
    constexpr double kFpMin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3e-16) break;
    }
    return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double bt = std::exp(ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) +
                               a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

namespace {

// Monotone bisection inverse of I_x(a, b).
double inverse_incomplete_beta(double a, double b, double p) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (incomplete_beta(a, b, mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double student_t_quantile(double p, double dof) {
    if (!(p > 0.0 && p < 1.0)) throw StatsError("t quantile: p must be in (0,1)");
    if (!(dof > 0.0)) throw StatsError("t quantile: dof must be positive");
    if (p == 0.5) return 0.0;
    const bool upper = p > 0.5;
    const double tail2 = upper ? 2.0 * (1.0 - p) : 2.0 * p;
    // F(t) = 1 - I_x(nu/2, 1/2)/2 with x = nu/(nu + t^2)
    const double x = inverse_incomplete_beta(0.5 * dof, 0.5, tail2);
    const double t = std::sqrt(dof * (1.0 - x) / x);
    return upper ? t : -t;
}

double chi_square_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    const double a = 0.5 * dof;
    const double xx = 0.5 * x;
    if (xx < a + 1.0) return 1.0 - gamma_p_series(a, xx);
    return gamma_q_cf(a, xx);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0; // mean of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

DescribeResult describe(const SampleSet& s) {
    const std::size_t n = s.values.size();
    if (n == 0) throw StatsError("describe: empty sample");
    if (n == 1) throw StatsError("describe: confidence interval undefined for a single value");

    const double mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) /
                        static_cast<double>(n);

    std::vector<double> sorted = s.values;
    std::sort(sorted.begin(), sorted.end());
    const double median = n % 2 == 1 ? sorted[n / 2]
                                     : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    double ss = 0.0;
    for (double v : s.values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double t = student_t_quantile(0.995, static_cast<double>(n - 1));
    const double hw = t * sd / std::sqrt(static_cast<double>(n));

    std::size_t success = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!s.is_censored(i)) ++success;

    return {mean, median, hw, success};
}

namespace {

// Sum over all n_a-subsets of `ranks`, counting those whose U statistic is
// at least as extreme (two-sided around n_a*n_b/2) as u_obs.
void enumerate_subsets(const std::vector<double>& ranks, std::size_t n_a, double u_center,
                       double u_dev_obs, std::size_t start, std::size_t chosen,
                       double rank_sum, std::uint64_t& total, std::uint64_t& extreme,
                       double base) {
    if (chosen == n_a) {
        ++total;
        const double u = rank_sum - base;
        if (std::abs(u - u_center) >= u_dev_obs - 1e-9) ++extreme;
        return;
    }
    if (ranks.size() - start < n_a - chosen) return;
    for (std::size_t i = start; i < ranks.size(); ++i)
        enumerate_subsets(ranks, n_a, u_center, u_dev_obs, i + 1, chosen + 1,
                          rank_sum + ranks[i], total, extreme, base);
}

} // namespace

UTestResult mann_whitney_u(const SampleSet& a, const SampleSet& b,
                           std::size_t exact_threshold) {
    const std::size_t n_a = a.values.size();
    const std::size_t n_b = b.values.size();
    if (n_a == 0 || n_b == 0) throw StatsError("mann_whitney_u: empty sample");

    std::vector<double> pooled;
    pooled.reserve(n_a + n_b);
    pooled.insert(pooled.end(), a.values.begin(), a.values.end());
    pooled.insert(pooled.end(), b.values.begin(), b.values.end());
    const std::vector<double> ranks = midranks(pooled);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < n_a; ++i) rank_sum_a += ranks[i];
    const double base_a = 0.5 * static_cast<double>(n_a) * static_cast<double>(n_a + 1);
    const double u = rank_sum_a - base_a;
    const double u_center = 0.5 * static_cast<double>(n_a) * static_cast<double>(n_b);

    UTestResult result{u, 1.0, false};
    const std::size_t n = n_a + n_b;

    if (n <= exact_threshold) {
        result.exact = true;
        std::uint64_t total = 0, extreme = 0;
        enumerate_subsets(ranks, n_a, u_center, std::abs(u - u_center), 0, 0, 0.0, total,
                          extreme, base_a);
        result.p = static_cast<double>(extreme) / static_cast<double>(total);
        return result;
    }

    // Normal approximation with tie correction.
    double tie_term = 0.0;
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const auto t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const auto nd = static_cast<double>(n);
    const double var_u = (static_cast<double>(n_a) * static_cast<double>(n_b) / 12.0) *
                         ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    if (var_u <= 0.0) {
        result.p = 1.0; // all values identical
        return result;
    }
    const double z = (u - u_center) / std::sqrt(var_u);
    result.p = std::min(1.0, 2.0 * normal_cdf(-std::abs(z)));
    return result;
}

FriedmanResult friedman(const std::vector<std::vector<double>>& treatments) {
    const std::size_t k = treatments.size();
    if (k < 2) throw StatsError("friedman: needs at least two treatments");
    const std::size_t n = treatments[0].size();
    if (n < 2) throw StatsError("friedman: needs at least two blocks");
    for (const auto& t : treatments)
        if (t.size() != n) throw StatsError("friedman: treatments must have equal length");

    std::vector<double> rank_sum(k, 0.0);
    std::vector<double> block(k);
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t j = 0; j < k; ++j) block[j] = treatments[j][b];
        const std::vector<double> r = midranks(block);
        for (std::size_t j = 0; j < k; ++j) rank_sum[j] += r[j];
    }

    const auto kd = static_cast<double>(k);
    const auto nd = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double mean_rank = rank_sum[j] / nd;
        const double dev = mean_rank - 0.5 * (kd + 1.0);
        acc += dev * dev;
    }
    const double stat = 12.0 * nd / (kd * (kd + 1.0)) * acc;
    return {stat, chi_square_sf(stat, kd - 1.0)};
}

} // namespace mlev
