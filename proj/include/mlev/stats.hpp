#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mlev {

/// One experiment variant's evaluation counts (or final values) over its
/// repetitions. Censored entries are runs that hit the global budget without
/// converging; they enter the tests at the budget cap value.
struct SampleSet {
    std::string label;
    std::vector<double> values;
    std::vector<bool> censored; // empty means none censored

    bool is_censored(std::size_t i) const { return i < censored.size() && censored[i]; }
};

struct DescribeResult {
    double mean;
    double median;
    double ci99_halfwidth; // t-distribution, 99% level
    std::size_t success_count;
};

/// Mean, sample median, t-CI half-width at the 99% level and the number of
/// non-censored runs. Throws StatsError for fewer than two values (the CI is
/// undefined).
DescribeResult describe(const SampleSet& s);

struct UTestResult {
    double u;      // U statistic of the first sample (midrank ties)
    double p;      // two-sided
    bool exact;    // full enumeration vs normal approximation
};

/// Rank-sum test. Exact two-sided p by full enumeration when
/// n_a + n_b <= exact_threshold, otherwise the normal approximation with
/// tie correction (no continuity correction).
UTestResult mann_whitney_u(const SampleSet& a, const SampleSet& b,
                           std::size_t exact_threshold = 12);

struct FriedmanResult {
    double statistic; // chi-square distributed with k-1 dof under h0
    double p;
};

/// Friedman test over k treatments x n blocks; treatments[j] holds the j-th
/// treatment's value in every block. Within-block midranks.
FriedmanResult friedman(const std::vector<std::vector<double>>& treatments);

/// Midranks (1-based, ties averaged) of the given values.
std::vector<double> midranks(const std::vector<double>& values);

// Special functions backing the tests; exposed for validation against
// tabulated quantiles.
double student_t_quantile(double p, double dof);
double chi_square_sf(double x, double dof);
double normal_cdf(double z);
double incomplete_beta(double a, double b, double x);

} // namespace mlev
