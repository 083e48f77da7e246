#pragma once

#include "mlev/problem.hpp"
#include "mlev/rng.hpp"

#include <cstdint>
#include <vector>

namespace mlev {

struct PopulationSizes {
    std::size_t mu;
    std::size_t lambda;
};

/// lambda = 4 + floor(3 ln n), mu = floor(lambda/2).
PopulationSizes population_sizes(std::size_t n);

/// Theoretically optimal global step-size of the elitist single-child
/// strategy on the quadratic model: 1.224 * sqrt(f) / n.
double optimal_sphere_sigma(double f_value, std::size_t n);

/// Non-elitist weighted-recombination strategy with a diagonal scaling
/// vector d (linear time and space in n). Learning rates follow the
/// recommended defaults, with the diagonal variance rate boosted by
/// (n+2)/3 for the separable restriction:
///
///   w_i     propto ln(mu+1) - ln(i),  normalized to sum 1
///   mu_eff  = 1 / sum w_i^2
///   c_sigma = (mu_eff + 2) / (n + mu_eff + 3)
///   d_sigma = 1 + 2 max(0, sqrt((mu_eff - 1)/(n + 1)) - 1) + c_sigma
///   c_c     = 4 / (n + 4)
///   c_cov   = (n+2)/3 * [ 2/(mu_eff (n+sqrt 2)^2)
///             + (1 - 1/mu_eff) min(1, (2 mu_eff - 1)/((n+2)^2 + mu_eff)) ]
struct SepCmaState {
    DecisionVector mean;
    double sigma = 0.0;
    std::vector<double> d;   // individual step-sizes, diag of D
    std::vector<double> p_s; // step-size evolution path
    std::vector<double> p_c; // variance evolution path
    std::size_t mu = 0;
    std::size_t lambda = 0;
    std::vector<double> recombination_weights; // size mu, non-increasing, sum 1
    std::uint64_t generation = 0;

    // derived constants, recomputed when the dimension changes
    double mu_eff = 0.0;
    double c_sigma = 0.0;
    double d_sigma = 0.0;
    double c_c = 0.0;
    double c_cov = 0.0;
    double chi_n = 0.0;

    std::size_t dim() const { return mean.size(); }

    /// Fresh state at the dimension of `mean0`: unit d, zero paths.
    static SepCmaState make(DecisionVector mean0, double sigma0);

    /// Recomputes population sizes, weights and learning constants for the
    /// current dimension (used at construction and after level-up).
    void configure_for_dimension();
};

struct SepCmaGenResult {
    std::vector<double> candidate_f; // lambda values in sampling order
    double gen_best_f;
    DecisionVector gen_best_x; // wrapped for periodic problems
    double sigma_used;
};

/// One generation: sample lambda offspring mean + sigma*D*z, rank them,
/// recombine the best mu, update paths, sigma and d. Consumes exactly
/// lambda objective calls.
SepCmaGenResult sep_cma_step(SepCmaState& state, const ProblemInstance& problem, Rng& rng);

/// Same update driven by caller-supplied standard-normal samples
/// (z[k] has the state's dimension); used by deterministic tests.
SepCmaGenResult sep_cma_step_with_samples(SepCmaState& state, const ProblemInstance& problem,
                                          const std::vector<DecisionVector>& z);

} // namespace mlev
