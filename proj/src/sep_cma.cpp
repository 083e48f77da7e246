#include "mlev/sep_cma.hpp"

#include "mlev/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlev {

PopulationSizes population_sizes(std::size_t n) {
    if (n == 0) throw InvalidDimensionError("population_sizes: dimension must be >= 1");
    const auto lambda =
        static_cast<std::size_t>(4 + static_cast<long>(std::floor(3.0 * std::log(static_cast<double>(n)))));
    return {lambda / 2, lambda};
}

double optimal_sphere_sigma(double f_value, std::size_t n) {
    if (n == 0) throw InvalidDimensionError("optimal_sphere_sigma: dimension must be >= 1");
    return 1.224 * std::sqrt(f_value) / static_cast<double>(n);
}

SepCmaState SepCmaState::make(DecisionVector mean0, double sigma0) {
    SepCmaState s;
    const std::size_t n = mean0.size();
    s.mean = std::move(mean0);
    s.sigma = sigma0;
    s.d.assign(n, 1.0);
    s.p_s.assign(n, 0.0);
    s.p_c.assign(n, 0.0);
    s.configure_for_dimension();
    return s;
}

void SepCmaState::configure_for_dimension() {
    const std::size_t n = dim();
    const auto sizes = population_sizes(n);
    mu = sizes.mu;
    lambda = sizes.lambda;

    recombination_weights.resize(mu);
    const double log_mu1 = std::log(static_cast<double>(mu) + 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu; ++i) {
        recombination_weights[i] = log_mu1 - std::log(static_cast<double>(i) + 1.0);
        sum += recombination_weights[i];
    }
    double sum_sq = 0.0;
    for (auto& w : recombination_weights) {
        w /= sum;
        sum_sq += w * w;
    }
    mu_eff = 1.0 / sum_sq;

    const double nd = static_cast<double>(n);
    c_sigma = (mu_eff + 2.0) / (nd + mu_eff + 3.0);
    d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (nd + 1.0)) - 1.0) + c_sigma;
    c_c = 4.0 / (nd + 4.0);
    const double full_rate =
        2.0 / (mu_eff * (nd + std::sqrt(2.0)) * (nd + std::sqrt(2.0))) +
        (1.0 - 1.0 / mu_eff) * std::min(1.0, (2.0 * mu_eff - 1.0) / ((nd + 2.0) * (nd + 2.0) + mu_eff));
    c_cov = (nd + 2.0) / 3.0 * full_rate;
    chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));
}

namespace {

struct GenScratch {
    std::vector<DecisionVector> offspring; // unwrapped, sampling order
    DecisionVector eval_buf;               // wrapped copy for evaluation
    std::vector<std::size_t> order;
    std::vector<double> zw;
};

thread_local GenScratch g_scratch;

} // namespace

SepCmaGenResult sep_cma_step_with_samples(SepCmaState& state, const ProblemInstance& problem,
                                          const std::vector<DecisionVector>& z) {
    const std::size_t n = state.dim();
    const std::size_t lambda = state.lambda;
    const std::size_t mu = state.mu;
    if (z.size() != lambda)
        throw InvalidDimensionError("sep_cma_step: expected lambda sample vectors");

    auto& scratch = g_scratch;
    scratch.offspring.resize(lambda);
    scratch.order.resize(lambda);

    SepCmaGenResult result;
    result.candidate_f.resize(lambda);
    result.sigma_used = state.sigma;

    for (std::size_t k = 0; k < lambda; ++k) {
        auto& x = scratch.offspring[k];
        x.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = state.mean[i] + state.sigma * state.d[i] * z[k][i];

        const DecisionVector* to_eval = &x;
        if (problem.periodic()) {
            scratch.eval_buf = x;
            wrap_periodic(std::span<double>(scratch.eval_buf));
            to_eval = &scratch.eval_buf;
        }
        const double f = (problem)(*to_eval);
        if (!std::isfinite(f))
            throw EvaluationError("non-finite objective value from offspring " +
                                  std::to_string(k) + " at n=" + std::to_string(n));
        result.candidate_f[k] = f;
        if (k == 0 || f < result.gen_best_f) {
            result.gen_best_f = f;
            result.gen_best_x = *to_eval;
        }
    }

    std::iota(scratch.order.begin(), scratch.order.end(), std::size_t{0});
    std::stable_sort(scratch.order.begin(), scratch.order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return result.candidate_f[a] < result.candidate_f[b];
                     });

    // <z>_w over the selected offspring.
    auto& zw = scratch.zw;
    zw.assign(n, 0.0);
    for (std::size_t j = 0; j < mu; ++j) {
        const double w = state.recombination_weights[j];
        const DecisionVector& zj = z[scratch.order[j]];
        for (std::size_t i = 0; i < n; ++i) zw[i] += w * zj[i];
    }

    state.p_s.resize(n);
    const double cs = state.c_sigma;
    const double path_scale = std::sqrt(cs * (2.0 - cs) * state.mu_eff);
    double ps_norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        state.p_s[i] = (1.0 - cs) * state.p_s[i] + path_scale * zw[i];
        ps_norm_sq += state.p_s[i] * state.p_s[i];
    }
    const double ps_norm = std::sqrt(ps_norm_sq);

    ++state.generation;
    const double expected = state.chi_n;
    const double gen_decay =
        std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * static_cast<double>(state.generation)));
    const bool h_sig =
        ps_norm / gen_decay < (1.4 + 2.0 / (static_cast<double>(n) + 1.0)) * expected;

    const double cc = state.c_c;
    const double pc_scale = h_sig ? std::sqrt(cc * (2.0 - cc) * state.mu_eff) : 0.0;
    const double ccov = state.c_cov;
    const double mu_cov = state.mu_eff;

    for (std::size_t i = 0; i < n; ++i)
        state.p_c[i] = (1.0 - cc) * state.p_c[i] + pc_scale * state.d[i] * zw[i];

    for (std::size_t i = 0; i < n; ++i) {
        double rank_mu = 0.0;
        for (std::size_t j = 0; j < mu; ++j) {
            const double y = state.d[i] * z[scratch.order[j]][i];
            rank_mu += state.recombination_weights[j] * y * y;
        }
        const double hsig_fill = h_sig ? 0.0 : cc * (2.0 - cc) * state.d[i] * state.d[i];
        const double var = (1.0 - ccov) * state.d[i] * state.d[i] +
                           (ccov / mu_cov) * (state.p_c[i] * state.p_c[i] + hsig_fill) +
                           ccov * (1.0 - 1.0 / mu_cov) * rank_mu;
        const double di = std::sqrt(var);
        if (!(di > 0.0) || !std::isfinite(di))
            throw NumericalDegeneracyError("individual step-size underflowed to zero at coordinate " +
                                           std::to_string(i));
        state.d[i] = di;
    }

    state.sigma *= std::exp((cs / state.d_sigma) * (ps_norm / expected - 1.0));

    // Weighted recombination anchored at the best offspring: identical
    // selected vectors reproduce bit-identically.
    const DecisionVector& best = scratch.offspring[scratch.order[0]];
    state.mean = best;
    for (std::size_t j = 1; j < mu; ++j) {
        const double w = state.recombination_weights[j];
        const DecisionVector& xj = scratch.offspring[scratch.order[j]];
        for (std::size_t i = 0; i < n; ++i) state.mean[i] += w * (xj[i] - best[i]);
    }

    return result;
}

SepCmaGenResult sep_cma_step(SepCmaState& state, const ProblemInstance& problem, Rng& rng) {
    static thread_local std::vector<DecisionVector> z;
    z.resize(state.lambda);
    for (auto& zk : z) {
        zk.resize(state.dim());
        rng.fill_normal(zk);
    }
    return sep_cma_step_with_samples(state, problem, z);
}

} // namespace mlev
