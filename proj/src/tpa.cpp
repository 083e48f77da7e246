#include "mlev/tpa.hpp"

#include "mlev/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace mlev {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Gaussian amplitude at the grid edge relative to the peak.
constexpr double kEdgeAmplitude = 0.01;
} // namespace

const TpaProfile& tpa_profile(int index) {
    static const TpaProfile profiles[4] = {
        {"TPA-0", 0.0, 0.0, 0.0},
        {"TPA-1", 5000.0, 0.0, 0.0},
        {"TPA-2", 11300.0, 7990.0, 2530.0},
        {"TPA-3", 50000.0, 25000.0, 10500.0},
    };
    if (index < 0 || index > 3)
        throw InvalidDimensionError("tpa_profile: index must be 0..3, got " +
                                    std::to_string(index));
    return profiles[index];
}

double dispersion_k(double omega, const TpaProfile& profile) {
    const double w2 = omega * omega;
    return w2 * (profile.k2 + omega * profile.k3 + w2 * profile.k4);
}

SpectralGrid::SpectralGrid(std::size_t n_sim, double omega_max)
    : n_sim_(n_sim), omega_max_(omega_max),
      d_omega_(2.0 * omega_max / static_cast<double>(n_sim - 1)), fft_(2 * n_sim) {
    if (n_sim < 2 || (n_sim & (n_sim - 1)) != 0)
        throw InvalidDimensionError("SpectralGrid: n_sim must be a power of two >= 2");
    if (!(omega_max > 0.0)) throw InvalidDimensionError("SpectralGrid: omega_max must be > 0");

    omega_.resize(n_sim);
    amplitude_.resize(n_sim);
    // Amplitude std so that A(+-omega_max) = kEdgeAmplitude.
    const double sigma = omega_max / std::sqrt(-2.0 * std::log(kEdgeAmplitude));
    for (std::size_t i = 0; i < n_sim; ++i) {
        omega_[i] = -omega_max + static_cast<double>(i) * d_omega_;
        amplitude_[i] = std::exp(-0.5 * omega_[i] * omega_[i] / (sigma * sigma));
    }
}

std::size_t SpectralGrid::block_size(std::size_t n_pixels) const {
    if (n_pixels == 0 || n_pixels > n_sim_ || n_sim_ % n_pixels != 0)
        throw GridMismatchError("pixel count " + std::to_string(n_pixels) +
                                " does not tile the simulation grid of " +
                                std::to_string(n_sim_));
    return n_sim_ / n_pixels;
}

double SpectralGrid::pixel_center(std::size_t j, std::size_t n_pixels) const {
    const std::size_t b = block_size(n_pixels);
    return 0.5 * (omega_[j * b] + omega_[(j + 1) * b - 1]);
}

DecisionVector staircase_expand(std::span<const double> phi_pixels, const SpectralGrid& grid) {
    const std::size_t b = grid.block_size(phi_pixels.size());
    DecisionVector fine(grid.n_sim());
    for (std::size_t j = 0; j < phi_pixels.size(); ++j)
        std::fill_n(fine.begin() + static_cast<std::ptrdiff_t>(j * b), b, phi_pixels[j]);
    return fine;
}

DecisionVector compensating_phase(const TpaProfile& profile, const SpectralGrid& grid,
                                  std::size_t n_pixels) {
    grid.block_size(n_pixels); // validates divisibility
    DecisionVector phi(n_pixels);
    for (std::size_t j = 0; j < n_pixels; ++j)
        phi[j] = wrap_angle(-dispersion_k(grid.pixel_center(j, n_pixels), profile));
    return phi;
}

TpaObjective::TpaObjective(std::shared_ptr<const SpectralGrid> grid, TpaProfile profile)
    : grid_(std::move(grid)), profile_(std::move(profile)) {
    const std::size_t n = grid_->n_sim();
    dispersion_phasor_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        dispersion_phasor_[i] = std::polar(1.0, dispersion_k(grid_->omega(i), profile_));

    Scratch scratch;
    const DecisionVector opt = compensating_phase(profile_, *grid_, n);
    f_tau_max_ = yield_raw(opt, scratch);
}

double TpaObjective::yield_raw(std::span<const double> phi_pixels, Scratch& scratch) const {
    const std::size_t n = grid_->n_sim();
    const std::size_t n_pix = phi_pixels.size();
    const std::size_t b = grid_->block_size(n_pix);

    scratch.phasors.resize(n_pix);
    for (std::size_t j = 0; j < n_pix; ++j)
        scratch.phasors[j] = std::polar(1.0, phi_pixels[j]);

    // E1 = A * exp(i k) * exp(i phi), phi held constant across each block.
    scratch.field.resize(n);
    for (std::size_t j = 0; j < n_pix; ++j) {
        const std::complex<double> p = scratch.phasors[j];
        const std::size_t base = j * b;
        for (std::size_t i = base; i < base + b; ++i)
            scratch.field[i] = grid_->amplitude(i) * dispersion_phasor_[i] * p;
    }

    // E2 = E1 * E1 (linear self-convolution), Riemann factor delta_omega.
    self_convolve(grid_->conv_fft(), scratch.field, scratch.padded, scratch.conv);

    // Trapezoid integral of |E2|^2 over the 2n-1 convolution bins.
    const double d_omega = grid_->delta_omega();
    const std::size_t m = 2 * n - 1;
    double acc = 0.5 * (std::norm(scratch.conv[0]) + std::norm(scratch.conv[m - 1]));
    for (std::size_t i = 1; i + 1 < m; ++i) acc += std::norm(scratch.conv[i]);
    // conv carries two implicit delta_omega factors once squared.
    return acc * d_omega * d_omega * d_omega;
}

double tpa_eval(std::span<const double> phi_pixels, const TpaObjective& objective,
                TpaObjective::Scratch& scratch) {
    return objective.yield(phi_pixels, scratch);
}

std::vector<std::complex<double>> temporal_field(std::span<const double> phi_pixels,
                                                 const SpectralGrid& grid) {
    const std::size_t n = grid.n_sim();
    const DecisionVector fine = staircase_expand(phi_pixels, grid);
    std::vector<std::complex<double>> e(n);
    for (std::size_t i = 0; i < n; ++i)
        e[i] = grid.amplitude(i) * std::polar(1.0, fine[i]);

    Fft fft(n);
    fft.inverse(e.data());
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& c : e) c *= inv_n;
    return e;
}

void write_temporal_csv(const std::vector<std::complex<double>>& field,
                        const SpectralGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    const std::size_t n = field.size();
    const double dt = kTwoPi / (static_cast<double>(n) * grid.delta_omega());
    out << "t,intensity\n";
    // fftshift so the pulse sits in the middle of the time window
    for (std::size_t row = 0; row < n; ++row) {
        const auto k = (row + n / 2) % n;
        const double t = (static_cast<double>(row) - static_cast<double>(n / 2)) * dt;
        out << t << ',' << std::norm(field[k]) << '\n';
    }
}

TpaModel::TpaModel(std::shared_ptr<const SpectralGrid> grid, int profile_index)
    : objective_(std::make_shared<const TpaObjective>(std::move(grid), tpa_profile(profile_index))),
      profile_index_(profile_index) {}

std::string TpaModel::name() const { return "tpa-" + std::to_string(profile_index_); }

double TpaModel::init_hi() const { return kTwoPi; }

double TpaModel::default_sigma0() const { return kTwoPi / 3.0; }

ProblemInstance TpaModel::instantiate(std::size_t n,
                                      std::shared_ptr<EvalCounter> counter) const {
    objective_->grid().block_size(n); // fail fast on a mismatched level
    auto scratch = std::make_shared<TpaObjective::Scratch>();
    auto objective = objective_;
    return ProblemInstance(
        n, /*periodic=*/true,
        [objective, scratch](const DecisionVector& phi) {
            return 1.0 - objective->yield(phi, *scratch);
        },
        std::move(counter));
}

} // namespace mlev
