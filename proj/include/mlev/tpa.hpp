#pragma once

#include "mlev/fftconv.hpp"
#include "mlev/problem.hpp"

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mlev {

/// Fourth-order dispersion polynomial coefficients (normalized frequency
/// units). Zeroth and first order are absent by construction.
struct TpaProfile {
    std::string name;
    double k2 = 0.0;
    double k3 = 0.0;
    double k4 = 0.0;
};

/// The four benchmark profiles TPA-0 .. TPA-3.
const TpaProfile& tpa_profile(int index);

/// k(omega) = k2 w^2 + k3 w^3 + k4 w^4.
double dispersion_k(double omega, const TpaProfile& profile);

/// Fine simulation grid: symmetric normalized frequencies in
/// [-omega_max, omega_max] carrying a fixed Gaussian amplitude whose value
/// falls to 1% of the peak at the grid edges. Immutable and shareable
/// across parallel runs.
class SpectralGrid {
  public:
    SpectralGrid(std::size_t n_sim, double omega_max);

    std::size_t n_sim() const { return n_sim_; }
    double omega_max() const { return omega_max_; }
    double delta_omega() const { return d_omega_; }
    double omega(std::size_t i) const { return omega_[i]; }
    double amplitude(std::size_t i) const { return amplitude_[i]; }
    std::span<const double> omegas() const { return omega_; }
    std::span<const double> amplitudes() const { return amplitude_; }

    /// Staircase block width for a pixel count; throws GridMismatchError if
    /// the pixels do not tile the grid exactly.
    std::size_t block_size(std::size_t n_pixels) const;

    /// Center frequency of pixel j when the grid is split into n_pixels
    /// contiguous blocks.
    double pixel_center(std::size_t j, std::size_t n_pixels) const;

    /// Transform of length 2*n_sim used for the self-convolution.
    const Fft& conv_fft() const { return fft_; }

  private:
    std::size_t n_sim_;
    double omega_max_;
    double d_omega_;
    std::vector<double> omega_;
    std::vector<double> amplitude_;
    Fft fft_;
};

/// Holds each pixel's phase constant over its block of fine-grid points.
DecisionVector staircase_expand(std::span<const double> phi_pixels, const SpectralGrid& grid);

/// (-k(pixel center)) mod 2pi for every pixel; attains the global optimum
/// when the pixel grid coincides with the simulation grid.
DecisionVector compensating_phase(const TpaProfile& profile, const SpectralGrid& grid,
                                  std::size_t n_pixels);

/// A dispersion profile bound to a grid, with the normalizer f_tau_max
/// precomputed from the compensating phase at full resolution.
class TpaObjective {
  public:
    struct Scratch {
        std::vector<std::complex<double>> field;   // E1 on the fine grid
        std::vector<std::complex<double>> padded;  // transform workspace
        std::vector<std::complex<double>> conv;    // E2
        std::vector<std::complex<double>> phasors; // per-pixel exp(i phi)
    };

    TpaObjective(std::shared_ptr<const SpectralGrid> grid, TpaProfile profile);

    const SpectralGrid& grid() const { return *grid_; }
    const TpaProfile& profile() const { return profile_; }
    double f_tau_max() const { return f_tau_max_; }

    /// Unnormalized yield: trapezoid integral of |E1 * E1|^2.
    double yield_raw(std::span<const double> phi_pixels, Scratch& scratch) const;

    /// Normalized yield f_TPA in [0, 1].
    double yield(std::span<const double> phi_pixels, Scratch& scratch) const {
        return yield_raw(phi_pixels, scratch) / f_tau_max_;
    }

  private:
    std::shared_ptr<const SpectralGrid> grid_;
    TpaProfile profile_;
    std::vector<std::complex<double>> dispersion_phasor_; // exp(i k(omega_i))
    double f_tau_max_ = 1.0;
};

/// f_TPA for a wrapped pixel phase vector (maximization form, Eq. of the
/// normalized two-photon yield).
double tpa_eval(std::span<const double> phi_pixels, const TpaObjective& objective,
                TpaObjective::Scratch& scratch);

/// Diagnostic: time-domain envelope of the pixelated field (no dispersion),
/// inverse transform of A*exp(i*staircase(phi)). Index 0 corresponds to
/// t = 0; replica pulses of a staircase phase appear at multiples of
/// n_pixels samples.
std::vector<std::complex<double>> temporal_field(std::span<const double> phi_pixels,
                                                 const SpectralGrid& grid);

/// Two-column CSV (t, |e(t)|^2) of the temporal envelope, centered.
void write_temporal_csv(const std::vector<std::complex<double>>& field,
                        const SpectralGrid& grid, const std::string& path);

/// Problem family: minimize 1 - f_TPA at any pixel count dividing the grid.
class TpaModel final : public ProblemModel {
  public:
    TpaModel(std::shared_ptr<const SpectralGrid> grid, int profile_index);

    std::string name() const override;
    bool periodic() const override { return true; }
    double init_lo() const override { return 0.0; }
    double init_hi() const override;
    double default_sigma0() const override;
    ProblemInstance instantiate(std::size_t n,
                                std::shared_ptr<EvalCounter> counter) const override;

    const TpaObjective& objective() const { return *objective_; }

  private:
    std::shared_ptr<const TpaObjective> objective_;
    int profile_index_;
};

} // namespace mlev
