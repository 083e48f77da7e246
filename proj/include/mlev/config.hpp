#pragma once

#include "mlev/problem.hpp"
#include "mlev/schedule.hpp"
#include "mlev/termination.hpp"
#include "mlev/upscale.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace mlev {

inline constexpr std::size_t kDefaultNSim = std::size_t{1} << 15;
// Normalized angular-frequency half-range of the simulation grid; the
// dispersion coefficients are interpreted in these units.
inline constexpr double kDefaultOmegaMax = 0.035;

/// One experiment: problem, strategy, mode, schedule, termination and
/// repetition plan. Flat key=value file format, one file per experiment.
struct ExperimentConfig {
    enum class Mode { Direct, Mlev };

    std::string name = "experiment";

    std::string problem = "sphere"; // sphere | tpa-0 | tpa-1 | tpa-2 | tpa-3
    StrategyKind strategy = StrategyKind::OnePlusOne;
    Mode mode = Mode::Mlev;
    UpscaleOp op = UpscaleOp::Nearest;
    bool op_set = false;

    std::size_t n_initial = 0;
    std::size_t n_final = 0;
    std::size_t n_direct = 0;

    TerminationCriterion::Kind tc_kind = TerminationCriterion::Kind::FixedTarget;
    double epsilon = 0.0;
    double theta = 0.0;
    std::uint64_t budget_per_level = 0;
    BudgetUnit budget_unit = BudgetUnit::Auto;

    double sigma0 = 0.0; // 0: problem default (10/3 for sphere, 2pi/3 for QC)
    std::size_t repetitions = 1;
    std::uint64_t base_seed = 1;
    std::uint64_t global_budget = 0;
    std::string out_dir; // empty: resolved from MLEV_OUT_DIR or ./out/<name>

    // TPA simulation grid
    std::size_t n_sim = kDefaultNSim;
    double omega_max = kDefaultOmegaMax;

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_string(const std::string& text, const std::string& name);

    void validate() const;

    bool is_tpa() const;
    int tpa_profile_index() const; // -1 for sphere

    std::shared_ptr<ProblemModel> make_model() const;
    TerminationCriterion make_tc() const;
    LevelSchedule make_schedule() const;
    double resolved_sigma0(const ProblemModel& model) const;
    std::string resolved_out_dir() const;
};

} // namespace mlev
