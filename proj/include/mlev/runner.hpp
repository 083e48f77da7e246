#pragma once

#include "mlev/config.hpp"
#include "mlev/mlev_run.hpp"
#include "mlev/stats.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlev {

struct RunSummary {
    std::size_t run_index;
    std::uint64_t seed;
    std::uint64_t evaluations; // clamped to the global budget when censored
    double final_f;
    TerminalStatus status;
    bool censored;
};

struct ExperimentResult {
    std::vector<RunSummary> runs;
    SampleSet sample; // evaluation counts, one per repetition
    std::vector<std::string> trace_files;
    std::string summary_file;
};

struct RunnerOptions {
    std::size_t jobs = 0; // 0: all hardware threads
    bool quiet = true;
};

/// Executes `repetitions` independent runs with seeds base_seed + i,
/// persists one trace CSV per run plus a summary CSV, and returns the
/// evaluation-count sample. Runs are dispatched to a worker pool; files are
/// written by the aggregating thread in seed order, so output is
/// deterministic for a given config regardless of the job count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunnerOptions& opts = {});

/// Reads a summary CSV back into an evaluation-count sample.
SampleSet read_summary_sample(const std::string& summary_path, const std::string& label);

struct VariantRow {
    std::string label;
    DescribeResult stats;
    std::size_t n;
};

struct ComparisonReport {
    std::vector<VariantRow> rows;
    bool friedman_run = false;
    FriedmanResult friedman_result{0.0, 1.0};
    bool pairwise_run = false;
    std::vector<std::vector<double>> p_values; // square, NaN on the diagonal
    std::optional<std::size_t> best_index;     // statistically best variant
    std::vector<std::string> notes;

    std::string render_text() const;
    void write_csv(const std::string& path) const;
};

/// The evaluation protocol: a Friedman gate over matched repetitions first,
/// pairwise rank-sum tests only when it rejects at `alpha`. With exactly two
/// variants the gate is redundant and a direct U-test is run. Unequal
/// repetition counts fall back to pairwise tests with a warning note.
ComparisonReport compare_variants(const std::vector<SampleSet>& summaries, double alpha = 0.05);

/// Convergence figure data: picks the percentile run by total evaluations
/// (lower median for even counts) and writes its trace with a level_start
/// marker column.
void emit_figure_convergence(const std::string& trace_dir, double percentile,
                             const std::string& out_csv);

/// Boxplot figure data: one column of evaluation counts per variant
/// directory.
void emit_figure_boxplot(const std::vector<std::string>& trace_dirs,
                         const std::string& out_csv);

} // namespace mlev
