#include "mlev/config.hpp"
#include "mlev/errors.hpp"
#include "mlev/runner.hpp"
#include "mlev/tpa.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& config_path, std::uint64_t seed, bool seed_set,
            std::size_t reps, std::size_t jobs, const std::string& out_dir, bool verbose) {
    mlev::ExperimentConfig cfg = mlev::ExperimentConfig::from_file(config_path);
    if (seed_set) cfg.base_seed = seed;
    if (reps != 0) cfg.repetitions = reps;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.validate();

    mlev::RunnerOptions opts;
    opts.jobs = jobs;
    opts.quiet = !verbose;
    const mlev::ExperimentResult result = mlev::run_experiment(cfg, opts);

    const mlev::DescribeResult stats =
        result.runs.size() >= 2 ? mlev::describe(result.sample)
                                : mlev::DescribeResult{result.sample.values[0],
                                                       result.sample.values[0], 0.0,
                                                       result.runs[0].censored ? 0u : 1u};
    std::printf("%s: %zu runs, evaluations mean %.1f +- %.1f (ci99), median %.1f, "
                "successful %zu/%zu\n",
                cfg.name.c_str(), result.runs.size(), stats.mean, stats.ci99_halfwidth,
                stats.median, stats.success_count, result.runs.size());
    std::printf("summary: %s\n", result.summary_file.c_str());
    return 0;
}

int cmd_compare(const std::vector<std::string>& summary_files, const std::string& out_csv) {
    std::vector<mlev::SampleSet> samples;
    for (const auto& path : summary_files) {
        fs::path p(path);
        std::string label = p.parent_path().filename().string();
        if (label.empty()) label = p.stem().string();
        samples.push_back(mlev::read_summary_sample(path, label));
    }
    const mlev::ComparisonReport report = mlev::compare_variants(samples);
    std::cout << report.render_text();
    if (!out_csv.empty()) {
        report.write_csv(out_csv);
        std::cout << "report: " << out_csv << '\n';
    }
    return 0;
}

int cmd_figure(const std::string& kind, const std::vector<std::string>& dirs,
               double percentile, const std::string& out_csv) {
    if (kind == "convergence") {
        if (dirs.size() != 1)
            throw mlev::ConfigError("figure convergence takes exactly one trace directory");
        mlev::emit_figure_convergence(dirs[0], percentile, out_csv);
    } else if (kind == "boxplot") {
        mlev::emit_figure_boxplot(dirs, out_csv);
    } else {
        throw mlev::ConfigError("unknown figure kind: " + kind);
    }
    std::cout << "figure data: " << out_csv << '\n';
    return 0;
}

int cmd_temporal(const std::string& config_path, const std::string& phase,
                 std::size_t pixels, const std::string& out_csv) {
    mlev::ExperimentConfig cfg = mlev::ExperimentConfig::from_file(config_path);
    if (!cfg.is_tpa()) throw mlev::ConfigError("temporal diagnostic needs a TPA problem");
    const auto grid = std::make_shared<const mlev::SpectralGrid>(cfg.n_sim, cfg.omega_max);
    const std::size_t n =
        pixels != 0 ? pixels : (cfg.mode == mlev::ExperimentConfig::Mode::Direct ? cfg.n_direct
                                                                                 : cfg.n_final);
    mlev::DecisionVector phi;
    if (phase == "flat")
        phi.assign(n, 0.0);
    else if (phase == "compensating")
        phi = mlev::compensating_phase(mlev::tpa_profile(cfg.tpa_profile_index()), *grid, n);
    else
        throw mlev::ConfigError("unknown phase: " + phase + " (flat|compensating)");

    const auto field = mlev::temporal_field(phi, *grid);
    mlev::write_temporal_csv(field, *grid, out_csv);
    std::cout << "temporal envelope: " << out_csv << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-level evolution strategy experiment harness"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute an experiment config");
    std::string run_config;
    std::uint64_t run_seed = 0;
    std::size_t run_reps = 0, run_jobs = 0;
    std::string run_out;
    bool run_verbose = false;
    run->add_option("config", run_config, "experiment config file")->required();
    auto* seed_opt = run->add_option("--seed", run_seed, "override base_seed");
    run->add_option("--reps", run_reps, "override repetitions");
    run->add_option("--jobs", run_jobs, "worker threads (default: cores)");
    run->add_option("--out", run_out, "override output directory");
    run->add_flag("--verbose", run_verbose, "per-run progress on stderr");

    // compare
    auto* compare = app.add_subcommand("compare", "statistical comparison of summaries");
    std::vector<std::string> cmp_files;
    std::string cmp_out;
    compare->add_option("summaries", cmp_files, "summary.csv files")->required()
        ->expected(-2);
    compare->add_option("--out", cmp_out, "also write the report as CSV");

    // figure
    auto* figure = app.add_subcommand("figure", "emit figure data as CSV");
    std::string fig_kind, fig_out = "figure.csv";
    std::vector<std::string> fig_dirs;
    double fig_percentile = 50.0;
    figure->add_option("kind", fig_kind, "convergence | boxplot")->required();
    figure->add_option("dirs", fig_dirs, "trace directories")->required()->expected(-1);
    figure->add_option("--percentile", fig_percentile, "run percentile (default 50)");
    figure->add_option("--out", fig_out, "output CSV path");

    // temporal
    auto* temporal = app.add_subcommand("temporal", "dump the time-domain envelope");
    std::string tmp_config, tmp_phase = "flat", tmp_out = "temporal.csv";
    std::size_t tmp_pixels = 0;
    temporal->add_option("config", tmp_config, "TPA experiment config")->required();
    temporal->add_option("--phase", tmp_phase, "flat | compensating");
    temporal->add_option("--pixels", tmp_pixels, "pixel count (default: final dimension)");
    temporal->add_option("--out", tmp_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(run_config, run_seed, seed_opt->count() > 0, run_reps, run_jobs,
                           run_out, run_verbose);
        if (compare->parsed()) return cmd_compare(cmp_files, cmp_out);
        if (figure->parsed()) return cmd_figure(fig_kind, fig_dirs, fig_percentile, fig_out);
        if (temporal->parsed()) return cmd_temporal(tmp_config, tmp_phase, tmp_pixels, tmp_out);
    } catch (const mlev::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
