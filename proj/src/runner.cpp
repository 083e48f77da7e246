#include "mlev/runner.hpp"

#include "mlev/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace mlev {

namespace {

std::string run_file_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "trace_%04zu.csv", index);
    return buf;
}

void write_summary_csv(const std::string& path, const std::vector<RunSummary>& runs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open summary file for writing: " + path);
    out << "run,seed,evaluations,final_objective,status,censored\n";
    for (const auto& r : runs) {
        char fbuf[32];
        const auto res = std::to_chars(fbuf, fbuf + sizeof(fbuf), r.final_f);
        out << r.run_index << ',' << r.seed << ',' << r.evaluations << ','
            << std::string_view(fbuf, res.ptr - fbuf) << ',' << to_string(r.status) << ','
            << (r.censored ? 1 : 0) << '\n';
    }
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunnerOptions& opts) {
    cfg.validate();

    const fs::path out_dir = cfg.resolved_out_dir();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    // Probe writability before starting any run.
    {
        const fs::path probe = out_dir / ".write_probe";
        std::ofstream f(probe);
        if (!f) throw std::runtime_error("output directory not writable: " + out_dir.string());
        f.close();
        fs::remove(probe, ec);
    }

    const auto model = cfg.make_model();
    const auto schedule = cfg.make_schedule();
    const auto tc = cfg.make_tc();
    MlevOptions run_opts;
    run_opts.sigma0 = cfg.resolved_sigma0(*model);
    run_opts.global_budget = cfg.global_budget;

    const std::size_t reps = cfg.repetitions;
    std::vector<std::optional<MlevResult>> slots(reps);
    std::vector<bool> ready(reps, false);
    std::mutex mtx;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;

    std::size_t jobs = opts.jobs != 0 ? opts.jobs : std::thread::hardware_concurrency();
    jobs = std::clamp<std::size_t>(jobs, 1, reps);

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= reps) return;
            try {
                MlevResult r = run_mlev(*model, schedule, tc, cfg.strategy, cfg.op,
                                        cfg.base_seed + i, run_opts);
                std::lock_guard<std::mutex> lock(mtx);
                slots[i] = std::move(r);
                ready[i] = true;
                cv.notify_all();
            } catch (...) {
                std::lock_guard<std::mutex> lock(mtx);
                if (!failure) failure = std::current_exception();
                ready[i] = true;
                cv.notify_all();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);

    ExperimentResult result;
    result.sample.label = cfg.name;

    // Aggregate in seed order as results become available; the trace files
    // are written by this thread only.
    for (std::size_t i = 0; i < reps; ++i) {
        {
            std::unique_lock<std::mutex> lock(mtx);
            cv.wait(lock, [&] { return ready[i]; });
            if (failure) break;
        }
        MlevResult& r = *slots[i];
        const std::string trace_path = (out_dir / run_file_name(i)).string();
        r.trace.write_csv(trace_path);
        result.trace_files.push_back(trace_path);

        RunSummary s;
        s.run_index = i;
        s.seed = cfg.base_seed + i;
        s.censored = r.aborted;
        // A censored run enters the statistics exactly at the budget cap.
        s.evaluations = s.censored ? cfg.global_budget : r.total_evaluations;
        s.final_f = r.final_f;
        s.status = r.status;
        result.runs.push_back(s);
        result.sample.values.push_back(static_cast<double>(s.evaluations));
        result.sample.censored.push_back(s.censored);

        if (!opts.quiet)
            std::fprintf(stderr, "[%s] run %zu/%zu: %llu evaluations, f=%g (%s)\n",
                         cfg.name.c_str(), i + 1, reps,
                         static_cast<unsigned long long>(s.evaluations), s.final_f,
                         to_string(s.status).c_str());
        slots[i].reset();
    }

    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    result.summary_file = (out_dir / "summary.csv").string();
    write_summary_csv(result.summary_file, result.runs);
    return result;
}

SampleSet read_summary_sample(const std::string& summary_path, const std::string& label) {
    std::ifstream in(summary_path);
    if (!in) throw std::runtime_error("cannot open summary file: " + summary_path);
    SampleSet s;
    s.label = label;
    std::string line;
    if (!std::getline(in, line) || line.rfind("run,seed,evaluations", 0) != 0)
        throw ConfigError("unexpected summary header in " + summary_path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw ConfigError("malformed summary row in " + summary_path);
        s.values.push_back(std::stod(fields[2]));
        s.censored.push_back(fields[5] == "1");
    }
    if (s.values.empty()) throw ConfigError("empty summary: " + summary_path);
    return s;
}

ComparisonReport compare_variants(const std::vector<SampleSet>& summaries, double alpha) {
    const std::size_t k = summaries.size();
    if (k < 2) throw StatsError("compare_variants: needs at least two summaries");

    ComparisonReport report;
    for (const auto& s : summaries)
        report.rows.push_back({s.label, describe(s), s.values.size()});

    bool equal_reps = true;
    for (const auto& s : summaries)
        if (s.values.size() != summaries[0].values.size()) equal_reps = false;

    bool run_pairwise = false;
    if (k == 2) {
        // The gate is redundant for a single pair.
        run_pairwise = true;
    } else if (!equal_reps) {
        report.notes.push_back(
            "warning: unequal repetition counts; Friedman gate skipped, pairwise tests only");
        run_pairwise = true;
    } else {
        std::vector<std::vector<double>> treatments;
        treatments.reserve(k);
        for (const auto& s : summaries) treatments.push_back(s.values);
        report.friedman_run = true;
        report.friedman_result = friedman(treatments);
        run_pairwise = report.friedman_result.p < alpha;
        if (!run_pairwise)
            report.notes.push_back("Friedman test does not reject at the " +
                                   std::to_string(alpha) + " level; no pairwise tests run");
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.p_values.assign(k, std::vector<double>(k, nan));
    if (run_pairwise) {
        report.pairwise_run = true;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const double p = mann_whitney_u(summaries[i], summaries[j]).p;
                report.p_values[i][j] = p;
                report.p_values[j][i] = p;
            }

        std::size_t best = 0;
        for (std::size_t i = 1; i < k; ++i)
            if (report.rows[i].stats.mean < report.rows[best].stats.mean) best = i;
        bool all_significant = true;
        for (std::size_t j = 0; j < k; ++j)
            if (j != best && !(report.p_values[best][j] < alpha)) all_significant = false;
        if (all_significant) report.best_index = best;
    }
    return report;
}

std::string ComparisonReport::render_text() const {
    std::ostringstream out;
    std::size_t width = 8;
    for (const auto& r : rows) width = std::max(width, r.label.size());

    out << std::left << std::setw(static_cast<int>(width)) << "variant" << std::right
        << std::setw(14) << "mean" << std::setw(12) << "ci99" << std::setw(14) << "median"
        << std::setw(6) << "s.r." << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << std::left << std::setw(static_cast<int>(width)) << r.label << std::right
            << std::fixed << std::setprecision(1) << std::setw(14) << r.stats.mean
            << std::setw(12) << r.stats.ci99_halfwidth << std::setw(14) << r.stats.median
            << std::setw(6) << r.stats.success_count;
        if (best_index && *best_index == i) out << "  *best*";
        out << '\n';
        out.unsetf(std::ios::fixed);
    }
    if (friedman_run) {
        out << "Friedman: statistic " << friedman_result.statistic << ", p "
            << friedman_result.p << '\n';
    }
    if (pairwise_run) {
        out << "pairwise Mann-Whitney p-values:\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << "  " << std::left << std::setw(static_cast<int>(width)) << rows[i].label
                << std::right;
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (i == j)
                    out << std::setw(10) << "-";
                else
                    out << std::setw(10) << std::setprecision(4) << p_values[i][j];
            }
            out << '\n';
        }
    }
    for (const auto& n : notes) out << n << '\n';
    return out.str();
}

void ComparisonReport::write_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file for writing: " + path);
    out << "variant,mean,ci99,median,success_runs";
    for (const auto& r : rows) out << ",p_vs_" << r.label;
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << r.label << ',' << r.stats.mean << ',' << r.stats.ci99_halfwidth << ','
            << r.stats.median << ',' << r.stats.success_count;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            out << ',';
            if (i != j && pairwise_run) out << p_values[i][j];
        }
        out << '\n';
    }
    if (friedman_run)
        out << "# friedman statistic " << friedman_result.statistic << " p "
            << friedman_result.p << '\n';
    for (const auto& n : notes) out << "# " << n << '\n';
}

namespace {

struct DirSummary {
    std::vector<std::uint64_t> evaluations; // by run index
};

DirSummary load_dir_summary(const std::string& dir) {
    const fs::path path = fs::path(dir) / "summary.csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing summary.csv in " + dir);
    DirSummary s;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw ConfigError("malformed summary row in " + path.string());
        s.evaluations.push_back(std::stoull(fields[2]));
    }
    if (s.evaluations.empty()) throw ConfigError("empty summary in " + dir);
    return s;
}

} // namespace

void emit_figure_convergence(const std::string& trace_dir, double percentile,
                             const std::string& out_csv) {
    if (!(percentile > 0.0 && percentile <= 100.0))
        throw ConfigError("percentile must be in (0, 100]");
    const DirSummary summary = load_dir_summary(trace_dir);
    const std::size_t count = summary.evaluations.size();

    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return summary.evaluations[a] < summary.evaluations[b];
    });
    // lower percentile index (lower median for even counts)
    auto idx = static_cast<std::size_t>(
        std::ceil(percentile / 100.0 * static_cast<double>(count)));
    idx = std::clamp<std::size_t>(idx, 1, count) - 1;
    const std::size_t run = order[idx];

    const RunTrace trace = RunTrace::read_csv((fs::path(trace_dir) / run_file_name(run)).string());
    std::ofstream out(out_csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open figure file for writing: " + out_csv);
    out << "evaluation_index,objective_value,sigma,sigma_star,level,n_level,level_start\n";
    std::uint32_t last_level = 0;
    for (const auto& r : trace.records) {
        char obj[32], sig[32];
        const auto obj_res = std::to_chars(obj, obj + sizeof(obj), r.objective);
        const auto sig_res = std::to_chars(sig, sig + sizeof(sig), r.sigma);
        out << r.eval_index << ',' << std::string_view(obj, obj_res.ptr - obj) << ','
            << std::string_view(sig, sig_res.ptr - sig) << ',';
        if (!std::isnan(r.sigma_star)) {
            char ss[32];
            const auto ss_res = std::to_chars(ss, ss + sizeof(ss), r.sigma_star);
            out << std::string_view(ss, ss_res.ptr - ss);
        }
        out << ',' << r.level << ',' << r.dim << ',' << (r.level != last_level ? 1 : 0) << '\n';
        last_level = r.level;
    }
}

void emit_figure_boxplot(const std::vector<std::string>& trace_dirs,
                         const std::string& out_csv) {
    if (trace_dirs.empty()) throw ConfigError("boxplot: no trace directories given");
    std::vector<DirSummary> summaries;
    std::size_t rows = 0;
    for (const auto& dir : trace_dirs) {
        summaries.push_back(load_dir_summary(dir));
        rows = std::max(rows, summaries.back().evaluations.size());
    }

    std::ofstream out(out_csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open figure file for writing: " + out_csv);
    for (std::size_t c = 0; c < trace_dirs.size(); ++c) {
        if (c != 0) out << ',';
        out << fs::path(trace_dirs[c]).filename().string();
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < summaries.size(); ++c) {
            if (c != 0) out << ',';
            if (r < summaries[c].evaluations.size()) out << summaries[c].evaluations[r];
        }
        out << '\n';
    }
}

} // namespace mlev
