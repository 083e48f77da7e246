#include "mlev/config.hpp"

#include "mlev/errors.hpp"
#include "mlev/sphere.hpp"
#include "mlev/tpa.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mlev {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("bad integer value for " + key + ": '" + v + "'");
    return x;
}

} // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return from_string(text.str(), std::filesystem::path(path).stem().string());
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text, const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(name + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(name + ":" + std::to_string(line_no) + ": empty key or value");

        if (key == "problem") {
            cfg.problem = value;
        } else if (key == "strategy") {
            cfg.strategy = strategy_from_string(value);
        } else if (key == "mode") {
            if (value == "direct")
                cfg.mode = Mode::Direct;
            else if (value == "mlev")
                cfg.mode = Mode::Mlev;
            else
                throw ConfigError("unknown mode: " + value);
        } else if (key == "operator") {
            cfg.op = upscale_op_from_string(value);
            cfg.op_set = true;
        } else if (key == "n_initial") {
            cfg.n_initial = parse_uint(key, value);
        } else if (key == "n_final") {
            cfg.n_final = parse_uint(key, value);
        } else if (key == "n_direct") {
            cfg.n_direct = parse_uint(key, value);
        } else if (key == "tc") {
            if (value == "fixed-target")
                cfg.tc_kind = TerminationCriterion::Kind::FixedTarget;
            else if (value == "stagnation")
                cfg.tc_kind = TerminationCriterion::Kind::Stagnation;
            else if (value == "fixed-budget")
                cfg.tc_kind = TerminationCriterion::Kind::FixedBudget;
            else
                throw ConfigError("unknown tc: " + value);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_real(key, value);
        } else if (key == "theta") {
            cfg.theta = parse_real(key, value);
        } else if (key == "budget_per_level") {
            cfg.budget_per_level = parse_uint(key, value);
        } else if (key == "budget_unit") {
            if (value == "evaluations")
                cfg.budget_unit = BudgetUnit::Evaluations;
            else if (value == "generations")
                cfg.budget_unit = BudgetUnit::Generations;
            else if (value == "auto")
                cfg.budget_unit = BudgetUnit::Auto;
            else
                throw ConfigError("unknown budget_unit: " + value);
        } else if (key == "sigma0") {
            cfg.sigma0 = parse_real(key, value);
        } else if (key == "repetitions") {
            cfg.repetitions = parse_uint(key, value);
        } else if (key == "base_seed") {
            cfg.base_seed = parse_uint(key, value);
        } else if (key == "global_budget") {
            cfg.global_budget = parse_uint(key, value);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "n_sim") {
            cfg.n_sim = parse_uint(key, value);
        } else if (key == "omega_max") {
            cfg.omega_max = parse_real(key, value);
        } else {
            throw ConfigError(name + ":" + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }
    cfg.validate();
    return cfg;
}

bool ExperimentConfig::is_tpa() const { return tpa_profile_index() >= 0; }

int ExperimentConfig::tpa_profile_index() const {
    if (problem == "sphere") return -1;
    if (problem.rfind("tpa-", 0) == 0 && problem.size() == 5 && problem[4] >= '0' &&
        problem[4] <= '3')
        return problem[4] - '0';
    throw ConfigError("unknown problem: " + problem);
}

void ExperimentConfig::validate() const {
    tpa_profile_index(); // validates the problem name

    if (repetitions == 0) throw ConfigError("repetitions must be >= 1");

    if (mode == Mode::Direct) {
        if (n_direct == 0) throw ConfigError("direct mode requires n_direct");
    } else {
        if (n_initial == 0 || n_final == 0)
            throw ConfigError("mlev mode requires n_initial and n_final");
        if (!op_set) throw ConfigError("mlev mode requires an upscale operator");
        LevelSchedule schedule(n_initial, n_final); // validates the doubling chain
        if (op == UpscaleOp::Linear && n_initial < 2)
            throw ConfigError("U-2 needs n_initial >= 2");
        if (op == UpscaleOp::Cubic && n_initial < 4)
            throw ConfigError("U-3 needs n_initial >= 4");
    }

    switch (tc_kind) {
    case TerminationCriterion::Kind::FixedTarget:
        if (!(epsilon > 0.0)) throw ConfigError("tc fixed-target requires epsilon > 0");
        break;
    case TerminationCriterion::Kind::Stagnation:
        if (!(theta > 0.0)) throw ConfigError("tc stagnation requires theta > 0");
        break;
    case TerminationCriterion::Kind::FixedBudget:
        if (budget_per_level == 0)
            throw ConfigError("tc fixed-budget requires budget_per_level > 0");
        break;
    }

    if (sigma0 < 0.0) throw ConfigError("sigma0 must be positive");

    if (is_tpa()) {
        if (n_sim < 2 || (n_sim & (n_sim - 1)) != 0)
            throw ConfigError("n_sim must be a power of two");
        if (!(omega_max > 0.0)) throw ConfigError("omega_max must be positive");
        auto check_dim = [&](std::size_t n) {
            if (n == 0 || n_sim % n != 0)
                throw ConfigError("pixel count " + std::to_string(n) +
                                  " does not divide n_sim = " + std::to_string(n_sim));
        };
        if (mode == Mode::Direct) {
            check_dim(n_direct);
        } else {
            for (std::size_t n : LevelSchedule(n_initial, n_final).dims()) check_dim(n);
        }
    }
}

std::shared_ptr<ProblemModel> ExperimentConfig::make_model() const {
    const int profile = tpa_profile_index();
    if (profile < 0) return std::make_shared<SphereModel>();
    auto grid = std::make_shared<const SpectralGrid>(n_sim, omega_max);
    return std::make_shared<TpaModel>(std::move(grid), profile);
}

TerminationCriterion ExperimentConfig::make_tc() const {
    switch (tc_kind) {
    case TerminationCriterion::Kind::FixedTarget:
        return TerminationCriterion::fixed_target(epsilon);
    case TerminationCriterion::Kind::Stagnation:
        return TerminationCriterion::stagnation_for(strategy, theta);
    case TerminationCriterion::Kind::FixedBudget:
        return TerminationCriterion::fixed_budget(budget_per_level, budget_unit);
    }
    throw ConfigError("unreachable tc kind");
}

LevelSchedule ExperimentConfig::make_schedule() const {
    if (mode == Mode::Direct) return LevelSchedule(n_direct, n_direct);
    return LevelSchedule(n_initial, n_final);
}

double ExperimentConfig::resolved_sigma0(const ProblemModel& model) const {
    return sigma0 > 0.0 ? sigma0 : model.default_sigma0();
}

std::string ExperimentConfig::resolved_out_dir() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("MLEV_OUT_DIR"); env != nullptr && *env != '\0')
        return (std::filesystem::path(env) / name).string();
    return (std::filesystem::path("out") / name).string();
}

} // namespace mlev
