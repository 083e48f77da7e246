#include "mlev/trace.hpp"

#include "mlev/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <system_error>

namespace mlev {

std::string to_string(TerminalStatus s) {
    switch (s) {
    case TerminalStatus::TargetHit: return "target-hit";
    case TerminalStatus::Stagnated: return "stagnated";
    case TerminalStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

TerminalStatus status_from_string(const std::string& s) {
    if (s == "target-hit") return TerminalStatus::TargetHit;
    if (s == "stagnated") return TerminalStatus::Stagnated;
    if (s == "budget-exhausted") return TerminalStatus::BudgetExhausted;
    throw ConfigError("unknown terminal status: " + s);
}

namespace {

const char* kHeader = "evaluation_index,objective_value,sigma,sigma_star,level,n_level";

// Shortest round-trip representation.
void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

double parse_double(const char* first, const char* last) {
    double v = 0.0;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{}) throw ConfigError("trace: malformed number");
    return v;
}

} // namespace

void RunTrace::write_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);

    std::string buf;
    buf.reserve(1 << 20);
    buf += kHeader;
    buf += '\n';
    for (const auto& r : records) {
        buf += std::to_string(r.eval_index);
        buf += ',';
        append_double(buf, r.objective);
        buf += ',';
        append_double(buf, r.sigma);
        buf += ',';
        if (!std::isnan(r.sigma_star)) append_double(buf, r.sigma_star);
        buf += ',';
        buf += std::to_string(r.level);
        buf += ',';
        buf += std::to_string(r.dim);
        buf += '\n';
        if (buf.size() > (1 << 20) - 256) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    buf += "# status: ";
    buf += to_string(status);
    buf += '\n';
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

RunTrace RunTrace::read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);

    RunTrace trace;
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw ConfigError("trace: unexpected header in " + path);

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("status:");
            if (pos != std::string::npos) {
                auto s = line.substr(pos + 7);
                const auto b = s.find_first_not_of(' ');
                trace.status = status_from_string(b == std::string::npos ? s : s.substr(b));
            }
            continue;
        }
        EvalRecord r{};
        const char* p = line.data();
        const char* end = p + line.size();
        auto next_field = [&](const char*& cursor) {
            const char* start = cursor;
            while (cursor < end && *cursor != ',') ++cursor;
            const char* stop = cursor;
            if (cursor < end) ++cursor; // skip comma
            return std::pair<const char*, const char*>(start, stop);
        };
        auto [a0, b0] = next_field(p);
        std::from_chars(a0, b0, r.eval_index);
        auto [a1, b1] = next_field(p);
        r.objective = parse_double(a1, b1);
        auto [a2, b2] = next_field(p);
        r.sigma = parse_double(a2, b2);
        auto [a3, b3] = next_field(p);
        r.sigma_star = (a3 == b3) ? std::numeric_limits<double>::quiet_NaN()
                                  : parse_double(a3, b3);
        auto [a4, b4] = next_field(p);
        std::from_chars(a4, b4, r.level);
        auto [a5, b5] = next_field(p);
        std::from_chars(a5, b5, r.dim);
        trace.records.push_back(r);
    }
    return trace;
}

} // namespace mlev
