#pragma once

#include "mlev/errors.hpp"

#include <cstddef>
#include <vector>

namespace mlev {

/// Doubling grid-enlargement plan: N_i, 2 N_i, 4 N_i, ..., N_f.
class LevelSchedule {
  public:
    static constexpr std::size_t kRatio = 2;

    LevelSchedule(std::size_t initial_dim, std::size_t final_dim)
        : initial_(initial_dim), final_(final_dim) {
        if (initial_ == 0) throw ConfigError("schedule: initial dimension must be positive");
        std::size_t n = initial_;
        while (n < final_) {
            if (n > final_ / kRatio) // would overshoot
                throw ConfigError("schedule: final dimension must be initial * 2^k");
            n *= kRatio;
        }
        if (n != final_) throw ConfigError("schedule: final dimension must be initial * 2^k");
    }

    std::size_t initial_dim() const { return initial_; }
    std::size_t final_dim() const { return final_; }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> out;
        for (std::size_t n = initial_; n <= final_; n *= kRatio) {
            out.push_back(n);
            if (n == final_) break;
        }
        return out;
    }

    std::size_t level_count() const { return dims().size(); }

  private:
    std::size_t initial_;
    std::size_t final_;
};

} // namespace mlev
