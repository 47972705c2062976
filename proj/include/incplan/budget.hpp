#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>

namespace incplan {

enum class BudgetMode {
    WallClock, // stop when elapsed wall time reaches the limit
    Iterations // stop after a fixed number of planner iterations
};

/// Per-query computational allowance. Iteration budgets exist for bitwise
/// reproducibility: in that mode planner control flow never consults the
/// clock, so runs are identical across machines and repetitions.
struct Budget {
    BudgetMode mode = BudgetMode::WallClock;
    double wall_seconds = 0.0;
    std::uint64_t iteration_limit = 0;

    static Budget wall(double seconds) {
        if (!(seconds > 0.0)) {
            throw std::invalid_argument("wall budget must be positive");
        }
        return Budget{BudgetMode::WallClock, seconds, 0};
    }

    static Budget iterations(std::uint64_t count) {
        if (count == 0) {
            throw std::invalid_argument("iteration budget must be positive");
        }
        return Budget{BudgetMode::Iterations, 0.0, count};
    }
};

/// Tracks consumption of one query's budget. Planners call tick() once per
/// unit of work (sample drawn or queue element popped) and poll expired().
class BudgetTracker {
  public:
    explicit BudgetTracker(const Budget &budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void tick(std::uint64_t n = 1) { used_ += n; }
    std::uint64_t used_iterations() const { return used_; }

    double elapsed_seconds() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(now - start_).count();
    }

    bool expired() const {
        if (budget_.mode == BudgetMode::Iterations) {
            return used_ >= budget_.iteration_limit;
        }
        return elapsed_seconds() >= budget_.wall_seconds;
    }

    /// Unused remainder, for handing the tail of a query budget to a
    /// post-processing stage. Exhausted budgets yield a remainder that is
    /// already expired (built directly: the factories reject zero).
    Budget remaining() const {
        if (budget_.mode == BudgetMode::Iterations) {
            const std::uint64_t left =
                used_ >= budget_.iteration_limit ? 0 : budget_.iteration_limit - used_;
            return Budget{BudgetMode::Iterations, 0.0, left};
        }
        const double left = budget_.wall_seconds - elapsed_seconds();
        return Budget{BudgetMode::WallClock, left > 0.0 ? left : 0.0, 0};
    }

  private:
    Budget budget_;
    std::uint64_t used_ = 0;
    std::chrono::steady_clock::time_point start_;
};

} // namespace incplan
