#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace cifs {

/// Worker count: CIFS_LAB_THREADS if set to a positive integer, else hardware concurrency.
std::size_t thread_count();

/// Calls `body(i)` for every i in [0, count) across `thread_count()` workers.
/// Callers write results into slot i, so merging in index order stays deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

/// Neumaier-compensated accumulator.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    void   add(const CompensatedSum &other) {
        add(other.sum_);
        add(other.carry_);
    }
    double value() const { return sum_ + carry_; }

  private:
    double sum_   = 0.0;
    double carry_ = 0.0;
};

} // namespace cifs
