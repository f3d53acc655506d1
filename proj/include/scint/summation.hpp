#pragma once

#include <cmath>

namespace scint {

/// Neumaier compensated accumulator. Ensemble statistics and sub-increment
/// remainders go through this so that results do not depend on how work was
/// chunked across threads (reductions always run in fixed index order, and
/// compensation keeps them accurate enough that the printed 17-digit values
/// are stable).
class NeumaierSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace scint
