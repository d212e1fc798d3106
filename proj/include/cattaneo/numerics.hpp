#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cattaneo {

/// Neumaier-compensated accumulator. Order of additions is the caller's
/// responsibility; results are reproducible for a fixed order.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum s;
    for (double x : xs) s += x;
    return s.value();
}

/// Composite Simpson weights for `count` uniform nodes with spacing h.
/// `count` must be odd and at least 3.
inline std::vector<double> simpson_weights(std::size_t count, double h) {
    std::vector<double> w(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        if (i == 0 || i + 1 == count)
            w[i] = h / 3.0;
        else
            w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    }
    return w;
}

/// Largest exponent whose exponential is reported directly.
inline constexpr double kSaturationExponent = 700.0;

}  // namespace cattaneo
