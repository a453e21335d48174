#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace flagproj {

/// Monte Carlo result: point estimate, standard error of the mean, sample
/// count and the seed of the stream that produced it.
struct MCEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;

    /// |mean - reference| in units of the standard error (infinite if se = 0
    /// and the values differ).
    [[nodiscard]] double z_against(double reference) const {
        double diff = std::abs(mean - reference);
        if (std_err > 0.0) return diff / std_err;
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
};

/// Combined z-score for the difference of two independent estimates.
inline double z_between(const MCEstimate& a, const MCEstimate& b) {
    double se = std::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
    double diff = std::abs(a.mean - b.mean);
    if (se > 0.0) return diff / se;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

/// Streaming accumulator for iid samples.
class Accumulator {
public:
    void add(double x) {
        sum_ += x;
        sum_sq_ += x * x;
        ++n_;
    }

    /// Merge another accumulator (same underlying quantity).
    void merge(const Accumulator& other) {
        sum_ += other.sum_;
        sum_sq_ += other.sum_sq_;
        n_ += other.n_;
    }

    [[nodiscard]] std::int64_t count() const { return n_; }
    [[nodiscard]] double sum() const { return sum_; }

    [[nodiscard]] double mean() const { return n_ > 0 ? sum_ / static_cast<double>(n_) : 0.0; }

    /// Standard error of the mean (population estimate, guards n < 2).
    [[nodiscard]] double std_err() const {
        if (n_ < 2) return 0.0;
        double nd = static_cast<double>(n_);
        double m = sum_ / nd;
        double var = (sum_sq_ - nd * m * m) / (nd - 1.0);
        if (var < 0.0) var = 0.0;  // cancellation guard
        return std::sqrt(var / nd);
    }

    [[nodiscard]] MCEstimate estimate(std::uint64_t seed = 0) const {
        return MCEstimate{mean(), std_err(), n_, seed};
    }

private:
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
    std::int64_t n_ = 0;
};

/// Sum of independent per-group estimates: means add, variances add.
/// Used when an integral splits into a finite sum over faces, each face
/// estimated from its own stream.
class EstimateSum {
public:
    void add(const MCEstimate& e) {
        mean_ += e.mean;
        var_ += e.std_err * e.std_err;
        n_ += e.n;
    }

    [[nodiscard]] MCEstimate total(std::uint64_t seed = 0) const {
        return MCEstimate{mean_, std::sqrt(var_), n_, seed};
    }

private:
    double mean_ = 0.0;
    double var_ = 0.0;
    std::int64_t n_ = 0;
};

}  // namespace flagproj
