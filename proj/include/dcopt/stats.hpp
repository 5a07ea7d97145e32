#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

namespace dcopt {

struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased, divisor n-1
};

inline SampleStats compute_stats(std::span<const double> values) {
    if (values.size() < 2)
        throw std::invalid_argument("compute_stats: need at least two samples");
    SampleStats s;
    s.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.n - 1);
    return s;
}

// Solution- and time-fraction percentages of a divide-and-conquer run
// against the full-instance solve.
struct PerfPair {
    double solution_fraction = 0.0;
    double time_fraction = 0.0;
};

// Number of Bernoulli trials for a 95% confidence interval at half-width
// 0.05: ceil((1.96/0.05)^2 * variance).
inline long long bernoulli_trials(double variance) {
    if (variance < 0.0)
        throw std::invalid_argument("bernoulli_trials: variance must be nonnegative");
    const double factor = (1.96 / 0.05) * (1.96 / 0.05);
    return static_cast<long long>(std::ceil(factor * variance));
}

// 95% confidence interval, mean -/+ 1.96 * sqrt(variance / n).
inline std::pair<double, double> confidence_interval(const SampleStats& stats) {
    if (stats.n < 2)
        throw std::invalid_argument("confidence_interval: need at least two samples");
    const double half =
        1.96 * std::sqrt(stats.variance / static_cast<double>(stats.n));
    return {stats.mean - half, stats.mean + half};
}

// Maximization orientation (d-KP): the D&C value sits in the numerator.
inline PerfPair perf_dkp(double z_dc, double z_star, double t_dc, double t_star) {
    if (z_star <= 0.0) throw std::invalid_argument("perf_dkp: z_star must be positive");
    if (t_star <= 0.0) throw std::invalid_argument("perf_dkp: t_star must be positive");
    return {100.0 * z_dc / z_star, 100.0 * t_dc / t_star};
}

// Minimization orientation (BPP, TSP): the fraction is inverted to keep it
// normalized, so values above 100 are legal when D&C happens to win.
inline PerfPair perf_min(double z_full, double z_dc, double t_dc, double t_full) {
    if (z_dc <= 0.0) throw std::invalid_argument("perf_min: z_dc must be positive");
    if (t_full <= 0.0) throw std::invalid_argument("perf_min: t_full must be positive");
    return {100.0 * z_full / z_dc, 100.0 * t_dc / t_full};
}

}  // namespace dcopt
