#include <gtest/gtest.h>

#include <vector>

#include "dcopt/stats.hpp"

using namespace dcopt;

namespace {

TEST(BernoulliTrials, FrozenValues) {
    // ceil((1.96/0.05)^2 * 1) evaluated independently
    EXPECT_EQ(bernoulli_trials(1.0), 1537);
    EXPECT_EQ(bernoulli_trials(0.0), 0);
    // sigma^2 near 0.65 lands close to the d-KP table's choice of k = 1000
    EXPECT_EQ(bernoulli_trials(0.65), 999);
    EXPECT_THROW(bernoulli_trials(-0.1), std::invalid_argument);
}

TEST(BernoulliTrials, MonotoneInVariance) {
    long long prev = -1;
    for (double v = 0.0; v <= 3.0; v += 0.05) {
        const long long k = bernoulli_trials(v);
        EXPECT_GE(k, prev);
        prev = k;
    }
}

TEST(ConfidenceInterval, DegenerateAndFrozen) {
    const auto exact = confidence_interval({10, 50.0, 0.0});
    EXPECT_DOUBLE_EQ(exact.first, 50.0);
    EXPECT_DOUBLE_EQ(exact.second, 50.0);

    // mean 96.36, variance 4, n = 1000, evaluated independently
    const auto ci = confidence_interval({1000, 96.36, 4.0});
    EXPECT_NEAR(ci.first, 96.23603871572139, 1e-9);
    EXPECT_NEAR(ci.second, 96.4839612842786, 1e-9);
}

TEST(ConfidenceInterval, SymmetricAndShrinking) {
    const SampleStats small{10, 42.0, 2.5};
    const SampleStats large{1000, 42.0, 2.5};
    const auto wide = confidence_interval(small);
    const auto narrow = confidence_interval(large);
    EXPECT_NEAR((wide.first + wide.second) / 2, 42.0, 1e-12);
    EXPECT_LT(narrow.second - narrow.first, wide.second - wide.first);
    EXPECT_NEAR((narrow.second - narrow.first) * 10.0, wide.second - wide.first,
                1e-9);  // widths scale as 1/sqrt(n)
    EXPECT_THROW(confidence_interval({1, 1.0, 1.0}), std::invalid_argument);
}

TEST(ComputeStats, UnbiasedVariance) {
    const std::vector<double> xs{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
    const auto s = compute_stats(xs);
    EXPECT_EQ(s.n, 8u);
    EXPECT_DOUBLE_EQ(s.mean, 5.0);
    EXPECT_DOUBLE_EQ(s.variance, 32.0 / 7.0);
    EXPECT_THROW(compute_stats(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(PerfDkp, OrientationAndEdges) {
    const auto equal = perf_dkp(93, 93, 0.5, 1.0);
    EXPECT_DOUBLE_EQ(equal.solution_fraction, 100.0);
    EXPECT_DOUBLE_EQ(equal.time_fraction, 50.0);

    const auto empty = perf_dkp(0, 93, 0.5, 1.0);
    EXPECT_DOUBLE_EQ(empty.solution_fraction, 0.0);

    EXPECT_THROW(perf_dkp(1, 0, 1, 1), std::invalid_argument);
    EXPECT_THROW(perf_dkp(1, 1, 1, 0), std::invalid_argument);
}

TEST(PerfMin, InvertedOrientationAllowsAbove100) {
    const auto equal = perf_min(4, 4, 0.5, 1.0);
    EXPECT_DOUBLE_EQ(equal.solution_fraction, 100.0);

    // dc occasionally wins on minimization problems; values above 100 are
    // legal
    const auto dc_wins = perf_min(5, 4, 0.5, 1.0);
    EXPECT_GT(dc_wins.solution_fraction, 100.0);

    EXPECT_THROW(perf_min(1, 0, 1, 1), std::invalid_argument);
    EXPECT_THROW(perf_min(1, 1, 1, 0), std::invalid_argument);
}

TEST(PerfPairs, ScaleInvariance) {
    const double lambda = 7.3;
    const auto a = perf_dkp(88, 93, 0.4, 0.9);
    const auto b = perf_dkp(88 * lambda, 93 * lambda, 0.4 * lambda, 0.9 * lambda);
    EXPECT_NEAR(a.solution_fraction, b.solution_fraction, 1e-12);
    EXPECT_NEAR(a.time_fraction, b.time_fraction, 1e-12);

    const auto c = perf_min(5, 7, 0.4, 0.9);
    const auto d = perf_min(5 * lambda, 7 * lambda, 0.4 * lambda, 0.9 * lambda);
    EXPECT_NEAR(c.solution_fraction, d.solution_fraction, 1e-12);
    EXPECT_NEAR(c.time_fraction, d.time_fraction, 1e-12);
}

}  // namespace
