#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <utility>

#include "dcopt/instgen.hpp"
#include "dcopt/tsp.hpp"
#include "test_util.hpp"

using namespace dcopt;
using testutil::example_tsp;

namespace {

TEST(TspEfficiency, WorkedExampleCoefficients) {
    const auto eff = tsp_efficiency(example_tsp());
    // twice the row sums of the printed matrix
    const double expected[] = {4.72, 5.12, 4.24, 9.34, 4.46, 4.44};
    for (int u = 0; u < 6; ++u) EXPECT_NEAR(eff.g[u], expected[u], 1e-12);
    EXPECT_EQ(eff.order, (std::vector<int>{2, 5, 4, 0, 1, 3}));
}

TEST(TspEfficiency, SymmetricEqualsTwiceRowSum) {
    GenSpec gs;
    gs.problem = ProblemKind::tsp_ms;
    gs.n = 12;
    gs.seed = 8;
    const TspInstance inst = gen_tsp(gs);
    const auto eff = tsp_efficiency(inst);
    for (int u = 0; u < inst.n; ++u) {
        double row = 0;
        for (int v = 0; v < inst.n; ++v) row += inst(u, v);
        EXPECT_NEAR(eff.g[u], 2 * row, 1e-12);
    }
}

TEST(TspEfficiency, UniformShiftLeavesOrderUnchanged) {
    TspInstance inst = example_tsp();
    const auto before = tsp_efficiency(inst);
    const double kappa = 0.37;
    for (int u = 0; u < inst.n; ++u)
        for (int v = 0; v < inst.n; ++v)
            if (u != v) inst.at(u, v) += kappa;
    const auto after = tsp_efficiency(inst);
    EXPECT_EQ(after.order, before.order);
    for (int u = 0; u < inst.n; ++u)
        EXPECT_NEAR(after.g[u] - before.g[u], 2 * kappa * (inst.n - 1), 1e-9);
}

TEST(TspSplit, WorkedExampleWithPrintedOrder) {
    // The example's printed efficiency row orders the vertices
    // v3, v5, v2, v6, v1, v4; the split interleaves that order.
    const auto split = tsp_split(example_tsp(), {2, 4, 1, 5, 0, 3});
    EXPECT_EQ(split.left_map, (std::vector<int>{2, 1, 0}));   // v3 v2 v1
    EXPECT_EQ(split.right_map, (std::vector<int>{4, 5, 3}));  // v5 v6 v4
    EXPECT_TRUE(split.left.symmetric);
    EXPECT_TRUE(split.left.metric);
    // induced submatrix spot-check, all pairs
    const auto parent = example_tsp();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            EXPECT_EQ(split.left(a, b), parent(split.left_map[a], split.left_map[b]));
            EXPECT_EQ(split.right(a, b), parent(split.right_map[a], split.right_map[b]));
        }
}

TEST(TspSplit, IncreasingEfficiencyByIndex) {
    TspInstance inst;
    inst.n = 6;
    inst.symmetric = true;
    inst.dist.assign(36, 0.0);
    for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v)
            if (u != v) inst.at(u, v) = 1.0 + 0.1 * (u + v);
    const auto split = tsp_split(inst);
    EXPECT_EQ(split.left_map, (std::vector<int>{0, 2, 4}));
    EXPECT_EQ(split.right_map, (std::vector<int>{1, 3, 5}));
}

TEST(TspSplit, RejectsFewerThanSixVertices) {
    GenSpec gs;
    gs.problem = ProblemKind::tsp_ms;
    gs.n = 6;
    gs.seed = 1;
    TspInstance inst = gen_tsp(gs);
    inst.n = 5;
    inst.dist.resize(25);
    EXPECT_THROW(tsp_split(inst), std::invalid_argument);
}

TEST(TspMerge, WorkedExampleArcExact) {
    // Child cycles (v1,v2,v3) and (v4,v6,v5): the most expensive arcs
    // (v1,v2) at 0.61 and (v4,v6) at 1.07 get replaced by (v1,v6) and
    // (v4,v2), giving the cycle v1 v6 v5 v4 v2 v3.
    const auto inst = example_tsp();
    Tour left{{0, 1, 2}, 0.0};
    left.cost = tour_cost(inst, left.order);
    Tour right{{3, 5, 4}, 0.0};
    right.cost = tour_cost(inst, right.order);
    const auto merged = tsp_merge(left, right, inst);
    EXPECT_EQ(merged.order, (std::vector<int>{0, 5, 4, 3, 1, 2}));
    EXPECT_NEAR(merged.cost, 2.66, 1e-9);
    EXPECT_NEAR(merged.cost,
                left.cost + right.cost - inst(0, 1) - inst(3, 5) + inst(0, 5) + inst(3, 1),
                1e-12);
    EXPECT_TRUE(tour_is_hamiltonian(inst, merged));
}

TEST(TspMerge, EqualArcsTieBreakToFirstPosition) {
    TspInstance inst;
    inst.n = 6;
    inst.symmetric = true;
    inst.dist.assign(36, 1.0);
    for (int u = 0; u < 6; ++u) inst.at(u, u) = 0.0;
    Tour left{{0, 1, 2}, 3.0};
    Tour right{{3, 4, 5}, 3.0};
    const auto merged = tsp_merge(left, right, inst);
    // arcs (0,1) and (3,4) removed, splice at position 0 of both
    EXPECT_EQ(merged.order, (std::vector<int>{0, 4, 5, 3, 1, 2}));
    EXPECT_DOUBLE_EQ(merged.cost, 6.0);
}

TEST(TspMerge, SpliceIdentityOnRandomSplits) {
    for (int s = 0; s < 50; ++s) {
        GenSpec gs;
        gs.problem = (s % 3 == 0)   ? ProblemKind::tsp_ms
                     : (s % 3 == 1) ? ProblemKind::tsp_ma
                                    : ProblemKind::tsp_nms;
        gs.n = 20;
        gs.seed = trial_seed(404, s);
        const TspInstance inst = gen_tsp(gs);
        const auto split = tsp_split(inst);
        Tour left = tsp_solve_heuristic(split.left);
        Tour right = tsp_solve_heuristic(split.right);
        for (auto& v : left.order) v = split.left_map[v];
        for (auto& v : right.order) v = split.right_map[v];
        left.cost = tour_cost(inst, left.order);
        right.cost = tour_cost(inst, right.order);

        // independent max-arc scan
        auto max_arc = [&](const std::vector<int>& order) {
            int arg = 0;
            const int m = static_cast<int>(order.size());
            for (int i = 1; i < m; ++i)
                if (inst(order[i], order[(i + 1) % m]) >
                    inst(order[arg], order[(arg + 1) % m]))
                    arg = i;
            return arg;
        };
        const int i = max_arc(left.order);
        const int j = max_arc(right.order);
        const int p = static_cast<int>(left.order.size());
        const int q = static_cast<int>(right.order.size());
        const double expected = left.cost + right.cost -
                                inst(left.order[i], left.order[(i + 1) % p]) -
                                inst(right.order[j], right.order[(j + 1) % q]) +
                                inst(left.order[i], right.order[(j + 1) % q]) +
                                inst(right.order[j], left.order[(i + 1) % p]);
        const auto merged = tsp_merge(left, right, inst);
        ASSERT_TRUE(tour_is_hamiltonian(inst, merged));
        ASSERT_NEAR(merged.cost, expected, 1e-9 * std::max(1.0, expected))
            << "seed index " << s;
    }
}

TEST(TspMerge, RejectsBadCovers) {
    const auto inst = example_tsp();
    Tour left{{0, 1, 2}, 1.0};
    Tour overlap{{2, 3, 4}, 1.0};
    EXPECT_THROW(tsp_merge(left, overlap, inst), std::invalid_argument);
    Tour incomplete{{3, 4}, 1.0};
    EXPECT_THROW(tsp_merge(left, incomplete, inst), std::invalid_argument);
}

TEST(TspExact, ThreeVertexCycle) {
    TspInstance inst;
    inst.n = 3;
    inst.symmetric = false;
    inst.dist = {0, 1, 4, 2, 0, 1, 1, 3, 0};
    // (0,1,2): 1+1+1 = 3; (0,2,1): 4+3+2 = 9
    const auto tour = tsp_solve_exact(inst);
    EXPECT_EQ(tour.order, (std::vector<int>{0, 1, 2}));
    EXPECT_DOUBLE_EQ(tour.cost, 3.0);

    // the reverse direction wins when the matrix is transposed
    TspInstance rev = inst;
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) rev.at(u, v) = inst(v, u);
    EXPECT_EQ(tsp_solve_exact(rev).order, (std::vector<int>{0, 2, 1}));
}

TEST(TspExact, AllEqualDistancesLexSmallest) {
    TspInstance inst;
    inst.n = 5;
    inst.symmetric = true;
    inst.dist.assign(25, 2.5);
    for (int u = 0; u < 5; ++u) inst.at(u, u) = 0.0;
    const auto tour = tsp_solve_exact(inst);
    EXPECT_EQ(tour.order, (std::vector<int>{0, 1, 2, 3, 4}));
    EXPECT_DOUBLE_EQ(tour.cost, 12.5);
}

TEST(TspExact, MatchesBruteForceOnSeededInstances) {
    for (int s = 0; s < 100; ++s) {
        GenSpec gs;
        gs.problem = (s % 3 == 0)   ? ProblemKind::tsp_ms
                     : (s % 3 == 1) ? ProblemKind::tsp_ma
                                    : ProblemKind::tsp_nms;
        gs.n = 6 + s % 4;  // 6..9
        gs.seed = trial_seed(1212, s);
        const TspInstance inst = gen_tsp(gs);
        const auto fast = tsp_solve_exact(inst);
        const auto slow = testutil::brute_force_tour(inst);
        ASSERT_TRUE(tour_is_hamiltonian(inst, fast));
        ASSERT_NEAR(fast.cost, slow.cost, 1e-9 * std::max(1.0, slow.cost))
            << "seed index " << s;
        ASSERT_NEAR(fast.cost, tour_cost(inst, fast.order), 1e-12);
    }
}

TEST(TspExact, CircleInstanceOptimumIsFullRevolution) {
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int n : {8, 12}) {
        GenSpec gs;
        gs.problem = ProblemKind::tsp_ma;
        gs.n = n;
        gs.seed = 33;
        const TspInstance inst = gen_tsp(gs);
        const auto tour = tsp_solve_exact(inst);
        EXPECT_NEAR(tour.cost, two_pi, 1e-9);
    }
}

TEST(TspExact, RejectsAboveExactLimit) {
    GenSpec gs;
    gs.problem = ProblemKind::tsp_ms;
    gs.n = 19;
    gs.seed = 1;
    const TspInstance inst = gen_tsp(gs);
    try {
        tsp_solve_exact(inst);
        FAIL() << "expected size rejection";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("exceeds exact limit 18"),
                  std::string::npos);
    }
    EXPECT_NO_THROW(tsp_solve_exact(inst, 19));
}

TEST(TspHeuristic, AllEqualDistancesCostIsNTimesD) {
    TspInstance inst;
    inst.n = 7;
    inst.symmetric = true;
    inst.dist.assign(49, 0.8);
    for (int u = 0; u < 7; ++u) inst.at(u, u) = 0.0;
    const auto tour = tsp_solve_heuristic(inst);
    EXPECT_NEAR(tour.cost, 7 * 0.8, 1e-12);
}

TEST(TspHeuristic, NeverBeatsExactOnSymmetricInstances) {
    for (int s = 0; s < 30; ++s) {
        GenSpec gs;
        gs.problem = ProblemKind::tsp_ms;
        gs.n = 10;
        gs.seed = trial_seed(555, s);
        const TspInstance inst = gen_tsp(gs);
        const auto heur = tsp_solve_heuristic(inst);
        const auto exact = tsp_solve_exact(inst);
        ASSERT_TRUE(tour_is_hamiltonian(inst, heur));
        ASSERT_GE(heur.cost, exact.cost - 1e-9);
    }
}

TEST(TspHeuristic, LargeSymmetricInstanceUnderASecond) {
    GenSpec gs;
    gs.problem = ProblemKind::tsp_ms;
    gs.n = 120;
    gs.seed = 3;
    const TspInstance inst = gen_tsp(gs);
    const auto run = timed([](const TspInstance& x) { return tsp_solve_heuristic(x); },
                           inst);
    EXPECT_TRUE(tour_is_hamiltonian(inst, run.solution));
    EXPECT_LT(run.wall_time, 1.0);
}

TEST(TspDc, SixVertexChildrenAreTriangles) {
    const auto inst = example_tsp();
    const auto dc = tsp_dc(inst, TspOracle::exact);
    EXPECT_TRUE(tour_is_hamiltonian(inst, dc.combined));
    EXPECT_GE(dc.objective, tsp_solve_exact(inst).cost - 1e-9);
}

TEST(TspDc, WorkedExampleWithPrintedSplitMatchesFigure) {
    // With the example's printed split, exact child cycles merge to the
    // figure's tour (up to rotation and, on this symmetric instance,
    // direction) at cost 2.66.
    const auto inst = example_tsp();
    const auto split = tsp_split(inst, {2, 4, 1, 5, 0, 3});
    Tour left = tsp_solve_exact(split.left);
    Tour right = tsp_solve_exact(split.right);
    for (auto& v : left.order) v = split.left_map[v];
    for (auto& v : right.order) v = split.right_map[v];
    left.cost = tour_cost(inst, left.order);
    right.cost = tour_cost(inst, right.order);
    const auto merged = tsp_merge(left, right, inst);
    EXPECT_TRUE(tour_is_hamiltonian(inst, merged));
    EXPECT_NEAR(merged.cost, 2.66, 1e-9);
    // the undirected arc set matches the figure's cycle
    std::set<std::pair<int, int>> arcs;
    for (int i = 0; i < 6; ++i) {
        const int a = merged.order[i], b = merged.order[(i + 1) % 6];
        arcs.insert({std::min(a, b), std::max(a, b)});
    }
    const std::set<std::pair<int, int>> figure = {{0, 5}, {4, 5}, {3, 4},
                                                  {1, 3}, {1, 2}, {0, 2}};
    EXPECT_EQ(arcs, figure);
}

TEST(TspDc, ExactOracleNeverBeatsOptimum) {
    for (int s = 0; s < 200; ++s) {
        GenSpec gs;
        gs.problem = ProblemKind::tsp_ms;
        gs.n = 12;
        gs.seed = trial_seed(321, s);
        const TspInstance inst = gen_tsp(gs);
        const auto dc = tsp_dc(inst, TspOracle::exact);
        const auto opt = tsp_solve_exact(inst);
        ASSERT_TRUE(tour_is_hamiltonian(inst, dc.combined));
        ASSERT_GE(dc.objective, opt.cost - 1e-9 * std::max(1.0, opt.cost))
            << "seed index " << s;
    }
}

TEST(TspDc, RejectsSmallInstances) {
    TspInstance inst;
    inst.n = 5;
    inst.symmetric = true;
    inst.dist.assign(25, 1.0);
    for (int u = 0; u < 5; ++u) inst.at(u, u) = 0.0;
    EXPECT_THROW(tsp_dc(inst, TspOracle::exact), std::invalid_argument);
}

TEST(TspValidate, CatchesBadMatrices) {
    TspInstance inst = example_tsp();
    EXPECT_NO_THROW(tsp_validate(inst));
    inst.at(2, 2) = 0.1;
    EXPECT_THROW(tsp_validate(inst), std::invalid_argument);

    inst = example_tsp();
    inst.at(1, 2) += 0.5;  // breaks symmetry under the sym flag
    EXPECT_THROW(tsp_validate(inst), std::invalid_argument);

    inst = example_tsp();
    inst.dist.pop_back();
    EXPECT_THROW(tsp_validate(inst), std::invalid_argument);
}

TEST(TspValidate, MetricCheckOnDemand) {
    GenSpec gs;
    gs.problem = ProblemKind::tsp_ms;
    gs.n = 15;
    gs.seed = 6;
    EXPECT_TRUE(tsp_is_metric(gen_tsp(gs)));
    gs.problem = ProblemKind::tsp_ma;
    EXPECT_TRUE(tsp_is_metric(gen_tsp(gs)));
}

}  // namespace
