#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace dcopt {

// One split of an instance into two subinstances. left_map/right_map give,
// for each item/vertex of the child, its index in the parent instance; the
// two maps partition the parent index set, with odd sorted positions going
// left (so |left| = ceil(N/2)).
template <typename I>
struct SplitPair {
    I left;
    I right;
    std::vector<int> left_map;
    std::vector<int> right_map;
};

template <typename S>
struct TimedSolve {
    S solution;
    double wall_time = 0.0;  // seconds
};

// Result of a divide-and-conquer solve. solve_time is the arithmetic sum
// left_time + right_time, never re-measured.
template <typename S>
struct DcResult {
    S combined;
    double objective = 0.0;
    double solve_time = 0.0;
    double left_time = 0.0;
    double right_time = 0.0;
};

// Oracle failure inside the divide-and-conquer tree, annotated with the
// failing subproblem's position.
class DcError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Measures wall-clock time around the solve call only.
template <typename F, typename I>
auto timed(F&& solve, const I& instance)
    -> TimedSolve<std::decay_t<decltype(solve(instance))>> {
    const auto start = std::chrono::steady_clock::now();
    auto solution = solve(instance);
    const auto stop = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(stop - start).count();
    return {std::move(solution), secs};
}

namespace detail {

template <typename I, typename Splitter, typename Oracle, typename Recombiner>
auto dc_node(const I& instance, Splitter& splitter, Oracle& oracle,
             Recombiner& recombiner, int depth, const std::string& path)
    -> TimedSolve<std::decay_t<decltype(oracle(instance))>> {
    using S = std::decay_t<decltype(oracle(instance))>;

    std::optional<SplitPair<I>> split;
    if (depth > 0) split = splitter(instance);
    if (!split) {
        // Leaf: the oracle's own wall time is the node's time.
        try {
            return timed(oracle, instance);
        } catch (const DcError&) {
            throw;
        } catch (const std::exception& e) {
            throw DcError("oracle failed at subproblem " + path + ": " + e.what());
        }
    }

    TimedSolve<S> lt = dc_node(split->left, splitter, oracle, recombiner,
                               depth - 1, path + ".left");
    TimedSolve<S> rt = dc_node(split->right, splitter, oracle, recombiner,
                               depth - 1, path + ".right");
    S combined = recombiner(lt.solution, rt.solution, *split, instance);
    return {std::move(combined), lt.wall_time + rt.wall_time};
}

}  // namespace detail

// Generic split-solve-recombine driver.
//
//   splitter:   (const I&) -> std::optional<SplitPair<I>>; nullopt means the
//               instance is too small to split and is handed to the oracle.
//   oracle:     (const I&) -> S
//   recombiner: (const S& left, const S& right, const SplitPair<I>&,
//                const I& parent) -> S
//
// The combined solution's value is taken from an ADL-found
// objective(const S&). At depth 1 the instance is split once; deeper trees
// split each half again until the depth is exhausted or a child becomes
// unsplittable. Reported times cover oracle calls only (split and recombine
// work is excluded), and solve_time = left_time + right_time exactly.
template <typename I, typename Splitter, typename Oracle, typename Recombiner>
auto dc_solve(const I& instance, Splitter&& splitter, Oracle&& oracle,
              Recombiner&& recombiner, int depth = 1)
    -> DcResult<std::decay_t<decltype(oracle(instance))>> {
    using S = std::decay_t<decltype(oracle(instance))>;
    if (depth < 1) throw std::invalid_argument("dc_solve: depth must be >= 1");

    std::optional<SplitPair<I>> split = splitter(instance);
    if (!split) throw std::invalid_argument("dc_solve: instance too small to split");

    TimedSolve<S> lt = detail::dc_node(split->left, splitter, oracle,
                                       recombiner, depth - 1, "left");
    TimedSolve<S> rt = detail::dc_node(split->right, splitter, oracle,
                                       recombiner, depth - 1, "right");

    DcResult<S> result;
    result.combined = recombiner(lt.solution, rt.solution, *split, instance);
    result.objective = objective(result.combined);
    result.left_time = lt.wall_time;
    result.right_time = rt.wall_time;
    result.solve_time = lt.wall_time + rt.wall_time;
    return result;
}

// Partitions sorted positions 0..n-1 alternately, odd 1-based positions
// (0, 2, 4, ...) to the left half. `order[k]` is the original index of the
// item at sorted position k.
inline void interleave_split(const std::vector<int>& order,
                             std::vector<int>& left_map,
                             std::vector<int>& right_map) {
    left_map.clear();
    right_map.clear();
    for (std::size_t k = 0; k < order.size(); ++k) {
        (k % 2 == 0 ? left_map : right_map).push_back(order[k]);
    }
}

}  // namespace dcopt
