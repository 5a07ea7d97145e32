#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dcopt/core.hpp"

namespace dcopt {

// Multidimensional knapsack instance: D capacity constraints over N items,
// all data positive integers.
struct DkpInstance {
    int num_constraints = 0;                         // D
    int num_items = 0;                               // N
    std::vector<std::int64_t> capacities;            // size D
    std::vector<std::int64_t> profits;               // size N
    std::vector<std::vector<std::int64_t>> weights;  // D rows of N
};

struct DkpSolution {
    std::vector<char> chosen;  // size N
    std::int64_t value = 0;
};

inline double objective(const DkpSolution& s) { return static_cast<double>(s.value); }

// Items ranked by profit per capacity-normalized weight. `order` lists item
// indices with coefficients non-increasing, ties by ascending item index.
struct EfficiencyOrder {
    std::vector<double> coefficients;
    std::vector<int> order;
};

// Shape and positivity checks; split children are allowed to break the
// eligibility hypothesis, so that is checked separately.
inline void dkp_validate(const DkpInstance& inst) {
    if (inst.num_constraints < 1 || inst.num_items < 1)
        throw std::invalid_argument("dkp: need at least one constraint and one item");
    if (static_cast<int>(inst.capacities.size()) != inst.num_constraints ||
        static_cast<int>(inst.profits.size()) != inst.num_items ||
        static_cast<int>(inst.weights.size()) != inst.num_constraints)
        throw std::invalid_argument("dkp: field sizes disagree with header");
    for (const auto& row : inst.weights)
        if (static_cast<int>(row.size()) != inst.num_items)
            throw std::invalid_argument("dkp: weight row length disagrees with item count");
    for (std::int64_t c : inst.capacities)
        if (c < 1) throw std::invalid_argument("dkp: capacities must be positive");
    for (std::int64_t p : inst.profits)
        if (p < 1) throw std::invalid_argument("dkp: profits must be positive");
    for (const auto& row : inst.weights)
        for (std::int64_t w : row)
            if (w < 1) throw std::invalid_argument("dkp: weights must be positive");
}

// Every item fits alone and no constraint is droppable.
inline bool dkp_hypothesis_holds(const DkpInstance& inst) {
    for (int i = 0; i < inst.num_constraints; ++i) {
        std::int64_t row_sum = 0;
        for (int j = 0; j < inst.num_items; ++j) {
            if (inst.weights[i][j] > inst.capacities[i]) return false;
            row_sum += inst.weights[i][j];
        }
        if (row_sum <= inst.capacities[i]) return false;
    }
    return true;
}

// True when some item cannot fit its own constraint; split children may be
// in this state and oracles must simply never select such items.
inline bool dkp_has_stranded_items(const DkpInstance& inst) {
    for (int i = 0; i < inst.num_constraints; ++i)
        for (int j = 0; j < inst.num_items; ++j)
            if (inst.weights[i][j] > inst.capacities[i]) return true;
    return false;
}

inline bool dkp_is_feasible(const DkpInstance& inst, const DkpSolution& sol) {
    if (static_cast<int>(sol.chosen.size()) != inst.num_items) return false;
    std::int64_t value = 0;
    for (int j = 0; j < inst.num_items; ++j)
        if (sol.chosen[j]) value += inst.profits[j];
    if (value != sol.value) return false;
    for (int i = 0; i < inst.num_constraints; ++i) {
        std::int64_t load = 0;
        for (int j = 0; j < inst.num_items; ++j)
            if (sol.chosen[j]) load += inst.weights[i][j];
        if (load > inst.capacities[i]) return false;
    }
    return true;
}

// coefficient(j) = p(j) / sum_i w(i,j)/c(i)
inline EfficiencyOrder dkp_efficiency(const DkpInstance& inst) {
    EfficiencyOrder eff;
    eff.coefficients.resize(inst.num_items);
    for (int j = 0; j < inst.num_items; ++j) {
        double denom = 0.0;
        for (int i = 0; i < inst.num_constraints; ++i)
            denom += static_cast<double>(inst.weights[i][j]) /
                     static_cast<double>(inst.capacities[i]);
        eff.coefficients[j] = static_cast<double>(inst.profits[j]) / denom;
    }
    eff.order.resize(inst.num_items);
    std::iota(eff.order.begin(), eff.order.end(), 0);
    std::sort(eff.order.begin(), eff.order.end(), [&](int a, int b) {
        if (eff.coefficients[a] != eff.coefficients[b])
            return eff.coefficients[a] > eff.coefficients[b];
        return a < b;
    });
    return eff;
}

// t(i) = c(i) / sum_j w(i,j)
inline std::vector<double> dkp_tightness(const DkpInstance& inst) {
    std::vector<double> t(inst.num_constraints);
    for (int i = 0; i < inst.num_constraints; ++i) {
        std::int64_t row_sum = std::accumulate(inst.weights[i].begin(),
                                               inst.weights[i].end(), std::int64_t{0});
        t[i] = static_cast<double>(inst.capacities[i]) / static_cast<double>(row_sum);
    }
    return t;
}

// Splits along an explicit item order (descending efficiency): odd sorted
// positions left, even right. Child capacities are proportional to the
// child's share of each weight row, rounded up on the left:
//   c_lt(i) = ceil(c(i) * sum_left w(i,j) / sum_all w(i,j)),  c_rt = c - c_lt.
// Children may strand an item heavier than its child capacity; they are
// returned regardless (use dkp_has_stranded_items to detect).
inline SplitPair<DkpInstance> dkp_split(const DkpInstance& inst,
                                        const std::vector<int>& order) {
    if (inst.num_items < 2)
        throw std::invalid_argument("dkp_split: need at least two items");
    if (static_cast<int>(order.size()) != inst.num_items)
        throw std::invalid_argument("dkp_split: order size mismatch");

    SplitPair<DkpInstance> pair;
    interleave_split(order, pair.left_map, pair.right_map);

    auto make_child = [&](const std::vector<int>& map, bool left) {
        DkpInstance child;
        child.num_constraints = inst.num_constraints;
        child.num_items = static_cast<int>(map.size());
        child.capacities.resize(inst.num_constraints);
        child.profits.reserve(map.size());
        for (int j : map) child.profits.push_back(inst.profits[j]);
        child.weights.assign(inst.num_constraints, {});
        for (int i = 0; i < inst.num_constraints; ++i) {
            child.weights[i].reserve(map.size());
            for (int j : map) child.weights[i].push_back(inst.weights[i][j]);
        }
        for (int i = 0; i < inst.num_constraints; ++i) {
            std::int64_t left_sum = 0;
            for (int j : pair.left_map) left_sum += inst.weights[i][j];
            std::int64_t all_sum = left_sum;
            for (int j : pair.right_map) all_sum += inst.weights[i][j];
            const std::int64_t c_left =
                (inst.capacities[i] * left_sum + all_sum - 1) / all_sum;  // ceil
            child.capacities[i] = left ? c_left : inst.capacities[i] - c_left;
        }
        return child;
    };
    pair.left = make_child(pair.left_map, true);
    pair.right = make_child(pair.right_map, false);
    return pair;
}

inline SplitPair<DkpInstance> dkp_split(const DkpInstance& inst) {
    return dkp_split(inst, dkp_efficiency(inst).order);
}

// Greedy scan in efficiency order: select an item iff it fits every residual
// capacity. Always feasible; stranded items never fit and are skipped.
inline DkpSolution dkp_solve_greedy(const DkpInstance& inst) {
    const EfficiencyOrder eff = dkp_efficiency(inst);
    std::vector<std::int64_t> residual = inst.capacities;
    DkpSolution sol;
    sol.chosen.assign(inst.num_items, 0);
    for (int j : eff.order) {
        bool fits = true;
        for (int i = 0; i < inst.num_constraints; ++i)
            if (inst.weights[i][j] > residual[i]) {
                fits = false;
                break;
            }
        if (!fits) continue;
        sol.chosen[j] = 1;
        sol.value += inst.profits[j];
        for (int i = 0; i < inst.num_constraints; ++i)
            residual[i] -= inst.weights[i][j];
    }
    return sol;
}

namespace detail {

// Depth-first branch and bound over items in efficiency order, bounding each
// node with the smallest single-constraint Dantzig fractional bound. The
// take branch is explored first and the incumbent only replaced on strict
// improvement, so the first optimum reached is the lexicographically
// smallest chosen-set in efficiency order.
class DkpBranchAndBound {
public:
    explicit DkpBranchAndBound(const DkpInstance& inst)
        : inst_(inst), eff_(dkp_efficiency(inst)) {
        const int n = inst.num_items;
        const int d = inst.num_constraints;
        pos_of_.resize(n);
        for (int k = 0; k < n; ++k) pos_of_[eff_.order[k]] = k;

        // Per constraint, items by profit/weight descending for the bound.
        by_ratio_.assign(d, eff_.order);
        for (int i = 0; i < d; ++i) {
            std::sort(by_ratio_[i].begin(), by_ratio_[i].end(), [&](int a, int b) {
                const double ra = static_cast<double>(inst.profits[a]) /
                                  static_cast<double>(inst.weights[i][a]);
                const double rb = static_cast<double>(inst.profits[b]) /
                                  static_cast<double>(inst.weights[i][b]);
                if (ra != rb) return ra > rb;
                return a < b;
            });
        }
    }

    DkpSolution run() {
        const int n = inst_.num_items;
        residual_ = inst_.capacities;
        take_.assign(n, 0);
        value_ = 0;
        // Seed the incumbent one below the greedy value: dominated subtrees
        // are pruned, yet every optimum stays reachable, so the take-first
        // search still lands on the lexicographically smallest one.
        const DkpSolution greedy = dkp_solve_greedy(inst_);
        best_ = greedy.value - 1;
        best_take_.assign(n, 0);
        for (int k = 0; k < n; ++k) best_take_[k] = greedy.chosen[eff_.order[k]];
        dfs(0);

        DkpSolution sol;
        sol.chosen.assign(n, 0);
        for (int k = 0; k < n; ++k)
            if (best_take_[k]) {
                sol.chosen[eff_.order[k]] = 1;
                sol.value += inst_.profits[eff_.order[k]];
            }
        return sol;
    }

private:
    double fractional_rest(int from_pos) const {
        double bound = std::numeric_limits<double>::infinity();
        for (int i = 0; i < inst_.num_constraints; ++i) {
            double v = 0.0;
            double room = static_cast<double>(residual_[i]);
            for (int j : by_ratio_[i]) {
                if (pos_of_[j] < from_pos) continue;  // already decided
                const double w = static_cast<double>(inst_.weights[i][j]);
                if (w <= room) {
                    v += static_cast<double>(inst_.profits[j]);
                    room -= w;
                } else {
                    v += static_cast<double>(inst_.profits[j]) * room / w;
                    break;
                }
            }
            bound = std::min(bound, v);
        }
        return bound;
    }

    void dfs(int k) {
        if (k == inst_.num_items) {
            if (value_ > best_) {
                best_ = value_;
                best_take_ = take_;
            }
            return;
        }
        // Profits are integral, so the fractional bound can be floored.
        const std::int64_t ub =
            value_ + static_cast<std::int64_t>(std::floor(fractional_rest(k) + 1e-6));
        if (ub <= best_) return;

        const int item = eff_.order[k];
        bool fits = true;
        for (int i = 0; i < inst_.num_constraints; ++i)
            if (inst_.weights[i][item] > residual_[i]) {
                fits = false;
                break;
            }
        if (fits) {
            take_[k] = 1;
            value_ += inst_.profits[item];
            for (int i = 0; i < inst_.num_constraints; ++i)
                residual_[i] -= inst_.weights[i][item];
            dfs(k + 1);
            for (int i = 0; i < inst_.num_constraints; ++i)
                residual_[i] += inst_.weights[i][item];
            value_ -= inst_.profits[item];
            take_[k] = 0;
        }
        dfs(k + 1);
    }

    const DkpInstance& inst_;
    EfficiencyOrder eff_;
    std::vector<int> pos_of_;
    std::vector<std::vector<int>> by_ratio_;
    std::vector<std::int64_t> residual_;
    std::vector<char> take_, best_take_;
    std::int64_t value_ = 0, best_ = 0;
};

}  // namespace detail

// Optimal solve. The empty selection is always feasible, so every instance
// (including flagged split children) has a solution.
inline DkpSolution dkp_solve_exact(const DkpInstance& inst) {
    return detail::DkpBranchAndBound(inst).run();
}

enum class DkpOracle { exact, greedy };

inline DkpSolution dkp_solve(const DkpInstance& inst, DkpOracle oracle) {
    return oracle == DkpOracle::exact ? dkp_solve_exact(inst)
                                      : dkp_solve_greedy(inst);
}

// Split, solve both halves, and take the union of the chosen sets mapped
// back to parent indices. The combined selection is parent-feasible because
// the child capacities sum to the parent's.
inline DcResult<DkpSolution> dkp_dc(const DkpInstance& inst, DkpOracle oracle,
                                    int depth = 1) {
    auto splitter = [](const DkpInstance& x) -> std::optional<SplitPair<DkpInstance>> {
        if (x.num_items < 2) return std::nullopt;
        return dkp_split(x);
    };
    auto solve = [oracle](const DkpInstance& x) { return dkp_solve(x, oracle); };
    auto recombine = [](const DkpSolution& lt, const DkpSolution& rt,
                        const SplitPair<DkpInstance>& split, const DkpInstance& parent) {
        DkpSolution out;
        out.chosen.assign(parent.num_items, 0);
        for (std::size_t k = 0; k < split.left_map.size(); ++k)
            if (lt.chosen[k]) out.chosen[split.left_map[k]] = 1;
        for (std::size_t k = 0; k < split.right_map.size(); ++k)
            if (rt.chosen[k]) out.chosen[split.right_map[k]] = 1;
        out.value = lt.value + rt.value;
        return out;
    };
    return dc_solve(inst, splitter, solve, recombine, depth);
}

}  // namespace dcopt
