#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcopt/core.hpp"

namespace dcopt {

// Complete directed graph with a row-major distance matrix. The metric flag
// is declarative; tsp_is_metric checks it on demand (O(N^3)).
struct TspInstance {
    int n = 0;
    std::vector<double> dist;  // n*n, zero diagonal
    bool symmetric = false;
    bool metric = false;

    double operator()(int u, int v) const { return dist[static_cast<std::size_t>(u) * n + v]; }
    double& at(int u, int v) { return dist[static_cast<std::size_t>(u) * n + v]; }
};

struct Tour {
    std::vector<int> order;  // visits each vertex exactly once
    double cost = 0.0;
};

inline double objective(const Tour& t) { return t.cost; }

struct VertexEfficiency {
    std::vector<double> g;
    std::vector<int> order;  // ascending g, ties by vertex index
};

inline constexpr int kTspExactLimit = 18;

inline void tsp_validate(const TspInstance& inst) {
    if (inst.n < 3) throw std::invalid_argument("tsp: need at least three vertices");
    if (inst.dist.size() != static_cast<std::size_t>(inst.n) * inst.n)
        throw std::invalid_argument("tsp: distance matrix size disagrees with n");
    for (int u = 0; u < inst.n; ++u) {
        if (inst(u, u) != 0.0)
            throw std::invalid_argument("tsp: diagonal must be zero");
        for (int v = 0; v < inst.n; ++v) {
            if (!(inst(u, v) >= 0.0))
                throw std::invalid_argument("tsp: distances must be nonnegative");
            if (inst.symmetric && inst(u, v) != inst(v, u))
                throw std::invalid_argument("tsp: matrix not symmetric under sym flag");
        }
    }
}

inline bool tsp_is_metric(const TspInstance& inst, double tol = 1e-12) {
    for (int u = 0; u < inst.n; ++u)
        for (int v = 0; v < inst.n; ++v)
            for (int w = 0; w < inst.n; ++w)
                if (inst(u, v) > inst(u, w) + inst(w, v) + tol) return false;
    return true;
}

inline double tour_cost(const TspInstance& inst, const std::vector<int>& order) {
    double cost = 0.0;
    const int n = static_cast<int>(order.size());
    for (int i = 0; i < n; ++i) cost += inst(order[i], order[(i + 1) % n]);
    return cost;
}

inline bool tour_is_hamiltonian(const TspInstance& inst, const Tour& tour) {
    if (static_cast<int>(tour.order.size()) != inst.n) return false;
    std::vector<char> seen(inst.n, 0);
    for (int v : tour.order) {
        if (v < 0 || v >= inst.n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// g(u) = sum over v != u of d(u,v) + d(v,u): total distance incident on u.
inline VertexEfficiency tsp_efficiency(const TspInstance& inst) {
    VertexEfficiency eff;
    eff.g.assign(inst.n, 0.0);
    for (int u = 0; u < inst.n; ++u)
        for (int v = 0; v < inst.n; ++v)
            if (v != u) eff.g[u] += inst(u, v) + inst(v, u);
    eff.order.resize(inst.n);
    std::iota(eff.order.begin(), eff.order.end(), 0);
    std::sort(eff.order.begin(), eff.order.end(), [&](int a, int b) {
        if (eff.g[a] != eff.g[b]) return eff.g[a] < eff.g[b];
        return a < b;
    });
    return eff;
}

// Split along an explicit ascending-efficiency vertex order; the children
// are induced subgraphs, flags inherited. Each child needs room for a cycle,
// hence the N >= 6 requirement.
inline SplitPair<TspInstance> tsp_split(const TspInstance& inst,
                                        const std::vector<int>& order) {
    if (inst.n < 6)
        throw std::invalid_argument("tsp_split: need at least six vertices");
    if (static_cast<int>(order.size()) != inst.n)
        throw std::invalid_argument("tsp_split: order size mismatch");

    SplitPair<TspInstance> pair;
    interleave_split(order, pair.left_map, pair.right_map);
    auto induce = [&](const std::vector<int>& map) {
        TspInstance child;
        child.n = static_cast<int>(map.size());
        child.symmetric = inst.symmetric;
        child.metric = inst.metric;
        child.dist.assign(static_cast<std::size_t>(child.n) * child.n, 0.0);
        for (int a = 0; a < child.n; ++a)
            for (int b = 0; b < child.n; ++b)
                child.at(a, b) = inst(map[a], map[b]);
        return child;
    };
    pair.left = induce(pair.left_map);
    pair.right = induce(pair.right_map);
    return pair;
}

inline SplitPair<TspInstance> tsp_split(const TspInstance& inst) {
    return tsp_split(inst, tsp_efficiency(inst).order);
}

// Greedy cycle merge: drop the most expensive arc of each tour (position
// ties resolved toward the lower index in the stored order) and splice with
// the unique pair of replacement arcs that preserves both orientations.
// Both tours must be given in parent vertex indices and partition [N].
inline Tour tsp_merge(const Tour& left, const Tour& right, const TspInstance& inst) {
    const int p = static_cast<int>(left.order.size());
    const int q = static_cast<int>(right.order.size());
    if (p < 2 || q < 2)
        throw std::invalid_argument("tsp_merge: each cycle needs at least two vertices");
    if (p + q != inst.n)
        throw std::invalid_argument("tsp_merge: cycles do not cover the instance");
    std::vector<char> seen(inst.n, 0);
    for (int v : left.order) {
        if (v < 0 || v >= inst.n || seen[v])
            throw std::invalid_argument("tsp_merge: cycles overlap or repeat a vertex");
        seen[v] = 1;
    }
    for (int v : right.order) {
        if (v < 0 || v >= inst.n || seen[v])
            throw std::invalid_argument("tsp_merge: cycles overlap or repeat a vertex");
        seen[v] = 1;
    }

    auto most_expensive_arc = [&](const std::vector<int>& order) {
        const int m = static_cast<int>(order.size());
        int arg = 0;
        double best = inst(order[0], order[1 % m]);
        for (int i = 1; i < m; ++i) {
            const double c = inst(order[i], order[(i + 1) % m]);
            if (c > best) {
                best = c;
                arg = i;
            }
        }
        return arg;
    };
    const int i = most_expensive_arc(left.order);
    const int j = most_expensive_arc(right.order);

    Tour merged;
    merged.order.reserve(inst.n);
    for (int k = 0; k <= i; ++k) merged.order.push_back(left.order[k]);
    for (int t = 1; t <= q; ++t) merged.order.push_back(right.order[(j + t) % q]);
    for (int k = i + 1; k < p; ++k) merged.order.push_back(left.order[k]);
    merged.cost = tour_cost(inst, merged.order);
    return merged;
}

// Held-Karp dynamic program over vertex subsets; handles asymmetric
// matrices. Optimal-tour ties resolve to the lexicographically smallest
// order starting at vertex 0.
inline Tour tsp_solve_exact(const TspInstance& inst, int exact_limit = kTspExactLimit) {
    if (inst.n > exact_limit)
        throw std::invalid_argument("tsp_solve_exact: instance size " +
                                    std::to_string(inst.n) + " exceeds exact limit " +
                                    std::to_string(exact_limit));
    if (inst.n < 3)
        throw std::invalid_argument("tsp_solve_exact: need at least three vertices");

    const int n = inst.n;
    const int m = n - 1;  // vertices 1..n-1 as bits 0..m-1
    const std::size_t masks = std::size_t{1} << m;
    // cost[mask][u]: cheapest path that starts at u, visits exactly the
    // vertices in mask, and ends back at vertex 0.
    std::vector<double> cost(masks * n, std::numeric_limits<double>::infinity());
    auto entry = [&](std::size_t mask, int u) -> double& { return cost[mask * n + u]; };

    for (int u = 0; u < n; ++u) entry(0, u) = inst(u, 0);
    for (std::size_t mask = 1; mask < masks; ++mask) {
        for (int u = 0; u < n; ++u) {
            if (u > 0 && (mask >> (u - 1) & 1)) continue;  // u still unvisited
            double best = std::numeric_limits<double>::infinity();
            for (int b = 0; b < m; ++b) {
                if (!(mask >> b & 1)) continue;
                const int v = b + 1;
                const double c = inst(u, v) + entry(mask ^ (std::size_t{1} << b), v);
                if (c < best) best = c;
            }
            entry(mask, u) = best;
        }
    }

    Tour tour;
    tour.order.reserve(n);
    tour.order.push_back(0);
    std::size_t remaining = masks - 1;
    int u = 0;
    tour.cost = entry(remaining, 0);
    while (remaining != 0) {
        for (int b = 0; b < m; ++b) {
            if (!(remaining >> b & 1)) continue;
            const int v = b + 1;
            // The table minimum was built from these exact expressions, so
            // equality holds for at least one candidate; taking the first
            // (smallest v) yields the lexicographically smallest tour.
            if (inst(u, v) + entry(remaining ^ (std::size_t{1} << b), v) ==
                entry(remaining, u)) {
                tour.order.push_back(v);
                remaining ^= std::size_t{1} << b;
                u = v;
                break;
            }
        }
    }
    return tour;
}

// Nearest neighbor from vertex 0 (ties toward the lowest index), improved by
// 2-opt only on symmetric instances: segment reversal re-prices arcs in the
// opposite direction, which is cost-safe only when d(u,v) = d(v,u).
inline Tour tsp_solve_heuristic(const TspInstance& inst) {
    if (inst.n < 3)
        throw std::invalid_argument("tsp_solve_heuristic: need at least three vertices");
    const int n = inst.n;
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> visited(n, 0);
    order.push_back(0);
    visited[0] = 1;
    for (int step = 1; step < n; ++step) {
        const int u = order.back();
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (visited[v]) continue;
            if (pick < 0 || inst(u, v) < inst(u, pick)) pick = v;
        }
        order.push_back(pick);
        visited[pick] = 1;
    }

    if (inst.symmetric) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int a = 0; a < n - 1 && !improved; ++a) {
                for (int b = a + 1; b < n && !improved; ++b) {
                    const int pa = order[a], na = order[(a + 1) % n];
                    const int pb = order[b], nb = order[(b + 1) % n];
                    if (pa == pb || na == pb || pa == nb) continue;
                    const double delta = inst(pa, pb) + inst(na, nb) -
                                         inst(pa, na) - inst(pb, nb);
                    if (delta < -1e-12) {
                        std::reverse(order.begin() + a + 1, order.begin() + b + 1);
                        improved = true;
                    }
                }
            }
        }
    }

    Tour tour;
    tour.order = std::move(order);
    tour.cost = tour_cost(inst, tour.order);
    return tour;
}

enum class TspOracle { exact, heuristic };

inline Tour tsp_solve(const TspInstance& inst, TspOracle oracle,
                      int exact_limit = kTspExactLimit) {
    return oracle == TspOracle::exact ? tsp_solve_exact(inst, exact_limit)
                                      : tsp_solve_heuristic(inst);
}

// Split by vertex efficiency, solve the induced halves with the oracle, map
// the child tours back to parent vertices, and splice them with tsp_merge.
inline DcResult<Tour> tsp_dc(const TspInstance& inst, TspOracle oracle,
                             int depth = 1, int exact_limit = kTspExactLimit) {
    auto splitter = [](const TspInstance& x) -> std::optional<SplitPair<TspInstance>> {
        if (x.n < 6) return std::nullopt;
        return tsp_split(x);
    };
    auto solve = [oracle, exact_limit](const TspInstance& x) {
        return tsp_solve(x, oracle, exact_limit);
    };
    auto recombine = [](const Tour& lt, const Tour& rt,
                        const SplitPair<TspInstance>& split, const TspInstance& parent) {
        Tour lt_parent, rt_parent;
        lt_parent.order.reserve(lt.order.size());
        for (int v : lt.order) lt_parent.order.push_back(split.left_map[v]);
        lt_parent.cost = lt.cost;
        rt_parent.order.reserve(rt.order.size());
        for (int v : rt.order) rt_parent.order.push_back(split.right_map[v]);
        rt_parent.cost = rt.cost;
        return tsp_merge(lt_parent, rt_parent, parent);
    };
    return dc_solve(inst, splitter, solve, recombine, depth);
}

}  // namespace dcopt
