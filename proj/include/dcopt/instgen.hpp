#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcopt/binpacking.hpp"
#include "dcopt/knapsack.hpp"
#include "dcopt/rng.hpp"
#include "dcopt/tsp.hpp"

namespace dcopt {

enum class ProblemKind { dkp, bpp, tsp_ms, tsp_ma, tsp_nms };

inline std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::dkp: return "dkp";
        case ProblemKind::bpp: return "bpp";
        case ProblemKind::tsp_ms: return "tsp-ms";
        case ProblemKind::tsp_ma: return "tsp-ma";
        default: return "tsp-nms";
    }
}

inline ProblemKind problem_from_string(const std::string& s) {
    if (s == "dkp") return ProblemKind::dkp;
    if (s == "bpp") return ProblemKind::bpp;
    if (s == "tsp-ms") return ProblemKind::tsp_ms;
    if (s == "tsp-ma") return ProblemKind::tsp_ma;
    if (s == "tsp-nms") return ProblemKind::tsp_nms;
    throw std::invalid_argument("unknown problem kind: " + s);
}

struct GenSpec {
    ProblemKind problem = ProblemKind::dkp;
    int n = 0;
    int d = 1;               // d-KP only
    double tightness = 0.5;  // d-KP only
    std::uint64_t seed = 0;
};

inline constexpr int kGenMaxRetries = 100;

// Random d-KP instance: profits uniform on [1, N*D]; per constraint a raw
// cap uniform on [1, N*D] and weights uniform on [1, raw cap]. Capacities
// are then recalibrated to c(i) = max(max_j w(i,j), round(t * sum_j w(i,j)))
// so the realized tightness lands within 0.02 of the target and every item
// stays eligible. Draws that miss the band are retried from the next
// derived seed, up to kGenMaxRetries.
inline DkpInstance gen_dkp(const GenSpec& spec) {
    if (spec.problem != ProblemKind::dkp)
        throw std::invalid_argument("gen_dkp: spec is not a dkp spec");
    if (spec.n < 2 || spec.d < 1)
        throw std::invalid_argument("gen_dkp: need n >= 2 and d >= 1");
    if (!(spec.tightness > 0.0 && spec.tightness < 1.0))
        throw std::invalid_argument("gen_dkp: tightness must lie in (0, 1)");

    const std::int64_t value_cap =
        static_cast<std::int64_t>(spec.n) * static_cast<std::int64_t>(spec.d);
    for (int attempt = 0; attempt < kGenMaxRetries; ++attempt) {
        Rng rng(trial_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
        DkpInstance inst;
        inst.num_constraints = spec.d;
        inst.num_items = spec.n;
        inst.profits.resize(spec.n);
        for (auto& p : inst.profits) p = rng.uniform_int(1, value_cap);
        inst.weights.assign(spec.d, std::vector<std::int64_t>(spec.n));
        inst.capacities.resize(spec.d);
        bool ok = true;
        for (int i = 0; i < spec.d; ++i) {
            const std::int64_t raw_cap = rng.uniform_int(1, value_cap);
            std::int64_t row_sum = 0, row_max = 0;
            for (int j = 0; j < spec.n; ++j) {
                inst.weights[i][j] = rng.uniform_int(1, raw_cap);
                row_sum += inst.weights[i][j];
                row_max = std::max(row_max, inst.weights[i][j]);
            }
            const std::int64_t target = static_cast<std::int64_t>(
                std::llround(spec.tightness * static_cast<double>(row_sum)));
            inst.capacities[i] = std::max(row_max, std::max<std::int64_t>(1, target));
            const double realized = static_cast<double>(inst.capacities[i]) /
                                    static_cast<double>(row_sum);
            if (std::fabs(realized - spec.tightness) > 0.02 ||
                inst.capacities[i] >= row_sum) {
                ok = false;
                break;
            }
        }
        if (ok) return inst;
    }
    throw std::runtime_error(
        "gen_dkp: could not hit tightness " + std::to_string(spec.tightness) +
        " within 0.02 after " + std::to_string(kGenMaxRetries) +
        " attempts (n=" + std::to_string(spec.n) + ", d=" + std::to_string(spec.d) + ")");
}

// Weights i.i.d. uniform on (0, 1]; an exact zero has probability zero and
// the draw rule excludes it outright.
inline BppInstance gen_bpp(const GenSpec& spec) {
    if (spec.problem != ProblemKind::bpp)
        throw std::invalid_argument("gen_bpp: spec is not a bpp spec");
    if (spec.n < 1) throw std::invalid_argument("gen_bpp: need n >= 1");
    Rng rng(spec.seed);
    BppInstance inst;
    inst.weights.resize(spec.n);
    for (auto& w : inst.weights) w = rng.uniform_open01();
    return inst;
}

// MS: uniform points in the unit square with Euclidean distances.
// MA: uniform angles on the unit circle; d(x,y) is the clockwise arc from x
//     to y with clockwise meaning decreasing angle, so d(x,y) = (theta_x -
//     theta_y) mod 2pi. Asymmetric but metric.
// NMS: uniform strict upper triangle mirrored; symmetric, generally
//     violating the triangle inequality.
inline TspInstance gen_tsp(const GenSpec& spec) {
    if (spec.problem != ProblemKind::tsp_ms && spec.problem != ProblemKind::tsp_ma &&
        spec.problem != ProblemKind::tsp_nms)
        throw std::invalid_argument("gen_tsp: spec is not a tsp spec");
    if (spec.n < 6) throw std::invalid_argument("gen_tsp: need n >= 6");

    Rng rng(spec.seed);
    TspInstance inst;
    inst.n = spec.n;
    inst.dist.assign(static_cast<std::size_t>(spec.n) * spec.n, 0.0);

    if (spec.problem == ProblemKind::tsp_ms) {
        inst.symmetric = true;
        inst.metric = true;
        std::vector<double> x(spec.n), y(spec.n);
        for (int u = 0; u < spec.n; ++u) {
            x[u] = rng.uniform_co01();
            y[u] = rng.uniform_co01();
        }
        for (int u = 0; u < spec.n; ++u)
            for (int v = u + 1; v < spec.n; ++v) {
                const double d = std::hypot(x[u] - x[v], y[u] - y[v]);
                inst.at(u, v) = d;
                inst.at(v, u) = d;
            }
    } else if (spec.problem == ProblemKind::tsp_ma) {
        inst.symmetric = false;
        inst.metric = true;
        const double two_pi = 2.0 * std::acos(-1.0);
        std::vector<double> theta(spec.n);
        for (auto& t : theta) t = rng.uniform_real(0.0, two_pi);
        for (int u = 0; u < spec.n; ++u)
            for (int v = 0; v < spec.n; ++v) {
                if (u == v) continue;
                double d = std::fmod(theta[u] - theta[v], two_pi);
                if (d < 0.0) d += two_pi;
                inst.at(u, v) = d;
            }
    } else {
        inst.symmetric = true;
        inst.metric = false;
        for (int u = 0; u < spec.n; ++u)
            for (int v = u + 1; v < spec.n; ++v) {
                const double d = rng.uniform_co01();
                inst.at(u, v) = d;
                inst.at(v, u) = d;
            }
    }
    return inst;
}

}  // namespace dcopt
