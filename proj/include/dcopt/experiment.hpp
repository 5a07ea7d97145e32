#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcopt/instgen.hpp"
#include "dcopt/io.hpp"
#include "dcopt/stats.hpp"

namespace dcopt {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TspOracleMode { exact, heuristic, auto_by_size };

// One experiment: a grid of cells (n times d-values or algorithms), each
// cell measured over `trials` Monte-Carlo trials.
struct ExperimentSpec {
    ProblemKind problem = ProblemKind::dkp;
    std::vector<int> n_values;
    std::vector<int> d_values = {2};               // d-KP
    double tightness = 0.5;                        // d-KP
    std::vector<BppAlg> algs = {BppAlg::ffd};      // BPP
    DkpOracle dkp_oracle = DkpOracle::exact;
    TspOracleMode tsp_oracle = TspOracleMode::auto_by_size;
    int trials = 100;
    std::uint64_t base_seed = 1;
    int depth = 1;
    int pilot = 0;      // 0 disables the pilot run
    bool auto_k = false;
    int time_reps = 5;  // timing repetitions per trial, fastest rep kept
};

struct ExperimentRow {
    int n = 0;
    std::string variant;  // "D=2 t=0.25", "ffd", "ms/exact", ...
    SampleStats sf, tf;
    double sf_ci_low = 0.0, sf_ci_high = 0.0;
    double tf_ci_low = 0.0, tf_ci_high = 0.0;
};

struct ExperimentReport {
    ProblemKind problem = ProblemKind::dkp;
    std::uint64_t base_seed = 0;
    int trials = 0;
    int pilot = 0;
    double pilot_variance = 0.0;      // worst S_f variance over cells
    long long recommended_trials = 0; // from the pilot, when run
    std::vector<ExperimentRow> rows;
};

inline const char* to_string(BppAlg alg) {
    switch (alg) {
        case BppAlg::nfd: return "nfd";
        case BppAlg::ffd: return "ffd";
        default: return "bfd";
    }
}

namespace detail {

inline std::string dkp_variant(int d, double tightness, DkpOracle oracle) {
    std::ostringstream os;
    os << "D=" << d << " t=" << tightness;
    if (oracle == DkpOracle::greedy) os << " greedy";
    return os.str();
}

inline std::string tsp_variant(ProblemKind kind, TspOracle oracle) {
    std::string label = kind == ProblemKind::tsp_ms   ? "ms"
                        : kind == ProblemKind::tsp_ma ? "ma"
                                                      : "nms";
    return label + (oracle == TspOracle::exact ? "/exact" : "/heuristic");
}

}  // namespace detail

// Validates counts, sizes and oracle feasibility before any work starts.
inline void validate_spec(const ExperimentSpec& spec) {
    if (spec.trials < 2) throw SpecError("experiment: trials must be at least 2");
    if (spec.n_values.empty()) throw SpecError("experiment: no n values given");
    if (!std::is_sorted(spec.n_values.begin(), spec.n_values.end()) ||
        std::adjacent_find(spec.n_values.begin(), spec.n_values.end()) !=
            spec.n_values.end())
        throw SpecError("experiment: n values must be strictly ascending");
    if (spec.depth < 1) throw SpecError("experiment: depth must be at least 1");
    if (spec.pilot < 0 || spec.pilot == 1)
        throw SpecError("experiment: pilot must be 0 or at least 2");
    if (spec.time_reps < 1)
        throw SpecError("experiment: time_reps must be at least 1");

    switch (spec.problem) {
        case ProblemKind::dkp:
            if (spec.d_values.empty()) throw SpecError("experiment: no d values given");
            for (int d : spec.d_values)
                if (d < 1) throw SpecError("experiment: d must be positive");
            for (int n : spec.n_values)
                if (n < 2) throw SpecError("experiment: dkp needs n >= 2");
            if (!(spec.tightness > 0.0 && spec.tightness < 1.0))
                throw SpecError("experiment: tightness must lie in (0, 1)");
            break;
        case ProblemKind::bpp:
            if (spec.algs.empty()) throw SpecError("experiment: no algorithms given");
            for (int n : spec.n_values)
                if (n < 2) throw SpecError("experiment: bpp needs n >= 2");
            break;
        default:
            for (int n : spec.n_values) {
                if (n < 6) throw SpecError("experiment: tsp needs n >= 6");
                if (spec.tsp_oracle == TspOracleMode::exact && n > kTspExactLimit)
                    throw SpecError("experiment: exact tsp oracle is limited to n <= " +
                                    std::to_string(kTspExactLimit) + ", requested n=" +
                                    std::to_string(n));
            }
            break;
    }
}

namespace detail {

// Solves at these sizes can finish in microseconds, where a single-shot
// measurement is dominated by allocator and cache warm-up. Each trial
// therefore repeats the full solve and the whole dc solve time_reps times,
// back to back, and keeps the fastest rep of each side as its steady-state
// cost; solutions are deterministic across reps, and the kept dc timing
// triple still satisfies solve_time = left_time + right_time.
template <typename FullSolve, typename DcSolve>
PerfPair measure_trial(FullSolve&& full_solve, DcSolve&& dc_solve_once, int reps,
                       bool maximization) {
    auto full = full_solve();
    auto dc = dc_solve_once();
    for (int rep = 1; rep < reps; ++rep) {
        full.wall_time = std::min(full.wall_time, full_solve().wall_time);
        const auto again = dc_solve_once();
        if (again.solve_time < dc.solve_time) {
            dc.solve_time = again.solve_time;
            dc.left_time = again.left_time;
            dc.right_time = again.right_time;
        }
    }
    const double z_full = objective(full.solution);
    return maximization ? perf_dkp(dc.objective, z_full, dc.solve_time, full.wall_time)
                        : perf_min(z_full, dc.objective, dc.solve_time, full.wall_time);
}

inline PerfPair run_dkp_trial(const ExperimentSpec& spec, int n, int d,
                              std::uint64_t seed) {
    GenSpec gen;
    gen.problem = ProblemKind::dkp;
    gen.n = n;
    gen.d = d;
    gen.tightness = spec.tightness;
    gen.seed = seed;
    const DkpInstance inst = gen_dkp(gen);
    auto solve = [&](const DkpInstance& x) { return dkp_solve(x, spec.dkp_oracle); };
    return measure_trial([&] { return timed(solve, inst); },
                         [&] { return dkp_dc(inst, spec.dkp_oracle, spec.depth); },
                         spec.time_reps, /*maximization=*/true);
}

inline PerfPair run_bpp_trial(const ExperimentSpec& spec, int n, BppAlg alg,
                              std::uint64_t seed) {
    GenSpec gen;
    gen.problem = ProblemKind::bpp;
    gen.n = n;
    gen.seed = seed;
    const BppInstance inst = gen_bpp(gen);
    // The heuristics operate on a decreasing weight sequence; sorting is
    // preparation and stays outside the timed boundary on both sides, like
    // the split cost on the dc side.
    BppInstance sorted;
    sorted.weights.reserve(inst.weights.size());
    for (int j : bpp_decreasing_order(inst)) sorted.weights.push_back(inst.weights[j]);
    auto solve = [&](const BppInstance& x) { return bpp_pack_sorted(x, alg); };
    return measure_trial([&] { return timed(solve, sorted); },
                         [&] { return bpp_dc(inst, alg, spec.depth); },
                         spec.time_reps, /*maximization=*/false);
}

inline PerfPair run_tsp_trial(const ExperimentSpec& spec, int n, TspOracle oracle,
                              std::uint64_t seed) {
    GenSpec gen;
    gen.problem = spec.problem;
    gen.n = n;
    gen.seed = seed;
    const TspInstance inst = gen_tsp(gen);
    auto solve = [&](const TspInstance& x) { return tsp_solve(x, oracle); };
    return measure_trial([&] { return timed(solve, inst); },
                         [&] { return tsp_dc(inst, oracle, spec.depth); },
                         spec.time_reps, /*maximization=*/false);
}

struct Cell {
    int n = 0;
    int d = 0;            // d-KP
    BppAlg alg = BppAlg::ffd;
    TspOracle tsp_oracle = TspOracle::exact;
    std::string variant;
};

inline std::vector<Cell> spec_cells(const ExperimentSpec& spec) {
    std::vector<Cell> cells;
    for (int n : spec.n_values) {
        switch (spec.problem) {
            case ProblemKind::dkp:
                for (int d : spec.d_values) {
                    Cell c;
                    c.n = n;
                    c.d = d;
                    c.variant = dkp_variant(d, spec.tightness, spec.dkp_oracle);
                    cells.push_back(c);
                }
                break;
            case ProblemKind::bpp:
                for (BppAlg alg : spec.algs) {
                    Cell c;
                    c.n = n;
                    c.alg = alg;
                    c.variant = to_string(alg);
                    cells.push_back(c);
                }
                break;
            default: {
                Cell c;
                c.n = n;
                c.tsp_oracle = spec.tsp_oracle == TspOracleMode::heuristic
                                   ? TspOracle::heuristic
                               : spec.tsp_oracle == TspOracleMode::exact
                                   ? TspOracle::exact
                               : (n <= kTspExactLimit ? TspOracle::exact
                                                      : TspOracle::heuristic);
                c.variant = tsp_variant(spec.problem, c.tsp_oracle);
                cells.push_back(c);
            } break;
        }
    }
    return cells;
}

inline PerfPair run_cell_trial(const ExperimentSpec& spec, const Cell& cell,
                               std::uint64_t seed) {
    switch (spec.problem) {
        case ProblemKind::dkp: return run_dkp_trial(spec, cell.n, cell.d, seed);
        case ProblemKind::bpp: return run_bpp_trial(spec, cell.n, cell.alg, seed);
        default: return run_tsp_trial(spec, cell.n, cell.tsp_oracle, seed);
    }
}

}  // namespace detail

// Runs the whole grid. Trial i of every cell draws its instance from
// trial_seed(base_seed, i), so S_f columns are bit-reproducible for a fixed
// seed (T_f columns are wall-clock measurements and machine-dependent).
// Every trial contributes exactly once to its cell.
inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
    validate_spec(spec);
    const std::vector<detail::Cell> cells = detail::spec_cells(spec);

    ExperimentReport report;
    report.problem = spec.problem;
    report.base_seed = spec.base_seed;
    report.pilot = spec.pilot;

    int trials = spec.trials;
    if (spec.pilot >= 2) {
        // Worst S_f variance over all cells sizes the Bernoulli-trial
        // recommendation; with auto_k the run is widened to match.
        double worst = 0.0;
        for (const auto& cell : cells) {
            std::vector<double> sf(spec.pilot);
            for (int i = 0; i < spec.pilot; ++i)
                sf[i] = detail::run_cell_trial(spec, cell,
                                               trial_seed(spec.base_seed,
                                                          static_cast<std::uint64_t>(i)))
                            .solution_fraction;
            worst = std::max(worst, compute_stats(sf).variance);
        }
        report.pilot_variance = worst;
        report.recommended_trials = bernoulli_trials(worst);
        if (spec.auto_k)
            trials = std::max<long long>(trials, report.recommended_trials);
    }
    report.trials = trials;

    for (const auto& cell : cells) {
        std::vector<double> sf(trials), tf(trials);
        for (int i = 0; i < trials; ++i) {
            const PerfPair perf = detail::run_cell_trial(
                spec, cell, trial_seed(spec.base_seed, static_cast<std::uint64_t>(i)));
            sf[i] = perf.solution_fraction;
            tf[i] = perf.time_fraction;
        }
        ExperimentRow row;
        row.n = cell.n;
        row.variant = cell.variant;
        row.sf = compute_stats(sf);
        row.tf = compute_stats(tf);
        std::tie(row.sf_ci_low, row.sf_ci_high) = confidence_interval(row.sf);
        std::tie(row.tf_ci_low, row.tf_ci_high) = confidence_interval(row.tf);
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---- flat key = value spec files ----

namespace detail {

inline std::map<std::string, std::string> parse_kv_file(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SpecError("spec line is not key = value: " + line);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw SpecError("spec line has empty key: " + line);
        if (!kv.emplace(key, value).second)
            throw SpecError("duplicate spec key: " + key);
    }
    return kv;
}

inline std::vector<std::string> split_words(const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

inline int parse_spec_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (const std::exception&) {
        throw SpecError("bad integer for " + key + ": " + v);
    }
}

}  // namespace detail

// Reads a generator spec (problem, n, d, tightness, seed).
inline GenSpec parse_gen_spec(std::istream& in) {
    auto kv = detail::parse_kv_file(in);
    GenSpec spec;
    auto it = kv.find("problem");
    if (it == kv.end()) throw SpecError("generator spec: missing key problem");
    spec.problem = problem_from_string(it->second);
    it = kv.find("n");
    if (it == kv.end()) throw SpecError("generator spec: missing key n");
    spec.n = detail::parse_spec_int(it->second, "n");
    if ((it = kv.find("d")) != kv.end()) spec.d = detail::parse_spec_int(it->second, "d");
    if ((it = kv.find("tightness")) != kv.end()) spec.tightness = std::stod(it->second);
    if ((it = kv.find("seed")) != kv.end())
        spec.seed = std::stoull(it->second);
    for (const auto& [key, value] : kv)
        if (key != "problem" && key != "n" && key != "d" && key != "tightness" &&
            key != "seed")
            throw SpecError("generator spec: unknown key " + key);
    return spec;
}

// Reads an experiment spec. The DCOPT_SEED environment variable, when set,
// overrides the file's base seed.
inline ExperimentSpec parse_experiment_spec(std::istream& in, bool apply_env = true) {
    auto kv = detail::parse_kv_file(in);
    ExperimentSpec spec;

    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    auto problem = take("problem");
    if (!problem) throw SpecError("experiment spec: missing key problem");
    spec.problem = problem_from_string(*problem);

    auto n = take("n");
    if (!n) throw SpecError("experiment spec: missing key n");
    spec.n_values.clear();
    for (const auto& w : detail::split_words(*n))
        spec.n_values.push_back(detail::parse_spec_int(w, "n"));

    if (auto d = take("d")) {
        spec.d_values.clear();
        for (const auto& w : detail::split_words(*d))
            spec.d_values.push_back(detail::parse_spec_int(w, "d"));
    }
    if (auto t = take("tightness")) spec.tightness = std::stod(*t);
    if (auto algs = take("alg")) {
        spec.algs.clear();
        for (const auto& w : detail::split_words(*algs)) {
            if (w == "nfd")
                spec.algs.push_back(BppAlg::nfd);
            else if (w == "ffd")
                spec.algs.push_back(BppAlg::ffd);
            else if (w == "bfd")
                spec.algs.push_back(BppAlg::bfd);
            else
                throw SpecError("experiment spec: unknown alg " + w);
        }
    }
    if (auto oracle = take("oracle")) {
        if (*oracle == "exact") {
            spec.dkp_oracle = DkpOracle::exact;
            spec.tsp_oracle = TspOracleMode::exact;
        } else if (*oracle == "greedy") {
            spec.dkp_oracle = DkpOracle::greedy;
        } else if (*oracle == "heuristic") {
            spec.tsp_oracle = TspOracleMode::heuristic;
        } else if (*oracle == "auto") {
            spec.tsp_oracle = TspOracleMode::auto_by_size;
        } else {
            throw SpecError("experiment spec: unknown oracle " + *oracle);
        }
    }
    if (auto trials = take("trials")) spec.trials = detail::parse_spec_int(*trials, "trials");
    if (auto seed = take("seed")) spec.base_seed = std::stoull(*seed);
    if (auto depth = take("depth")) spec.depth = detail::parse_spec_int(*depth, "depth");
    if (auto pilot = take("pilot")) spec.pilot = detail::parse_spec_int(*pilot, "pilot");
    if (auto reps = take("time_reps"))
        spec.time_reps = detail::parse_spec_int(*reps, "time_reps");
    if (auto auto_k = take("auto_k"))
        spec.auto_k = (*auto_k == "true" || *auto_k == "1" || *auto_k == "yes");

    if (!kv.empty())
        throw SpecError("experiment spec: unknown key " + kv.begin()->first);

    if (apply_env) {
        if (const char* env = std::getenv("DCOPT_SEED"))
            spec.base_seed = std::stoull(env);
    }
    return spec;
}

inline ExperimentSpec load_experiment_spec(const std::string& path, bool apply_env = true) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    return parse_experiment_spec(in, apply_env);
}

inline GenSpec load_gen_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    return parse_gen_spec(in);
}

}  // namespace dcopt
