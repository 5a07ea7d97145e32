#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dcopt/binpacking.hpp"
#include "dcopt/knapsack.hpp"
#include "dcopt/tsp.hpp"

namespace dcopt {

// Instance files are line-oriented ASCII, single-space separated, LF ended:
//   dkp N D    then capacities, profits, and D weight rows
//   bpp N      then one line of N weights
//   tsp N sym|asym metric|nonmetric   then N distance rows
// Reals are written with 17 significant digits so round trips are bit-exact.

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadHeaderError : IoError {
    using IoError::IoError;
};
struct CountMismatchError : IoError {
    using IoError::IoError;
};
struct ValueRangeError : IoError {
    using IoError::IoError;
};

using AnyInstance = std::variant<DkpInstance, BppInstance, TspInstance>;

namespace detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<std::string> read_tokens(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line))
        throw CountMismatchError(std::string("missing line: expected ") + what);
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

inline std::vector<std::string> read_exactly(std::istream& in, std::size_t count,
                                             const char* what) {
    auto tokens = read_tokens(in, what);
    if (tokens.size() != count)
        throw CountMismatchError(std::string("expected ") + std::to_string(count) +
                                 " " + what + ", found " + std::to_string(tokens.size()));
    return tokens;
}

inline std::int64_t parse_int(const std::string& tok, const char* what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw ValueRangeError(std::string("bad integer for ") + what + ": " + tok);
    }
    if (used != tok.size())
        throw ValueRangeError(std::string("bad integer for ") + what + ": " + tok);
    return v;
}

inline double parse_real(const std::string& tok, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ValueRangeError(std::string("bad real for ") + what + ": " + tok);
    }
    if (used != tok.size())
        throw ValueRangeError(std::string("bad real for ") + what + ": " + tok);
    return v;
}

}  // namespace detail

inline void write_instance(const DkpInstance& inst, std::ostream& out) {
    out << "dkp " << inst.num_items << ' ' << inst.num_constraints << '\n';
    for (int i = 0; i < inst.num_constraints; ++i)
        out << inst.capacities[i] << (i + 1 < inst.num_constraints ? ' ' : '\n');
    for (int j = 0; j < inst.num_items; ++j)
        out << inst.profits[j] << (j + 1 < inst.num_items ? ' ' : '\n');
    for (int i = 0; i < inst.num_constraints; ++i)
        for (int j = 0; j < inst.num_items; ++j)
            out << inst.weights[i][j] << (j + 1 < inst.num_items ? ' ' : '\n');
}

inline void write_instance(const BppInstance& inst, std::ostream& out) {
    out << "bpp " << inst.weights.size() << '\n';
    for (std::size_t j = 0; j < inst.weights.size(); ++j)
        out << detail::format_real(inst.weights[j])
            << (j + 1 < inst.weights.size() ? ' ' : '\n');
}

inline void write_instance(const TspInstance& inst, std::ostream& out) {
    out << "tsp " << inst.n << ' ' << (inst.symmetric ? "sym" : "asym") << ' '
        << (inst.metric ? "metric" : "nonmetric") << '\n';
    for (int u = 0; u < inst.n; ++u)
        for (int v = 0; v < inst.n; ++v)
            out << detail::format_real(inst(u, v)) << (v + 1 < inst.n ? ' ' : '\n');
}

inline void write_instance(const AnyInstance& inst, std::ostream& out) {
    std::visit([&](const auto& x) { write_instance(x, out); }, inst);
}

template <typename Instance>
void write_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_instance(inst, out);
    if (!out) throw IoError("write failed: " + path);
}

inline DkpInstance read_dkp_body(std::istream& in, const std::vector<std::string>& header) {
    if (header.size() != 3)
        throw BadHeaderError("dkp header needs: dkp N D");
    DkpInstance inst;
    inst.num_items = static_cast<int>(detail::parse_int(header[1], "item count"));
    inst.num_constraints = static_cast<int>(detail::parse_int(header[2], "constraint count"));
    if (inst.num_items < 1 || inst.num_constraints < 1)
        throw BadHeaderError("dkp header counts must be positive");

    auto caps = detail::read_exactly(in, inst.num_constraints, "capacities");
    for (const auto& t : caps)
        inst.capacities.push_back(detail::parse_int(t, "capacity"));
    auto profs = detail::read_exactly(in, inst.num_items, "profits");
    for (const auto& t : profs)
        inst.profits.push_back(detail::parse_int(t, "profit"));
    inst.weights.assign(inst.num_constraints, {});
    for (int i = 0; i < inst.num_constraints; ++i) {
        auto row = detail::read_exactly(in, inst.num_items, "weights");
        for (const auto& t : row)
            inst.weights[i].push_back(detail::parse_int(t, "weight"));
    }
    try {
        dkp_validate(inst);
    } catch (const std::invalid_argument& e) {
        throw ValueRangeError(e.what());
    }
    return inst;
}

inline BppInstance read_bpp_body(std::istream& in, const std::vector<std::string>& header) {
    if (header.size() != 2)
        throw BadHeaderError("bpp header needs: bpp N");
    const int n = static_cast<int>(detail::parse_int(header[1], "item count"));
    if (n < 1) throw BadHeaderError("bpp header count must be positive");
    BppInstance inst;
    auto row = detail::read_exactly(in, n, "weights");
    for (const auto& t : row) inst.weights.push_back(detail::parse_real(t, "weight"));
    try {
        bpp_validate(inst);
    } catch (const std::invalid_argument& e) {
        throw ValueRangeError(e.what());
    }
    return inst;
}

inline TspInstance read_tsp_body(std::istream& in, const std::vector<std::string>& header) {
    if (header.size() != 4)
        throw BadHeaderError("tsp header needs: tsp N sym|asym metric|nonmetric");
    TspInstance inst;
    inst.n = static_cast<int>(detail::parse_int(header[1], "vertex count"));
    if (inst.n < 3) throw BadHeaderError("tsp header count must be at least 3");
    if (header[2] == "sym")
        inst.symmetric = true;
    else if (header[2] == "asym")
        inst.symmetric = false;
    else
        throw BadHeaderError("tsp header symmetry flag must be sym or asym");
    if (header[3] == "metric")
        inst.metric = true;
    else if (header[3] == "nonmetric")
        inst.metric = false;
    else
        throw BadHeaderError("tsp header metric flag must be metric or nonmetric");

    inst.dist.reserve(static_cast<std::size_t>(inst.n) * inst.n);
    for (int u = 0; u < inst.n; ++u) {
        auto row = detail::read_exactly(in, inst.n, "distances");
        for (const auto& t : row) inst.dist.push_back(detail::parse_real(t, "distance"));
    }
    try {
        tsp_validate(inst);
    } catch (const std::invalid_argument& e) {
        throw ValueRangeError(e.what());
    }
    return inst;
}

inline AnyInstance read_instance(std::istream& in) {
    auto header = detail::read_tokens(in, "header");
    if (header.empty()) throw BadHeaderError("empty header line");
    if (header[0] == "dkp") return read_dkp_body(in, header);
    if (header[0] == "bpp") return read_bpp_body(in, header);
    if (header[0] == "tsp") return read_tsp_body(in, header);
    throw BadHeaderError("unknown instance kind: " + header[0]);
}

inline AnyInstance read_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return read_instance(in);
}

template <typename Instance>
std::string instance_to_string(const Instance& inst) {
    std::ostringstream out;
    write_instance(inst, out);
    return out.str();
}

}  // namespace dcopt
