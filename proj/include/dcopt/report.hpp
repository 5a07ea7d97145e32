#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "dcopt/experiment.hpp"

namespace dcopt {

inline constexpr const char* kReportCsvHeader =
    "problem,n,variant,trials,base_seed,sf_mean,sf_var,sf_ci_low,sf_ci_high,"
    "tf_mean,tf_var,tf_ci_low,tf_ci_high";

inline void emit_csv(const ExperimentReport& report, std::ostream& out) {
    out << kReportCsvHeader << '\n';
    for (const auto& row : report.rows) {
        out << to_string(report.problem) << ',' << row.n << ',' << row.variant << ','
            << row.sf.n << ',' << report.base_seed << ','
            << detail::format_real(row.sf.mean) << ','
            << detail::format_real(row.sf.variance) << ','
            << detail::format_real(row.sf_ci_low) << ','
            << detail::format_real(row.sf_ci_high) << ','
            << detail::format_real(row.tf.mean) << ','
            << detail::format_real(row.tf.variance) << ','
            << detail::format_real(row.tf_ci_low) << ','
            << detail::format_real(row.tf_ci_high) << '\n';
    }
}

inline void emit_csv_file(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    emit_csv(report, out);
    if (!out) throw IoError("write failed: " + path);
}

inline ExperimentReport parse_report_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("report csv: empty file");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line != kReportCsvHeader) throw IoError("report csv: unexpected header");

    ExperimentReport report;
    bool first = true;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 13) throw IoError("report csv: malformed row: " + line);

        ExperimentRow row;
        row.n = static_cast<int>(detail::parse_int(fields[1], "n"));
        row.variant = fields[2];
        row.sf.n = static_cast<std::size_t>(detail::parse_int(fields[3], "trials"));
        row.tf.n = row.sf.n;
        row.sf.mean = detail::parse_real(fields[5], "sf_mean");
        row.sf.variance = detail::parse_real(fields[6], "sf_var");
        row.sf_ci_low = detail::parse_real(fields[7], "sf_ci_low");
        row.sf_ci_high = detail::parse_real(fields[8], "sf_ci_high");
        row.tf.mean = detail::parse_real(fields[9], "tf_mean");
        row.tf.variance = detail::parse_real(fields[10], "tf_var");
        row.tf_ci_low = detail::parse_real(fields[11], "tf_ci_low");
        row.tf_ci_high = detail::parse_real(fields[12], "tf_ci_high");
        if (first) {
            report.problem = problem_from_string(fields[0]);
            report.base_seed = std::stoull(fields[4]);
            report.trials = static_cast<int>(row.sf.n);
            first = false;
        }
        report.rows.push_back(std::move(row));
    }
    if (first) throw IoError("report csv: no data rows");
    return report;
}

inline ExperimentReport parse_report_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return parse_report_csv(in);
}

// Aligned text table in the paper's layout: one row per n, a (S_f, T_f)
// column pair per variant, means only.
inline void emit_table(const ExperimentReport& report, std::ostream& out) {
    std::vector<int> ns;
    std::vector<std::string> variants;
    for (const auto& row : report.rows) {
        if (std::find(ns.begin(), ns.end(), row.n) == ns.end()) ns.push_back(row.n);
        if (std::find(variants.begin(), variants.end(), row.variant) == variants.end())
            variants.push_back(row.variant);
    }

    const int w = 12;
    out << std::setw(6) << "N";
    for (const auto& v : variants) {
        std::string head = v;
        if (static_cast<int>(head.size()) > 2 * w - 2) head.resize(2 * w - 2);
        const int pad = 2 * w - static_cast<int>(head.size());
        out << std::string(pad / 2 + pad % 2, ' ') << head << std::string(pad / 2, ' ');
    }
    out << '\n' << std::setw(6) << "";
    for (std::size_t i = 0; i < variants.size(); ++i)
        out << std::setw(w) << "S_f" << std::setw(w) << "T_f";
    out << '\n';

    out << std::fixed << std::setprecision(2);
    for (int n : ns) {
        out << std::setw(6) << n;
        for (const auto& v : variants) {
            const ExperimentRow* cell = nullptr;
            for (const auto& row : report.rows)
                if (row.n == n && row.variant == v) {
                    cell = &row;
                    break;
                }
            if (cell)
                out << std::setw(w) << cell->sf.mean << std::setw(w) << cell->tf.mean;
            else
                out << std::setw(w) << "-" << std::setw(w) << "-";
        }
        out << '\n';
    }
    out.unsetf(std::ios::fixed);
}

inline void emit_table_file(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    emit_table(report, out);
    if (!out) throw IoError("write failed: " + path);
}

namespace detail {

inline std::string sanitize_label(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')
            out.push_back(c);
        else if (!out.empty() && out.back() != '-')
            out.push_back('-');
    }
    while (!out.empty() && out.back() == '-') out.pop_back();
    return out;
}

}  // namespace detail

// One file per variant and coefficient. The d-KP and BPP tables plot against
// log10(N), so those files carry an extra log10(N) column; TSP plots keep a
// linear domain.
inline std::vector<std::string> emit_plotdata(const ExperimentReport& report,
                                              const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const bool log_domain = report.problem == ProblemKind::dkp ||
                            report.problem == ProblemKind::bpp;

    std::vector<std::string> variants;
    for (const auto& row : report.rows)
        if (std::find(variants.begin(), variants.end(), row.variant) == variants.end())
            variants.push_back(row.variant);

    std::vector<std::string> written;
    for (const auto& variant : variants) {
        for (const char* coeff : {"sf", "tf"}) {
            const std::string path = (fs::path(dir) / ("plot_" + std::string(coeff) +
                                                       "_" + detail::sanitize_label(variant) +
                                                       ".dat"))
                                         .string();
            std::ofstream out(path, std::ios::binary);
            if (!out) throw IoError("cannot open for writing: " + path);
            out << (log_domain ? "# n log10n value\n" : "# n value\n");
            for (const auto& row : report.rows) {
                if (row.variant != variant) continue;
                const double value = coeff[0] == 's' ? row.sf.mean : row.tf.mean;
                out << row.n;
                if (log_domain)
                    out << ' ' << detail::format_real(std::log10(static_cast<double>(row.n)));
                out << ' ' << detail::format_real(value) << '\n';
            }
            if (!out) throw IoError("write failed: " + path);
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace dcopt
