#include <filesystem>
#include <iostream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "dcopt/experiment.hpp"
#include "dcopt/report.hpp"

namespace {

namespace fs = std::filesystem;

int cmd_generate(const std::string& spec_path, const std::string& out_path) {
    const dcopt::GenSpec spec = dcopt::load_gen_spec(spec_path);
    switch (spec.problem) {
        case dcopt::ProblemKind::dkp:
            dcopt::write_instance_file(dcopt::gen_dkp(spec), out_path);
            break;
        case dcopt::ProblemKind::bpp:
            dcopt::write_instance_file(dcopt::gen_bpp(spec), out_path);
            break;
        default:
            dcopt::write_instance_file(dcopt::gen_tsp(spec), out_path);
            break;
    }
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

struct SolveOptions {
    std::string method = "full";  // full | dc
    std::string oracle = "auto";  // exact | greedy | heuristic | auto
    int depth = 1;
};

void print_timing(const char* what, double seconds) {
    std::cout << what << ": " << seconds << " s\n";
}

int solve_dkp(const dcopt::DkpInstance& inst, const SolveOptions& opt) {
    const dcopt::DkpOracle oracle =
        opt.oracle == "greedy" ? dcopt::DkpOracle::greedy : dcopt::DkpOracle::exact;
    if (opt.method == "full") {
        auto run = dcopt::timed(
            [&](const dcopt::DkpInstance& x) { return dcopt::dkp_solve(x, oracle); }, inst);
        std::cout << "objective: " << run.solution.value << '\n';
        print_timing("time", run.wall_time);
    } else {
        auto dc = dcopt::dkp_dc(inst, oracle, opt.depth);
        std::cout << "objective: " << static_cast<long long>(dc.objective) << '\n';
        print_timing("time", dc.solve_time);
        print_timing("  left", dc.left_time);
        print_timing("  right", dc.right_time);
    }
    return 0;
}

int solve_bpp(const dcopt::BppInstance& inst, const SolveOptions& opt) {
    dcopt::BppAlg alg = dcopt::BppAlg::ffd;
    if (opt.oracle == "nfd") alg = dcopt::BppAlg::nfd;
    if (opt.oracle == "bfd") alg = dcopt::BppAlg::bfd;
    if (opt.method == "full") {
        auto run = dcopt::timed(
            [&](const dcopt::BppInstance& x) { return dcopt::bpp_pack(x, alg); }, inst);
        std::cout << "objective: " << run.solution.bin_count << '\n';
        print_timing("time", run.wall_time);
    } else {
        auto dc = dcopt::bpp_dc(inst, alg, opt.depth);
        std::cout << "objective: " << static_cast<int>(dc.objective) << '\n';
        print_timing("time", dc.solve_time);
        print_timing("  left", dc.left_time);
        print_timing("  right", dc.right_time);
    }
    return 0;
}

int solve_tsp(const dcopt::TspInstance& inst, const SolveOptions& opt) {
    dcopt::TspOracle oracle;
    if (opt.oracle == "exact")
        oracle = dcopt::TspOracle::exact;
    else if (opt.oracle == "heuristic")
        oracle = dcopt::TspOracle::heuristic;
    else
        oracle = inst.n <= dcopt::kTspExactLimit ? dcopt::TspOracle::exact
                                                 : dcopt::TspOracle::heuristic;
    if (opt.method == "full") {
        auto run = dcopt::timed(
            [&](const dcopt::TspInstance& x) { return dcopt::tsp_solve(x, oracle); }, inst);
        std::cout << "objective: " << run.solution.cost << '\n';
        print_timing("time", run.wall_time);
    } else {
        auto dc = dcopt::tsp_dc(inst, oracle, opt.depth);
        std::cout << "objective: " << dc.objective << '\n';
        print_timing("time", dc.solve_time);
        print_timing("  left", dc.left_time);
        print_timing("  right", dc.right_time);
    }
    return 0;
}

int cmd_solve(const std::string& instance_path, const SolveOptions& opt) {
    const dcopt::AnyInstance inst = dcopt::read_instance_file(instance_path);
    std::cout << "method: " << opt.method;
    if (opt.method == "dc") std::cout << " (depth " << opt.depth << ")";
    std::cout << '\n';
    return std::visit(
        [&](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, dcopt::DkpInstance>)
                return solve_dkp(x, opt);
            else if constexpr (std::is_same_v<T, dcopt::BppInstance>)
                return solve_bpp(x, opt);
            else
                return solve_tsp(x, opt);
        },
        inst);
}

int cmd_experiment(const std::string& spec_path, const std::string& out_dir) {
    const dcopt::ExperimentSpec spec = dcopt::load_experiment_spec(spec_path);
    const dcopt::ExperimentReport report = dcopt::run_experiment(spec);
    fs::create_directories(out_dir);
    const std::string csv_path = (fs::path(out_dir) / "report.csv").string();
    dcopt::emit_csv_file(report, csv_path);
    if (report.pilot >= 2)
        std::cout << "pilot: " << report.pilot << " trials, worst S_f variance "
                  << report.pilot_variance << ", recommended k "
                  << report.recommended_trials << '\n';
    std::cout << "ran " << report.rows.size() << " cells x " << report.trials
              << " trials\nwrote " << csv_path << '\n';
    dcopt::emit_table(report, std::cout);
    return 0;
}

int cmd_report(const std::string& dir, const std::string& format) {
    const std::string csv_path = (fs::path(dir) / "report.csv").string();
    const dcopt::ExperimentReport report = dcopt::parse_report_csv_file(csv_path);
    if (format == "csv") {
        dcopt::emit_csv(report, std::cout);
    } else if (format == "table") {
        const std::string path = (fs::path(dir) / "report.txt").string();
        dcopt::emit_table_file(report, path);
        dcopt::emit_table(report, std::cout);
        std::cout << "wrote " << path << '\n';
    } else {
        for (const auto& path : dcopt::emit_plotdata(report, dir))
            std::cout << "wrote " << path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divide-and-conquer toolkit for d-KP, bin packing and TSP"};
    app.require_subcommand(1);

    std::string gen_spec, gen_out;
    auto* generate = app.add_subcommand("generate", "generate a random instance file");
    generate->add_option("spec-file", gen_spec, "generator spec (key = value)")->required();
    generate->add_option("out", gen_out, "output instance path")->required();

    std::string solve_instance;
    SolveOptions solve_opt;
    auto* solve = app.add_subcommand("solve", "solve one instance file");
    solve->add_option("instance", solve_instance, "instance path")->required();
    solve->add_option("--method", solve_opt.method, "full or dc")
        ->check(CLI::IsMember({"full", "dc"}));
    solve->add_option("--oracle", solve_opt.oracle,
                      "exact|greedy (dkp), nfd|ffd|bfd (bpp), exact|heuristic|auto (tsp)");
    solve->add_option("--depth", solve_opt.depth, "dc split depth")
        ->check(CLI::PositiveNumber);

    std::string exp_spec, exp_out;
    auto* experiment = app.add_subcommand("experiment", "run a Monte-Carlo experiment");
    experiment->add_option("spec-file", exp_spec, "experiment spec (key = value)")->required();
    experiment->add_option("--out", exp_out, "output directory")->required();

    std::string rep_dir, rep_format = "table";
    auto* report = app.add_subcommand("report", "re-emit a stored report");
    report->add_option("dir", rep_dir, "experiment output directory")->required();
    report->add_option("--format", rep_format, "csv, table or plot")
        ->check(CLI::IsMember({"csv", "table", "plot"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(gen_spec, gen_out);
        if (solve->parsed()) return cmd_solve(solve_instance, solve_opt);
        if (experiment->parsed()) return cmd_experiment(exp_spec, exp_out);
        if (report->parsed()) return cmd_report(rep_dir, rep_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
