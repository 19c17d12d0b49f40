// kwidth_cli <experiment> --config <path> [--p INT] [--N LIST] [--grid LIST]
//            [--seed UINT] [--symbol STR] [--out PATH]
// Exit status: 0 success, 1 invalid configuration, 2 numerical failure.

#include "kwidth/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace ex = kwidth::experiment;

int main(int argc, char** argv) {
    CLI::App app{"Kolmogorov widths and elliptic eigenproblems"};
    std::string experiment;
    std::string config_path;
    std::optional<int> p;
    std::optional<std::string> n_list;
    std::optional<std::string> grid_list;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> symbol;
    std::optional<std::string> out;
    app.add_option("experiment", experiment, "ect|widths1d|eigen2d|widths2d|direct|symdiv|convergence")->required();
    app.add_option("--config", config_path, "JSON configuration file")->required();
    app.add_option("--p", p, "order p (number of factors M for direct)");
    app.add_option("--N", n_list, "N values, e.g. 1,2,3 or 0..5");
    app.add_option("--grid", grid_list, "grid sizes, e.g. 17,33,65");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--symbol", symbol, "polynomial symbol, e.g. '2,0:1 0,2:1'");
    app.add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ex::ExperimentConfig c = ex::load_config(config_path);
        const ex::Experiment named = ex::parse_experiment(experiment);
        if (c.experiment && *c.experiment != named) {
            throw kwidth::Error(kwidth::ErrorKind::InvalidConfig,
                                "field 'experiment': config says '" + ex::to_string(*c.experiment) +
                                    "' but the command line says '" + experiment + "'");
        }
        if (p) c.p = *p;
        if (n_list) c.N = ex::parse_int_list(*n_list);
        if (grid_list) c.grid = ex::parse_int_list(*grid_list);
        if (seed) c.seed = *seed;
        if (symbol) c.symbol = *symbol;
        if (out) c.out = *out;
        const ex::RunResult result = ex::run(c);
        ex::emit(c, result);
        std::cout << result.report.dump(2) << '\n';
        return 0;
    } catch (const kwidth::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kwidth::is_numerical_failure(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
