#pragma once

// Experiment configuration and orchestration behind the CLI.

#include "kwidth/report_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kwidth::experiment {

enum class Experiment { Ect, Widths1d, Eigen2d, Widths2d, Direct, Symdiv, Convergence };

std::string to_string(Experiment e);
/// Throws InvalidConfig for unknown names.
Experiment parse_experiment(const std::string& name);

struct ExperimentConfig {
    std::optional<Experiment> experiment;
    std::optional<int> p;
    std::vector<int> N;
    std::vector<int> grid;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> symbol;
    std::optional<std::string> divisor;  // symdiv only
    std::optional<std::string> weights_file;
    std::optional<std::string> out;
};

/// Reads the JSON fields; type errors throw InvalidConfig naming the field.
/// Required fields are checked later by validate() so that flag overrides can
/// supply them.
ExperimentConfig parse_config(const io::Json& j);
ExperimentConfig load_config(const std::string& path);

/// "1,2,5" or "1..5" (inclusive) or a mix such as "1..3,8".
std::vector<int> parse_int_list(const std::string& text);

/// Throws InvalidConfig naming the first missing or out-of-range field.
void validate(const ExperimentConfig& c);

struct ConvergenceRow {
    int grid;
    double value;
    double error_vs_oracle;
    std::optional<double> observed_order;  // empty on the coarsest grid
};

/// Errors against an Aitken extrapolation from the three finest grids and
/// log2 ratios of successive errors. Throws InvalidArgument unless there are
/// at least three strictly increasing grids.
std::vector<ConvergenceRow> convergence_rows(const std::vector<int>& grids, const std::vector<double>& values);

struct RunResult {
    io::Json report;
    std::map<std::string, io::CsvTable> tables;  // file stem -> table
};

/// Validates and runs. Deterministic given the config.
RunResult run(const ExperimentConfig& c);

/// Writes report.json and <stem>.csv into c.out (created if missing).
void emit(const ExperimentConfig& c, const RunResult& result);

}  // namespace kwidth::experiment
