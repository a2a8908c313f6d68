#pragma once

#include "lpsplit/problems.hpp"
#include "lpsplit/solvers.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lpsplit {

/// Parsed and validated run configuration.
///
/// JSON layout:
///   { "space":   {"n": int, "p": number},
///     "problem": {"generator": "strongly_monotone" | "skew_vi" | "lasso", "seed": int, "params": {...}}
///              | {"inline": {"A": {...}, "B": piece | [pieces], "solution": [...], "unique": bool}},
///     "solver":  {"variant": "fixed" | "linesearch" | "halpern", ..., "epsilon": number,
///                 "maxIterations": int, "traceEvery": int},
///     "solvers": [ solver, ... ]          (compare only, instead of "solver")
///     "start":   [numbers]                (optional, default 0)
///     "output":  {"path": string} }
struct RunConfig {
    ProblemInstance problem;
    std::vector<SolverConfig> solvers;
    PrimalVector start;
    std::string output_path;
};

/// Throws ConfigError whose message starts with the dotted path of the
/// offending field, e.g. "solver.maxIterations: must be at least 1".
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// A single piece object applies to every coordinate; an array gives one per coordinate.
SeparableConvex parse_pieces(const nlohmann::json& v, Index n, const std::string& where = "B");

ProblemInstance build_problem(const nlohmann::json& space, const nlohmann::json& problem);
SolverConfig parse_solver(const nlohmann::json& solver, const LpSpace& space, double lipschitz,
                          const std::string& where = "solver");

/// Shortest round-trip decimal: 17 significant digits.
std::string format_double(double v);

/// CSV with header n,lambda,residual,phi_to_solution,linesearch_trials,alpha_n;
/// inapplicable cells are left empty.
void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace);
void write_trace_csv(const std::string& path, const std::vector<IterationRecord>& trace);
std::vector<IterationRecord> read_trace_csv(std::istream& is);
std::vector<IterationRecord> read_trace_csv(const std::string& path);

inline constexpr const char* kTraceHeader = "n,lambda,residual,phi_to_solution,linesearch_trials,alpha_n";

}  // namespace lpsplit
