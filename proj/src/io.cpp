#include "lpsplit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace lpsplit {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ConfigError(where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + "." + key, "missing required field");
    return *it;
}

double as_number(const json& v, const std::string& where)
{
    if (!v.is_number()) fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where, "expected a finite number");
    return d;
}

long long as_integer(const json& v, const std::string& where)
{
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<long long>();
}

std::string as_string(const json& v, const std::string& where)
{
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    return as_number(*it, where + "." + key);
}

// A null bound means unbounded on that side.
double bound(const json& obj, const char* key, double unbounded, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return unbounded;
    return as_number(*it, where + "." + key);
}

Eigen::VectorXd as_vector(const json& v, const std::string& where)
{
    if (!v.is_array()) fail(where, "expected an array of numbers");
    Eigen::VectorXd out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[static_cast<Index>(i)] = as_number(v[i], where + "[" + std::to_string(i) + "]");
    }
    return out;
}

Eigen::MatrixXd as_matrix(const json& v, const std::string& where)
{
    if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of rows");
    const std::size_t rows = v.size();
    if (!v[0].is_array()) fail(where + "[0]", "expected an array of numbers");
    const std::size_t cols = v[0].size();
    Eigen::MatrixXd m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rw = where + "[" + std::to_string(r) + "]";
        if (!v[r].is_array() || v[r].size() != cols) fail(rw, "rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) = as_number(v[r][c], rw + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

ScalarPiece parse_piece(const json& v, const std::string& where)
{
    const std::string type = as_string(require(v, "type", where), where + ".type");
    try {
        if (type == "zero") return ScalarPiece::zero();
        if (type == "interval") {
            return ScalarPiece::interval(bound(v, "lo", -kInf, where), bound(v, "hi", kInf, where));
        }
        if (type == "abs") return ScalarPiece::scaled_abs(as_number(require(v, "alpha", where), where + ".alpha"));
        if (type == "quadratic") return ScalarPiece::quadratic(as_number(require(v, "w", where), where + ".w"));
    } catch (const std::invalid_argument& e) {
        if (dynamic_cast<const ConfigError*>(&e)) throw;
        fail(where, e.what());
    }
    fail(where + ".type", "unknown piece type '" + type + "' (expected zero, interval, abs, quadratic)");
}

}  // namespace

SeparableConvex parse_pieces(const json& v, Index n, const std::string& where)
{
    if (v.is_object()) return SeparableConvex::uniform(n, parse_piece(v, where));
    if (!v.is_array()) fail(where, "expected a piece object or an array of pieces");
    if (static_cast<Index>(v.size()) != n) {
        fail(where, "expected " + std::to_string(n) + " pieces, got " + std::to_string(v.size()));
    }
    std::vector<ScalarPiece> pieces;
    for (std::size_t i = 0; i < v.size(); ++i) pieces.push_back(parse_piece(v[i], where + "[" + std::to_string(i) + "]"));
    return SeparableConvex(std::move(pieces));
}

namespace {

ProblemInstance parse_inline(const json& v, const LpSpace& space, const std::string& where)
{
    const Index n = space.dim();
    const json& a = require(v, "A", where);
    const std::string kind = as_string(require(a, "kind", where + ".A"), where + ".A.kind");

    std::optional<LipschitzMonotoneMap> map;
    try {
        if (kind == "zero") {
            map = LipschitzMonotoneMap::zero(n);
        } else if (kind == "affine") {
            Eigen::MatrixXd m = as_matrix(require(a, "M", where + ".A"), where + ".A.M");
            Eigen::VectorXd c = a.contains("c") ? as_vector(a["c"], where + ".A.c") : Eigen::VectorXd::Zero(n);
            if (m.rows() != n || m.cols() != n) fail(where + ".A.M", "must be n x n");
            if (c.size() != n) fail(where + ".A.c", "must have length n");
            map = LipschitzMonotoneMap::affine(std::move(m), std::move(c));
            if (!map->is_monotone()) fail(where + ".A.M", "M + M^T is not positive semidefinite");
        } else if (kind == "leastSquares") {
            Eigen::MatrixXd m = as_matrix(require(a, "M", where + ".A"), where + ".A.M");
            Eigen::VectorXd b = as_vector(require(a, "b", where + ".A"), where + ".A.b");
            if (m.cols() != n) fail(where + ".A.M", "must have n columns");
            if (m.rows() != b.size()) fail(where + ".A.b", "length must equal the row count of M");
            map = LipschitzMonotoneMap::least_squares_gradient(std::move(m), std::move(b));
        } else {
            fail(where + ".A.kind", "unknown kind '" + kind + "' (expected affine, leastSquares, zero)");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(where + ".A", e.what());
    }

    SeparableConvex b = v.contains("B") ? parse_pieces(v["B"], n, where + ".B") : SeparableConvex::zero(n);

    ProblemInstance inst{space, std::move(*map), std::move(b), std::nullopt, false, 0};
    if (v.contains("unique")) {
        if (!v["unique"].is_boolean()) fail(where + ".unique", "expected a boolean");
        inst.solution_unique = v["unique"].get<bool>();
    }
    if (v.contains("solution")) {
        Eigen::VectorXd xs = as_vector(v["solution"], where + ".solution");
        if (xs.size() != n) fail(where + ".solution", "must have length n");
        PrimalVector sol(std::move(xs));
        const double check = brute_force_inclusion_check(inst, sol);
        if (!(check <= 1e-8)) fail(where + ".solution", "does not solve the inclusion (residual " + format_double(check) + ")");
        inst.known_solution = std::move(sol);
    }
    return inst;
}

IterationRecord parse_row(const std::string& line, std::size_t lineno)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 6) {
        throw std::runtime_error("trace line " + std::to_string(lineno) + ": expected 6 columns");
    }
    auto num = [&](const std::string& s, const char* col) {
        try {
            std::size_t used = 0;
            const double d = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return d;
        } catch (const std::exception&) {
            throw std::runtime_error("trace line " + std::to_string(lineno) + ": bad value in column " + col);
        }
    };
    IterationRecord rec;
    rec.n = static_cast<int>(num(cells[0], "n"));
    rec.lambda = num(cells[1], "lambda");
    rec.residual = num(cells[2], "residual");
    if (!cells[3].empty()) rec.lyapunov_to_solution = num(cells[3], "phi_to_solution");
    if (!cells[4].empty()) rec.linesearch_trials = static_cast<int>(num(cells[4], "linesearch_trials"));
    if (!cells[5].empty()) rec.alpha = num(cells[5], "alpha_n");
    return rec;
}

}  // namespace

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ProblemInstance build_problem(const json& space_j, const json& problem)
{
    const long long n = as_integer(require(space_j, "n", "space"), "space.n");
    const double p = as_number(require(space_j, "p", "space"), "space.p");
    if (n < 1) fail("space.n", "must be positive");
    if (!(p > 1.0 && p <= 2.0)) fail("space.p", "must lie in (1, 2]");
    const LpSpace space(static_cast<Index>(n), p);

    if (!problem.is_object()) fail("problem", "expected an object");
    if (problem.contains("inline")) return parse_inline(problem["inline"], space, "problem.inline");

    const std::string gen = as_string(require(problem, "generator", "problem"), "problem.generator");
    const long long seed = as_integer(require(problem, "seed", "problem"), "problem.seed");
    if (seed < 0) fail("problem.seed", "must be nonnegative");
    const json params = problem.contains("params") ? problem["params"] : json::object();
    if (!params.is_object()) fail("problem.params", "expected an object");
    const auto useed = static_cast<std::uint64_t>(seed);

    try {
        if (gen == "strongly_monotone") {
            const double gamma = number_or(params, "gamma", 1.0, "problem.params");
            PieceFamily family = PieceFamily::Box;
            if (params.contains("pieces")) {
                const std::string f = as_string(params["pieces"], "problem.params.pieces");
                if (f == "mixed") family = PieceFamily::Mixed;
                else if (f != "box") fail("problem.params.pieces", "expected 'box' or 'mixed'");
            }
            return gen_strongly_monotone(useed, space.dim(), p, gamma, family);
        }
        if (gen == "skew_vi") {
            const double w = number_or(params, "skewWeight", 0.5, "problem.params");
            const double lo = bound(params, "lo", -kInf, "problem.params");
            const double hi = bound(params, "hi", kInf, "problem.params");
            return gen_skew_vi(useed, space.dim(), p, w, params.contains("lo") ? lo : -1.0,
                               params.contains("hi") ? hi : 1.0);
        }
        if (gen == "lasso") {
            const long long m = as_integer(require(params, "m", "problem.params"), "problem.params.m");
            if (m < 1) fail("problem.params.m", "must be positive");
            const double alpha = number_or(params, "alpha", 0.1, "problem.params");
            ProblemInstance inst = composite_to_inclusion(gen_lasso_like(useed, static_cast<Index>(m), space.dim(), alpha), space);
            inst.seed = useed;
            return inst;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail("problem.params", e.what());
    }
    fail("problem.generator", "unknown generator '" + gen + "' (expected strongly_monotone, skew_vi, lasso)");
}

SolverConfig parse_solver(const json& s, const LpSpace& space, double lipschitz, const std::string& where)
{
    if (!s.is_object()) fail(where, "expected an object");
    SolverConfig cfg;
    const std::string variant = as_string(require(s, "variant", where), where + ".variant");
    const double cap = space.step_size_cap(lipschitz);

    auto schedule = [&]() {
        if (!s.contains("schedule")) return StepSchedule::Constant;
        const std::string v = as_string(s["schedule"], where + ".schedule");
        if (v == "constant") return StepSchedule::Constant;
        if (v == "ramp") return StepSchedule::Ramp;
        fail(where + ".schedule", "expected 'constant' or 'ramp'");
    };

    if (variant == "fixed") {
        cfg.variant = FixedStep{number_or(s, "a", 0.8 * cap, where), number_or(s, "b", 0.9 * cap, where), schedule()};
    } else if (variant == "linesearch") {
        cfg.variant = Linesearch{number_or(s, "gamma", 1.0, where), number_or(s, "l", 0.5, where),
                                 number_or(s, "theta", 0.9 * space.theta_cap(), where)};
    } else if (variant == "halpern") {
        Halpern h{number_or(s, "a", 0.8 * cap, where), number_or(s, "b", 0.9 * cap, where), {}, schedule()};
        if (s.contains("anchor")) {
            const std::string a = as_string(s["anchor"], where + ".anchor");
            if (a == "harmonic") h.anchor.kind = AnchorSchedule::Kind::Harmonic;
            else if (a == "power") h.anchor.kind = AnchorSchedule::Kind::Power;
            else if (a == "none") h.anchor.kind = AnchorSchedule::Kind::None;
            else fail(where + ".anchor", "expected 'harmonic', 'power' or 'none'");
        }
        h.anchor.exponent = number_or(s, "anchorExponent", 1.0, where);
        cfg.variant = h;
    } else {
        fail(where + ".variant", "unknown variant '" + variant + "' (expected fixed, linesearch, halpern)");
    }

    cfg.epsilon = as_number(require(s, "epsilon", where), where + ".epsilon");
    const long long max_it = as_integer(require(s, "maxIterations", where), where + ".maxIterations");
    if (max_it < 1 || max_it > std::numeric_limits<int>::max()) fail(where + ".maxIterations", "must be at least 1");
    cfg.max_iterations = static_cast<int>(max_it);
    if (s.contains("traceEvery")) {
        const long long te = as_integer(s["traceEvery"], where + ".traceEvery");
        if (te < 1 || te > std::numeric_limits<int>::max()) fail(where + ".traceEvery", "must be at least 1");
        cfg.trace_every = static_cast<int>(te);
    }
    try {
        validate(cfg, space, lipschitz);
    } catch (const ConfigError& e) {
        // validate() reports "solver.<field>"; re-root it at this solver's path.
        std::string msg = e.what();
        if (where != "solver" && msg.rfind("solver.", 0) == 0) msg = where + msg.substr(6);
        throw ConfigError(msg);
    }
    return cfg;
}

RunConfig parse_run_config(const json& doc)
{
    if (!doc.is_object()) fail("config", "expected a JSON object");
    const json& space = require(doc, "space", "config");
    const json& problem = require(doc, "problem", "config");
    const json& output = require(doc, "output", "config");

    // Validate cheap fields before generating the instance.
    if (!doc.contains("solver") && !doc.contains("solvers")) fail("config.solver", "missing required field");
    const std::string path = as_string(require(output, "path", "output"), "output.path");
    if (path.empty()) fail("output.path", "must not be empty");

    RunConfig cfg{build_problem(space, problem), {}, PrimalVector(), path};
    const LpSpace& sp = cfg.problem.space;
    const double lip = cfg.problem.a.lipschitz_bound();

    if (doc.contains("solvers")) {
        const json& list = doc["solvers"];
        if (!list.is_array() || list.empty()) fail("solvers", "expected a non-empty array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            cfg.solvers.push_back(parse_solver(list[i], sp, lip, "solvers[" + std::to_string(i) + "]"));
        }
    } else {
        cfg.solvers.push_back(parse_solver(doc["solver"], sp, lip, "solver"));
    }

    if (doc.contains("start")) {
        Eigen::VectorXd x = as_vector(doc["start"], "start");
        if (x.size() != sp.dim()) fail("start", "must have length n");
        cfg.start = PrimalVector(std::move(x));
    } else {
        cfg.start = PrimalVector::zero(sp.dim());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_run_config(doc);
}

void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace)
{
    os << kTraceHeader << '\n';
    for (const IterationRecord& r : trace) {
        os << r.n << ',' << format_double(r.lambda) << ',' << format_double(r.residual) << ',';
        if (r.lyapunov_to_solution) os << format_double(*r.lyapunov_to_solution);
        os << ',';
        if (r.linesearch_trials) os << *r.linesearch_trials;
        os << ',';
        if (r.alpha) os << format_double(*r.alpha);
        os << '\n';
    }
}

void write_trace_csv(const std::string& path, const std::vector<IterationRecord>& trace)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file '" + path + "' for writing");
    write_trace_csv(out, trace);
    if (!out) throw std::runtime_error("failed writing trace file '" + path + "'");
}

std::vector<IterationRecord> read_trace_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("trace: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader) throw std::runtime_error("trace: unexpected header '" + line + "'");
    std::vector<IterationRecord> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(parse_row(line, lineno));
    }
    return rows;
}

std::vector<IterationRecord> read_trace_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
    return read_trace_csv(in);
}

}  // namespace lpsplit
