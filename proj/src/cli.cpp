#include "lpsplit/cli.hpp"

#include "lpsplit/io.hpp"

#include <chrono>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <ostream>

namespace lpsplit::cli {

namespace {

int exit_code_for(SolveStatus s)
{
    return s == SolveStatus::MaxIterations ? kMaxIterations : kOk;
}

double final_residual(const SolveReport& rep)
{
    return rep.trace.empty() ? 0.0 : rep.trace.back().residual;
}

void print_summary(std::ostream& out, const SolveReport& rep, double seconds)
{
    out << "status=" << to_string(rep.status) << " iters=" << rep.iterations
        << " residual=" << format_double(final_residual(rep)) << " seconds=" << std::fixed << std::setprecision(6)
        << seconds << std::defaultfloat << '\n';
}

double step_upper(const SolverConfig& cfg)
{
    if (const auto* f = std::get_if<FixedStep>(&cfg.variant)) return f->b;
    if (const auto* h = std::get_if<Halpern>(&cfg.variant)) return h->b;
    return 0.0;
}

}  // namespace

bool strict_from_env()
{
    const char* v = std::getenv("SPLITTING_STRICT");
    return v != nullptr && std::string(v) == "1";
}

int cmd_run(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err)
{
    std::optional<RunConfig> loaded;
    try {
        loaded = load_run_config(config_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    RunConfig& cfg = *loaded;
    if (cfg.solvers.size() != 1) {
        err << "error: solvers: run expects a single 'solver' object; use compare for variant lists\n";
        return kError;
    }
    SolverConfig& solver = cfg.solvers.front();
    solver.strict = opts.strict;

    try {
        const auto t0 = std::chrono::steady_clock::now();
        SolveReport rep = solve(cfg.problem, solver, cfg.start);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_trace_csv(cfg.output_path, rep.trace);
        print_summary(out, rep, secs);
        out << "lipschitz=" << format_double(cfg.problem.a.lipschitz_bound());
        if (const double b = step_upper(solver); b > 0.0) out << " b=" << format_double(b);
        if (cfg.problem.known_solution) {
            out << " phi1=" << format_double(cfg.problem.space.lyapunov(*cfg.problem.known_solution, cfg.start));
        }
        out << " resolvent_calls=" << rep.resolvent_calls << '\n';
        if (rep.descent_violations > 0) {
            err << "warning: " << rep.descent_violations << " Lyapunov descent violations (max excess "
                << format_double(rep.max_descent_violation) << ")\n";
        }
        return exit_code_for(rep.status);
    } catch (const DescentViolation& e) {
        err << "error: " << e.what() << '\n';
        return kStrictViolation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
}

int cmd_verify_constants(const std::vector<double>& ps, int sample_count, std::uint64_t seed, long dim,
                         std::ostream& out, std::ostream& err)
{
    if (ps.empty()) {
        err << "error: at least one p is required\n";
        return kError;
    }
    for (double p : ps) {
        if (!(p > 1.0 && p <= 2.0)) {
            err << "error: p=" << format_double(p) << " is outside the supported range (1, 2]\n";
            return kError;
        }
    }
    if (sample_count < 1 || dim < 1) {
        err << "error: samples and dim must be positive\n";
        return kError;
    }
    bool all_pass = true;
    for (double p : ps) {
        const LpSpace space(static_cast<Index>(dim), p);
        for (const ConstantCheck& c : verify_constants(space, sample_count, seed)) {
            out << "p=" << format_double(p) << " check=" << c.name << " max_violation="
                << format_double(c.max_violation) << " tolerance=" << format_double(c.tolerance)
                << (c.pass ? " PASS" : " FAIL") << '\n';
            all_pass = all_pass && c.pass;
        }
    }
    return all_pass ? kOk : kError;
}

int cmd_rate_report(const RateReportArgs& args, std::ostream& out, std::ostream& err)
{
    try {
        const std::vector<IterationRecord> trace = read_trace_csv(args.trace_path);
        if (trace.empty()) {
            err << "error: trace has no rows\n";
            return kError;
        }
        for (const IterationRecord& r : trace) {
            if (!r.lyapunov_to_solution) {
                err << "error: trace row n=" << r.n << " has no phi_to_solution value; "
                    << "the rate certificate needs a run with a known solution\n";
                return kError;
            }
        }
        const double phi1 = args.phi1 ? *args.phi1 : *trace.front().lyapunov_to_solution;
        const LpSpace space(1, args.p);
        const RateCertificate cert = rate_certificate(space, args.lipschitz, args.b, phi1, trace);
        out << "rows=" << trace.size() << " worst_ratio=" << format_double(cert.worst_ratio)
            << " pass=" << (cert.pass ? "true" : "false") << '\n';
        return cert.pass ? kOk : kBoundViolated;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
}

std::string compare_trace_path(const std::string& base, std::size_t k, const std::string& variant)
{
    std::string stem = base;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) stem.resize(stem.size() - 4);
    return stem + "." + std::to_string(k) + "." + variant + ".csv";
}

int cmd_compare(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err)
{
    std::optional<RunConfig> loaded;
    try {
        loaded = load_run_config(config_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    RunConfig& cfg = *loaded;
    for (SolverConfig& s : cfg.solvers) s.strict = opts.strict;

    // Variants share the immutable instance and run concurrently.
    std::vector<std::future<SolveReport>> jobs;
    for (const SolverConfig& s : cfg.solvers) {
        jobs.push_back(std::async(std::launch::async, [&cfg, &s] { return solve(cfg.problem, s, cfg.start); }));
    }
    std::vector<SolveReport> reports;
    int code = kOk;
    for (auto& job : jobs) {
        try {
            reports.push_back(job.get());
        } catch (const DescentViolation& e) {
            err << "error: " << e.what() << '\n';
            code = kStrictViolation;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            if (code == kOk) code = kError;
        }
    }
    if (code != kOk) return code;

    try {
        out << std::left << std::setw(4) << "k" << std::setw(12) << "variant" << std::setw(18) << "status"
            << std::setw(12) << "iterations" << std::setw(17) << "resolvent_calls" << "final_residual\n";
        for (std::size_t k = 0; k < reports.size(); ++k) {
            const std::string name = variant_name(cfg.solvers[k].variant);
            write_trace_csv(compare_trace_path(cfg.output_path, k, name), reports[k].trace);
            out << std::left << std::setw(4) << k << std::setw(12) << name << std::setw(18)
                << to_string(reports[k].status) << std::setw(12) << reports[k].iterations << std::setw(17)
                << reports[k].resolvent_calls << format_double(final_residual(reports[k])) << '\n';
            if (reports[k].status == SolveStatus::MaxIterations) code = kMaxIterations;
        }
        double spread = 0.0;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            for (std::size_t j = i + 1; j < reports.size(); ++j) {
                spread = std::max(spread, cfg.problem.space.norm(reports[i].final_point - reports[j].final_point));
            }
        }
        out << "max_pairwise_distance=" << format_double(spread) << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    return code;
}

}  // namespace lpsplit::cli
