#include "lpsplit/solvers.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

namespace lpsplit {

namespace {

constexpr double kDescentSlack = 1e-10;
constexpr int kLinesearchTrialBudget = 10000;

double schedule_lambda(StepSchedule schedule, double a, double b, int n)
{
    if (schedule == StepSchedule::Ramp) {
        const double frac = static_cast<double>(n) / static_cast<double>(n + 1);
        return a + frac * (b - a);
    }
    return 0.5 * (a + b);
}

// Round-off floor below which x_n and y_n are treated as equal.
bool at_fixed_point(double residual, double x_norm)
{
    return residual <= 64.0 * DBL_EPSILON * (1.0 + x_norm);
}

std::string fmt_num(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Bookkeeping shared by the three solvers.
class SolveLoop {
public:
    SolveLoop(const ProblemInstance& problem, const SolverConfig& config, const IterationObserver& observer)
        : problem_(problem), config_(config), observer_(observer)
    {
    }

    std::optional<double> phi_to_solution(const PrimalVector& x) const
    {
        if (!problem_.known_solution) return std::nullopt;
        return problem_.space.lyapunov(*problem_.known_solution, x);
    }

    // Returns true when the loop must stop at iteration n with this residual.
    bool check_stop(int n, const PrimalVector& x, const PrimalVector& y, double residual)
    {
        if (at_fixed_point(residual, problem_.space.norm(x))) {
            report_.status = SolveStatus::ExactSolutionHit;
        } else if (residual <= config_.epsilon) {
            report_.status = SolveStatus::Converged;
        } else {
            return false;
        }
        report_.final_point = y;
        report_.iterations = n;
        return true;
    }

    void descent(int n, const PrimalVector& x, const PrimalVector& y, const PrimalVector& next, double factor)
    {
        if (!problem_.known_solution) return;
        const LpSpace& sp = problem_.space;
        const PrimalVector& xs = *problem_.known_solution;
        const double lhs = sp.lyapunov(xs, next);
        const double rhs = sp.lyapunov(xs, x) - factor * sp.lyapunov(y, x);
        const double excess = lhs - rhs - kDescentSlack;
        if (excess > 0.0) {
            ++report_.descent_violations;
            report_.max_descent_violation = std::max(report_.max_descent_violation, lhs - rhs);
            if (config_.strict) {
                throw DescentViolation("Lyapunov descent violated at iteration " + std::to_string(n) + ": "
                                       + fmt_num(lhs) + " > " + fmt_num(rhs));
            }
        }
    }

    void record(IterationRecord rec, bool force)
    {
        if (force || rec.n % config_.trace_every == 0) report_.trace.push_back(std::move(rec));
    }

    void observe(const IterationState& st) const
    {
        if (observer_) observer_(st);
    }

    SolveReport& report() { return report_; }

private:
    const ProblemInstance& problem_;
    const SolverConfig& config_;
    const IterationObserver& observer_;
    SolveReport report_;
};

void check_start(const ProblemInstance& problem, const PrimalVector& x1)
{
    problem.space.check_dim(x1.size(), "solve: starting point");
    problem.space.check_dim(problem.a.dim(), "solve: operator A");
    problem.space.check_dim(problem.b.size(), "solve: operator B");
    if (!x1.all_finite()) throw std::invalid_argument("solve: starting point must be finite");
}

// Shared fixed-step / Halpern recursion. anchor == nullptr gives the plain
// fixed-step iteration.
SolveReport run_tseng(const ProblemInstance& problem, const SolverConfig& config, double a, double b,
                      StepSchedule schedule, const AnchorSchedule* anchor, const PrimalVector& x1,
                      const IterationObserver& observer)
{
    check_start(problem, x1);
    const LpSpace& sp = problem.space;
    const double lip = problem.a.lipschitz_bound();
    const double k2 = sp.kappa() * sp.kappa();

    SolveLoop loop(problem, config, observer);
    SolveReport& rep = loop.report();
    const DualVector jx1 = sp.duality_map(x1);
    const PrimalVector empty;

    PrimalVector x = x1;
    for (int n = 1; n <= config.max_iterations; ++n) {
        const double lambda = schedule_lambda(schedule, a, b, n);
        const double alpha = anchor ? anchor->alpha(n) : 0.0;
        const DualVector ax = problem.a(x);
        const DualVector jx = sp.duality_map(x);
        ResolventResult res = resolve_dual(sp, problem.b, lambda, jx - lambda * ax, config.resolvent);
        ++rep.resolvent_calls;
        const PrimalVector& y = res.y;
        const double residual = sp.norm(x - y);

        IterationRecord rec{n, lambda, residual, loop.phi_to_solution(x), std::nullopt,
                            anchor ? std::optional<double>(alpha) : std::nullopt};

        if (loop.check_stop(n, x, y, residual)) {
            loop.record(std::move(rec), true);
            loop.observe({n, lambda, alpha, 1, x, y, empty});
            return std::move(rep);
        }

        const DualVector ay = problem.a(y);
        const DualVector w_dual = sp.duality_map(y) - lambda * (ay - ax);
        const double factor = 1.0 - 2.0 * k2 * lambda * lambda * lip * lip * sp.mu();

        PrimalVector next;
        if (anchor && alpha != 0.0) {
            if (problem.known_solution) loop.descent(n, x, y, sp.inverse_duality_map(w_dual), factor);
            next = sp.inverse_duality_map(alpha * jx1 + (1.0 - alpha) * w_dual);
        } else {
            next = sp.inverse_duality_map(w_dual);
            loop.descent(n, x, y, next, factor);
        }

        const bool last = n == config.max_iterations;
        loop.record(std::move(rec), last);
        loop.observe({n, lambda, alpha, 1, x, y, next});
        if (last) {
            rep.status = SolveStatus::MaxIterations;
            rep.final_point = y;
            rep.iterations = n;
            return std::move(rep);
        }
        x = std::move(next);
    }
    return std::move(rep);
}

}  // namespace

double AnchorSchedule::alpha(int n) const
{
    switch (kind) {
    case Kind::Harmonic: return 1.0 / static_cast<double>(n + 1);
    case Kind::Power: return std::pow(static_cast<double>(n + 1), -exponent);
    case Kind::None: return 0.0;
    }
    return 0.0;
}

std::string variant_name(const SolverVariant& v)
{
    switch (v.index()) {
    case 0: return "fixed";
    case 1: return "linesearch";
    default: return "halpern";
    }
}

std::string to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::ExactSolutionHit: return "ExactSolutionHit";
    }
    return "Unknown";
}

void validate(const SolverConfig& config, const LpSpace& space, double lipschitz)
{
    if (!(config.epsilon >= 0.0) || !std::isfinite(config.epsilon)) {
        throw ConfigError("solver.epsilon: must be a finite nonnegative number");
    }
    if (config.max_iterations < 1) throw ConfigError("solver.maxIterations: must be at least 1");
    if (config.trace_every < 1) throw ConfigError("solver.traceEvery: must be at least 1");

    auto check_steps = [&](double a, double b) {
        const double cap = space.step_size_cap(lipschitz);
        if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("solver.a: must be positive");
        if (!(b >= a) || !std::isfinite(b)) throw ConfigError("solver.b: must satisfy b >= a");
        if (!(b < cap)) {
            throw ConfigError("solver.b: must be strictly below the step cap " + fmt_num(cap));
        }
    };

    if (const auto* f = std::get_if<FixedStep>(&config.variant)) {
        check_steps(f->a, f->b);
    } else if (const auto* ls = std::get_if<Linesearch>(&config.variant)) {
        if (!(ls->gamma > 0.0) || !std::isfinite(ls->gamma)) throw ConfigError("solver.gamma: must be positive");
        if (!(ls->l > 0.0 && ls->l < 1.0)) throw ConfigError("solver.l: must lie in (0, 1)");
        if (!(ls->theta > 0.0 && ls->theta < space.theta_cap())) {
            throw ConfigError("solver.theta: must lie in (0, " + fmt_num(space.theta_cap()) + ")");
        }
    } else if (const auto* h = std::get_if<Halpern>(&config.variant)) {
        check_steps(h->a, h->b);
        if (h->anchor.kind == AnchorSchedule::Kind::Power
            && !(h->anchor.exponent > 0.0 && h->anchor.exponent <= 1.0)) {
            throw ConfigError("solver.anchorExponent: must lie in (0, 1]");
        }
    }
}

TsengStepResult tseng_step(const LpSpace& space, const LipschitzMonotoneMap& a, const SeparableConvex& b,
                           double lambda, const PrimalVector& x, const ResolventOptions& opts)
{
    space.check_dim(x.size(), "tseng_step");
    const DualVector ax = a(x);
    const DualVector jx = space.duality_map(x);
    PrimalVector y = resolve_dual(space, b, lambda, jx - lambda * ax, opts).y;
    if (y == x) {
        return {x, x, jx};
    }
    const DualVector ay = a(y);
    DualVector w = space.duality_map(y) - lambda * (ay - ax);
    PrimalVector next = space.inverse_duality_map(w);
    return {std::move(y), std::move(next), std::move(w)};
}

LinesearchStepResult linesearch_step(const LpSpace& space, const LipschitzMonotoneMap& a, const SeparableConvex& b,
                                     double gamma, double l, double theta, const PrimalVector& x,
                                     const ResolventOptions& opts)
{
    if (!(gamma > 0.0) || !(l > 0.0 && l < 1.0) || !(theta > 0.0)) {
        throw std::invalid_argument("linesearch_step: require gamma > 0, 0 < l < 1, theta > 0");
    }
    space.check_dim(x.size(), "linesearch_step");
    const DualVector ax = a(x);
    const DualVector jx = space.duality_map(x);
    double lambda = gamma;
    for (int trial = 1; trial <= kLinesearchTrialBudget; ++trial) {
        PrimalVector y = resolve_dual(space, b, lambda, jx - lambda * ax, opts).y;
        DualVector ay = a(y);
        const double lhs = lambda * space.dual_norm(ax - ay);
        const double rhs = theta * space.norm(x - y);
        if (lhs <= rhs) {
            return {lambda, std::move(y), ax, std::move(ay), trial};
        }
        lambda *= l;
    }
    throw std::runtime_error("linesearch_step: trial budget exhausted; A is likely not Lipschitz");
}

SolveReport solve_fixed(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                        const IterationObserver& observer)
{
    const auto* f = std::get_if<FixedStep>(&config.variant);
    if (!f) throw ConfigError("solver.variant: solve_fixed requires the fixed variant");
    validate(config, problem.space, problem.a.lipschitz_bound());
    return run_tseng(problem, config, f->a, f->b, f->schedule, nullptr, x1, observer);
}

SolveReport solve_halpern(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                          const IterationObserver& observer)
{
    const auto* h = std::get_if<Halpern>(&config.variant);
    if (!h) throw ConfigError("solver.variant: solve_halpern requires the halpern variant");
    validate(config, problem.space, problem.a.lipschitz_bound());
    return run_tseng(problem, config, h->a, h->b, h->schedule, &h->anchor, x1, observer);
}

SolveReport solve_linesearch(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                             const IterationObserver& observer)
{
    const auto* ls = std::get_if<Linesearch>(&config.variant);
    if (!ls) throw ConfigError("solver.variant: solve_linesearch requires the linesearch variant");
    validate(config, problem.space, problem.a.lipschitz_bound());
    check_start(problem, x1);

    const LpSpace& sp = problem.space;
    const double factor = 1.0 - 2.0 * sp.kappa() * sp.kappa() * ls->theta * ls->theta * sp.mu();
    SolveLoop loop(problem, config, observer);
    SolveReport& rep = loop.report();
    const PrimalVector empty;

    PrimalVector x = x1;
    for (int n = 1; n <= config.max_iterations; ++n) {
        LinesearchStepResult step = linesearch_step(sp, problem.a, problem.b, ls->gamma, ls->l, ls->theta, x,
                                                    config.resolvent);
        rep.resolvent_calls += step.trials;
        const double residual = sp.norm(x - step.y);
        IterationRecord rec{n, step.lambda, residual, loop.phi_to_solution(x), step.trials, std::nullopt};

        if (loop.check_stop(n, x, step.y, residual)) {
            loop.record(std::move(rec), true);
            loop.observe({n, step.lambda, 0.0, step.trials, x, step.y, empty});
            return std::move(rep);
        }

        PrimalVector next = sp.inverse_duality_map(sp.duality_map(step.y) - step.lambda * (step.ay - step.ax));
        loop.descent(n, x, step.y, next, factor);

        const bool last = n == config.max_iterations;
        loop.record(std::move(rec), last);
        loop.observe({n, step.lambda, 0.0, step.trials, x, step.y, next});
        if (last) {
            rep.status = SolveStatus::MaxIterations;
            rep.final_point = std::move(step.y);
            rep.iterations = n;
            return std::move(rep);
        }
        x = std::move(next);
    }
    return std::move(rep);
}

SolveReport solve(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                  const IterationObserver& observer)
{
    switch (config.variant.index()) {
    case 0: return solve_fixed(problem, config, x1, observer);
    case 1: return solve_linesearch(problem, config, x1, observer);
    default: return solve_halpern(problem, config, x1, observer);
    }
}

std::vector<double> plain_forward_backward_residuals(const ProblemInstance& problem, double lambda,
                                                     const PrimalVector& x1, int iterations)
{
    check_start(problem, x1);
    const LpSpace& sp = problem.space;
    std::vector<double> residuals;
    residuals.reserve(static_cast<std::size_t>(std::max(0, iterations)));
    PrimalVector x = x1;
    for (int n = 0; n < iterations; ++n) {
        PrimalVector next = resolve_dual(sp, problem.b, lambda, sp.duality_map(x) - lambda * problem.a(x)).y;
        residuals.push_back(sp.norm(x - next));
        x = std::move(next);
    }
    return residuals;
}

RateCertificate rate_certificate(const LpSpace& space, double lipschitz, double b, double phi1,
                                 const std::vector<IterationRecord>& trace)
{
    const double k2 = space.kappa() * space.kappa();
    const double denom = 1.0 - 2.0 * k2 * b * b * lipschitz * lipschitz * space.mu();
    if (!(denom > 0.0)) {
        throw std::invalid_argument("rate_certificate: b must lie below the step cap for this L");
    }
    if (!(phi1 >= 0.0)) throw std::invalid_argument("rate_certificate: phi1 must be nonnegative");
    const double scale = space.mu() * phi1 / denom;

    RateCertificate cert;
    double min_sq = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    for (const IterationRecord& rec : trace) {
        ++count;
        min_sq = std::min(min_sq, rec.residual * rec.residual);
        const double bound = scale / static_cast<double>(count);
        double ratio = 0.0;
        if (bound > 0.0) {
            ratio = min_sq / bound;
        } else if (min_sq > 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        }
        cert.worst_ratio = std::max(cert.worst_ratio, ratio);
        if (min_sq > bound + 1e-12) cert.pass = false;
    }
    return cert;
}

}  // namespace lpsplit
