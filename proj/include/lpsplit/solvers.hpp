#pragma once

#include "lpsplit/geometry.hpp"
#include "lpsplit/operators.hpp"
#include "lpsplit/problems.hpp"
#include "lpsplit/resolvent.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lpsplit {

/// Raised in strict mode when a Lyapunov descent inequality fails.
class DescentViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class StepSchedule {
    Constant,  // lambda_n = (a + b) / 2
    Ramp,      // lambda_n = a + n/(n+1) (b - a)
};

struct FixedStep {
    double a = 0.0;
    double b = 0.0;
    StepSchedule schedule = StepSchedule::Constant;
};

struct Linesearch {
    double gamma = 1.0;
    double l = 0.5;
    double theta = 0.5;  // fraction-free: must satisfy 0 < theta < theta_cap()
};

struct AnchorSchedule {
    enum class Kind {
        Harmonic,  // alpha_n = 1/(n+1)
        Power,     // alpha_n = (n+1)^(-exponent), 0 < exponent <= 1
        None,      // alpha_n = 0; degenerate, reproduces the fixed-step iterates
    };
    Kind kind = Kind::Harmonic;
    double exponent = 1.0;

    double alpha(int n) const;
};

struct Halpern {
    double a = 0.0;
    double b = 0.0;
    AnchorSchedule anchor;
    StepSchedule schedule = StepSchedule::Constant;
};

using SolverVariant = std::variant<FixedStep, Linesearch, Halpern>;

struct SolverConfig {
    SolverVariant variant;
    double epsilon = 1e-6;       // stop when ||x_n - y_n||_p <= epsilon
    int max_iterations = 100000;
    int trace_every = 1;
    bool strict = false;         // descent violations throw instead of being counted
    ResolventOptions resolvent;
};

std::string variant_name(const SolverVariant& v);

/// Checks the step-size and parameter constraints against the space and the
/// certified Lipschitz bound. Throws ConfigError naming the offending field.
void validate(const SolverConfig& config, const LpSpace& space, double lipschitz);

struct IterationRecord {
    int n = 0;
    double lambda = 0.0;
    double residual = 0.0;                      // ||x_n - y_n||_p
    std::optional<double> lyapunov_to_solution; // phi(x*, x_n)
    std::optional<int> linesearch_trials;
    std::optional<double> alpha;                // Halpern anchor weight
};

enum class SolveStatus { Converged, MaxIterations, ExactSolutionHit };

std::string to_string(SolveStatus s);

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIterations;
    PrimalVector final_point;  // y_n of the last iteration (lies in dom B)
    int iterations = 0;
    std::vector<IterationRecord> trace;
    long resolvent_calls = 0;
    int descent_violations = 0;
    double max_descent_violation = 0.0;
};

/// Full per-iteration state handed to an observer; references are valid only
/// during the callback.
struct IterationState {
    int n;
    double lambda;
    double alpha;
    int linesearch_trials;
    const PrimalVector& x;
    const PrimalVector& y;
    const PrimalVector& x_next;  // unset (empty) on the stopping iteration
};

using IterationObserver = std::function<void(const IterationState&)>;

struct TsengStepResult {
    PrimalVector y;
    PrimalVector x_next;
    DualVector x_next_dual;  // J y - lambda (A y - A x); J x_next up to round-off
};

/// One forward-backward-forward step:
///   y      = J_lambda^B J^{-1}(J x - lambda A x)
///   x_next = J^{-1}(J y - lambda (A y - A x))
/// If y == x exactly, x_next = x.
TsengStepResult tseng_step(const LpSpace& space, const LipschitzMonotoneMap& a, const SeparableConvex& b,
                           double lambda, const PrimalVector& x, const ResolventOptions& opts = {});

struct LinesearchStepResult {
    double lambda;
    PrimalVector y;
    DualVector ax;
    DualVector ay;
    int trials;
};

/// Largest lambda in {gamma, gamma l, gamma l^2, ...} with
/// lambda ||A x - A y||_q <= theta ||x - y||_p, y recomputed per trial.
/// Throws std::runtime_error after 10^4 trials.
LinesearchStepResult linesearch_step(const LpSpace& space, const LipschitzMonotoneMap& a, const SeparableConvex& b,
                                     double gamma, double l, double theta, const PrimalVector& x,
                                     const ResolventOptions& opts = {});

SolveReport solve_fixed(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                        const IterationObserver& observer = {});
SolveReport solve_linesearch(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                             const IterationObserver& observer = {});
SolveReport solve_halpern(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                          const IterationObserver& observer = {});

/// Dispatches on config.variant.
SolveReport solve(const ProblemInstance& problem, const SolverConfig& config, const PrimalVector& x1,
                  const IterationObserver& observer = {});

/// Plain forward-backward x_{n+1} = J_lambda^B J^{-1}(J x_n - lambda A x_n)
/// without the correction step. Returns ||x_n - x_{n+1}||_p for every step.
/// Kept as a baseline: it needs cocoercive A and may diverge otherwise.
std::vector<double> plain_forward_backward_residuals(const ProblemInstance& problem, double lambda,
                                                     const PrimalVector& x1, int iterations);

struct RateCertificate {
    bool pass = true;
    double worst_ratio = 0.0;
};

/// Checks  min_k residual_k^2 <= mu phi1 / (N (1 - 2 kappa^2 b^2 L^2 mu))
/// at every logged iteration, where N is the number of logged rows up to that
/// iteration (N = n when every iteration is logged).
RateCertificate rate_certificate(const LpSpace& space, double lipschitz, double b, double phi1,
                                 const std::vector<IterationRecord>& trace);

}  // namespace lpsplit
