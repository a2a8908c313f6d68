// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "lpsplit/geometry.hpp"
#include "lpsplit/operators.hpp"
#include "lpsplit/problems.hpp"
#include "lpsplit/resolvent.hpp"
#include "lpsplit/solvers.hpp"

#include "oracles.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lpsplit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Detail {
public:
    template <typename T>
    Detail& kv(const std::string& key, const T& value)
    {
        if (!first_) os_ << ' ';
        first_ = false;
        os_ << key << '=' << value;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
    bool first_ = true;
};

Eigen::VectorXd draw_vector(std::mt19937_64& rng, Index n)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Index j = 0; j < n; ++j) v[j] = gauss(rng);
    if (unit(rng) < 0.25) {
        for (Index j = 0; j < n; ++j) {
            if (unit(rng) < 0.5) v[j] = 0.0;
        }
    }
    const double nrm = v.norm();
    if (nrm > 0.0) v *= std::pow(10.0, 2.0 * unit(rng) - 1.0) / nrm;
    return v;
}

SolverConfig fixed_config(const ProblemInstance& pr, double eps, int max_it)
{
    const double cap = pr.space.step_size_cap(pr.a.lipschitz_bound());
    SolverConfig cfg;
    cfg.variant = FixedStep{0.8 * cap, 0.9 * cap, StepSchedule::Constant};
    cfg.epsilon = eps;
    cfg.max_iterations = max_it;
    return cfg;
}

SolverConfig linesearch_config(const ProblemInstance& pr, double eps, int max_it)
{
    SolverConfig cfg;
    cfg.variant = Linesearch{1.0, 0.5, 0.9 * pr.space.theta_cap()};
    cfg.epsilon = eps;
    cfg.max_iterations = max_it;
    return cfg;
}

SolverConfig halpern_config(const ProblemInstance& pr, AnchorSchedule anchor, double eps, int max_it)
{
    const double cap = pr.space.step_size_cap(pr.a.lipschitz_bound());
    SolverConfig cfg;
    cfg.variant = Halpern{0.8 * cap, 0.9 * cap, anchor, StepSchedule::Constant};
    cfg.epsilon = eps;
    cfg.max_iterations = max_it;
    return cfg;
}

ScalarPiece random_piece(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (rng() % 4) {
    case 0: return ScalarPiece::zero();
    case 1: {
        const double lo = -2.0 * u(rng);
        return ScalarPiece::interval(lo, lo + 0.1 + 2.0 * u(rng));
    }
    case 2: return ScalarPiece::scaled_abs(2.0 * u(rng));
    default: return ScalarPiece::quadratic(3.0 * u(rng));
    }
}

// 1. Duality-map and Lyapunov identities.
Outcome geometry_identities()
{
    double worst = 0.0;
    double worst_map = 0.0;
    for (double p : {1.25, 1.5, 2.0}) {
        for (Index n : {2, 10, 200}) {
            const LpSpace s(n, p);
            std::mt19937_64 rng(1000 + n + static_cast<std::uint64_t>(100 * p));
            for (int k = 0; k < 10000; ++k) {
                const PrimalVector x(draw_vector(rng, n));
                const PrimalVector y(draw_vector(rng, n));
                const PrimalVector z(draw_vector(rng, n));
                const DualVector jx = s.duality_map(x);
                const DualVector jy = s.duality_map(y);
                const DualVector jz = s.duality_map(z);
                const double nx = s.norm(x);
                const double ny = s.norm(y);
                const double nz = s.norm(z);

                if (k % 10 == 0) {
                    const Eigen::VectorXd ref = oracle::lp_duality(x.coords(), p);
                    worst_map = std::max(worst_map, (jx.coords() - ref).cwiseAbs().maxCoeff()
                                                        / std::max(ref.cwiseAbs().maxCoeff(), DBL_MIN));
                }
                // J^{-1} J x = x
                worst = std::max(worst, s.norm(s.inverse_duality_map(jx) - x) / std::max(nx, DBL_MIN));
                // <Jx, x> = ||x||^2 = ||Jx||_q^2
                worst = std::max(worst, std::abs(pairing(jx, x) - nx * nx) / std::max(nx * nx, DBL_MIN));
                worst = std::max(worst, std::abs(s.dual_norm(jx) - nx) / std::max(nx, DBL_MIN));
                // phi(x,y) = phi(x,z) + phi(z,y) + 2<x - z, Jz - Jy>
                {
                    const double a = s.lyapunov(x, z);
                    const double b = s.lyapunov(z, y);
                    const double c = 2.0 * pairing(jz - jy, x - z);
                    const double lhs = s.lyapunov(x, y);
                    const double scale = nx * nx + ny * ny + 2.0 * nz * nz;
                    worst = std::max(worst, std::abs(lhs - (a + b + c)) / scale);
                }
                // phi(x,y) + phi(y,x) = 2<x - y, Jx - Jy>
                {
                    const double lhs = s.lyapunov(x, y) + s.lyapunov(y, x);
                    const double rhs = 2.0 * pairing(jx - jy, x - y);
                    worst = std::max(worst, std::abs(lhs - rhs) / (nx * nx + ny * ny));
                }
            }
        }
    }
    const bool pass = worst <= 1e-9 && worst_map <= 1e-9;
    return {pass, Detail().kv("max_rel_err", worst).kv("max_rel_err_vs_textbook_J", worst_map).str()};
}

// 2. mu and kappa inequalities over sampled pairs, absolute slack.
Outcome constant_validation()
{
    int violations = 0;
    double worst_mu = -INFINITY;
    double worst_kappa = -INFINITY;
    for (double p : {1.25, 1.5, 2.0}) {
        for (Index n : {2, 10}) {
            const LpSpace s(n, p);
            std::mt19937_64 rng(77 + n + static_cast<std::uint64_t>(10 * p));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (int k = 0; k < 10000; ++k) {
                const bool near = k % 2 == 0;
                const double shrink = std::pow(10.0, -3.0 * unit(rng));
                const PrimalVector x(draw_vector(rng, n));
                const PrimalVector y(near ? Eigen::VectorXd(x.coords() + shrink * draw_vector(rng, n))
                                          : draw_vector(rng, n));
                const double d = s.norm(x - y);
                const double e_mu = d * d / s.mu() - s.lyapunov(x, y);
                worst_mu = std::max(worst_mu, e_mu);
                if (e_mu > 1e-12) ++violations;

                const DualVector u(draw_vector(rng, n));
                const DualVector v(near ? Eigen::VectorXd(shrink * draw_vector(rng, n)) : draw_vector(rng, n));
                const double nu = s.dual_norm(u);
                const double nv = s.dual_norm(v);
                const double nuv = s.dual_norm(u + v);
                const double e_k = nuv * nuv - nu * nu - 2.0 * pairing(v, s.inverse_duality_map(u))
                    - 2.0 * s.kappa() * s.kappa() * nv * nv;
                worst_kappa = std::max(worst_kappa, e_k);
                if (e_k > 1e-12) ++violations;
            }
        }
        for (const ConstantCheck& c : verify_constants(LpSpace(10, p), 10000, 5)) {
            if (!c.pass) ++violations;
        }
    }
    return {violations == 0, Detail()
                                 .kv("violations", violations)
                                 .kv("max_mu_excess", worst_mu)
                                 .kv("max_kappa_excess", worst_kappa)
                                 .str()};
}

// 3. Resolvent residuals, closed-form prox agreement, lambda independence.
Outcome resolvent_correctness()
{
    double worst_res = 0.0;
    double worst_prox = 0.0;
    double worst_lambda = 0.0;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (double p : {1.25, 1.5, 2.0}) {
        for (int k = 0; k < 1000; ++k) {
            const Index n = 1 + static_cast<Index>(rng() % 10);
            const LpSpace s(n, p);
            std::vector<ScalarPiece> pieces;
            for (Index j = 0; j < n; ++j) pieces.push_back(random_piece(rng));
            const SeparableConvex b(pieces);
            const double lambda = std::pow(10.0, 2.0 * unit(rng) - 1.0);
            Eigen::VectorXd z(n);
            for (Index j = 0; j < n; ++j) z[j] = gauss(rng);
            const ResolventResult r = resolve(s, b, lambda, PrimalVector(z));
            worst_res = std::max(worst_res, inclusion_residual(s, b, lambda, PrimalVector(z), r.y));
            if (p == 2.0) {
                worst_prox = std::max(worst_prox,
                                      (r.y.coords() - oracle::hilbert_prox(b, lambda, z)).cwiseAbs().maxCoeff());
            }
            Eigen::VectorXd lo(n), hi(n);
            for (Index j = 0; j < n; ++j) {
                lo[j] = -2.0 * unit(rng);
                hi[j] = lo[j] + 0.1 + 2.0 * unit(rng);
            }
            const SeparableConvex box = SeparableConvex::box(lo, hi);
            const PrimalVector a = resolve(s, box, 1e-2, PrimalVector(z)).y;
            const PrimalVector c = resolve(s, box, 1e2, PrimalVector(z)).y;
            worst_lambda = std::max(worst_lambda, s.norm(a - c));
        }
    }
    const bool pass = worst_res <= 1e-10 && worst_prox <= 1e-10 && worst_lambda <= 1e-8;
    return {pass, Detail()
                      .kv("max_inclusion_residual", worst_res)
                      .kv("max_prox_diff_p2", worst_prox)
                      .kv("max_lambda_dependence", worst_lambda)
                      .str()};
}

std::vector<Eigen::VectorXd> observed_x(const ProblemInstance& pr, const SolverConfig& cfg, const PrimalVector& x1)
{
    std::vector<Eigen::VectorXd> xs;
    solve(pr, cfg, x1, [&](const IterationState& st) { xs.push_back(st.x.coords()); });
    return xs;
}

double max_coord_diff(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b, std::size_t count)
{
    if (a.size() < count || b.size() < count) return INFINITY;
    double worst = 0.0;
    for (std::size_t k = 0; k < count; ++k) worst = std::max(worst, (a[k] - b[k]).cwiseAbs().maxCoeff());
    return worst;
}

// 4. p = 2 solvers against the J = identity reference recursions.
Outcome hilbert_reduction()
{
    double worst[3] = {0.0, 0.0, 0.0};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ProblemInstance pr = seed % 2 == 0 ? gen_strongly_monotone(seed, 8, 2.0, 0.5, PieceFamily::Mixed)
                                                 : gen_skew_vi(seed, 8, 2.0, 0.6, -1.0, 1.0);
        const oracle::HilbertProblem hp{pr.a.matrix(), pr.a.offset(), pr.b};
        std::mt19937_64 rng(seed);
        Eigen::VectorXd x1 = draw_vector(rng, 8);
        for (Index j = 0; j < 8; ++j) x1[j] = std::clamp(x1[j], -1.0, 1.0);

        const SolverConfig f = fixed_config(pr, 0.0, 100);
        const auto& fs = std::get<FixedStep>(f.variant);
        worst[0] = std::max(worst[0], max_coord_diff(observed_x(pr, f, PrimalVector(x1)),
                                                     oracle::hilbert_tseng(hp, 0.5 * (fs.a + fs.b), x1, 100), 100));

        const SolverConfig l = linesearch_config(pr, 0.0, 100);
        const auto& ls = std::get<Linesearch>(l.variant);
        worst[1] = std::max(worst[1],
                            max_coord_diff(observed_x(pr, l, PrimalVector(x1)),
                                           oracle::hilbert_tseng_linesearch(hp, ls.gamma, ls.l, ls.theta, x1, 100), 100));

        const SolverConfig h = halpern_config(pr, AnchorSchedule{}, 0.0, 100);
        const auto& hs = std::get<Halpern>(h.variant);
        std::vector<double> alphas;
        for (int n = 1; n <= 100; ++n) alphas.push_back(1.0 / (n + 1.0));
        worst[2] = std::max(worst[2], max_coord_diff(observed_x(pr, h, PrimalVector(x1)),
                                                     oracle::hilbert_tseng(hp, 0.5 * (hs.a + hs.b), x1, 100, alphas),
                                                     100));
    }
    const bool pass = worst[0] <= 1e-10 && worst[1] <= 1e-10 && worst[2] <= 1e-10;
    return {pass,
            Detail().kv("fixed", worst[0]).kv("linesearch", worst[1]).kv("halpern", worst[2]).str()};
}

// Suite shared by criteria 5-7.
struct SuiteRun {
    double p;
    std::uint64_t seed;
    SolveReport report;
    double final_check;
    double b;
    double lipschitz;
    double phi1;
    int plain_descent_violations;
    int quantified_violations;
    double worst_plain_excess;
    double worst_quantified_excess;
};

std::vector<SuiteRun> run_convergence_suite()
{
    std::vector<SuiteRun> runs;
    for (double p : {1.25, 1.5, 2.0}) {
        for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
            const PieceFamily family = seed % 2 == 0 ? PieceFamily::Mixed : PieceFamily::Box;
            const ProblemInstance pr = gen_strongly_monotone(seed, 50, p, 1.0, family);
            const LpSpace& s = pr.space;
            // Stop well below 1e-6: at small p a 1e-6 step residual still leaves
            // interior coordinates far from x*.
            const SolverConfig cfg = fixed_config(pr, 1e-11, 100000);
            const double lip = pr.a.lipschitz_bound();
            const PrimalVector x1 = PrimalVector::zero(50);
            SuiteRun run{p, seed, {}, 0.0, std::get<FixedStep>(cfg.variant).b, lip,
                         s.lyapunov(*pr.known_solution, x1), 0, 0, -INFINITY, -INFINITY};
            run.report = solve(pr, cfg, x1, [&](const IterationState& st) {
                if (st.x_next.size() == 0) return;
                const PrimalVector& xs = *pr.known_solution;
                const double before = s.lyapunov(xs, st.x);
                const double after = s.lyapunov(xs, st.x_next);
                const double factor = 1.0 - 2.0 * s.kappa() * s.kappa() * st.lambda * st.lambda * lip * lip * s.mu();
                const double plain = after - before;
                const double quantified = after - (before - factor * s.lyapunov(st.y, st.x));
                run.worst_plain_excess = std::max(run.worst_plain_excess, plain);
                run.worst_quantified_excess = std::max(run.worst_quantified_excess, quantified);
                if (plain > 1e-10) ++run.plain_descent_violations;
                if (quantified > 1e-10) ++run.quantified_violations;
            });
            run.final_check = brute_force_inclusion_check(pr, run.report.final_point);
            runs.push_back(std::move(run));
        }
    }
    return runs;
}

// 5. Fixed-step convergence on the planted strongly monotone suite.
Outcome convergence(const std::vector<SuiteRun>& runs)
{
    bool pass = true;
    int max_iters = 0;
    double worst_res = 0.0;
    double worst_check = 0.0;
    int max_first_hit = 0;
    for (const SuiteRun& r : runs) {
        const double res = r.report.trace.back().residual;
        int first_hit = -1;
        for (const IterationRecord& rec : r.report.trace) {
            if (rec.residual <= 1e-6) {
                first_hit = rec.n;
                break;
            }
        }
        pass = pass && r.report.status != SolveStatus::MaxIterations && first_hit > 0 && res <= 1e-6
            && r.final_check <= 1e-6;
        max_first_hit = std::max(max_first_hit, first_hit);
        max_iters = std::max(max_iters, r.report.iterations);
        worst_res = std::max(worst_res, res);
        worst_check = std::max(worst_check, r.final_check);
    }
    return {pass, Detail()
                      .kv("runs", runs.size())
                      .kv("max_iterations_to_1e-6", max_first_hit)
                      .kv("max_iterations", max_iters)
                      .kv("max_final_residual", worst_res)
                      .kv("max_inclusion_check", worst_check)
                      .str()};
}

// 6. Per-iteration Lyapunov descent, plain and quantified.
Outcome lyapunov_descent(const std::vector<SuiteRun>& runs)
{
    int plain = 0;
    int quantified = 0;
    double wp = -INFINITY;
    double wq = -INFINITY;
    long steps = 0;
    for (const SuiteRun& r : runs) {
        plain += r.plain_descent_violations;
        quantified += r.quantified_violations;
        wp = std::max(wp, r.worst_plain_excess);
        wq = std::max(wq, r.worst_quantified_excess);
        steps += r.report.iterations;
    }
    return {plain == 0 && quantified == 0, Detail()
                                               .kv("steps", steps)
                                               .kv("violations", plain + quantified)
                                               .kv("max_excess", wp)
                                               .kv("max_quantified_excess", wq)
                                               .str()};
}

// 7. Rate certificate on every suite trace.
Outcome rate_bound(const std::vector<SuiteRun>& runs)
{
    bool pass = true;
    double worst = 0.0;
    for (const SuiteRun& r : runs) {
        const RateCertificate c = rate_certificate(LpSpace(50, r.p), r.lipschitz, r.b, r.phi1, r.report.trace);
        pass = pass && c.pass && c.worst_ratio <= 1.0;
        worst = std::max(worst, c.worst_ratio);
    }
    return {pass, Detail().kv("worst_ratio", worst).str()};
}

// 8. Linesearch bracket and agreement with fixed step.
Outcome linesearch()
{
    bool pass = true;
    double min_margin = INFINITY;
    double worst_gap = 0.0;
    long rows = 0;
    const double ps[] = {1.25, 1.5, 2.0};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double p = ps[seed % 3];
        const ProblemInstance pr = seed % 2 == 0 ? gen_strongly_monotone(seed, 12, p, 0.5, PieceFamily::Mixed)
                                                 : gen_skew_vi(seed, 12, p, 0.5, -1.0, 1.0);
        // Exact spectral norm: a Lipschitz constant in the l_p -> l_q norms no
        // larger than the certified bound, so the bracket is at least as tight.
        const double sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(pr.a.matrix()).singularValues()(0);
        const SolverConfig lcfg = linesearch_config(pr, 1e-9, 100000);
        const auto& ls = std::get<Linesearch>(lcfg.variant);
        const double lower = std::min(ls.gamma, ls.theta * ls.l / sigma) * (1.0 - 1e-12);
        const PrimalVector x1 = PrimalVector::zero(12);
        const SolveReport l = solve(pr, lcfg, x1);
        for (const IterationRecord& r : l.trace) {
            ++rows;
            min_margin = std::min(min_margin, r.lambda / lower);
            if (r.lambda < lower || r.lambda > ls.gamma) pass = false;
        }
        const SolveReport f = solve(pr, fixed_config(pr, 1e-9, 100000), x1);
        if (pr.solution_unique) {
            const double gap = pr.space.norm(l.final_point - f.final_point);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-5) pass = false;
        }
        if (l.status == SolveStatus::MaxIterations || f.status == SolveStatus::MaxIterations) pass = false;
    }
    return {pass, Detail()
                      .kv("rows", rows)
                      .kv("min_lambda_over_lower_bound", min_margin)
                      .kv("max_final_gap", worst_gap)
                      .str()};
}

// 9. Halpern strong convergence from two anchors; zero anchor reproduces fixed step.
Outcome halpern()
{
    bool pass = true;
    double worst = 0.0;
    Detail d;

    // p = 2: anchors at the origin and at a far corner of the box.
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        const ProblemInstance pr = gen_strongly_monotone(seed, 10, 2.0, 3.0);
        const SolverConfig cfg = halpern_config(pr, AnchorSchedule{}, 0.0, 2000000);
        for (const Eigen::VectorXd& a : {Eigen::VectorXd(Eigen::VectorXd::Zero(10)),
                                         Eigen::VectorXd(Eigen::VectorXd::Constant(10, 1.5))}) {
            const SolveReport r = solve(pr, cfg, PrimalVector(a));
            const double dist = pr.space.norm(r.final_point - *pr.known_solution);
            worst = std::max(worst, dist);
            if (dist > 1e-5) pass = false;
        }
    }
    d.kv("max_dist_p2", worst);

    // p = 1.5: two anchors in a 0.25-ball around the solution.
    double worst15 = 0.0;
    {
        const ProblemInstance pr = gen_strongly_monotone(34, 10, 1.5, 3.0);
        const SolverConfig cfg = halpern_config(pr, AnchorSchedule{}, 0.0, 400000);
        const Eigen::VectorXd xs = pr.known_solution->coords();
        const Eigen::VectorXd shift = Eigen::VectorXd::LinSpaced(10, -0.08, 0.08);
        for (const Eigen::VectorXd& a : {Eigen::VectorXd(xs + shift), Eigen::VectorXd(xs - shift.reverse() * 0.5)}) {
            const SolveReport r = solve(pr, cfg, PrimalVector(a));
            const double dist = pr.space.norm(r.final_point - *pr.known_solution);
            worst15 = std::max(worst15, dist);
            if (dist > 1e-5) pass = false;
        }
    }
    d.kv("max_dist_p1.5", worst15);

    // alpha_n = 0 against fixed step, bit for bit.
    long compared = 0;
    bool identical = true;
    for (double p : {1.25, 1.5, 2.0}) {
        const ProblemInstance pr = gen_strongly_monotone(35, 10, p, 1.0, PieceFamily::Mixed);
        const SolverConfig f = fixed_config(pr, 0.0, 500);
        SolverConfig h = halpern_config(pr, AnchorSchedule{AnchorSchedule::Kind::None, 1.0}, 0.0, 500);
        std::get<Halpern>(h.variant).a = std::get<FixedStep>(f.variant).a;
        std::get<Halpern>(h.variant).b = std::get<FixedStep>(f.variant).b;
        const auto xf = observed_x(pr, f, PrimalVector::zero(10));
        const auto xh = observed_x(pr, h, PrimalVector::zero(10));
        identical = identical && xf.size() == xh.size();
        for (std::size_t k = 0; identical && k < xf.size(); ++k) {
            identical = xf[k] == xh[k];
            ++compared;
        }
    }
    pass = pass && identical;
    d.kv("zero_anchor_bit_identical", identical ? "yes" : "no").kv("iterates_compared", compared);
    return {pass, d.str()};
}

// 10. Lasso-like problems at p = 2 against coordinate descent.
Outcome composite()
{
    bool pass = true;
    double worst_gap = 0.0;
    double worst_zero = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const CompositeMinProblem cm = gen_lasso_like(seed, 40, 20, 0.1);
        const ProblemInstance pr = composite_to_inclusion(cm, LpSpace(20, 2.0));
        const SolveReport rep = solve(pr, fixed_config(pr, 1e-10, 100000), PrimalVector::zero(20));
        const OracleSolution sol = coordinate_descent_oracle(cm);
        const double gap = std::abs(cm.objective(rep.final_point.coords()) - sol.objective_value);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-6 || rep.status == SolveStatus::MaxIterations) pass = false;

        const double big = 1.01 * (cm.m.transpose() * cm.b).cwiseAbs().maxCoeff();
        const CompositeMinProblem heavy{SeparableConvex::uniform(20, ScalarPiece::scaled_abs(big)), cm.m, cm.b};
        const ProblemInstance ph = composite_to_inclusion(heavy, LpSpace(20, 2.0));
        const SolveReport rz = solve(ph, fixed_config(ph, 1e-10, 100000), PrimalVector::zero(20));
        const double zn = rz.final_point.coords().cwiseAbs().maxCoeff();
        worst_zero = std::max(worst_zero, zn);
        if (zn > 1e-8) pass = false;
    }
    return {pass, Detail().kv("max_objective_gap", worst_gap).kv("max_abs_coord_alpha_large", worst_zero).str()};
}

// 11. Pure rotation: uncorrected forward-backward drifts, Tseng converges.
Outcome motivation()
{
    const ProblemInstance pr = gen_skew_vi(11, 2, 2.0, 1.0, -1e6, 1e6);
    const PrimalVector x1(Eigen::Vector2d(1.0, -0.5));
    const SolverConfig cfg = fixed_config(pr, 1e-6, 1000);
    const double lambda = 0.5 * (std::get<FixedStep>(cfg.variant).a + std::get<FixedStep>(cfg.variant).b);
    const std::vector<double> plain = plain_forward_backward_residuals(pr, lambda, x1, 1000);
    const SolveReport rep = solve(pr, cfg, x1);
    const double tseng_final = rep.trace.back().residual;
    const bool pass = plain.back() > plain.front() && tseng_final <= 1e-6;
    return {pass, Detail()
                      .kv("plain_initial", plain.front())
                      .kv("plain_after_1000", plain.back())
                      .kv("tseng_final", tseng_final)
                      .kv("tseng_iterations", rep.iterations)
                      .str()};
}

}  // namespace

int main()
{
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("%s %2d %-22s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    report(1, "geometry-identities", geometry_identities);
    report(2, "constant-validation", constant_validation);
    report(3, "resolvent", resolvent_correctness);
    report(4, "hilbert-reduction", hilbert_reduction);

    std::optional<std::vector<SuiteRun>> suite;
    auto with_suite = [&](Outcome (*fn)(const std::vector<SuiteRun>&)) {
        return [&, fn]() -> Outcome {
            if (!suite) suite = run_convergence_suite();
            return fn(*suite);
        };
    };
    report(5, "convergence", with_suite(convergence));
    report(6, "lyapunov-descent", with_suite(lyapunov_descent));
    report(7, "rate-certificate", with_suite(rate_bound));
    report(8, "linesearch", linesearch);
    report(9, "halpern", halpern);
    report(10, "composite-minimization", composite);
    report(11, "motivation-demo", motivation);

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
