#include "lpsplit/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inverse of s -> t sign(s)|s|^(p-1), i.e. sign(s) (|s|/t)^(q-1).
double inverse_scaled_power(double s, double t, const LpSpace& space)
{
    if (s == 0.0) return 0.0;
    if (space.is_hilbert()) return s / t;
    return std::copysign(std::pow(std::abs(s) / t, space.q() - 1.0), s);
}

double soft_threshold(double s, double thr)
{
    if (s > thr) return s - thr;
    if (s < -thr) return s + thr;
    return 0.0;
}

// Root u >= 0 of  t u^(p-1) + lw u = s  with s > 0, lw > 0. The left side is
// increasing and concave in u, so Newton is safeguarded by a shrinking bracket.
double solve_quadratic_scalar(double s, double t, double lw, const LpSpace& space, double tol, int& iterations)
{
    const double pm1 = space.p() - 1.0;
    if (space.is_hilbert()) return s / (t + lw);

    double lo = 0.0;
    double hi = std::min(inverse_scaled_power(s, t, space), s / lw);
    auto g = [&](double u) { return t * std::pow(u, pm1) + lw * u - s; };

    double u = hi;
    for (int it = 0; it < 200; ++it) {
        ++iterations;
        const double gu = g(u);
        if (gu == 0.0) return u;
        if (gu > 0.0) hi = u; else lo = u;
        if (hi - lo <= tol * hi) break;
        const double dg = t * pm1 * std::pow(u, pm1 - 1.0) + lw;
        double next = u - gu / dg;
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            next = lo + 0.5 * (hi - lo);
        }
        if (std::abs(next - u) <= tol * hi) {
            u = next;
            break;
        }
        u = next;
    }
    return u;
}

// Solves  c ∈ t sign(y)|y|^(p-1) + lambda df(y)  for one coordinate.
double solve_scalar_inclusion(const ScalarPiece& piece, double c, double t, double lambda, const LpSpace& space,
                              double tol, int& iterations)
{
    switch (piece.kind) {
    case ScalarPiece::Kind::Zero:
        return inverse_scaled_power(c, t, space);
    case ScalarPiece::Kind::IntervalIndicator:
        return std::clamp(inverse_scaled_power(c, t, space), piece.lo, piece.hi);
    case ScalarPiece::Kind::ScaledAbs:
        return inverse_scaled_power(soft_threshold(c, lambda * piece.alpha), t, space);
    case ScalarPiece::Kind::Quadratic: {
        if (c == 0.0) return 0.0;
        if (piece.w == 0.0) return inverse_scaled_power(c, t, space);
        const double u = solve_quadratic_scalar(std::abs(c), t, lambda * piece.w, space, tol, iterations);
        return std::copysign(u, c);
    }
    }
    return 0.0;
}

bool zero_is_resolvent(const SeparableConvex& b, double lambda, const DualVector& jz)
{
    for (Index j = 0; j < b.size(); ++j) {
        const ScalarPiece& piece = b[j];
        if (!piece.in_domain(0.0)) return false;
        const Interval d = subdifferential_interval(piece, 0.0);
        const double lo = d.lo == -kInf ? -kInf : lambda * d.lo;
        const double hi = d.hi == kInf ? kInf : lambda * d.hi;
        if (!(lo <= jz[j] && jz[j] <= hi)) return false;
    }
    return true;
}

}  // namespace

ResolventResult resolve_dual(const LpSpace& space, const SeparableConvex& b, double lambda, const DualVector& jz,
                             const ResolventOptions& opts)
{
    space.check_dim(jz.size(), "resolve");
    space.check_dim(b.size(), "resolve");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("resolve: lambda must be positive and finite");
    }
    if (!jz.all_finite()) {
        throw ResolventError("resolve: non-finite input point");
    }
    const Index n = space.dim();

    ResolventResult result;
    if (zero_is_resolvent(b, lambda, jz)) {
        result.y = PrimalVector::zero(n);
        result.t_star = 0.0;
        result.residual_norm = inclusion_residual_dual(space, b, lambda, jz, result.y);
        return result;
    }

    int iterations = 0;
    Eigen::VectorXd y(n);
    auto solve_at = [&](double t) {
        for (Index j = 0; j < n; ++j) {
            y[j] = solve_scalar_inclusion(b[j], jz[j], t, lambda, space, opts.inner_tol, iterations);
        }
    };

    if (space.is_hilbert()) {
        solve_at(1.0);
        result.y = PrimalVector(y);
        result.t_star = 1.0;
        result.inner_iterations = iterations;
        result.residual_norm = inclusion_residual_dual(space, b, lambda, jz, result.y);
        return result;
    }

    const double expo = 2.0 - space.p();
    // F(t) = t - ||y(t)||^(2-p) is strictly increasing; its root is the scale.
    auto excess = [&](double t) {
        solve_at(t);
        ++iterations;
        return t - std::pow(lr_norm(y, space.p()), expo);
    };

    double t0 = std::pow(space.dual_norm(jz), expo);
    if (!(t0 > 0.0) || !std::isfinite(t0)) t0 = 1.0;

    double lo = t0;
    double hi = t0;
    double f0 = excess(t0);
    double flo = f0;
    double fhi = f0;
    int steps = 0;
    if (f0 > 0.0) {
        while (flo > 0.0) {
            if (++steps > opts.max_bracket_steps) {
                throw ResolventError("resolve: bracket expansion failed while halving the scale");
            }
            hi = lo;
            fhi = flo;
            lo *= 0.5;
            flo = excess(lo);
        }
    } else if (f0 < 0.0) {
        while (fhi < 0.0) {
            if (++steps > opts.max_bracket_steps) {
                throw ResolventError("resolve: bracket expansion failed while doubling the scale");
            }
            lo = hi;
            flo = fhi;
            hi *= 2.0;
            fhi = excess(hi);
        }
    }

    double t_best = (std::abs(flo) <= std::abs(fhi)) ? lo : hi;
    if (flo != 0.0 && fhi != 0.0) {
        for (int it = 0; it < opts.max_outer_iterations; ++it) {
            const double mid = (hi > 2.0 * lo) ? std::sqrt(lo * hi) : lo + 0.5 * (hi - lo);
            if (!(mid > lo && mid < hi)) break;
            const double fm = excess(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                flo = fhi = 0.0;
                break;
            }
            if (fm < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
                fhi = fm;
            }
        }
        t_best = (std::abs(flo) <= std::abs(fhi)) ? lo : hi;
    }

    solve_at(t_best);
    result.y = PrimalVector(y);
    result.t_star = std::pow(space.norm(result.y), expo);
    result.inner_iterations = iterations;
    result.residual_norm = inclusion_residual_dual(space, b, lambda, jz, result.y);
    return result;
}

ResolventResult resolve(const LpSpace& space, const SeparableConvex& b, double lambda, const PrimalVector& z,
                        const ResolventOptions& opts)
{
    space.check_dim(z.size(), "resolve");
    if (!z.all_finite()) {
        throw ResolventError("resolve: non-finite input point");
    }
    return resolve_dual(space, b, lambda, space.duality_map(z), opts);
}

PrimalVector generalized_projection(const LpSpace& space, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                    const PrimalVector& x)
{
    return resolve(space, SeparableConvex::box(lo, hi), 1.0, x).y;
}

double inclusion_residual_dual(const LpSpace& space, const SeparableConvex& b, double lambda, const DualVector& jz,
                               const PrimalVector& y)
{
    space.check_dim(jz.size(), "inclusion_residual");
    space.check_dim(y.size(), "inclusion_residual");
    space.check_dim(b.size(), "inclusion_residual");
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("inclusion_residual: lambda must be positive");
    }
    const DualVector jy = space.duality_map(y);
    Eigen::VectorXd dist(space.dim());
    for (Index j = 0; j < space.dim(); ++j) {
        if (!b[j].in_domain(y[j])) return kInf;
        const double v = (jz[j] - jy[j]) / lambda;
        dist[j] = subdifferential_interval(b[j], y[j]).distance(v);
    }
    return lr_norm(dist, space.q());
}

double inclusion_residual(const LpSpace& space, const SeparableConvex& b, double lambda, const PrimalVector& z,
                          const PrimalVector& y)
{
    space.check_dim(z.size(), "inclusion_residual");
    return inclusion_residual_dual(space, b, lambda, space.duality_map(z), y);
}

}  // namespace lpsplit
