#include "lpsplit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lpsplit {

namespace {

// ||v||_r * sign(v_j) * (|v_j| / ||v||_r)^(r-1), which equals
// ||v||_r^(2-r) sign(v_j) |v_j|^(r-1) but stays in range for any scale.
Eigen::VectorXd normalized_power_map(const Eigen::VectorXd& v, double r)
{
    const double nrm = lr_norm(v, r);
    Eigen::VectorXd out(v.size());
    if (nrm == 0.0) {
        out.setZero();
        return out;
    }
    for (Index j = 0; j < v.size(); ++j) {
        const double a = std::abs(v[j]);
        const double mag = (a == 0.0) ? 0.0 : nrm * std::pow(a / nrm, r - 1.0);
        out[j] = std::copysign(mag, v[j]);
    }
    return out;
}

}  // namespace

double pairing(const DualVector& xstar, const PrimalVector& x)
{
    if (xstar.size() != x.size()) {
        throw std::invalid_argument("pairing: dimension mismatch");
    }
    return xstar.coords().dot(x.coords());
}

double lr_norm(const Eigen::VectorXd& v, double r)
{
    if (v.size() == 0) return 0.0;
    const double m = v.cwiseAbs().maxCoeff();
    if (m == 0.0 || !std::isfinite(m)) return m;
    if (r == 2.0) {
        return m * (v / m).norm();
    }
    double acc = 0.0;
    for (Index j = 0; j < v.size(); ++j) {
        acc += std::pow(std::abs(v[j]) / m, r);
    }
    return m * std::pow(acc, 1.0 / r);
}

LpSpace::LpSpace(Index n, double p) : n_(n), p_(p)
{
    if (n < 1) {
        throw std::invalid_argument("LpSpace: dimension must be positive");
    }
    if (!(p > 1.0 && p <= 2.0)) {
        throw std::invalid_argument("LpSpace: exponent p must lie in (1, 2]");
    }
    q_ = p / (p - 1.0);
    mu_ = 1.0 / (p - 1.0);
    kappa_ = std::sqrt((q_ - 1.0) / 2.0);
    if (p == 2.0) {
        q_ = 2.0;
        mu_ = 1.0;
        kappa_ = 1.0 / std::sqrt(2.0);
    }
}

void LpSpace::check_dim(Index size, const char* what) const
{
    if (size != n_) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected "
                                    + std::to_string(n_) + ", got " + std::to_string(size) + ")");
    }
}

double LpSpace::norm(const PrimalVector& x) const
{
    return lr_norm(x.coords(), p_);
}

double LpSpace::dual_norm(const DualVector& xstar) const
{
    return lr_norm(xstar.coords(), q_);
}

DualVector LpSpace::duality_map(const PrimalVector& x) const
{
    check_dim(x.size(), "duality_map");
    if (is_hilbert()) return DualVector(x.coords());
    return DualVector(normalized_power_map(x.coords(), p_));
}

PrimalVector LpSpace::inverse_duality_map(const DualVector& xstar) const
{
    check_dim(xstar.size(), "inverse_duality_map");
    if (is_hilbert()) return PrimalVector(xstar.coords());
    return PrimalVector(normalized_power_map(xstar.coords(), q_));
}

double LpSpace::lyapunov(const PrimalVector& x, const PrimalVector& y) const
{
    check_dim(x.size(), "lyapunov");
    check_dim(y.size(), "lyapunov");
    if (is_hilbert()) {
        return (x.coords() - y.coords()).squaredNorm();
    }
    const double nx = norm(x);
    const double ny = norm(y);
    const double value = nx * nx - 2.0 * pairing(duality_map(y), x) + ny * ny;
    return std::max(0.0, value);
}

double LpSpace::v_functional(const PrimalVector& x, const DualVector& xstar) const
{
    check_dim(x.size(), "v_functional");
    check_dim(xstar.size(), "v_functional");
    if (is_hilbert()) {
        return (x.coords() - xstar.coords()).squaredNorm();
    }
    const double nx = norm(x);
    const double ns = dual_norm(xstar);
    return std::max(0.0, nx * nx - 2.0 * pairing(xstar, x) + ns * ns);
}

double LpSpace::step_size_cap(double lipschitz) const
{
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
        throw std::invalid_argument("step_size_cap: Lipschitz constant must be positive and finite");
    }
    return 1.0 / (std::sqrt(2.0 * mu_) * kappa_ * lipschitz);
}

double LpSpace::theta_cap() const
{
    return 1.0 / (std::sqrt(2.0 * mu_) * kappa_);
}

std::vector<ConstantCheck> verify_constants(const LpSpace& space, int samples, std::uint64_t seed)
{
    if (samples < 1) {
        throw std::invalid_argument("verify_constants: sample count must be positive");
    }
    const Index n = space.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Random direction with log-uniform scale in [0.1, 10]; a quarter of the
    // draws zero out roughly half the coordinates so J is exercised at 0.
    auto draw = [&]() {
        Eigen::VectorXd v(n);
        for (Index j = 0; j < n; ++j) v[j] = gauss(rng);
        if (unit(rng) < 0.25) {
            for (Index j = 0; j < n; ++j) {
                if (unit(rng) < 0.5) v[j] = 0.0;
            }
        }
        const double scale = std::pow(10.0, 2.0 * unit(rng) - 1.0);
        const double nrm = v.norm();
        if (nrm > 0.0) v *= scale / nrm;
        return v;
    };

    constexpr double kIdentityTol = 1e-9;
    constexpr double kInequalityTol = 1e-12;
    std::vector<ConstantCheck> checks = {
        {"inverse_pair", 0.0, kIdentityTol, true},
        {"duality_pairing", 0.0, kIdentityTol, true},
        {"duality_norm", 0.0, kIdentityTol, true},
        {"three_point_identity", 0.0, kIdentityTol, true},
        {"two_point_identity", 0.0, kIdentityTol, true},
        {"homogeneity", 0.0, kIdentityTol, true},
        {"mu_lower_bound", 0.0, kInequalityTol, true},
        {"kappa_dual_smoothness", 0.0, kInequalityTol, true},
        {"v_perturbation", 0.0, kInequalityTol, true},
    };
    auto record = [&](std::size_t k, double v) {
        checks[k].max_violation = std::max(checks[k].max_violation, v);
    };

    for (int s = 0; s < samples; ++s) {
        // Half of the pairs are near-collinear perturbations, where the mu and
        // kappa bounds are tight.
        const bool near = unit(rng) < 0.5;
        const double shrink = std::pow(10.0, -3.0 * unit(rng));
        const PrimalVector x(draw());
        const PrimalVector y(near ? Eigen::VectorXd(x.coords() + shrink * draw()) : draw());
        const PrimalVector z(draw());
        const DualVector u(draw());
        const DualVector v(near ? Eigen::VectorXd(shrink * draw()) : draw());

        const DualVector jx = space.duality_map(x);
        const DualVector jy = space.duality_map(y);
        const DualVector jz = space.duality_map(z);
        const double nx = space.norm(x);
        const double ny = space.norm(y);
        const double nz = space.norm(z);

        // J_*(J x) = x
        const double inv_err = space.norm(space.inverse_duality_map(jx) - x);
        record(0, inv_err / (1.0 + nx));

        // <Jx, x> = ||x||^2 = ||Jx||_q^2
        record(1, std::abs(pairing(jx, x) - nx * nx) / (1.0 + nx * nx));
        record(2, std::abs(space.dual_norm(jx) - nx) / (1.0 + nx));

        // phi(x,y) = phi(x,z) + phi(z,y) + 2<x - z, Jz - Jy>
        {
            const double lhs = space.lyapunov(x, y);
            const double rhs = space.lyapunov(x, z) + space.lyapunov(z, y) + 2.0 * pairing(jz - jy, x - z);
            const double mag = nx * nx + ny * ny + nz * nz;
            record(3, std::abs(lhs - rhs) / (1.0 + mag));
        }
        // phi(x,y) + phi(y,x) = 2<x - y, Jx - Jy>
        {
            const double lhs = space.lyapunov(x, y) + space.lyapunov(y, x);
            const double rhs = 2.0 * pairing(jx - jy, x - y);
            const double mag = nx * nx + ny * ny;
            record(4, std::abs(lhs - rhs) / (1.0 + mag));
        }
        // J(t x) = t J x
        {
            const double t = std::pow(10.0, 2.0 * unit(rng) - 1.0);
            const DualVector lhs = space.duality_map(t * x);
            const double err = space.dual_norm(lhs - t * jx);
            record(5, err / (1.0 + t * nx));
        }
        // ||x - y||^2 / mu <= phi(x, y)
        {
            const double d = space.norm(x - y);
            const double excess = d * d / space.mu() - space.lyapunov(x, y);
            record(6, std::max(0.0, excess) / (1.0 + nx * nx + ny * ny));
        }
        // ||u + v||_q^2 <= ||u||_q^2 + 2<v, J_* u> + 2 kappa^2 ||v||_q^2
        {
            const double nu = space.dual_norm(u);
            const double nv = space.dual_norm(v);
            const double nuv = space.dual_norm(u + v);
            const double k2 = space.kappa() * space.kappa();
            const double excess = nuv * nuv
                - (nu * nu + 2.0 * pairing(v, space.inverse_duality_map(u)) + 2.0 * k2 * nv * nv);
            record(7, std::max(0.0, excess) / (1.0 + nu * nu + nv * nv));
        }
        // V(x, x*) + 2<J^{-1} x* - x, y*> <= V(x, x* + y*)
        {
            const double lhs = space.v_functional(x, u) + 2.0 * pairing(v, space.inverse_duality_map(u) - x);
            const double rhs = space.v_functional(x, u + v);
            const double nu = space.dual_norm(u);
            const double nv = space.dual_norm(v);
            record(8, std::max(0.0, lhs - rhs) / (1.0 + nx * nx + nu * nu + nv * nv));
        }
    }
    for (auto& c : checks) c.pass = c.max_violation <= c.tolerance;
    return checks;
}

}  // namespace lpsplit
