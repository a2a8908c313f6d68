#include "lpsplit/problems.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace lpsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(rows, cols);
    // Column-major fill order is part of the determinism contract.
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) g(r, c) = gauss(rng);
    }
    return g;
}

Eigen::MatrixXd orthonormal_columns(std::mt19937_64& rng, Index rows, Index cols)
{
    const Eigen::MatrixXd g = gaussian_matrix(rng, rows, cols);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    return qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

double draw_interior(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> frac(0.2, 0.8);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const bool lo_finite = std::isfinite(lo);
    const bool hi_finite = std::isfinite(hi);
    if (lo_finite && hi_finite) {
        if (lo == hi) return lo;
        return lo + (hi - lo) * frac(rng);
    }
    if (lo_finite) return lo + 0.5 + frac(rng);
    if (hi_finite) return hi - 0.5 - frac(rng);
    return gauss(rng);
}

struct PlantedPieces {
    SeparableConvex b;
    Eigen::VectorXd solution;
    Eigen::VectorXd subgradient;  // element of df(solution)
};

PlantedPieces plant_mixed(std::mt19937_64& rng, Index n)
{
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    PlantedPieces out;
    std::vector<ScalarPiece> pieces;
    out.solution.resize(n);
    out.subgradient.resize(n);
    for (Index j = 0; j < n; ++j) {
        double xj = 0.0;
        double vj = 0.0;
        switch (kind(rng)) {
        case 0:
            pieces.push_back(ScalarPiece::zero());
            xj = gauss(rng);
            break;
        case 1: {
            const double lo = -(0.5 + unit(rng));
            const double hi = 0.5 + unit(rng);
            pieces.push_back(ScalarPiece::interval(lo, hi));
            const double u = unit(rng);
            if (u < 1.0 / 3.0) {
                xj = lo;
                vj = -unit(rng);
            } else if (u < 2.0 / 3.0) {
                xj = hi;
                vj = unit(rng);
            } else {
                xj = lo + (hi - lo) * (0.2 + 0.6 * unit(rng));
            }
            break;
        }
        case 2: {
            const double alpha = 0.1 + 0.9 * unit(rng);
            pieces.push_back(ScalarPiece::scaled_abs(alpha));
            if (unit(rng) < 0.5) {
                xj = 0.0;
                vj = alpha * (2.0 * unit(rng) - 1.0);
            } else {
                xj = gauss(rng);
                if (xj == 0.0) xj = 1.0;
                vj = std::copysign(alpha, xj);
            }
            break;
        }
        default: {
            const double w = 0.1 + 0.9 * unit(rng);
            pieces.push_back(ScalarPiece::quadratic(w));
            xj = gauss(rng);
            vj = w * xj;
            break;
        }
        }
        out.solution[j] = xj;
        out.subgradient[j] = vj;
    }
    out.b = SeparableConvex(std::move(pieces));
    return out;
}

}  // namespace

ProblemInstance gen_skew_vi(std::uint64_t seed, Index n, double p, double skew_weight, double lo, double hi)
{
    if (n < 1) throw std::invalid_argument("gen_skew_vi: n must be positive");
    if (!(skew_weight >= 0.0 && skew_weight <= 1.0)) {
        throw std::invalid_argument("gen_skew_vi: skew weight must lie in [0, 1]");
    }
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw std::invalid_argument("gen_skew_vi: box bounds require lo <= hi");
    }
    LpSpace space(n, p);
    std::mt19937_64 rng(seed);

    const Eigen::MatrixXd g = gaussian_matrix(rng, n, n);
    const Eigen::MatrixXd skew = (g - g.transpose()) / std::sqrt(2.0 * static_cast<double>(n));
    const Eigen::MatrixXd pm = gaussian_matrix(rng, n, n) / std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXd m = skew_weight * skew + (1.0 - skew_weight) * (pm.transpose() * pm);

    Eigen::VectorXd xstar(n);
    for (Index j = 0; j < n; ++j) xstar[j] = draw_interior(rng, lo, hi);
    const Eigen::VectorXd c = -(m * xstar);

    Eigen::VectorXd lo_v = Eigen::VectorXd::Constant(n, lo);
    Eigen::VectorXd hi_v = Eigen::VectorXd::Constant(n, hi);
    return ProblemInstance{space,
                           LipschitzMonotoneMap::affine(m, c),
                           SeparableConvex::box(lo_v, hi_v),
                           PrimalVector(xstar),
                           skew_weight < 1.0,
                           seed};
}

ProblemInstance gen_strongly_monotone(std::uint64_t seed, Index n, double p, double gamma, PieceFamily family)
{
    if (n < 1) throw std::invalid_argument("gen_strongly_monotone: n must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gen_strongly_monotone: gamma must be positive");
    }
    LpSpace space(n, p);
    std::mt19937_64 rng(seed);

    const Eigen::MatrixXd pm = gaussian_matrix(rng, n, n) / std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXd m = pm.transpose() * pm + gamma * Eigen::MatrixXd::Identity(n, n);

    SeparableConvex b;
    Eigen::VectorXd xstar(n);
    Eigen::VectorXd sub = Eigen::VectorXd::Zero(n);
    if (family == PieceFamily::Box) {
        std::uniform_real_distribution<double> inner(-1.0, 1.0);
        for (Index j = 0; j < n; ++j) xstar[j] = inner(rng);
        b = SeparableConvex::box(Eigen::VectorXd::Constant(n, -2.0), Eigen::VectorXd::Constant(n, 2.0));
    } else {
        PlantedPieces planted = plant_mixed(rng, n);
        b = std::move(planted.b);
        xstar = planted.solution;
        sub = planted.subgradient;
    }
    // A x* = -v with v ∈ df(x*), so 0 ∈ A x* + df(x*).
    const Eigen::VectorXd c = -(m * xstar) - sub;
    return ProblemInstance{space, LipschitzMonotoneMap::affine(m, c), std::move(b), PrimalVector(xstar), true, seed};
}

CompositeMinProblem gen_lasso_like(std::uint64_t seed, Index m, Index n, double alpha)
{
    if (m < 1 || n < 1) throw std::invalid_argument("gen_lasso_like: m and n must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("gen_lasso_like: alpha must be finite and nonnegative");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> spectrum(0.5, 1.5);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const Index r = std::min(m, n);
    const Eigen::MatrixXd u = orthonormal_columns(rng, m, r);
    const Eigen::MatrixXd v = orthonormal_columns(rng, n, r);
    Eigen::VectorXd s(r);
    for (Index i = 0; i < r; ++i) s[i] = spectrum(rng);
    const Eigen::MatrixXd mat = u * s.asDiagonal() * v.transpose();

    Eigen::VectorXd sparse = Eigen::VectorXd::Zero(n);
    const Index k = std::max<Index>(1, n / 5);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (Index i = 0; i < k; ++i) sparse[pick(rng)] = 2.0 * gauss(rng);

    Eigen::VectorXd noise(m);
    for (Index i = 0; i < m; ++i) noise[i] = 0.01 * gauss(rng);

    return CompositeMinProblem{SeparableConvex::uniform(n, ScalarPiece::scaled_abs(alpha)), mat,
                               mat * sparse + noise};
}

ProblemInstance composite_to_inclusion(const CompositeMinProblem& cm, const LpSpace& space)
{
    space.check_dim(cm.m.cols(), "composite_to_inclusion");
    space.check_dim(cm.f.size(), "composite_to_inclusion");
    if (cm.m.rows() != cm.b.size()) {
        throw std::invalid_argument("composite_to_inclusion: M and b disagree in row count");
    }
    return ProblemInstance{space, LipschitzMonotoneMap::least_squares_gradient(cm.m, cm.b), cm.f, std::nullopt,
                           false, 0};
}

OracleSolution coordinate_descent_oracle(const CompositeMinProblem& cm, int max_sweeps)
{
    const Index n = cm.m.cols();
    if (cm.f.size() != n || cm.m.rows() != cm.b.size()) {
        throw std::invalid_argument("coordinate_descent_oracle: dimension mismatch");
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Index j = 0; j < n; ++j) {
        const ScalarPiece& piece = cm.f[j];
        if (piece.kind == ScalarPiece::Kind::IntervalIndicator) x[j] = std::clamp(0.0, piece.lo, piece.hi);
    }
    const Eigen::VectorXd col_sq = cm.m.colwise().squaredNorm().transpose();
    Eigen::VectorXd resid = cm.b - cm.m * x;

    double obj = cm.objective(x);
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double max_move = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double a = col_sq[j];
            const double beta = cm.m.col(j).dot(resid) + a * x[j];
            const ScalarPiece& piece = cm.f[j];
            double next = x[j];
            // argmin over t of  a t^2 / 2 - beta t + f_j(t)
            switch (piece.kind) {
            case ScalarPiece::Kind::Zero:
                if (a > 0.0) next = beta / a;
                break;
            case ScalarPiece::Kind::ScaledAbs: {
                const double shrunk = beta > piece.alpha ? beta - piece.alpha
                                    : beta < -piece.alpha ? beta + piece.alpha : 0.0;
                next = a > 0.0 ? shrunk / a : 0.0;
                break;
            }
            case ScalarPiece::Kind::IntervalIndicator:
                next = a > 0.0 ? std::clamp(beta / a, piece.lo, piece.hi) : std::clamp(0.0, piece.lo, piece.hi);
                break;
            case ScalarPiece::Kind::Quadratic:
                next = (a + piece.w) > 0.0 ? beta / (a + piece.w) : 0.0;
                break;
            }
            const double delta = next - x[j];
            if (delta != 0.0) {
                resid -= delta * cm.m.col(j);
                x[j] = next;
                max_move = std::max(max_move, std::abs(delta));
            }
        }
        const double next_obj = cm.objective(x);
        const bool stagnant = std::abs(obj - next_obj) <= 1e-12 * std::max(1.0, std::abs(next_obj));
        obj = next_obj;
        if (stagnant && max_move <= 1e-10 * (1.0 + x.cwiseAbs().maxCoeff())) {
            ++sweep;
            break;
        }
    }
    return OracleSolution{PrimalVector(x), obj, OracleSolution::Method::CoordinateDescent, sweep};
}

double brute_force_inclusion_check(const ProblemInstance& inst, const PrimalVector& candidate)
{
    inst.space.check_dim(candidate.size(), "brute_force_inclusion_check");
    const DualVector ax = inst.a(candidate);
    Eigen::VectorXd dist(candidate.size());
    for (Index j = 0; j < candidate.size(); ++j) {
        const ScalarPiece& piece = inst.b[j];
        if (!piece.in_domain(candidate[j])) return kInf;
        dist[j] = subdifferential_interval(piece, candidate[j]).distance(-ax[j]);
    }
    return lr_norm(dist, inst.space.q());
}

std::string to_string(OracleSolution::Method method)
{
    switch (method) {
    case OracleSolution::Method::CoordinateDescent: return "coordinate_descent";
    case OracleSolution::Method::GridPolish: return "grid_polish";
    case OracleSolution::Method::ClosedForm: return "closed_form";
    }
    return "unknown";
}

}  // namespace lpsplit
