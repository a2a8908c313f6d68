#include "lpsplit/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace lpsplit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLipschitzInflation = 1.01;
}  // namespace

ScalarPiece ScalarPiece::interval(double lo, double hi)
{
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw std::invalid_argument("interval piece requires lo <= hi");
    }
    ScalarPiece p;
    p.kind = Kind::IntervalIndicator;
    p.lo = lo;
    p.hi = hi;
    return p;
}

ScalarPiece ScalarPiece::scaled_abs(double alpha)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("scaled_abs piece requires finite alpha >= 0");
    }
    ScalarPiece p;
    p.kind = Kind::ScaledAbs;
    p.alpha = alpha;
    return p;
}

ScalarPiece ScalarPiece::quadratic(double w)
{
    if (!(w >= 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("quadratic piece requires finite w >= 0");
    }
    ScalarPiece p;
    p.kind = Kind::Quadratic;
    p.w = w;
    return p;
}

bool ScalarPiece::in_domain(double t) const noexcept
{
    if (!std::isfinite(t)) return false;
    if (kind == Kind::IntervalIndicator) return lo <= t && t <= hi;
    return true;
}

double ScalarPiece::value(double t) const noexcept
{
    if (!in_domain(t)) return kInf;
    switch (kind) {
    case Kind::Zero:
    case Kind::IntervalIndicator:
        return 0.0;
    case Kind::ScaledAbs:
        return alpha * std::abs(t);
    case Kind::Quadratic:
        return 0.5 * w * t * t;
    }
    return kInf;
}

Interval subdifferential_interval(const ScalarPiece& piece, double t)
{
    if (!piece.in_domain(t)) {
        throw DomainError("subdifferential_interval: point outside the domain of the piece");
    }
    switch (piece.kind) {
    case ScalarPiece::Kind::Zero:
        return {0.0, 0.0};
    case ScalarPiece::Kind::IntervalIndicator: {
        Interval d{0.0, 0.0};
        if (t == piece.lo) d.lo = -kInf;
        if (t == piece.hi) d.hi = kInf;
        return d;
    }
    case ScalarPiece::Kind::ScaledAbs:
        if (t == 0.0) return {-piece.alpha, piece.alpha};
        return t > 0.0 ? Interval{piece.alpha, piece.alpha} : Interval{-piece.alpha, -piece.alpha};
    case ScalarPiece::Kind::Quadratic:
        return {piece.w * t, piece.w * t};
    }
    return {0.0, 0.0};
}

SeparableConvex::SeparableConvex(std::vector<ScalarPiece> pieces) : pieces_(std::move(pieces)) {}

SeparableConvex SeparableConvex::uniform(Index n, const ScalarPiece& piece)
{
    return SeparableConvex(std::vector<ScalarPiece>(static_cast<std::size_t>(n), piece));
}

SeparableConvex SeparableConvex::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi)
{
    if (lo.size() != hi.size()) {
        throw std::invalid_argument("box: bound vectors differ in length");
    }
    std::vector<ScalarPiece> pieces;
    pieces.reserve(static_cast<std::size_t>(lo.size()));
    for (Index j = 0; j < lo.size(); ++j) pieces.push_back(ScalarPiece::interval(lo[j], hi[j]));
    return SeparableConvex(std::move(pieces));
}

double SeparableConvex::value(const Eigen::VectorXd& x) const
{
    double acc = 0.0;
    for (Index j = 0; j < size(); ++j) acc += (*this)[j].value(x[j]);
    return acc;
}

bool SeparableConvex::in_domain(const Eigen::VectorXd& x) const
{
    for (Index j = 0; j < size(); ++j) {
        if (!(*this)[j].in_domain(x[j])) return false;
    }
    return true;
}

bool SeparableConvex::is_zero() const
{
    return std::all_of(pieces_.begin(), pieces_.end(), [](const ScalarPiece& p) {
        return p.kind == ScalarPiece::Kind::Zero
            || (p.kind == ScalarPiece::Kind::ScaledAbs && p.alpha == 0.0)
            || (p.kind == ScalarPiece::Kind::Quadratic && p.w == 0.0)
            || (p.kind == ScalarPiece::Kind::IntervalIndicator && p.lo == -kInf && p.hi == kInf);
    });
}

double spectral_norm_estimate(const Eigen::MatrixXd& m, int max_iterations, double rel_tol)
{
    if (m.size() == 0) return 0.0;
    // Fixed pseudo-random start so the estimate is reproducible and not
    // orthogonal to the leading singular vector for structured matrices.
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> unit(0.5, 1.5);
    Eigen::VectorXd v(m.cols());
    for (Index j = 0; j < v.size(); ++j) v[j] = unit(rng);
    v.normalize();

    double sigma = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::VectorXd mv = m * v;
        const double next = mv.norm();
        if (next == 0.0) return 0.0;
        Eigen::VectorXd w = m.transpose() * mv;
        const double wn = w.norm();
        if (wn == 0.0) return next;
        v = w / wn;
        const bool stagnated = std::abs(next - sigma) <= rel_tol * next;
        sigma = next;
        if (stagnated) break;
    }
    return sigma;
}

double certify_lipschitz(LipschitzMonotoneMap::Kind kind, const Eigen::MatrixXd& m)
{
    switch (kind) {
    case LipschitzMonotoneMap::Kind::Zero:
        return 1.0;
    case LipschitzMonotoneMap::Kind::Affine: {
        const double s = spectral_norm_estimate(m);
        return s > 0.0 ? kLipschitzInflation * s : 1.0;
    }
    case LipschitzMonotoneMap::Kind::LeastSquaresGradient: {
        const double s = spectral_norm_estimate(m);
        return s > 0.0 ? kLipschitzInflation * s * s : 1.0;
    }
    }
    return 1.0;
}

LipschitzMonotoneMap LipschitzMonotoneMap::affine(Eigen::MatrixXd m, Eigen::VectorXd c)
{
    if (m.rows() != m.cols() || m.rows() != c.size()) {
        throw std::invalid_argument("affine map: M must be n x n and c of length n");
    }
    if (!m.allFinite() || !c.allFinite()) {
        throw std::invalid_argument("affine map: non-finite entries");
    }
    LipschitzMonotoneMap a;
    a.kind_ = Kind::Affine;
    a.n_ = m.cols();
    a.m_ = std::move(m);
    a.offset_ = std::move(c);
    a.lipschitz_ = certify_lipschitz(a.kind_, a.m_);
    return a;
}

LipschitzMonotoneMap LipschitzMonotoneMap::least_squares_gradient(Eigen::MatrixXd m, Eigen::VectorXd b)
{
    if (m.rows() != b.size()) {
        throw std::invalid_argument("least-squares gradient: M must have as many rows as b");
    }
    if (!m.allFinite() || !b.allFinite()) {
        throw std::invalid_argument("least-squares gradient: non-finite entries");
    }
    LipschitzMonotoneMap a;
    a.kind_ = Kind::LeastSquaresGradient;
    a.n_ = m.cols();
    a.m_ = std::move(m);
    a.offset_ = std::move(b);
    a.lipschitz_ = certify_lipschitz(a.kind_, a.m_);
    return a;
}

LipschitzMonotoneMap LipschitzMonotoneMap::zero(Index n)
{
    if (n < 1) throw std::invalid_argument("zero map: dimension must be positive");
    LipschitzMonotoneMap a;
    a.kind_ = Kind::Zero;
    a.n_ = n;
    a.lipschitz_ = certify_lipschitz(a.kind_, a.m_);
    return a;
}

DualVector LipschitzMonotoneMap::operator()(const PrimalVector& x) const
{
    if (x.size() != n_) {
        throw std::invalid_argument("map evaluation: dimension mismatch (expected " + std::to_string(n_)
                                    + ", got " + std::to_string(x.size()) + ")");
    }
    switch (kind_) {
    case Kind::Affine:
        return DualVector(m_ * x.coords() + offset_);
    case Kind::LeastSquaresGradient:
        return DualVector(m_.transpose() * (m_ * x.coords() - offset_));
    case Kind::Zero:
        return DualVector::zero(n_);
    }
    return DualVector::zero(n_);
}

bool LipschitzMonotoneMap::is_monotone(double tol) const
{
    if (kind_ != Kind::Affine) return true;
    const Eigen::MatrixXd sym = 0.5 * (m_ + m_.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    const double scale = 1.0 + m_.cwiseAbs().maxCoeff() * static_cast<double>(n_);
    return es.eigenvalues().minCoeff() >= -tol * scale;
}

MonotonicityReport monotonicity_probe(const LipschitzMonotoneMap& a, int sample_count, std::uint64_t seed)
{
    if (sample_count < 1) {
        throw std::invalid_argument("monotonicity_probe: sample count must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Index n = a.dim();

    MonotonicityReport report{std::numeric_limits<double>::infinity(), true};
    for (int s = 0; s < sample_count; ++s) {
        Eigen::VectorXd x(n), y(n);
        for (Index j = 0; j < n; ++j) x[j] = gauss(rng);
        for (Index j = 0; j < n; ++j) y[j] = gauss(rng);
        const Eigen::VectorXd d = x - y;
        const double dd = d.squaredNorm();
        if (dd == 0.0) continue;
        const Eigen::VectorXd diff = a(PrimalVector(x)).coords() - a(PrimalVector(y)).coords();
        report.min_inner_value = std::min(report.min_inner_value, diff.dot(d) / dd);
    }
    if (!std::isfinite(report.min_inner_value)) report.min_inner_value = 0.0;
    report.pass = report.min_inner_value >= -1e-10;
    return report;
}

}  // namespace lpsplit
