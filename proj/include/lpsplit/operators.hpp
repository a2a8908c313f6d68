#pragma once

#include "lpsplit/geometry.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lpsplit {

/// Raised when a point lies outside the effective domain of a convex piece.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    /// Distance from v to the interval (0 when inside).
    double distance(double v) const noexcept
    {
        if (v < lo) return lo - v;
        if (v > hi) return v - hi;
        return 0.0;
    }
};

/// Proper closed convex scalar function f_j.
struct ScalarPiece {
    enum class Kind { Zero, IntervalIndicator, ScaledAbs, Quadratic };

    Kind kind = Kind::Zero;
    double lo = -std::numeric_limits<double>::infinity();  // IntervalIndicator
    double hi = std::numeric_limits<double>::infinity();   // IntervalIndicator
    double alpha = 0.0;                                    // ScaledAbs: alpha |t|
    double w = 0.0;                                        // Quadratic: (w/2) t^2

    static ScalarPiece zero() { return {}; }
    static ScalarPiece interval(double lo, double hi);
    static ScalarPiece scaled_abs(double alpha);
    static ScalarPiece quadratic(double w);

    bool in_domain(double t) const noexcept;
    /// f(t), +inf outside the domain.
    double value(double t) const noexcept;
};

/// The subdifferential of a scalar piece at t as an interval [d-, d+].
/// Throws DomainError when t is outside the domain.
Interval subdifferential_interval(const ScalarPiece& piece, double t);

/// f(x) = sum_j f_j(x_j); plays the role of B = df.
class SeparableConvex {
public:
    SeparableConvex() = default;
    explicit SeparableConvex(std::vector<ScalarPiece> pieces);

    static SeparableConvex uniform(Index n, const ScalarPiece& piece);
    static SeparableConvex zero(Index n) { return uniform(n, ScalarPiece::zero()); }
    static SeparableConvex box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

    Index size() const noexcept { return static_cast<Index>(pieces_.size()); }
    const ScalarPiece& operator[](Index j) const { return pieces_[static_cast<std::size_t>(j)]; }
    const std::vector<ScalarPiece>& pieces() const noexcept { return pieces_; }

    double value(const Eigen::VectorXd& x) const;
    bool in_domain(const Eigen::VectorXd& x) const;
    bool is_zero() const;

private:
    std::vector<ScalarPiece> pieces_;
};

/// Lipschitz-continuous monotone map A : E -> E*.
///   Affine:              A x = M x + c
///   LeastSquaresGradient A x = M^T (M x - b)   (gradient of g = |Mx - b|_2^2 / 2)
///   Zero:                A x = 0
/// The Lipschitz bound is certified at construction (see certify_lipschitz).
/// Monotonicity of an affine map is not enforced here; use is_monotone() or
/// monotonicity_probe().
class LipschitzMonotoneMap {
public:
    enum class Kind { Affine, LeastSquaresGradient, Zero };

    static LipschitzMonotoneMap affine(Eigen::MatrixXd m, Eigen::VectorXd c);
    static LipschitzMonotoneMap least_squares_gradient(Eigen::MatrixXd m, Eigen::VectorXd b);
    static LipschitzMonotoneMap zero(Index n);

    Kind kind() const noexcept { return kind_; }
    Index dim() const noexcept { return n_; }
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    /// c for Affine, b for LeastSquaresGradient, empty for Zero.
    const Eigen::VectorXd& offset() const noexcept { return offset_; }
    double lipschitz_bound() const noexcept { return lipschitz_; }

    DualVector operator()(const PrimalVector& x) const;

    /// Smallest eigenvalue of the symmetric part is >= -tol * (1 + ||M||).
    bool is_monotone(double tol = 1e-10) const;

private:
    LipschitzMonotoneMap() = default;

    Kind kind_ = Kind::Zero;
    Index n_ = 0;
    Eigen::MatrixXd m_;
    Eigen::VectorXd offset_;
    double lipschitz_ = 0.0;
};

/// Largest singular value by power iteration on M^T M, stopped after
/// max_iterations or when the estimate stagnates to rel_tol.
double spectral_norm_estimate(const Eigen::MatrixXd& m, int max_iterations = 200, double rel_tol = 1e-12);

/// Certified Lipschitz bound with respect to the l_p -> l_q norms: the power
/// iteration spectral norm (squared for the least-squares gradient) inflated by
/// 1.01. Valid because ||.||_2 <= ||.||_p on E and ||.||_q <= ||.||_2 on E*
/// whenever p <= 2 <= q. The zero map reports 1 so that step caps stay finite.
double certify_lipschitz(LipschitzMonotoneMap::Kind kind, const Eigen::MatrixXd& m);

struct MonotonicityReport {
    double min_inner_value = 0.0;
    bool pass = true;
};

/// Minimum of <Ax - Ay, x - y> / |x - y|_2^2 over random pairs; pass when it
/// is >= -1e-10.
MonotonicityReport monotonicity_probe(const LipschitzMonotoneMap& a, int sample_count, std::uint64_t seed);

struct StrongMonotonicityTag {
    double gamma = 0.0;  // 0: merely monotone
};

}  // namespace lpsplit
