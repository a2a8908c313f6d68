#pragma once

#include "lpsplit/geometry.hpp"
#include "lpsplit/operators.hpp"

#include <stdexcept>

namespace lpsplit {

class ResolventError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ResolventOptions {
    double inner_tol = 1e-13;   // relative tolerance for scalar solves
    int max_outer_iterations = 300;
    int max_bracket_steps = 200;
};

struct ResolventResult {
    PrimalVector y;
    double t_star = 0.0;        // ||y||_p^(2-p) at the solution
    int inner_iterations = 0;   // outer bisection steps plus scalar Newton/bisection steps
    double residual_norm = 0.0; // inclusion_residual at y
};

/// Resolvent (J + lambda B)^{-1} J z for separable B = df.
///
/// The optimality condition J z - J y in lambda df(y) decouples once the
/// scale t = ||y||_p^(2-p) is fixed: each coordinate solves the monotone
/// scalar inclusion  t sign(y_j)|y_j|^(p-1) + lambda df_j(y_j) ∋ (Jz)_j.
/// The outer scale is the unique fixed point of t -> ||y(t)||^(2-p), found by
/// bracketing and bisection. The zero candidate is tested first.
ResolventResult resolve(const LpSpace& space, const SeparableConvex& b, double lambda, const PrimalVector& z,
                        const ResolventOptions& opts = {});

/// Same as resolve(), taking J z directly. Callers that already hold the dual
/// point (J x - lambda A x in the splitting step) avoid a J^{-1}/J round trip.
ResolventResult resolve_dual(const LpSpace& space, const SeparableConvex& b, double lambda, const DualVector& jz,
                             const ResolventOptions& opts = {});

/// Generalized projection onto the box [lo, hi]: argmin over the box of phi(y, x).
PrimalVector generalized_projection(const LpSpace& space, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                    const PrimalVector& x);

/// l_q norm of the coordinate-wise distance from ((Jz)_j - (Jy)_j)/lambda to
/// df_j(y_j). Zero iff y is the exact resolvent of z; +inf when y leaves the
/// domain of some piece.
double inclusion_residual(const LpSpace& space, const SeparableConvex& b, double lambda, const PrimalVector& z,
                          const PrimalVector& y);
double inclusion_residual_dual(const LpSpace& space, const SeparableConvex& b, double lambda, const DualVector& jz,
                               const PrimalVector& y);

}  // namespace lpsplit
