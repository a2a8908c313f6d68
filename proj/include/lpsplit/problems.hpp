#pragma once

#include "lpsplit/geometry.hpp"
#include "lpsplit/operators.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

namespace lpsplit {

/// Find x with 0 ∈ A x + B x, B = df separable.
struct ProblemInstance {
    LpSpace space;
    LipschitzMonotoneMap a;
    SeparableConvex b;
    std::optional<PrimalVector> known_solution;
    bool solution_unique = false;
    std::uint64_t seed = 0;
};

/// min_x f(x) + g(x),  g(x) = |M x - b|_2^2 / 2.
struct CompositeMinProblem {
    SeparableConvex f;
    Eigen::MatrixXd m;
    Eigen::VectorXd b;

    double smooth_part(const Eigen::VectorXd& x) const { return 0.5 * (m * x - b).squaredNorm(); }
    double objective(const Eigen::VectorXd& x) const { return f.value(x) + smooth_part(x); }
};

struct OracleSolution {
    enum class Method { CoordinateDescent, GridPolish, ClosedForm };
    PrimalVector point;
    double objective_value = 0.0;
    Method method = Method::CoordinateDescent;
    int sweeps = 0;
};

/// How the separable part of a planted instance is drawn.
enum class PieceFamily {
    Box,    // interval indicator with the solution in the interior
    Mixed,  // random mix of all piece kinds, solution planted with an active subgradient
};

/// Monotone VI over a box: M = w S + (1 - w) P^T P with S skew, c = -M x*
/// for a planted interior x*.
ProblemInstance gen_skew_vi(std::uint64_t seed, Index n, double p, double skew_weight, double lo, double hi);

/// A x = (P^T P + gamma I) x + c with a planted solution; unique solution.
ProblemInstance gen_strongly_monotone(std::uint64_t seed, Index n, double p, double gamma,
                                      PieceFamily family = PieceFamily::Box);

/// Sparse regression: singular values of M drawn in [0.5, 1.5], b = M x_sparse
/// + 0.01 noise, f = alpha |.|_1.
CompositeMinProblem gen_lasso_like(std::uint64_t seed, Index m, Index n, double alpha);

/// A := grad g = M^T (M x - b), B := df. No known solution is attached.
ProblemInstance composite_to_inclusion(const CompositeMinProblem& cm, const LpSpace& space);

/// Cyclic exact coordinate minimization of f + g in Euclidean geometry; used
/// only as an independent reference at p = 2.
OracleSolution coordinate_descent_oracle(const CompositeMinProblem& cm, int max_sweeps = 100000);

/// l_q distance from -A(candidate) to the product of the intervals
/// df_j(candidate_j); 0 iff the candidate solves the inclusion, +inf when it
/// leaves the domain of B.
double brute_force_inclusion_check(const ProblemInstance& inst, const PrimalVector& candidate);

std::string to_string(OracleSolution::Method method);

}  // namespace lpsplit
