#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace lpsplit {

using Index = Eigen::Index;

namespace detail {
struct PrimalTag {};
struct DualTag {};
}  // namespace detail

/// Coordinate vector tagged with the space it lives in (E = l_p^n or its dual
/// E* = l_q^n). The tag keeps primal and dual elements from being mixed up;
/// arithmetic is only defined between vectors of the same kind.
template <class Tag>
class LpVector {
public:
    LpVector() = default;
    explicit LpVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {}
    explicit LpVector(Index n) : coords_(Eigen::VectorXd::Zero(n)) {}

    static LpVector zero(Index n) { return LpVector(n); }

    const Eigen::VectorXd& coords() const noexcept { return coords_; }
    Eigen::VectorXd& coords() noexcept { return coords_; }
    Index size() const noexcept { return coords_.size(); }
    double operator[](Index i) const { return coords_[i]; }
    double& operator[](Index i) { return coords_[i]; }

    bool all_finite() const { return coords_.allFinite(); }

    LpVector& operator+=(const LpVector& o) { coords_ += o.coords_; return *this; }
    LpVector& operator-=(const LpVector& o) { coords_ -= o.coords_; return *this; }
    LpVector& operator*=(double s) { coords_ *= s; return *this; }

    friend LpVector operator+(LpVector a, const LpVector& b) { return a += b; }
    friend LpVector operator-(LpVector a, const LpVector& b) { return a -= b; }
    friend LpVector operator*(double s, LpVector a) { return a *= s; }
    friend LpVector operator*(LpVector a, double s) { return a *= s; }
    friend bool operator==(const LpVector& a, const LpVector& b) {
        return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
    }

private:
    Eigen::VectorXd coords_;
};

using PrimalVector = LpVector<detail::PrimalTag>;
using DualVector = LpVector<detail::DualTag>;

/// <x*, x> = sum_j x*_j x_j.
double pairing(const DualVector& xstar, const PrimalVector& x);

/// (sum |v_j|^r)^(1/r), evaluated with max-abs scaling so that large or tiny
/// entries neither overflow nor underflow.
double lr_norm(const Eigen::VectorXd& v, double r);

/// Finite-dimensional l_p space with 1 < p <= 2.
///
/// Holds the geometric constants used by the splitting methods:
///   mu    = 1/(p-1)        so that  ||x-y||^2 / mu <= phi(x, y)
///   kappa = sqrt((q-1)/2)  so that  ||u+v||_q^2 <= ||u||_q^2 + 2<v, J_* u> + 2 kappa^2 ||v||_q^2
/// Both reduce to the Hilbert values mu = 1, kappa = 1/sqrt(2) at p = 2.
class LpSpace {
public:
    LpSpace(Index n, double p);

    Index dim() const noexcept { return n_; }
    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    double mu() const noexcept { return mu_; }
    double kappa() const noexcept { return kappa_; }
    bool is_hilbert() const noexcept { return p_ == 2.0; }

    double norm(const PrimalVector& x) const;
    double dual_norm(const DualVector& xstar) const;

    /// J x with (J x)_j = ||x||_p^(2-p) sign(x_j) |x_j|^(p-1).
    DualVector duality_map(const PrimalVector& x) const;
    /// J^{-1} = J_*, the duality map of l_q applied to xstar.
    PrimalVector inverse_duality_map(const DualVector& xstar) const;

    /// phi(x, y) = ||x||^2 - 2<x, Jy> + ||y||^2, clamped at 0 against round-off.
    double lyapunov(const PrimalVector& x, const PrimalVector& y) const;
    /// V(x, x*) = ||x||^2 - 2<x*, x> + ||x*||_q^2 = phi(x, J^{-1} x*).
    double v_functional(const PrimalVector& x, const DualVector& xstar) const;

    /// Strict upper limit 1/(sqrt(2 mu) kappa L) on the step sizes; equals (p-1)/L.
    double step_size_cap(double lipschitz) const;
    /// Strict upper limit 1/(sqrt(2 mu) kappa) on the linesearch parameter theta.
    double theta_cap() const;

    void check_dim(Index size, const char* what) const;

private:
    Index n_;
    double p_;
    double q_;
    double mu_;
    double kappa_;
};

/// One line of the constant-verification suite.
struct ConstantCheck {
    std::string name;
    double max_violation = 0.0;  // worst normalized excess over the allowed slack budget
    double tolerance = 0.0;
    bool pass = true;
};

/// Samples random vectors and checks every identity and inequality the
/// solvers rely on (inverse pair, duality pairing, three- and two-point
/// identities, the mu lower bound, the kappa dual smoothness bound, the V
/// perturbation bound, positive homogeneity). Identity errors are relative to
/// (1 + magnitude), tolerance 1e-9; inequality excess is relative to
/// (1 + magnitude), tolerance 1e-12.
std::vector<ConstantCheck> verify_constants(const LpSpace& space, int samples, std::uint64_t seed);

}  // namespace lpsplit
