#pragma once

#include <array>
#include <memory>
#include <vector>

#include "hyperiso/density.hpp"
#include "hyperiso/profile.hpp"

namespace hyperiso {

// m = (g(b) - g(a)) / int_a^b f   and   m_hat = (g(a) + g(b)) / int_a^b f,
// with f, g the little weights of the profile module.
double m_functional(const DensitySpec& spec, double a, double b);
double m_hat_functional(const DensitySpec& spec, double a, double b);
double m_functional(const WeightedDisc& disc, double a, double b);
double m_hat_functional(const WeightedDisc& disc, double a, double b);

// Unweighted values: (1 + ab)/(a + b) and (1 - ab)/(b - a).
double m0_closed_form(double a, double b);
double m_hat0_closed_form(double a, double b);

// Boundary values (u(a), u(b)). The first entry is 0 for the problem posed
// on [0, b] with u(0) = 0, u(b) = 1.
using Signature = std::array<int, 2>;

/// Closed-form solution of
///     u' + (1/x + rho_tilde) u + lambda zeta = 0,   u(a) = eta1, u(b) = eta2.
/// Multiplying by g gives (u g)' = -lambda f, hence
///     u g = eta1 g(a) - lambda int_a^x f,
/// and the boundary value at b fixes lambda.
class BvpSolution {
public:
    BvpSolution(std::shared_ptr<const WeightedDisc> disc, double a, double b, Signature eta);

    double a() const { return a_; }
    double b() const { return b_; }
    Signature eta() const { return eta_; }
    double lambda() const { return lambda_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const WeightedDisc& disc() const { return *disc_; }
    std::shared_ptr<const WeightedDisc> disc_ptr() const { return disc_; }

    double u(double x) const;
    double du(double x, Side side = Side::plus) const;
    // u g, evaluated from whichever endpoint is closer.
    double ug(double x) const;
    // 1 - s u(x) for s = +-1, accurate when u is close to s.
    double one_minus(double x, int s) const;

private:
    std::shared_ptr<const WeightedDisc> disc_;
    double a_;
    double b_;
    Signature eta_;
    double lambda_;
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// w = 1/u for the signature (1, 1); solves w' + m zeta w^2 = (1/x + rho_tilde) w
/// with w(a) = w(b) = 1.
class RiccatiSolution {
public:
    explicit RiccatiSolution(BvpSolution linear);

    double a() const { return linear_.a(); }
    double b() const { return linear_.b(); }
    // The multiplier m.
    double lambda() const { return -linear_.lambda(); }
    const std::vector<double>& grid() const { return linear_.grid(); }
    const std::vector<double>& values() const { return values_; }
    const BvpSolution& linear() const { return linear_; }

    double w(double x) const { return 1.0 / linear_.u(x); }
    double dw(double x, Side side = Side::plus) const;
    double max_on_grid() const;

private:
    BvpSolution linear_;
    std::vector<double> values_;
};

// Grid: 512 uniform points, the lambda nodes inside (a, b), and the points
// a + 10^-k (b - a), b - 10^-k (b - a) for k = 2..8.
std::vector<double> solution_grid(const DensitySpec& spec, double a, double b);

BvpSolution solve_linear_bvp(const DensitySpec& spec, double a, double b, Signature eta);
BvpSolution solve_linear_bvp(std::shared_ptr<const WeightedDisc> disc, double a, double b,
                             Signature eta);
BvpSolution solve_bvp_a_zero(const DensitySpec& spec, double b);
BvpSolution solve_bvp_a_zero(std::shared_ptr<const WeightedDisc> disc, double b);
RiccatiSolution solve_riccati(const DensitySpec& spec, double a, double b);
RiccatiSolution solve_riccati(std::shared_ptr<const WeightedDisc> disc, double a, double b);

// Euclidean geodesic curvature k = -rho_tilde(tau) u - lambda zeta(tau) of a
// boundary arc with sin(sigma) = u; (k + rho_tilde u)/zeta = -lambda.
double generalized_curvature(const DensitySpec& spec, double tau, double u, double lambda);

struct CurveReconstruction {
    std::vector<double> grid;
    std::vector<double> theta;
    double winding = 0.0;
};

// theta(tau) = theta_start - int_a^tau u / sqrt(1 - u^2) dx/x on the solution grid.
// Throws SingularInterior if |u| reaches 1 inside (a, b).
CurveReconstruction reconstruct_curve(const BvpSolution& sol, double theta_start = 1.5707963267948966);

// int_lo^hi u / sqrt(1 - u^2) dx/x with inverse-square-root handling at any
// endpoint of [a, b] where |u| = 1.
double integrate_u_over_sqrt(const BvpSolution& sol, double lo, double hi);

}  // namespace hyperiso
