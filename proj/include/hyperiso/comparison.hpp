#pragma once

#include <functional>
#include <vector>

#include "hyperiso/curvature_ode.hpp"
#include "hyperiso/report.hpp"

namespace hyperiso {

/// Samples of t -> mu({fn > t}) with mu(dx) = dx/x.
struct DistributionFunction {
    std::vector<double> levels;
    std::vector<double> values;
};

/// A continuous function on [a, b] (0 < a) split into monotone pieces.
/// Piece boundaries are the sign changes of the analytic derivative on the
/// sampling grid, refined by root-finding. Level crossings inside a piece
/// are found by bracketed root-finding on fn itself.
class LevelSets {
public:
    using Fn = std::function<double(double)>;

    LevelSets(Fn fn, Fn dfn, const std::vector<double>& grid);

    double a() const { return bounds_.front(); }
    double b() const { return bounds_.back(); }
    const std::vector<double>& piece_bounds() const { return bounds_; }
    double max() const;

    // mu({fn > t})
    double mu(double t) const;
    DistributionFunction distribution(const std::vector<double>& levels) const;

private:
    Fn fn_;
    std::vector<double> bounds_;
    std::vector<double> at_bounds_;
};

double distribution_mu(const LevelSets& fn, double t);

// Unweighted references on (a, b).
double closed_form_u0(double a, double b, double tau);
double closed_form_mu_u0(double a, double b, double t);
double closed_form_w0(double a, double b, double tau);
double closed_form_mu_w0(double a, double b, double t);
// A/G with A the arithmetic and G the geometric mean of a, b.
double closed_form_w0_max(double a, double b);

LevelSets level_sets_u(const BvpSolution& sol, bool negate = false);
LevelSets level_sets_w(const RiccatiSolution& sol);

// int_a^b phi(u) dx/x for the signature (1, -1); requires u > -1 on [a, b).
double integral_phi_of_u(const BvpSolution& sol, const std::function<double(double)>& phi);
// Same with phi(t) = t / sqrt(1 - t^2), evaluated without cancellation at the ends.
double integral_singular_phi_of_u(const BvpSolution& sol);

// int_a^b 1/sqrt(w^2 - 1) dx/x; requires w > 1 on (a, b).
double winding_integral_w(const RiccatiSolution& sol);

// Throw HypothesisViolated when the stated hypothesis fails on the grid.
void require_u_above_minus_one(const BvpSolution& sol);
void require_w_above_one(const RiccatiSolution& sol);

// (rho_hat(b) - rho_hat(a)) m_hat <= 2 + a rho_tilde(a+) + b rho_tilde(b-).
Check check_reverse_hh(const WeightedDisc& disc, double a, double b, double tol = 1e-8);
Check check_reverse_hh(const DensitySpec& spec, double a, double b, double tol = 1e-8);

// m <= lambda(b-) + m0.
Check check_m_upper_bound(const WeightedDisc& disc, double a, double b, double tol = 1e-8);
Check check_m_upper_bound(const DensitySpec& spec, double a, double b, double tol = 1e-8);

// m >= m0 and m_hat >= m_hat0; report-only.
VerificationReport check_multiplier_lower_bounds(const WeightedDisc& disc, double a, double b,
                                                 double tol = 1e-8);

std::vector<double> default_linear_levels(int n = 50);
std::vector<double> default_riccati_levels(double a, double b, int n = 50);

// mu_u(t) <= mu_{-u}(t) at each level in (0, 1).
VerificationReport check_mu_comparison_linear(const BvpSolution& sol,
                                              const std::vector<double>& levels,
                                              double tol = 2e-6);

// mu_w <= mu_w0 on the levels, max w <= A/G, and
// -mu_w'(t) >= (2/t) coth(mu_w(t)/2) by central differences of step fd_step.
VerificationReport check_riccati_comparison(const RiccatiSolution& sol,
                                            const std::vector<double>& levels,
                                            double tol = 2e-6, double fd_step = 1e-4,
                                            double fd_tol = 1e-4);

}  // namespace hyperiso
