#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hyperiso {

// Conformal factor of the Poincare disc, 2/(1-t^2).
double zeta(double t);

// Hyperbolic distance from the origin, 2 artanh(t), and its inverse.
double phi(double t);
double phi_inv(double s);

// zeta'/zeta = t zeta(t).
double rho_hat(double t);

enum class Side { plus, minus };

struct LambdaNode {
    double t;
    double value;
};

/// Radial log-convex weight on the Poincare disc.
///
/// The weight is described by lambda = h'/zeta, a non-negative non-decreasing
/// piecewise-linear function of the Euclidean radius. lambda is constant to
/// the left of the first node and to the right of the last one. The log
/// density h is normalised by h(0) = log_scale (zero unless the spec was
/// produced by scaled()).
///
/// Instances are immutable and safe to share between threads.
class DensitySpec {
public:
    // Validates the invariants; throws DomainError or MonotonicityError.
    explicit DensitySpec(std::vector<LambdaNode> nodes);

    std::span<const LambdaNode> nodes() const { return nodes_; }

    // lambda(t); one-sided limits coincide because lambda is continuous.
    double lambda(double t) const;
    double lambda(double t, Side side) const;

    double h(double t) const;
    double psi(double t) const;

    // One-sided derivative of h: lambda(t +- 0) * zeta(t).
    double rho(double t, Side side) const;
    double rho_tilde(double t, Side side) const;

    // inf { t : lambda(t) > 0 }, or 1 when lambda vanishes identically.
    double first_positive_radius() const;

    // True if lambda vanishes on [a, b).
    bool flat_on(double a, double b) const;

    bool is_unweighted() const { return first_positive_radius() >= 1.0; }

    // Same lambda, with h shifted by c (psi multiplied by e^c).
    DensitySpec scaled(double c) const;
    double log_scale() const { return log_scale_; }

    // Node radii inside the open interval (a, b); used as quadrature breakpoints.
    std::vector<double> breakpoints(double a, double b) const;

private:
    std::vector<LambdaNode> nodes_;
    // h at each segment start: h_at_[0] = h(0), h_at_[i+1] = h(nodes_[i].t).
    std::vector<double> h_at_;
    std::vector<double> seg_start_;
    double log_scale_ = 0.0;
};

DensitySpec make_density(std::vector<LambdaNode> nodes);

// Free-function forms of the DensitySpec accessors.
double h_value(const DensitySpec& spec, double t);
double psi(const DensitySpec& spec, double t);
double rho(const DensitySpec& spec, double t, Side side);
double rho_tilde(const DensitySpec& spec, double t, Side side);
double first_positive_radius(const DensitySpec& spec);

// {"lambda_nodes": [[t0, v0], [t1, v1], ...]}
DensitySpec parse_density_json(const std::string& text);
DensitySpec load_density_file(const std::string& path);
std::string density_to_json(const DensitySpec& spec);

}  // namespace hyperiso
