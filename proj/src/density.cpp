#include "hyperiso/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperiso/errors.hpp"

namespace hyperiso {

namespace {

void require_radius(double t, const char* what) {
    if (!(t >= 0.0 && t < 1.0)) {
        std::ostringstream os;
        os << what << ": radius " << t << " outside [0,1)";
        throw DomainError(os.str());
    }
}

// Coefficients of lambda(t) = c0 + c1 t on one segment.
struct Linear {
    double c0;
    double c1;
};

// Integral of (c0 + c1 t) zeta(t) over [s, t].
double integrate_lambda_zeta(Linear l, double s, double t) {
    double out = 0.0;
    if (l.c0 != 0.0) out += l.c0 * (phi(t) - phi(s));
    if (l.c1 != 0.0) out += l.c1 * (std::log1p(-s * s) - std::log1p(-t * t));
    return out;
}

}  // namespace

double zeta(double t) {
    require_radius(t, "zeta");
    return 2.0 / ((1.0 - t) * (1.0 + t));
}

double phi(double t) {
    require_radius(t, "phi");
    return 2.0 * std::atanh(t);
}

double phi_inv(double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw DomainError("phi_inv: distance must be finite and non-negative");
    }
    return std::tanh(0.5 * s);
}

double rho_hat(double t) { return t * zeta(t); }

DensitySpec::DensitySpec(std::vector<LambdaNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw DomainError("density: at least one lambda node is required");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (!std::isfinite(n.t) || !std::isfinite(n.value)) {
            throw DomainError("density: node " + std::to_string(i) + " is not finite");
        }
        if (n.t < 0.0 || n.t >= 1.0) {
            throw DomainError("density: node " + std::to_string(i) + " radius outside [0,1)");
        }
        if (n.value < 0.0) {
            throw DomainError("density: node " + std::to_string(i) + " has negative lambda");
        }
        if (i > 0 && !(n.t > nodes_[i - 1].t)) {
            throw DomainError("density: node radii must be strictly increasing (node " +
                              std::to_string(i) + ")");
        }
        if (i > 0 && n.value < nodes_[i - 1].value) {
            throw MonotonicityError("density: lambda decreases at node " + std::to_string(i) +
                                    "; h would not be phi-convex");
        }
    }

    seg_start_.push_back(0.0);
    for (const auto& n : nodes_) seg_start_.push_back(n.t);
    h_at_.assign(seg_start_.size(), 0.0);
    for (std::size_t k = 1; k < seg_start_.size(); ++k) {
        const double s = seg_start_[k - 1];
        const double t = seg_start_[k];
        double slope = 0.0;
        double c0 = 0.0;
        if (k == 1) {
            c0 = nodes_.front().value;
        } else {
            const auto& l = nodes_[k - 2];
            const auto& r = nodes_[k - 1];
            slope = (r.value - l.value) / (r.t - l.t);
            c0 = l.value - slope * l.t;
        }
        h_at_[k] = h_at_[k - 1] + integrate_lambda_zeta({c0, slope}, s, t);
    }
}

double DensitySpec::lambda(double t) const {
    if (t <= nodes_.front().t) return nodes_.front().value;
    if (t >= nodes_.back().t) return nodes_.back().value;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                               [](double x, const LambdaNode& n) { return x < n.t; });
    const auto& r = *it;
    const auto& l = *(it - 1);
    const double w = (t - l.t) / (r.t - l.t);
    return l.value + w * (r.value - l.value);
}

double DensitySpec::lambda(double t, Side) const { return lambda(t); }

double DensitySpec::h(double t) const {
    require_radius(t, "h");
    // segment k spans [seg_start_[k], seg_start_[k+1]]
    const auto it = std::upper_bound(seg_start_.begin(), seg_start_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - seg_start_.begin()) - 1;
    const double s = seg_start_[k];
    Linear l{};
    if (k == 0) {
        l = {nodes_.front().value, 0.0};
    } else if (k >= nodes_.size()) {
        l = {nodes_.back().value, 0.0};
    } else {
        const auto& a = nodes_[k - 1];
        const auto& b = nodes_[k];
        const double slope = (b.value - a.value) / (b.t - a.t);
        l = {a.value - slope * a.t, slope};
    }
    return log_scale_ + h_at_[k] + integrate_lambda_zeta(l, s, t);
}

double DensitySpec::psi(double t) const { return std::exp(h(t)); }

double DensitySpec::rho(double t, Side side) const {
    require_radius(t, "rho");
    if (side == Side::minus && t <= 0.0) {
        throw DomainError("rho: left limit requires t > 0");
    }
    return lambda(t, side) * zeta(t);
}

double DensitySpec::rho_tilde(double t, Side side) const { return rho_hat(t) + rho(t, side); }

double DensitySpec::first_positive_radius() const {
    if (nodes_.front().value > 0.0) return 0.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        // lambda is zero on [0, nodes_[i-1].t] and rises linearly afterwards.
        if (nodes_[i].value > 0.0) return nodes_[i - 1].t;
    }
    return 1.0;
}

bool DensitySpec::flat_on(double, double b) const { return b <= first_positive_radius(); }

DensitySpec DensitySpec::scaled(double c) const {
    DensitySpec out = *this;
    out.log_scale_ = log_scale_ + c;
    return out;
}

std::vector<double> DensitySpec::breakpoints(double a, double b) const {
    std::vector<double> out;
    for (const auto& n : nodes_) {
        if (n.t > a && n.t < b) out.push_back(n.t);
    }
    return out;
}

DensitySpec make_density(std::vector<LambdaNode> nodes) { return DensitySpec(std::move(nodes)); }

double h_value(const DensitySpec& spec, double t) { return spec.h(t); }
double psi(const DensitySpec& spec, double t) { return spec.psi(t); }
double rho(const DensitySpec& spec, double t, Side side) { return spec.rho(t, side); }
double rho_tilde(const DensitySpec& spec, double t, Side side) { return spec.rho_tilde(t, side); }
double first_positive_radius(const DensitySpec& spec) { return spec.first_positive_radius(); }

}  // namespace hyperiso
