#include "hyperiso/curvature_ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperiso/errors.hpp"
#include "hyperiso/numerics.hpp"

namespace hyperiso {

namespace {

constexpr int kUniformPoints = 512;
// Below this distance from +-1 the endpoint-anchored form of 1 - s u is used.
constexpr double kAnchorThreshold = 1e-4;

void check_interval(double a, double b, const char* what) {
    if (!(a >= 0.0 && a < b && b < 1.0)) {
        std::ostringstream os;
        os << what << ": need 0 <= a < b < 1, got a = " << a << ", b = " << b;
        throw DomainError(os.str());
    }
}

}  // namespace

double m_functional(const WeightedDisc& disc, double a, double b) {
    check_interval(a, b, "m");
    return (disc.little_g(b) - disc.little_g(a)) / disc.f_integral(a, b);
}

double m_hat_functional(const WeightedDisc& disc, double a, double b) {
    check_interval(a, b, "m_hat");
    return (disc.little_g(a) + disc.little_g(b)) / disc.f_integral(a, b);
}

double m_functional(const DensitySpec& spec, double a, double b) {
    return m_functional(WeightedDisc(spec), a, b);
}

double m_hat_functional(const DensitySpec& spec, double a, double b) {
    return m_hat_functional(WeightedDisc(spec), a, b);
}

double m0_closed_form(double a, double b) {
    check_interval(a, b, "m0");
    return (1.0 + a * b) / (a + b);
}

double m_hat0_closed_form(double a, double b) {
    check_interval(a, b, "m_hat0");
    return (1.0 - a * b) / (b - a);
}

std::vector<double> solution_grid(const DensitySpec& spec, double a, double b) {
    std::vector<double> g;
    g.reserve(kUniformPoints + 32);
    const double w = b - a;
    for (int i = 0; i < kUniformPoints; ++i) g.push_back(a + w * i / (kUniformPoints - 1));
    g.back() = b;
    for (double t : spec.breakpoints(a, b)) g.push_back(t);
    double p = 1e-2;
    for (int k = 2; k <= 8; ++k, p *= 0.1) {
        g.push_back(a + p * w);
        g.push_back(b - p * w);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

BvpSolution::BvpSolution(std::shared_ptr<const WeightedDisc> disc, double a, double b, Signature eta)
    : disc_(std::move(disc)), a_(a), b_(b), eta_(eta) {
    check_interval(a, b, "boundary value problem");
    if (eta_[0] == 0) {
        if (a != 0.0 || eta_[1] != 1) {
            throw DomainError("boundary value problem: u(a) = 0 is only posed with a = 0, u(b) = 1");
        }
    } else {
        if (!(a > 0.0)) throw DomainError("boundary value problem: a = 0 requires u(0) = 0");
        if (std::abs(eta_[0]) != 1 || std::abs(eta_[1]) != 1) {
            throw DomainError("boundary value problem: boundary values must be +-1");
        }
    }
    const double ga = disc_->little_g(a);
    const double gb = disc_->little_g(b);
    lambda_ = (eta_[0] * ga - eta_[1] * gb) / disc_->f_integral(a, b);
    grid_ = solution_grid(disc_->density(), a, b);
    values_.reserve(grid_.size());
    for (double x : grid_) values_.push_back(u(x));
}

double BvpSolution::ug(double x) const {
    if (x - a_ <= b_ - x) {
        const double base = eta_[0] * disc_->little_g(a_);
        return x == a_ ? base : base - lambda_ * disc_->f_integral(a_, x);
    }
    const double base = eta_[1] * disc_->little_g(b_);
    return x == b_ ? base : base + lambda_ * disc_->f_integral(x, b_);
}

double BvpSolution::u(double x) const {
    if (!(x >= a_ && x <= b_)) throw DomainError("u: argument outside [a, b]");
    if (x == a_) return eta_[0];
    if (x == b_) return eta_[1];
    return ug(x) / disc_->little_g(x);
}

double BvpSolution::du(double x, Side side) const {
    if (x == 0.0) return -lambda_;  // a = 0: u ~ (g(b)/F(b)) x near the origin
    const auto& spec = disc_->density();
    if (x == b_) side = Side::minus;
    return -(1.0 / x + spec.rho_tilde(x, side)) * u(x) - lambda_ * zeta(x);
}

double BvpSolution::one_minus(double x, int s) const {
    const double direct = 1.0 - s * u(x);
    if (std::abs(direct) > kAnchorThreshold) return direct;
    const bool left = x - a_ <= b_ - x;
    const int anchor = left ? eta_[0] : eta_[1];
    if (anchor != s) return direct;
    if (x == a_ || x == b_) return 0.0;
    // g (1 - s u) vanishes at the anchor and has derivative g' + s lambda f.
    auto integrand = [&](double t) {
        return disc_->little_g_prime(t) + s * lambda_ * disc_->little_f(t);
    };
    const double lo = left ? a_ : x;
    const double hi = left ? x : b_;
    const double gx = disc_->little_g(x);
    // The integrand may change sign far from the anchor; the second term keeps
    // the request above the roundoff floor of the quadrature in that case.
    const double scale =
        (hi - lo) * (disc_->little_g_prime(hi, Side::minus) + std::abs(lambda_) * disc_->little_f(hi));
    const double tol = std::max(1e-15 * std::abs(direct) * gx, 256.0 * 2.2e-16 * scale);
    const auto cuts = disc_->density().breakpoints(lo, hi);
    const double d = numerics::integrate_piecewise(integrand, lo, hi, cuts,
                                                   numerics::SingularityHint::none(), tol)
                         .value;
    return (left ? d : -d) / gx;
}

RiccatiSolution::RiccatiSolution(BvpSolution linear) : linear_(std::move(linear)) {
    if (linear_.eta() != Signature{1, 1}) {
        throw DomainError("Riccati solution requires the signature (1, 1)");
    }
    values_.reserve(linear_.values().size());
    for (std::size_t i = 0; i < linear_.values().size(); ++i) {
        const double u = linear_.values()[i];
        if (!(u > 0.0)) {
            std::ostringstream os;
            os << "Riccati solution: u = " << u << " at x = " << linear_.grid()[i];
            throw SingularInterior(os.str());
        }
        values_.push_back(1.0 / u);
    }
}

double RiccatiSolution::dw(double x, Side side) const {
    const double u = linear_.u(x);
    return -linear_.du(x, side) / (u * u);
}

double RiccatiSolution::max_on_grid() const {
    return *std::max_element(values_.begin(), values_.end());
}

BvpSolution solve_linear_bvp(std::shared_ptr<const WeightedDisc> disc, double a, double b,
                             Signature eta) {
    if (!(a > 0.0)) throw DomainError("solve_linear_bvp: need a > 0");
    return BvpSolution(std::move(disc), a, b, eta);
}

BvpSolution solve_linear_bvp(const DensitySpec& spec, double a, double b, Signature eta) {
    return solve_linear_bvp(std::make_shared<const WeightedDisc>(spec), a, b, eta);
}

BvpSolution solve_bvp_a_zero(std::shared_ptr<const WeightedDisc> disc, double b) {
    if (!(b > 0.0)) throw DomainError("solve_bvp_a_zero: need b > 0");
    return BvpSolution(std::move(disc), 0.0, b, Signature{0, 1});
}

BvpSolution solve_bvp_a_zero(const DensitySpec& spec, double b) {
    return solve_bvp_a_zero(std::make_shared<const WeightedDisc>(spec), b);
}

RiccatiSolution solve_riccati(std::shared_ptr<const WeightedDisc> disc, double a, double b) {
    return RiccatiSolution(solve_linear_bvp(std::move(disc), a, b, Signature{1, 1}));
}

RiccatiSolution solve_riccati(const DensitySpec& spec, double a, double b) {
    return solve_riccati(std::make_shared<const WeightedDisc>(spec), a, b);
}

double generalized_curvature(const DensitySpec& spec, double tau, double u, double lambda) {
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("generalized_curvature: tau outside (0,1)");
    if (!(std::abs(u) <= 1.0 + 1e-12)) throw DomainError("generalized_curvature: |u| > 1");
    return -spec.rho_tilde(tau, Side::plus) * u - lambda * zeta(tau);
}

double integrate_u_over_sqrt(const BvpSolution& sol, double lo, double hi) {
    const double a = sol.a();
    const double b = sol.b();
    if (!(lo >= a && lo < hi && hi <= b)) throw DomainError("integrate_u_over_sqrt: bad limits");
    const Signature eta = sol.eta();
    const bool sing_left = lo == a && std::abs(eta[0]) == 1;
    const bool sing_right = hi == b && std::abs(eta[1]) == 1;
    auto integrand = [&](double x) {
        if (x == 0.0) return -sol.lambda();  // u/x at the origin (a = 0 case)
        const double prod = sol.one_minus(x, 1) * sol.one_minus(x, -1);
        if (!(prod > 0.0)) {
            if (x - a < 1e-12 || b - x < 1e-12) return 0.0;
            std::ostringstream os;
            os << "|u| reaches 1 at interior point x = " << x;
            throw SingularInterior(os.str());
        }
        return sol.u(x) / (x * std::sqrt(prod));
    };
    using numerics::SingularityHint;
    using numerics::SingularityLocation;
    SingularityHint hint = SingularityHint::none();
    if (sing_left && sing_right) {
        hint = SingularityHint::inverse_sqrt(SingularityLocation::both);
    } else if (sing_left) {
        hint = SingularityHint::inverse_sqrt(SingularityLocation::left);
    } else if (sing_right) {
        hint = SingularityHint::inverse_sqrt(SingularityLocation::right);
    }
    const auto cuts = sol.disc().density().breakpoints(lo, hi);
    return numerics::integrate_piecewise(integrand, lo, hi, cuts, hint, 1e-12).value;
}

CurveReconstruction reconstruct_curve(const BvpSolution& sol, double theta_start) {
    const auto& g = sol.grid();
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        if (!(sol.one_minus(g[i], 1) > 0.0 && sol.one_minus(g[i], -1) > 0.0)) {
            std::ostringstream os;
            os << "reconstruct_curve: |u| = 1 at interior grid point " << g[i];
            throw SingularInterior(os.str());
        }
    }
    CurveReconstruction out;
    out.grid = g;
    out.theta.resize(g.size());
    out.theta[0] = theta_start;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        out.theta[i + 1] = out.theta[i] - integrate_u_over_sqrt(sol, g[i], g[i + 1]);
    }
    out.winding = out.theta.back() - out.theta.front();
    return out;
}

}  // namespace hyperiso
