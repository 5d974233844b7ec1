#include "hyperiso/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperiso/errors.hpp"
#include "hyperiso/numerics.hpp"

namespace hyperiso {

namespace {

// Smallest max(w) - 1 accepted as evidence of w > 1.
constexpr double kResolvableExcess = 1e-10;

std::string interval_tag(double a, double b) {
    std::ostringstream os;
    os.precision(6);
    os << "[" << a << "," << b << "]";
    return os.str();
}

std::string level_tag(double t) {
    std::ostringstream os;
    os.precision(6);
    os << "t=" << t;
    return os.str();
}

void flag_equality(Check& c) { c.equality = std::abs(c.slack) <= 10.0 * c.tolerance; }

void check_open_interval(double a, double b, const char* what) {
    if (!(a > 0.0 && a < b)) {
        std::ostringstream os;
        os << what << ": need 0 < a < b, got a = " << a << ", b = " << b;
        throw DomainError(os.str());
    }
}

}  // namespace

LevelSets::LevelSets(Fn fn, Fn dfn, const std::vector<double>& grid) : fn_(std::move(fn)) {
    if (grid.size() < 2 || !(grid.front() > 0.0)) {
        throw DomainError("level sets: need at least two grid points, all positive");
    }
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) d[i] = dfn(grid[i]);
    bounds_.push_back(grid.front());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (i > 0 && d[i] == 0.0) {
            bounds_.push_back(grid[i]);
        } else if (d[i] * d[i + 1] < 0.0) {
            bounds_.push_back(numerics::solve_monotone(dfn, 0.0, grid[i], grid[i + 1], 0.0));
        }
    }
    if (grid.back() > bounds_.back()) bounds_.push_back(grid.back());
    at_bounds_.reserve(bounds_.size());
    for (double x : bounds_) at_bounds_.push_back(fn_(x));
}

double LevelSets::max() const { return *std::max_element(at_bounds_.begin(), at_bounds_.end()); }

double LevelSets::mu(double t) const {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < bounds_.size(); ++k) {
        const double p0 = bounds_[k];
        const double p1 = bounds_[k + 1];
        const double f0 = at_bounds_[k];
        const double f1 = at_bounds_[k + 1];
        if (std::min(f0, f1) > t) {
            sum += std::log(p1 / p0);
        } else if (std::max(f0, f1) > t) {
            const double x = numerics::solve_monotone(fn_, t, p0, p1, 0.0);
            sum += f1 > f0 ? std::log(p1 / x) : std::log(x / p0);
        }
    }
    return sum;
}

DistributionFunction LevelSets::distribution(const std::vector<double>& levels) const {
    DistributionFunction out;
    out.levels = levels;
    out.values.reserve(levels.size());
    for (double t : levels) out.values.push_back(mu(t));
    return out;
}

double distribution_mu(const LevelSets& fn, double t) { return fn.mu(t); }

double closed_form_u0(double a, double b, double tau) {
    check_open_interval(a, b, "u0");
    if (!(tau > 0.0)) throw DomainError("u0: tau must be positive");
    return (-tau + a * b / tau) / (b - a);
}

double closed_form_mu_u0(double a, double b, double t) {
    check_open_interval(a, b, "mu_u0");
    if (!(t >= -1.0 && t <= 1.0)) throw DomainError("mu_u0: level outside [-1,1]");
    const double d = b - a;
    return std::log((-d * t + std::sqrt(d * d * t * t + 4.0 * a * b)) / (2.0 * a));
}

double closed_form_w0(double a, double b, double tau) {
    check_open_interval(a, b, "w0");
    if (!(tau >= a && tau <= b)) throw DomainError("w0: tau outside [a,b]");
    const double A = 0.5 * (a + b);
    return 2.0 * A * tau / (a * b + tau * tau);
}

double closed_form_w0_max(double a, double b) {
    check_open_interval(a, b, "w0");
    return 0.5 * (a + b) / std::sqrt(a * b);
}

double closed_form_mu_w0(double a, double b, double t) {
    const double L = closed_form_w0_max(a, b);
    if (!(t >= 1.0 && t <= L)) throw DomainError("mu_w0: level outside [1, A/G]");
    return 2.0 * std::log((L + std::sqrt(std::max(0.0, L * L - t * t))) / t);
}

LevelSets level_sets_u(const BvpSolution& sol, bool negate) {
    const double s = negate ? -1.0 : 1.0;
    return LevelSets([&sol, s](double x) { return s * sol.u(x); },
                     [&sol, s](double x) { return s * sol.du(x); }, sol.grid());
}

LevelSets level_sets_w(const RiccatiSolution& sol) {
    return LevelSets([&sol](double x) { return sol.w(x); },
                     [&sol](double x) { return sol.dw(x); }, sol.grid());
}

void require_u_above_minus_one(const BvpSolution& sol) {
    const auto& g = sol.grid();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        if (!(sol.one_minus(g[i], -1) > 0.0)) {
            std::ostringstream os;
            os << "u > -1 fails at x = " << g[i];
            throw HypothesisViolated(os.str());
        }
    }
}

void require_w_above_one(const RiccatiSolution& sol) {
    const auto& g = sol.grid();
    const auto& lin = sol.linear();
    double excess = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double gap = lin.one_minus(g[i], 1);
        if (!(lin.u(g[i]) > 0.0 && gap > 0.0)) {
            std::ostringstream os;
            os << "w > 1 fails at x = " << g[i];
            throw HypothesisViolated(os.str());
        }
        excess = std::max(excess, gap / lin.u(g[i]));
    }
    // On very short intervals w - 1 sinks to roundoff and w > 1 cannot be
    // told apart from w = 1.
    if (excess < kResolvableExcess) {
        std::ostringstream os;
        os << "w - 1 stays below " << kResolvableExcess << " on [" << sol.a() << ", " << sol.b() << "]";
        throw HypothesisViolated(os.str());
    }
}

double integral_phi_of_u(const BvpSolution& sol, const std::function<double(double)>& phi) {
    if (sol.eta() != Signature{1, -1}) throw DomainError("integral_phi_of_u: signature must be (1,-1)");
    require_u_above_minus_one(sol);
    auto integrand = [&](double x) { return phi(sol.u(x)) / x; };
    const auto cuts = sol.disc().density().breakpoints(sol.a(), sol.b());
    return numerics::integrate_piecewise(
               integrand, sol.a(), sol.b(), cuts,
               numerics::SingularityHint::inverse_sqrt(numerics::SingularityLocation::both), 1e-12)
        .value;
}

double integral_singular_phi_of_u(const BvpSolution& sol) {
    if (sol.eta() != Signature{1, -1}) {
        throw DomainError("integral_singular_phi_of_u: signature must be (1,-1)");
    }
    require_u_above_minus_one(sol);
    return integrate_u_over_sqrt(sol, sol.a(), sol.b());
}

double winding_integral_w(const RiccatiSolution& sol) {
    require_w_above_one(sol);
    // 1/sqrt(w^2 - 1) = u / sqrt(1 - u^2) with u = 1/w.
    return integrate_u_over_sqrt(sol.linear(), sol.a(), sol.b());
}

Check check_reverse_hh(const WeightedDisc& disc, double a, double b, double tol) {
    const auto& spec = disc.density();
    const double mh = m_hat_functional(disc, a, b);
    const double lhs = (rho_hat(b) - rho_hat(a)) * mh;
    const double rhs = 2.0 + a * spec.rho_tilde(a, Side::plus) + b * spec.rho_tilde(b, Side::minus);
    Check c = make_check("reverse-hh" + interval_tag(a, b), lhs, rhs, Relation::less_equal, tol);
    flag_equality(c);
    return c;
}

Check check_reverse_hh(const DensitySpec& spec, double a, double b, double tol) {
    return check_reverse_hh(WeightedDisc(spec), a, b, tol);
}

Check check_m_upper_bound(const WeightedDisc& disc, double a, double b, double tol) {
    const double m = m_functional(disc, a, b);
    const double rhs = disc.density().lambda(b, Side::minus) + m0_closed_form(a, b);
    Check c = make_check("m-upper-bound" + interval_tag(a, b), m, rhs, Relation::less_equal, tol);
    flag_equality(c);
    return c;
}

Check check_m_upper_bound(const DensitySpec& spec, double a, double b, double tol) {
    return check_m_upper_bound(WeightedDisc(spec), a, b, tol);
}

VerificationReport check_multiplier_lower_bounds(const WeightedDisc& disc, double a, double b,
                                                 double tol) {
    VerificationReport r;
    r.add(report_only("m-lower-bound" + interval_tag(a, b), m_functional(disc, a, b),
                      m0_closed_form(a, b), Relation::greater_equal, tol));
    r.add(report_only("m-hat-lower-bound" + interval_tag(a, b), m_hat_functional(disc, a, b),
                      m_hat0_closed_form(a, b), Relation::greater_equal, tol));
    return r;
}

std::vector<double> default_linear_levels(int n) {
    std::vector<double> t;
    for (int j = 0; j < n; ++j) t.push_back((j + 0.5) / n);
    return t;
}

std::vector<double> default_riccati_levels(double a, double b, int n) {
    const double L = closed_form_w0_max(a, b);
    std::vector<double> t;
    for (int j = 0; j < n; ++j) t.push_back(1.0 + (L - 1.0) * j / n);
    return t;
}

VerificationReport check_mu_comparison_linear(const BvpSolution& sol,
                                              const std::vector<double>& levels, double tol) {
    if (sol.eta() != Signature{1, -1}) throw DomainError("mu comparison: signature must be (1,-1)");
    require_u_above_minus_one(sol);
    const auto u = level_sets_u(sol);
    const auto v = level_sets_u(sol, true);
    VerificationReport r;
    const std::string tag = interval_tag(sol.a(), sol.b());
    for (double t : levels) {
        if (!(t > 0.0 && t < 1.0)) throw DomainError("mu comparison: levels must lie in (0,1)");
        Check c = make_check("mu-linear" + tag + " " + level_tag(t), u.mu(t), v.mu(t),
                             Relation::less_equal, tol);
        flag_equality(c);
        r.add(std::move(c));
    }
    return r;
}

VerificationReport check_riccati_comparison(const RiccatiSolution& sol,
                                            const std::vector<double>& levels, double tol,
                                            double fd_step, double fd_tol) {
    require_w_above_one(sol);
    const double a = sol.a();
    const double b = sol.b();
    const double L = closed_form_w0_max(a, b);
    const auto w = level_sets_w(sol);
    const double wmax = w.max();
    const std::string tag = interval_tag(a, b);
    VerificationReport r;
    r.add(make_check("w-max" + tag, wmax, L, Relation::less_equal, 1e-8));
    // Keep the difference stencil clear of the kink at t = 1 and of the
    // square-root behaviour of mu_w at the maximum of w.
    const double t_hi = wmax - std::max(200.0 * fd_step, 0.05 * (wmax - 1.0));
    for (double t : levels) {
        if (!(t >= 1.0 && t < L)) throw DomainError("Riccati comparison: levels must lie in [1, A/G)");
        const double mu = w.mu(t);
        Check c = make_check("mu-riccati" + tag + " " + level_tag(t), mu, closed_form_mu_w0(a, b, t),
                             Relation::less_equal, tol);
        flag_equality(c);
        r.add(std::move(c));
        if (t - fd_step >= 1.0 + fd_step && t + fd_step <= t_hi && mu > 0.0) {
            const double dmu = (w.mu(t + fd_step) - w.mu(t - fd_step)) / (2.0 * fd_step);
            const double rhs = (2.0 / t) / std::tanh(0.5 * mu);
            r.add(make_check("coth-ode" + tag + " " + level_tag(t), -dmu, rhs,
                             Relation::greater_equal, fd_tol * std::max(1.0, rhs)));
        }
    }
    return r;
}

}  // namespace hyperiso
