#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "hyperiso/comparison.hpp"
#include "hyperiso/errors.hpp"
#include "support.hpp"

using namespace hyperiso;
using ref::pi;

namespace {

// Independent forms of the unweighted references on (a, b).
double u0(double a, double b, double x) { return (-x + a * b / x) / (b - a); }
double w0(double a, double b, double x) {
    const double A = 0.5 * (a + b);
    return 2 * A * x / (a * b + x * x);
}
double mu_u0(double a, double b, double t) {
    // {u0 > t} = (a, x_t) with x_t the positive root of x^2 + (b - a) t x - ab
    const double c = (b - a) * t;
    const double xt = 0.5 * (-c + std::sqrt(c * c + 4 * a * b));
    return std::log(xt / a);
}
double mu_w0(double a, double b, double t) {
    const double lam = 0.5 * (a + b) / std::sqrt(a * b);
    return 2 * std::log((lam + std::sqrt(lam * lam - t * t)) / t);
}

}  // namespace

TEST_CASE("closed forms") {
    CHECK(closed_form_u0(0.2, 0.5, 0.3) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(closed_form_w0(0.2, 0.5, 0.3) == doctest::Approx(0.21 / 0.19).epsilon(1e-14));
    CHECK(closed_form_w0(0.2, 0.5, std::sqrt(0.1)) == doctest::Approx(closed_form_w0_max(0.2, 0.5)).epsilon(1e-14));
    CHECK(closed_form_w0_max(0.2, 0.5) == doctest::Approx(0.35 / std::sqrt(0.1)).epsilon(1e-14));
    CHECK(closed_form_mu_u0(0.2, 0.5, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(closed_form_mu_u0(0.2, 0.5, -1.0) == doctest::Approx(std::log(2.5)).epsilon(1e-14));
    CHECK(closed_form_mu_u0(0.2, 0.5, 0.0) == doctest::Approx(0.5 * std::log(2.5)).epsilon(1e-14));
    CHECK(closed_form_mu_w0(0.2, 0.5, 1.0) == doctest::Approx(std::log(2.5)).epsilon(1e-13));
    for (int i = 0; i <= 20; ++i) {
        const double t = -1.0 + i / 10.0;
        CHECK(closed_form_mu_u0(0.3, 0.8, t) == doctest::Approx(mu_u0(0.3, 0.8, t)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("distribution of u0 from level sets") {
    const auto sol = solve_linear_bvp(ref::flat(), 0.2, 0.5, Signature{1, -1});
    for (double x : sol.grid()) CHECK(sol.u(x) == doctest::Approx(u0(0.2, 0.5, x)).epsilon(1e-11).scale(1.0));
    const auto ls = level_sets_u(sol);
    CHECK(distribution_mu(ls, -1.0) == doctest::Approx(std::log(2.5)).epsilon(1e-12));
    CHECK(distribution_mu(ls, 0.0) == doctest::Approx(0.4581454).epsilon(1e-7));
    CHECK(distribution_mu(ls, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    const auto d = ls.distribution(default_linear_levels(50));
    for (std::size_t i = 0; i < d.levels.size(); ++i) {
        CHECK(std::abs(d.values[i] - mu_u0(0.2, 0.5, d.levels[i])) <= 2e-6);
        if (i > 0) CHECK(d.values[i] <= d.values[i - 1]);
    }
}

TEST_CASE("distribution of w0 from level sets") {
    const auto ric = solve_riccati(ref::flat(), 0.2, 0.5);
    const auto ls = level_sets_w(ric);
    CHECK(ls.max() == doctest::Approx(closed_form_w0_max(0.2, 0.5)).epsilon(1e-12));
    const auto levels = default_riccati_levels(0.2, 0.5, 50);
    for (double t : levels) {
        CHECK(std::abs(ls.mu(t) - mu_w0(0.2, 0.5, t)) <= 2e-6);
    }
}

TEST_CASE("level-sum derivative identity") {
    const double a = 0.2;
    const double b = 0.9;
    auto fn = [](double x) { return std::sin(10 * x); };
    auto dfn = [](double x) { return 10 * std::cos(10 * x); };
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(a + (b - a) * i / 400);
    const LevelSets ls(fn, dfn, grid);
    const double h = 1e-4;
    int used = 0;
    for (int k = 0; used < 20; ++k) {
        const double t = -0.85 + 0.085 * k;
        if (std::abs(t - fn(b)) < 0.02 || std::abs(t - fn(a)) < 0.02) continue;
        ++used;
        const double fd = (ls.mu(t + h) - ls.mu(t - h)) / (2 * h);
        // crossings by bisection on a fine scan
        double sum = 0.0;
        for (int i = 0; i < 4000; ++i) {
            double lo = a + (b - a) * i / 4000;
            double hi = a + (b - a) * (i + 1) / 4000;
            if ((fn(lo) - t) * (fn(hi) - t) > 0) continue;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                ((fn(lo) - t) * (fn(mid) - t) <= 0 ? hi : lo) = mid;
            }
            const double x = 0.5 * (lo + hi);
            sum += 1.0 / (x * std::abs(dfn(x)));
        }
        CHECK(std::abs(fd + sum) <= 1e-4 * std::max(1.0, sum));
    }
}

TEST_CASE("coth superadditivity") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(1e-6, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = u(rng);
        const double y = u(rng);
        const double slack = 1 / std::tanh(x) + 1 / std::tanh(y) - 1 / std::tanh(x + y);
        CHECK(slack >= 0.0);
    }
}

TEST_CASE("boundary flux of w0") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int k = 0; k < 20; ++k) {
        double a = u(rng);
        double b = u(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 0.05) continue;
        // one-sided fourth-order differences of the closed form
        const double h = 1e-3 * (b - a);
        auto d_right = [&](double x) {
            return (-25 * w0(a, b, x) + 48 * w0(a, b, x + h) - 36 * w0(a, b, x + 2 * h) +
                    16 * w0(a, b, x + 3 * h) - 3 * w0(a, b, x + 4 * h)) / (12 * h);
        };
        auto d_left = [&](double x) {
            return (25 * w0(a, b, x) - 48 * w0(a, b, x - h) + 36 * w0(a, b, x - 2 * h) -
                    16 * w0(a, b, x - 3 * h) + 3 * w0(a, b, x - 4 * h)) / (12 * h);
        };
        const double flux = 1 / (a * std::abs(d_right(a))) + 1 / (b * std::abs(d_left(b)));
        CHECK(flux == doctest::Approx(2 * (a + b) / (b - a)).epsilon(1e-8));
        // the same through the solver's analytic derivative
        const auto ric = solve_riccati(ref::flat(), a, b);
        const double an = 1 / (a * std::abs(ric.dw(a))) + 1 / (b * std::abs(ric.dw(b, Side::minus)));
        CHECK(an == doctest::Approx(2 * (a + b) / (b - a)).epsilon(1e-10));
        CHECK(2 / std::tanh(0.5 * std::log(b / a)) == doctest::Approx(2 * (a + b) / (b - a)).epsilon(1e-12));
    }
}

TEST_CASE("phi integrals") {
    const auto flat = solve_linear_bvp(ref::flat(), 0.2, 0.5, Signature{1, -1});
    CHECK(std::abs(integral_singular_phi_of_u(flat)) <= 1e-6);
    CHECK(std::abs(integral_phi_of_u(flat, [](double t) { return t; })) <= 1e-6);
    CHECK(std::abs(integral_phi_of_u(flat, [](double t) { return t * t * t; })) <= 1e-6);
    const auto w = solve_linear_bvp(ref::ramp(), 0.3, 0.5, Signature{1, -1});
    CHECK(integral_singular_phi_of_u(w) < -1e-4);
    CHECK(integral_phi_of_u(w, [](double t) { return t; }) < -1e-5);
    CHECK_THROWS_AS(integral_phi_of_u(solve_linear_bvp(ref::flat(), 0.2, 0.5, Signature{1, 1}),
                                      [](double t) { return t; }),
                    DomainError);
}

TEST_CASE("winding integral") {
    CHECK(winding_integral_w(solve_riccati(ref::flat(), 0.2, 0.5)) == doctest::Approx(pi).epsilon(1e-9));
    CHECK(winding_integral_w(solve_riccati(ref::ramp(), 0.6, 0.9)) > pi + 1e-3);
    // w dips below 1 inside
    CHECK_THROWS_AS(winding_integral_w(solve_riccati(ref::ramp(), 0.3, 0.5)), HypothesisViolated);
    // degenerate interval: w - 1 is roundoff
    CHECK_THROWS_AS(winding_integral_w(solve_riccati(ref::flat(), 0.5, 0.5 + 1e-7)), HypothesisViolated);
}

TEST_CASE("hypothesis guards agree with the computed solution") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    int violated = 0;
    for (int k = 0; k < 40; ++k) {
        double a = u(rng);
        double b = u(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 0.02) continue;
        const auto sol = solve_linear_bvp(ref::r03(), a, b, Signature{1, -1});
        const double lo = *std::min_element(sol.values().begin(), sol.values().end() - 1);
        if (lo <= -1.0) {
            ++violated;
            CHECK_THROWS_AS(require_u_above_minus_one(sol), HypothesisViolated);
            CHECK_THROWS_AS(check_mu_comparison_linear(sol, default_linear_levels(10)), HypothesisViolated);
        } else {
            CHECK_NOTHROW(require_u_above_minus_one(sol));
        }
    }
    CHECK(violated > 0);
}

TEST_CASE("reverse Hermite-Hadamard") {
    const auto flat = check_reverse_hh(ref::flat(), 0.2, 0.5);
    CHECK(flat.verdict == Verdict::pass);
    CHECK(flat.lhs == doctest::Approx(2.75).epsilon(1e-10));
    CHECK(flat.equality.value_or(false));
    const auto one = check_reverse_hh(ref::constant(1.0), 0.2, 0.5);
    CHECK(one.verdict == Verdict::pass);
    CHECK(one.slack > 1e-6);
    CHECK_FALSE(one.equality.value_or(true));
    const auto zero = check_reverse_hh(ref::flat(), 0.0, 0.5);
    CHECK(zero.verdict == Verdict::pass);
    // m_hat(0, 0.5) = g(0.5) / F(0.5) = 2
    CHECK(zero.lhs == doctest::Approx(ref::rho_hat(0.5) * 2.0).epsilon(1e-10));
    CHECK(zero.rhs == doctest::Approx(2 + 0.5 * ref::rho_hat(0.5)).epsilon(1e-12));
}

TEST_CASE("m upper bound") {
    const auto flat = check_m_upper_bound(ref::flat(), 0.2, 0.5);
    CHECK(flat.verdict == Verdict::pass);
    CHECK(flat.equality.value_or(false));
    for (double c : {0.3, 1.0, 2.5}) {
        const auto k = check_m_upper_bound(ref::constant(c), 0.2, 0.5);
        CHECK(k.verdict == Verdict::pass);
        CHECK(k.slack > 1e-6);
        CHECK(k.rhs == doctest::Approx(c + m0_closed_form(0.2, 0.5)).epsilon(1e-12));
    }
    const auto w = check_m_upper_bound(ref::ramp(), 0.3, 0.5);
    CHECK(w.verdict == Verdict::pass);
    CHECK(w.slack > 0.0);
}

TEST_CASE("mu comparison for the linear problem") {
    const auto flat = check_mu_comparison_linear(solve_linear_bvp(ref::flat(), 0.2, 0.5, Signature{1, -1}),
                                                 default_linear_levels(50));
    CHECK(flat.passed());
    for (const auto& c : flat.checks) CHECK(std::abs(c.slack - c.tolerance * 0) <= 2e-6);
    const auto w = check_mu_comparison_linear(solve_linear_bvp(ref::ramp(), 0.3, 0.5, Signature{1, -1}),
                                              default_linear_levels(50));
    CHECK(w.passed());
    for (const auto& c : w.checks) CHECK(c.slack > 0.0);
    // both distribution functions vanish near the top level
    const auto sol = solve_linear_bvp(ref::ramp(), 0.3, 0.5, Signature{1, -1});
    CHECK(level_sets_u(sol).mu(1.0 - 1e-12) < 1e-9);
    CHECK(level_sets_u(sol, true).mu(1.0 - 1e-12) < 1e-9);
}

TEST_CASE("Riccati comparison") {
    const auto flat = check_riccati_comparison(solve_riccati(ref::flat(), 0.2, 0.5),
                                               default_riccati_levels(0.2, 0.5, 50));
    CHECK(flat.passed());
    int fd = 0;
    for (const auto& c : flat.checks) {
        if (c.name.rfind("mu-riccati", 0) == 0) CHECK(std::abs(c.slack) <= 2e-6);
        if (c.name.rfind("coth-ode", 0) == 0) {
            ++fd;
            CHECK(std::abs(c.slack) <= 1e-4 * std::max(1.0, std::abs(c.rhs)));
        }
    }
    CHECK(fd > 10);
    const auto ric = solve_riccati(ref::ramp(), 0.6, 0.9);
    const auto w = check_riccati_comparison(ric, default_riccati_levels(0.6, 0.9, 50));
    CHECK(w.passed());
    // strict just above 1
    const double t = 1.0 + 1e-3;
    CHECK(level_sets_w(ric).mu(t) < closed_form_mu_w0(0.6, 0.9, t) - 1e-4);
    CHECK_THROWS_AS(check_riccati_comparison(solve_riccati(ref::ramp(), 0.3, 0.5),
                                             default_riccati_levels(0.3, 0.5, 10)),
                    HypothesisViolated);
}
