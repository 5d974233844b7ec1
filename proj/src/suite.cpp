#include "hyperiso/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hyperiso/comparison.hpp"
#include "hyperiso/curvature_ode.hpp"
#include "hyperiso/errors.hpp"

namespace hyperiso {

namespace {

constexpr double kPi = std::numbers::pi;

std::string tag(double a, double b) {
    std::ostringstream os;
    os.precision(6);
    os << "[" << a << "," << b << "]";
    return os.str();
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Relative agreement |x - y| <= tol |y| as a check with slack tol|y| - |x - y|.
Check relative_match(std::string name, double x, double y, double tol) {
    Check c = make_check(std::move(name), std::abs(x - y), tol * std::abs(y), Relation::less_equal, 0.0);
    c.lhs = x;
    c.rhs = y;
    return c;
}

}  // namespace

Suite parse_suite(const std::string& name) {
    if (name == "all") return Suite::all;
    if (name == "hh") return Suite::hh;
    if (name == "ode") return Suite::ode;
    if (name == "mu") return Suite::mu;
    if (name == "profile") return Suite::profile;
    throw DomainError("unknown suite '" + name + "'");
}

std::vector<std::pair<double, double>> default_interval_lattice() {
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < 10; ++i) {
        for (int j = i + 1; j < 10; ++j) out.emplace_back(i / 10.0, j / 10.0);
    }
    return out;
}

VerificationReport run_interval_checks(const std::shared_ptr<const WeightedDisc>& disc, double a,
                                       double b, Suite suite, const SuiteOptions& opt) {
    VerificationReport r;
    const bool all = suite == Suite::all;
    const std::string t = tag(a, b);

    if (all || suite == Suite::hh) {
        r.add(check_reverse_hh(*disc, a, b));
        r.add(check_m_upper_bound(*disc, a, b));
        r.merge(check_multiplier_lower_bounds(*disc, a, b));
    }
    const bool ode = all || suite == Suite::ode;
    const bool mu = all || suite == Suite::mu;
    if (!ode && !mu) return r;

    if (a == 0.0) {
        if (ode) {
            const auto sol = solve_bvp_a_zero(disc, b);
            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < sol.grid().size(); ++i) {
                worst = std::min(worst, sol.values()[i] - sol.grid()[i] / b);
            }
            r.add(make_check("a-zero-domination" + t, worst, 0.0, Relation::greater_equal, 1e-10));
            const double winding = reconstruct_curve(sol).winding;
            r.add(report_only("a-zero-winding" + t, -winding, kPi / 2, Relation::greater_equal, 1e-6));
        }
        return r;
    }

    const auto lin = solve_linear_bvp(disc, a, b, Signature{1, -1});
    const auto ric = solve_riccati(disc, a, b);
    if (ode) {
        int changes = 0;
        for (std::size_t i = 0; i + 1 < lin.values().size(); ++i) {
            if ((lin.values()[i] > 0.0) != (lin.values()[i + 1] > 0.0)) ++changes;
        }
        r.add(make_check("single-zero" + t, std::abs(changes - 1.0), 0.0, Relation::less_equal, 0.0));
        try {
            r.add(make_check("phi-integral" + t, integral_singular_phi_of_u(lin), 0.0,
                             Relation::less_equal, 1e-6));
        } catch (const HypothesisViolated& e) {
            r.add(hypothesis_violated("phi-integral" + t, e.what()));
        }
        try {
            r.add(make_check("winding" + t, winding_integral_w(ric), kPi, Relation::greater_equal, 1e-6));
        } catch (const HypothesisViolated& e) {
            r.add(hypothesis_violated("winding" + t, e.what()));
        }
    }
    if (mu) {
        try {
            r.merge(check_mu_comparison_linear(lin, default_linear_levels(opt.levels)));
        } catch (const HypothesisViolated& e) {
            r.add(hypothesis_violated("mu-linear" + t, e.what()));
        }
        try {
            r.merge(check_riccati_comparison(ric, default_riccati_levels(a, b, opt.levels)));
        } catch (const HypothesisViolated& e) {
            r.add(hypothesis_violated("mu-riccati" + t, e.what()));
        }
    }
    return r;
}

VerificationReport run_profile_checks(const WeightedDisc& disc, const SuiteOptions& opt) {
    VerificationReport r;
    const auto& spec = disc.density();

    // Alternating sums of J over random descending tuples.
    std::mt19937_64 rng(opt.seed);
    const double smax = std::min(disc.max_scaled_volume(), 20.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pairs(1, 3);
    for (int k = 0; k < opt.tuples; ++k) {
        std::vector<double> t(2 * pairs(rng));
        for (double& x : t) x = smax * unit(rng);
        std::sort(t.begin(), t.end(), std::greater<>());
        double lhs = 0.0;
        double alt = 0.0;
        for (std::size_t h = 0; h < t.size(); ++h) {
            lhs += disc.J(t[h]);
            alt += h % 2 == 0 ? t[h] : -t[h];
        }
        r.add(make_check("alternating-sum/" + std::to_string(k), lhs, disc.J(alt),
                         Relation::greater_equal, 1e-10));
    }

    // Multiplying psi by e^c multiplies volumes and perimeters by e^c.
    const double c = 0.5;
    const WeightedDisc scaled(spec.scaled(c), disc.radius_cap());
    for (double v : {0.05, 1.0, 5.0}) {
        if (v / (2 * kPi) >= disc.max_scaled_volume()) continue;
        r.add(relative_match("scaling-invariance/v=" + num(v), scaled.profile_I(std::exp(c) * v),
                             std::exp(c) * disc.profile_I(v), 1e-8));
    }

    // Below v0 the centred ball only sees psi = 1.
    const auto th = disc.uniqueness_thresholds();
    if (th.v0 > 0.0) {
        const double vtop = std::min(th.v0, 50.0);
        for (int k = 0; k < 10; ++k) {
            const double v = th.R >= 1.0 ? 0.01 * std::pow(5000.0, k / 9.0) : vtop * (k + 1) / 10.0;
            const double I = disc.profile_I(v);
            r.add(relative_match("low-volume-identity/v=" + num(v), I * I, v * v + 4 * kPi * v, 1e-8));
        }
    }

    // Centred-ball consistency and monotonicity of J.
    double prev = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double s = smax * k / 20.0;
        const double j = disc.J(s);
        r.add(make_check("J-increasing/s=" + num(s), j - prev, 0.0, Relation::greater_equal, 0.0));
        prev = j;
    }
    return r;
}

VerificationReport run_verify(const DensitySpec& spec, Suite suite,
                              std::optional<std::pair<double, double>> interval,
                              const SuiteOptions& opt) {
    const auto disc = std::make_shared<const WeightedDisc>(spec);
    std::vector<std::pair<double, double>> intervals;
    if (interval) {
        const auto [a, b] = *interval;
        if (!(a >= 0.0 && a < b && b < 1.0)) throw DomainError("verify: need 0 <= a < b < 1");
        intervals.push_back(*interval);
    } else {
        intervals = default_interval_lattice();
    }
    VerificationReport r;
    if (suite != Suite::profile) {
        for (const auto& [a, b] : intervals) r.merge(run_interval_checks(disc, a, b, suite, opt));
    }
    if (suite == Suite::all || suite == Suite::profile) r.merge(run_profile_checks(*disc, opt));
    return r;
}

std::vector<Competitor> random_competitors(const WeightedDisc& disc, double v, int trials,
                                           int max_annuli, std::uint64_t seed) {
    if (trials <= 0) throw DomainError("compete: trials must be positive");
    if (max_annuli <= 0) throw DomainError("compete: max annuli must be positive");
    if (!(v > 0.0) || v / (2 * kPi) > disc.max_scaled_volume()) {
        throw RangeError("compete: volume outside the computable range");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.0, 0.95);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, max_annuli);
    std::uniform_int_distribution<int> knots(2, 6);
    constexpr int kAttempts = 10000;

    std::vector<Competitor> out;
    for (int trial = 0; trial < trials; ++trial) {
        bool done = false;
        for (int attempt = 0; attempt < kAttempts && !done; ++attempt) {
            std::vector<double> r(2 * count(rng));
            for (double& x : r) x = radius(rng);
            std::sort(r.begin(), r.end(), std::greater<>());
            if (unit(rng) < 0.5) r.back() = 0.0;
            if (std::adjacent_find(r.begin(), r.end()) != r.end()) continue;
            // a single centred ball duplicates the control row
            if (r.size() == 2 && r.back() == 0.0) continue;
            try {
                out.emplace_back(match_volume(disc, AnnulusUnion(r), v));
                done = true;
            } catch (const RangeError&) {
            } catch (const DomainError&) {
            }
        }
        if (!done) throw RangeError("compete: could not draw an annulus union of the requested volume");

        done = false;
        for (int attempt = 0; attempt < kAttempts && !done; ++attempt) {
            std::vector<CapSample> s(knots(rng));
            for (auto& x : s) x.tau = radius(rng);
            if (unit(rng) < 0.5) s.front().tau = 0.0;
            std::vector<double> alpha(s.size());
            for (double& x : alpha) x = kPi * unit(rng);
            std::sort(s.begin(), s.end(), [](const CapSample& p, const CapSample& q) { return p.tau < q.tau; });
            std::sort(alpha.begin(), alpha.end(), std::greater<>());
            for (std::size_t i = 0; i < s.size(); ++i) s[i].alpha = alpha[i];
            try {
                out.emplace_back(match_volume(disc, CapSymmetricProfile(s), v));
                done = true;
            } catch (const RangeError&) {
            } catch (const DomainError&) {
            }
        }
        if (!done) throw RangeError("compete: could not draw a cap profile of the requested volume");
    }
    return out;
}

CompeteResult run_compete(const WeightedDisc& disc, double v, int trials, int max_annuli,
                          std::uint64_t seed, double tol) {
    std::vector<Competitor> comps;
    comps.emplace_back(AnnulusUnion({disc.ball_radius_for_volume(v), 0.0}));
    auto rnd = random_competitors(disc, v, trials, max_annuli, seed);
    comps.insert(comps.end(), std::make_move_iterator(rnd.begin()), std::make_move_iterator(rnd.end()));
    CompeteResult out;
    out.volume = v;
    out.profile = disc.profile_I(v);
    out.report = verify_ball_minimality(disc, v, comps, tol);
    out.report.checks.front().name = "control-ball/" + describe(comps.front());
    out.control_slack = out.report.checks.front().slack;
    return out;
}

}  // namespace hyperiso
