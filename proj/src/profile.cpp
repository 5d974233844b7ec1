#include "hyperiso/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperiso/errors.hpp"
#include "hyperiso/numerics.hpp"

namespace hyperiso {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Positive integrands are integrated to roundoff; the quadrature floor
// (a small multiple of epsilon times the result) is what terminates.
constexpr double kTightTol = 1e-300;
constexpr int kTablePanels = 256;

}  // namespace

AnnulusUnion::AnnulusUnion(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty() || radii_.size() % 2 != 0) {
        throw DomainError("annulus union: need an even, non-zero number of radii");
    }
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] >= 0.0 && radii_[i] < 1.0)) {
            throw DomainError("annulus union: radius outside [0,1)");
        }
        if (i > 0 && !(radii_[i] < radii_[i - 1])) {
            throw DomainError("annulus union: radii must be strictly decreasing");
        }
    }
}

AnnulusUnion AnnulusUnion::with_outer_radius(double r) const {
    auto radii = radii_;
    radii.front() = r;
    return AnnulusUnion(std::move(radii));
}

CapSymmetricProfile::CapSymmetricProfile(std::vector<CapSample> samples)
    : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw DomainError("cap profile: need at least two samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!(s.tau >= 0.0 && s.tau < 1.0)) throw DomainError("cap profile: radius outside [0,1)");
        if (!(s.alpha >= 0.0 && s.alpha <= std::numbers::pi)) {
            throw DomainError("cap profile: half-angle outside [0, pi]");
        }
        if (i > 0 && samples_[i].tau < samples_[i - 1].tau) {
            throw DomainError("cap profile: radii must be non-decreasing");
        }
        if (i > 1 && samples_[i].tau == samples_[i - 2].tau) {
            throw DomainError("cap profile: at most two samples may share a radius");
        }
    }
    if (!(samples_.back().tau > samples_.front().tau)) {
        throw DomainError("cap profile: radii span an empty interval");
    }
}

CapSymmetricProfile CapSymmetricProfile::radially_scaled(double factor) const {
    auto s = samples_;
    for (auto& x : s) x.tau *= factor;
    return CapSymmetricProfile(std::move(s));
}

CapSymmetricProfile CapSymmetricProfile::from_annuli(const AnnulusUnion& annuli) {
    const auto& r = annuli.radii();
    std::vector<CapSample> s;
    for (std::size_t k = r.size(); k >= 2; k -= 2) {
        const double inner = r[k - 1];
        const double outer = r[k - 2];
        if (!s.empty()) s.push_back({inner, 0.0});
        s.push_back({inner, std::numbers::pi});
        s.push_back({outer, std::numbers::pi});
        if (k > 2) s.push_back({outer, 0.0});
    }
    return CapSymmetricProfile(std::move(s));
}

WeightedDisc::WeightedDisc(DensitySpec spec, double radius_cap)
    : spec_(std::move(spec)), cap_(radius_cap) {
    if (!(cap_ > 0.0 && cap_ < 1.0)) throw DomainError("radius cap must lie in (0,1)");
    table_t_.push_back(0.0);
    std::vector<double> cuts;
    for (int k = 1; k <= kTablePanels; ++k) cuts.push_back(cap_ * k / kTablePanels);
    for (const auto& n : spec_.nodes()) {
        if (n.t > 0.0 && n.t < cap_) cuts.push_back(n.t);
    }
    std::sort(cuts.begin(), cuts.end());
    for (double c : cuts) {
        if (c > table_t_.back()) table_t_.push_back(c);
    }
    table_F_.assign(table_t_.size(), 0.0);
    auto f = [this](double t) { return little_f(t); };
    for (std::size_t i = 1; i < table_t_.size(); ++i) {
        table_F_[i] = table_F_[i - 1] +
                      numerics::integrate(f, table_t_[i - 1], table_t_[i],
                                          numerics::SingularityHint::density_blowup(), kTightTol)
                          .value;
    }
}

double WeightedDisc::little_f(double t) const {
    const double z = zeta(t);
    return t * z * z * spec_.psi(t);
}

double WeightedDisc::little_g(double t) const { return t * zeta(t) * spec_.psi(t); }

double WeightedDisc::little_g_prime(double t, Side side) const {
    if (t == 0.0) side = Side::plus;
    return zeta(t) * spec_.psi(t) * (1.0 + t * spec_.rho_tilde(t, side));
}

double WeightedDisc::f_integral(double a, double b) const {
    if (a == b) return 0.0;
    if (!(a >= 0.0 && a < b && b < 1.0)) throw DomainError("f_integral: need 0 <= a < b < 1");
    const auto cuts = spec_.breakpoints(a, b);
    return numerics::integrate_piecewise([this](double t) { return little_f(t); }, a, b, cuts,
                                         numerics::SingularityHint::density_blowup(), kTightTol)
        .value;
}

double WeightedDisc::volume_F(double t) const {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("volume_F: radius outside [0,1)");
    const auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - table_t_.begin()) - 1;
    const double base = table_F_[i];
    if (t == table_t_[i]) return base;
    return base + f_integral(table_t_[i], t);
}

double WeightedDisc::F_inverse(double s) const {
    if (!(s >= 0.0)) throw DomainError("F_inverse: scaled volume must be non-negative");
    if (s == 0.0) return 0.0;
    if (s > table_F_.back()) {
        std::ostringstream os;
        os << "F_inverse: scaled volume " << s << " exceeds F(" << cap_ << ") = " << table_F_.back();
        throw RangeError(os.str());
    }
    const auto it = std::lower_bound(table_F_.begin(), table_F_.end(), s);
    const std::size_t hi = static_cast<std::size_t>(it - table_F_.begin());
    if (table_F_[hi] == s) return table_t_[hi];
    const std::size_t lo = hi - 1;
    const double t0 = table_t_[lo];
    const double base = table_F_[lo];
    auto fn = [&](double t) { return t == t0 ? base : base + f_integral(t0, t); };
    return numerics::solve_monotone(fn, s, t0, table_t_[hi], 4.0 * 2.2e-16 * s);
}

double WeightedDisc::J(double s) const { return little_g(F_inverse(s)); }

double WeightedDisc::ball_radius_for_volume(double v) const {
    if (!(v >= 0.0)) throw DomainError("ball radius: volume must be non-negative");
    return F_inverse(v / kTwoPi);
}

double WeightedDisc::profile_I(double v) const {
    if (!(v >= 0.0)) throw DomainError("profile_I: volume must be non-negative");
    return kTwoPi * J(v / kTwoPi);
}

double WeightedDisc::annuli_volume(const AnnulusUnion& set) const {
    const auto& r = set.radii();
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < r.size(); k += 2) sum += f_integral(r[k + 1], r[k]);
    return kTwoPi * sum;
}

double WeightedDisc::annuli_perimeter(const AnnulusUnion& set) const {
    double sum = 0.0;
    for (double r : set.radii()) sum += little_g(r);
    return kTwoPi * sum;
}

double WeightedDisc::cap_volume(const CapSymmetricProfile& set) const {
    const auto& s = set.samples();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double t0 = s[i].tau;
        const double t1 = s[i + 1].tau;
        if (t1 == t0 || (s[i].alpha == 0.0 && s[i + 1].alpha == 0.0)) continue;
        const double slope = (s[i + 1].alpha - s[i].alpha) / (t1 - t0);
        const double a0 = s[i].alpha;
        auto integrand = [&](double t) { return (a0 + slope * (t - t0)) * little_f(t); };
        const auto cuts = spec_.breakpoints(t0, t1);
        sum += numerics::integrate_piecewise(integrand, t0, t1, cuts,
                                             numerics::SingularityHint::density_blowup(), kTightTol)
                   .value;
    }
    return 2.0 * sum;
}

double WeightedDisc::cap_perimeter(const CapSymmetricProfile& set) const {
    constexpr double pi = std::numbers::pi;
    const auto& s = set.samples();
    double sum = 0.0;
    // Jumps of alpha: two arcs of angular width |delta alpha| on the circle.
    sum += 2.0 * s.front().alpha * little_g(s.front().tau);
    sum += 2.0 * s.back().alpha * little_g(s.back().tau);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double t0 = s[i].tau;
        const double t1 = s[i + 1].tau;
        if (t1 == t0) {
            sum += 2.0 * std::abs(s[i + 1].alpha - s[i].alpha) * little_g(t0);
            continue;
        }
        const bool empty = s[i].alpha == 0.0 && s[i + 1].alpha == 0.0;
        const bool full = s[i].alpha == pi && s[i + 1].alpha == pi;
        if (empty || full) continue;
        const double slope = (s[i + 1].alpha - s[i].alpha) / (t1 - t0);
        auto integrand = [&](double t) {
            const double ta = t * slope;
            return zeta(t) * spec_.psi(t) * std::sqrt(1.0 + ta * ta);
        };
        const auto cuts = spec_.breakpoints(t0, t1);
        // the two boundary arcs theta = +-alpha(tau)
        sum += 2.0 * numerics::integrate_piecewise(integrand, t0, t1, cuts,
                                                   numerics::SingularityHint::density_blowup(),
                                                   kTightTol)
                         .value;
    }
    return sum;
}

double WeightedDisc::volume(const Competitor& c) const {
    return std::visit(
        [this](const auto& x) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, AnnulusUnion>) {
                return annuli_volume(x);
            } else {
                return cap_volume(x);
            }
        },
        c);
}

double WeightedDisc::perimeter(const Competitor& c) const {
    return std::visit(
        [this](const auto& x) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, AnnulusUnion>) {
                return annuli_perimeter(x);
            } else {
                return cap_perimeter(x);
            }
        },
        c);
}

WeightedDisc::Thresholds WeightedDisc::uniqueness_thresholds() const {
    const double R = spec_.first_positive_radius();
    if (R >= 1.0) return {1.0, std::numeric_limits<double>::infinity()};
    return {R, kTwoPi * volume_F(R)};
}

double little_f(const DensitySpec& spec, double t) {
    const double z = zeta(t);
    return t * z * z * spec.psi(t);
}

double little_g(const DensitySpec& spec, double t) { return t * zeta(t) * spec.psi(t); }

AnnulusUnion match_volume(const WeightedDisc& disc, const AnnulusUnion& set, double v, double tol) {
    const auto& r = set.radii();
    double inner = 0.0;
    for (std::size_t k = 2; k + 1 < r.size(); k += 2) inner += disc.f_integral(r[k + 1], r[k]);
    const double need = v / kTwoPi - inner;
    const double floor = r[1];
    const double cap = disc.radius_cap();
    if (!(need > 0.0) || !(cap > floor) || disc.f_integral(floor, cap) < need) {
        throw RangeError("match_volume: no outer radius yields the requested volume");
    }
    auto fn = [&](double x) { return x == floor ? 0.0 : disc.f_integral(floor, x); };
    const double outer = numerics::solve_monotone(fn, need, floor, cap, tol * (1.0 + v) / kTwoPi);
    if (!(outer > floor)) throw RangeError("match_volume: degenerate outer annulus");
    return set.with_outer_radius(outer);
}

CapSymmetricProfile match_volume(const WeightedDisc& disc, const CapSymmetricProfile& set, double v,
                                 double tol) {
    const double smax = disc.radius_cap() / set.outer_radius();
    const double vmax = disc.cap_volume(set.radially_scaled(smax));
    if (!(v > 0.0) || v > vmax) {
        throw RangeError("match_volume: cap profile cannot be dilated to the requested volume");
    }
    auto fn = [&](double s) { return s == 0.0 ? 0.0 : disc.cap_volume(set.radially_scaled(s)); };
    const double s = numerics::solve_monotone(fn, v, 0.0, smax, tol * (1.0 + v));
    return set.radially_scaled(s);
}

std::string describe(const Competitor& c) {
    std::ostringstream os;
    os.precision(6);
    if (const auto* a = std::get_if<AnnulusUnion>(&c)) {
        os << "annuli(";
        for (std::size_t i = 0; i < a->radii().size(); ++i) os << (i ? "," : "") << a->radii()[i];
        os << ")";
    } else {
        const auto& p = std::get<CapSymmetricProfile>(c);
        os << "cap(";
        for (std::size_t i = 0; i < p.samples().size(); ++i) {
            os << (i ? ";" : "") << p.samples()[i].tau << ":" << p.samples()[i].alpha;
        }
        os << ")";
    }
    return os.str();
}

VerificationReport verify_ball_minimality(const WeightedDisc& disc, double v,
                                          const std::vector<Competitor>& competitors, double tol,
                                          double volume_tol) {
    VerificationReport report;
    const double I = disc.profile_I(v);
    for (std::size_t i = 0; i < competitors.size(); ++i) {
        const double vol = disc.volume(competitors[i]);
        if (std::abs(vol - v) > volume_tol * (1.0 + v)) {
            std::ostringstream os;
            os << "competitor " << i << " has volume " << vol << ", expected " << v;
            throw VolumeMismatch(os.str());
        }
        report.add(make_check("ball-minimality/" + std::to_string(i) + "/" + describe(competitors[i]),
                              disc.perimeter(competitors[i]), I, Relation::greater_equal, tol));
    }
    return report;
}

}  // namespace hyperiso
