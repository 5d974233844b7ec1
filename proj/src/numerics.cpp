#include "hyperiso/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "hyperiso/errors.hpp"

namespace hyperiso::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point abscissae/weights; the Gauss 7-point rule uses the odd
// indices (xgk[1], xgk[3], xgk[5]) and the centre.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

double checked(const RealFn& fn, double x) {
    const double y = fn(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand is not finite at x = " << x;
        throw NonConvergence(os.str());
    }
    return y;
}

// One Gauss-Kronrod panel with the QUADPACK error heuristic.
Segment gk15(const RealFn& fn, double a, double b, std::size_t& evals) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(fn, centre);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        f1[j] = checked(fn, centre - dx);
        f2[j] = checked(fn, centre + dx);
        resk += wgk[j] * (f1[j] + f2[j]);
        resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * (f1[j] + f2[j]);
    }
    evals += 15;
    const double mean = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double h = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= h;
    resabs *= h;
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    return {a, b, resk * half, err};
}

QuadratureResult adaptive(const RealFn& fn, double a, double b, double tol) {
    QuadratureResult out;
    if (a == b) return out;
    std::priority_queue<Segment> heap;
    Segment first = gk15(fn, a, b, out.evaluations);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    std::size_t intervals = 1;
    // Segments too narrow to split keep their error but leave the heap.
    double frozen_value = 0.0;
    double frozen_err = 0.0;

    while (!heap.empty()) {
        // The per-panel error floor is 50 eps |panel|, so the relative floor
        // here must sit above it or positive integrands never terminate.
        const double target = std::max(tol, 200.0 * kEps * std::abs(total));
        if (total_err <= target) break;
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b)) ||
            std::abs(worst.b - worst.a) < 8.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b)) ||
            std::abs(worst.b - worst.a) < kEps * std::abs(b - a)) {
            frozen_value += worst.value;
            frozen_err += worst.error;
            continue;
        }
        if (++intervals > kSubdivisionBudget) {
            std::ostringstream os;
            os << "quadrature did not reach tolerance " << tol << " on [" << a << ", " << b
               << "] within " << kSubdivisionBudget << " subintervals (error estimate "
               << total_err << ")";
            throw NonConvergence(os.str());
        }
        Segment left = gk15(fn, worst.a, mid, out.evaluations);
        Segment right = gk15(fn, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to drop the drift accumulated by the running updates.
    double value = frozen_value;
    double err = frozen_err;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error_estimate = err;
    return out;
}

QuadratureResult integrate_with_substitution(const RealFn& fn, double a, double b,
                                             SingularityLocation where, double tol) {
    switch (where) {
        case SingularityLocation::left: {
            // Evaluate at the rounded abscissa and use its exact offset, so
            // that rounding of a + s^2 does not show up as integrand noise.
            auto g = [&](double s) {
                double x = a + s * s;
                if (!(x > a)) x = std::nextafter(a, b);
                return 2.0 * std::sqrt(x - a) * fn(x);
            };
            return adaptive(g, 0.0, std::sqrt(b - a), tol);
        }
        case SingularityLocation::right: {
            auto g = [&](double s) {
                double x = b - s * s;
                if (!(x < b)) x = std::nextafter(b, a);
                return 2.0 * std::sqrt(b - x) * fn(x);
            };
            return adaptive(g, 0.0, std::sqrt(b - a), tol);
        }
        case SingularityLocation::both: {
            const double mid = 0.5 * (a + b);
            auto l = integrate_with_substitution(fn, a, mid, SingularityLocation::left, 0.5 * tol);
            auto r = integrate_with_substitution(fn, mid, b, SingularityLocation::right, 0.5 * tol);
            return {l.value + r.value, l.error_estimate + r.error_estimate,
                    l.evaluations + r.evaluations};
        }
        case SingularityLocation::none:
            break;
    }
    return adaptive(fn, a, b, tol);
}

}  // namespace

QuadratureResult integrate(const RealFn& fn, double a, double b, SingularityHint hint,
                           double tol) {
    if (!(a < b)) {
        std::ostringstream os;
        os << "integrate: need a < b, got [" << a << ", " << b << "]";
        throw DomainError(os.str());
    }
    if (!(tol > 0.0)) throw DomainError("integrate: tolerance must be positive");
    if (hint.kind == SingularityKind::density_blowup && !(b < 1.0)) {
        throw DomainError("integrate: density blows up at 1; upper limit must stay below 1");
    }
    if (hint.kind == SingularityKind::inverse_sqrt) {
        return integrate_with_substitution(fn, a, b, hint.location, tol);
    }
    return adaptive(fn, a, b, tol);
}

QuadratureResult integrate_piecewise(const RealFn& fn, double a, double b,
                                     std::span<const double> breakpoints, SingularityHint hint,
                                     double tol) {
    // Breakpoints hugging an end would leave a sliver piece that inherits the
    // endpoint singularity without the hint.
    const double margin = 1e-9 * (b - a);
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > cuts.back() + margin && x < b - margin) cuts.push_back(x);
    }
    cuts.push_back(b);
    if (cuts.size() == 2) return integrate(fn, a, b, hint, tol);

    const bool sing_left = hint.kind == SingularityKind::inverse_sqrt &&
                           (hint.location == SingularityLocation::left ||
                            hint.location == SingularityLocation::both);
    const bool sing_right = hint.kind == SingularityKind::inverse_sqrt &&
                            (hint.location == SingularityLocation::right ||
                             hint.location == SingularityLocation::both);
    const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
    QuadratureResult out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        SingularityHint h = SingularityHint::none();
        if (i == 0 && sing_left) h = SingularityHint::inverse_sqrt(SingularityLocation::left);
        if (i + 1 == cuts.size() - 1 && sing_right) h = SingularityHint::inverse_sqrt(SingularityLocation::right);
        if (hint.kind == SingularityKind::density_blowup) h = hint;
        const auto r = integrate(fn, cuts[i], cuts[i + 1], h, piece_tol);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
    }
    return out;
}

double solve_monotone(const RealFn& fn, double target, double lo, double hi, double tol) {
    if (!(lo <= hi)) throw DomainError("solve_monotone: need lo <= hi");
    double flo = fn(lo) - target;
    double fhi = fn(hi) - target;
    if (std::abs(flo) <= tol) return lo;
    if (std::abs(fhi) <= tol) return hi;
    if (!(flo * fhi < 0.0)) {
        std::ostringstream os;
        os << "solve_monotone: target " << target << " not straddled by fn(" << lo
           << ") = " << flo + target << " and fn(" << hi << ") = " << fhi + target;
        throw BracketError(os.str());
    }

    int side = 0;  // which end was retained on the last step (Illinois)
    for (int iter = 0; iter < 400; ++iter) {
        double x = (lo * fhi - hi * flo) / (fhi - flo);
        // fall back to bisection every few steps and whenever the secant
        // lands outside the open bracket
        if (!(x > lo && x < hi) || iter % 4 == 3) x = 0.5 * (lo + hi);
        if (!(x > lo && x < hi)) break;
        const double fx = fn(x) - target;
        if (std::abs(fx) <= tol) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
    }
    // The bracket is exhausted; evaluate the ends afresh (Illinois scaling
    // may have altered the stored values).
    const double elo = std::abs(fn(lo) - target);
    const double ehi = std::abs(fn(hi) - target);
    return elo <= ehi ? lo : hi;
}

}  // namespace hyperiso::numerics
