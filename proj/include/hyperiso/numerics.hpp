#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace hyperiso::numerics {

inline constexpr double kQuadratureTol = 1e-10;
inline constexpr double kRootTol = 1e-12;
inline constexpr std::size_t kSubdivisionBudget = std::size_t{1} << 16;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

enum class SingularityLocation { none, left, right, both };
enum class SingularityKind { none, inverse_sqrt, density_blowup };

// Describes an integrable endpoint singularity. inverse_sqrt endpoints are
// handled by the substitution x = endpoint +- s^2; density_blowup only
// asserts that the interval stays clear of the radius 1.
struct SingularityHint {
    SingularityLocation location = SingularityLocation::none;
    SingularityKind kind = SingularityKind::none;

    static SingularityHint none() { return {}; }
    static SingularityHint inverse_sqrt(SingularityLocation where) {
        return {where, SingularityKind::inverse_sqrt};
    }
    static SingularityHint density_blowup() {
        return {SingularityLocation::right, SingularityKind::density_blowup};
    }
};

using RealFn = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) quadrature of fn over [a, b].
// tol is absolute, with a floor at roundoff level relative to the result.
// Throws NonConvergence when the subdivision budget is exhausted.
QuadratureResult integrate(const RealFn& fn, double a, double b,
                           SingularityHint hint = SingularityHint::none(),
                           double tol = kQuadratureTol);

// Same as integrate(), with the interval pre-split at the given interior
// breakpoints (kinks of the integrand). The hint applies to the outer ends.
QuadratureResult integrate_piecewise(const RealFn& fn, double a, double b,
                                     std::span<const double> breakpoints,
                                     SingularityHint hint = SingularityHint::none(),
                                     double tol = kQuadratureTol);

// Finds x in [lo, hi] with |fn(x) - target| <= tol for monotone fn, using
// Illinois-style false position safeguarded by bisection. If the bracket
// collapses to adjacent doubles first, the closer end is returned.
// Throws BracketError when target is not between fn(lo) and fn(hi).
double solve_monotone(const RealFn& fn, double target, double lo, double hi,
                      double tol = kRootTol);

}  // namespace hyperiso::numerics
