#pragma once

// Reference formulas written out independently of the library.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hyperiso/density.hpp"

namespace ref {

inline constexpr double pi = std::numbers::pi;

inline double zeta(double t) { return 2.0 / (1.0 - t * t); }
inline double rho_hat(double t) { return t * zeta(t); }

// Unweighted disc: F = zeta - 2, g = t zeta.
inline double F_flat(double t) { return zeta(t) - 2.0; }
inline double g_flat(double t) { return t * zeta(t); }
inline double J_flat(double s) { return std::sqrt(s * s + 2.0 * s); }
inline double I_flat(double v) { return std::sqrt(v * v + 4.0 * pi * v); }

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

inline hyperiso::DensitySpec flat() { return hyperiso::DensitySpec({{0.0, 0.0}}); }
inline hyperiso::DensitySpec constant(double c) { return hyperiso::DensitySpec({{0.0, c}}); }
inline hyperiso::DensitySpec ramp() { return hyperiso::DensitySpec({{0.0, 0.0}, {0.25, 0.0}, {0.6, 1.0}}); }
inline hyperiso::DensitySpec r03() { return hyperiso::DensitySpec({{0.0, 0.0}, {0.3, 0.0}, {0.9, 2.0}}); }

// psi for constant lambda = c: exp(c phi) = ((1 + t)/(1 - t))^c.
inline double psi_constant(double c, double t) { return std::pow((1.0 + t) / (1.0 - t), c); }

}  // namespace ref
