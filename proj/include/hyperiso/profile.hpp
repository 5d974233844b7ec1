#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperiso/density.hpp"
#include "hyperiso/report.hpp"

namespace hyperiso {

// Largest ball radius for which profiles are computed; the volume density
// blows up like (1-t)^-2 at the rim.
inline constexpr double kRadiusCap = 0.999;

/// Finite union of disjoint centred annuli A((r[1], r[0])) u A((r[3], r[2])) u ...
/// given by strictly decreasing radii in [0, 1). A trailing 0 makes the
/// innermost piece a centred ball.
class AnnulusUnion {
public:
    explicit AnnulusUnion(std::vector<double> radii);
    const std::vector<double>& radii() const { return radii_; }
    AnnulusUnion with_outer_radius(double r) const;

private:
    std::vector<double> radii_;
};

struct CapSample {
    double tau;
    double alpha;
};

/// Cap-symmetric set: at radius tau the section is the arc of half-angle
/// alpha(tau) centred on the positive x-axis. alpha is piecewise linear
/// between samples and zero outside [first tau, last tau]. Two samples may
/// share a radius to encode a jump of alpha there.
class CapSymmetricProfile {
public:
    explicit CapSymmetricProfile(std::vector<CapSample> samples);
    const std::vector<CapSample>& samples() const { return samples_; }
    CapSymmetricProfile radially_scaled(double factor) const;
    double outer_radius() const { return samples_.back().tau; }

    static CapSymmetricProfile from_annuli(const AnnulusUnion& annuli);

private:
    std::vector<CapSample> samples_;
};

using Competitor = std::variant<AnnulusUnion, CapSymmetricProfile>;

/// Weighted volume and perimeter on the disc for a radial density.
///
/// Volume weight f = zeta^2 psi and perimeter weight g = zeta psi. In polar
/// form a centred circle of radius t has weighted length 2 pi g(t) with
/// g(t) = t zeta psi (little_g) and the weighted area of a centred ball is
/// 2 pi F(t) with F the primitive of little_f = t zeta^2 psi. F is tabulated
/// on construction so that evaluations only integrate one short panel.
class WeightedDisc {
public:
    explicit WeightedDisc(DensitySpec spec, double radius_cap = kRadiusCap);

    const DensitySpec& density() const { return spec_; }
    double radius_cap() const { return cap_; }

    double little_f(double t) const;
    double little_g(double t) const;

    // Derivative of little_g: (1/t + rho_tilde) little_g, finite at t = 0.
    double little_g_prime(double t, Side side = Side::plus) const;

    // Integral of little_f over [a, b].
    double f_integral(double a, double b) const;

    double volume_F(double t) const;
    double F_inverse(double s) const;
    double max_scaled_volume() const { return table_F_.back(); }

    double J(double s) const;
    double profile_I(double v) const;
    double ball_radius_for_volume(double v) const;

    double annuli_volume(const AnnulusUnion& set) const;
    double annuli_perimeter(const AnnulusUnion& set) const;
    double cap_volume(const CapSymmetricProfile& set) const;
    double cap_perimeter(const CapSymmetricProfile& set) const;

    double volume(const Competitor& c) const;
    double perimeter(const Competitor& c) const;

    struct Thresholds {
        double R;
        double v0;  // +inf when lambda vanishes identically
    };
    Thresholds uniqueness_thresholds() const;

private:
    DensitySpec spec_;
    double cap_;
    std::vector<double> table_t_;
    std::vector<double> table_F_;
};

// Free-function forms used by the CLI and tests.
double little_f(const DensitySpec& spec, double t);
double little_g(const DensitySpec& spec, double t);

// Rescales the outermost radius so that the union has weighted volume v.
// Throws RangeError when no admissible outer radius exists.
AnnulusUnion match_volume(const WeightedDisc& disc, const AnnulusUnion& set, double v,
                          double tol = 1e-10);
// Radial dilation of the profile to weighted volume v.
CapSymmetricProfile match_volume(const WeightedDisc& disc, const CapSymmetricProfile& set,
                                 double v, double tol = 1e-10);

std::string describe(const Competitor& c);

/// Compares each competitor against the centred ball of weighted volume v.
/// Throws VolumeMismatch if a competitor's volume is off by more than
/// volume_tol * (1 + v).
VerificationReport verify_ball_minimality(const WeightedDisc& disc, double v,
                                          const std::vector<Competitor>& competitors,
                                          double tol = 1e-8, double volume_tol = 1e-8);

}  // namespace hyperiso
