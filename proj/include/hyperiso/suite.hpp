#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperiso/density.hpp"
#include "hyperiso/profile.hpp"
#include "hyperiso/report.hpp"

namespace hyperiso {

enum class Suite { all, hh, ode, mu, profile };

Suite parse_suite(const std::string& name);

struct SuiteOptions {
    // Levels per distribution-function comparison.
    int levels = 25;
    // Random descending tuples for the alternating-sum property.
    int tuples = 200;
    std::uint64_t seed = 1;
};

// {0.1 i < 0.1 j < 0.95}
std::vector<std::pair<double, double>> default_interval_lattice();

VerificationReport run_interval_checks(const std::shared_ptr<const WeightedDisc>& disc, double a,
                                       double b, Suite suite, const SuiteOptions& opt = {});
VerificationReport run_profile_checks(const WeightedDisc& disc, const SuiteOptions& opt = {});

// Runs the suite on one interval, or on the default lattice when none is given.
VerificationReport run_verify(const DensitySpec& spec, Suite suite,
                              std::optional<std::pair<double, double>> interval,
                              const SuiteOptions& opt = {});

struct CompeteResult {
    double volume = 0.0;
    double profile = 0.0;
    double control_slack = 0.0;
    VerificationReport report;  // control row first
};

// Seeded random annulus unions and cap profiles (one of each per trial),
// rescaled to weighted volume v, compared with the centred ball.
std::vector<Competitor> random_competitors(const WeightedDisc& disc, double v, int trials,
                                           int max_annuli, std::uint64_t seed);
CompeteResult run_compete(const WeightedDisc& disc, double v, int trials, int max_annuli,
                          std::uint64_t seed, double tol = 1e-8);

}  // namespace hyperiso
