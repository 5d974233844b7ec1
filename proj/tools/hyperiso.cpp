// hyperiso: profile tables, verification suites, ODE dumps and competitor
// searches for radial log-convex densities on the Poincare disc.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperiso/comparison.hpp"
#include "hyperiso/curvature_ode.hpp"
#include "hyperiso/density.hpp"
#include "hyperiso/errors.hpp"
#include "hyperiso/profile.hpp"
#include "hyperiso/suite.hpp"

namespace {

using namespace hyperiso;

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    out << text;
}

Signature parse_eta(const std::string& s) {
    std::istringstream in(s);
    int e1 = 0;
    int e2 = 0;
    char comma = 0;
    if (!(in >> e1 >> comma >> e2) || comma != ',' || std::abs(e1) != 1 || std::abs(e2) != 1) {
        throw InputError("--eta must be of the form +-1,+-1");
    }
    in >> std::ws;
    if (!in.eof()) throw InputError("--eta must be of the form +-1,+-1");
    return {e1, e2};
}

int cmd_profile(const DensitySpec& spec, double vmin, double vmax, int steps, const std::string& out) {
    if (!(vmin < vmax) || steps < 2 || vmin < 0.0) {
        throw InputError("profile: need 0 <= vmin < vmax and steps >= 2");
    }
    const WeightedDisc disc(spec);
    std::ostringstream os;
    os << "v,r,I_v\n";
    for (int i = 0; i < steps; ++i) {
        const double v = i + 1 == steps ? vmax : vmin + (vmax - vmin) * i / (steps - 1);
        os << fmt12(v) << "," << fmt12(disc.ball_radius_for_volume(v)) << "," << fmt12(disc.profile_I(v))
           << "\n";
    }
    emit(os.str(), out);
    return 0;
}

int cmd_verify(const DensitySpec& spec, std::optional<double> a, std::optional<double> b,
               const std::string& suite_name, const SuiteOptions& opt, const std::string& out) {
    if (a.has_value() != b.has_value()) throw InputError("verify: give both --a and --b or neither");
    Suite suite;
    try {
        suite = parse_suite(suite_name);
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    std::optional<std::pair<double, double>> interval;
    if (a) {
        if (!(*a >= 0.0 && *a < *b && *b < 1.0)) throw InputError("verify: need 0 <= a < b < 1");
        interval = std::make_pair(*a, *b);
    }
    const auto report = run_verify(spec, suite, interval, opt);
    emit(report.to_json(2) + "\n", out);
    std::cerr << report.checks.size() << " checks: " << report.count(Verdict::pass) << " pass, "
              << report.count(Verdict::fail) << " fail, " << report.count(Verdict::report_only)
              << " report-only, " << report.count(Verdict::hypothesis_violated)
              << " hypothesis-violated\n";
    return report.passed() ? 0 : kExitFail;
}

int cmd_ode(const DensitySpec& spec, std::optional<double> a, double b, const std::string& eta_text,
            bool riccati, bool from_zero, int samples, bool winding, const std::string& out) {
    const int modes = (!eta_text.empty()) + riccati + from_zero;
    if (modes != 1) throw InputError("ode: choose exactly one of --eta, --riccati, --from-zero");
    if (from_zero && a && *a != 0.0) throw InputError("ode: --from-zero poses the problem on [0, b]");
    if (!from_zero && !a) throw InputError("ode: --a is required");
    if (!from_zero && *a == 0.0) {
        throw InputError("ode: with a = 0 only the boundary data u(0) = 0, u(b) = 1 (--from-zero) is defined");
    }
    const double lo = from_zero ? 0.0 : *a;
    if (!(lo >= 0.0 && lo < b && b < 1.0)) throw InputError("ode: need 0 <= a < b < 1");
    if (samples == 1 || samples < 0) throw InputError("ode: --samples must be at least 2");

    const auto disc = std::make_shared<const WeightedDisc>(spec);
    std::optional<BvpSolution> lin;
    std::optional<RiccatiSolution> ric;
    if (riccati) {
        ric.emplace(solve_riccati(disc, lo, b));
    } else if (from_zero) {
        lin.emplace(solve_bvp_a_zero(disc, b));
    } else {
        lin.emplace(solve_linear_bvp(disc, lo, b, parse_eta(eta_text)));
    }
    const BvpSolution& base = ric ? ric->linear() : *lin;
    std::vector<double> xs;
    if (samples >= 2) {
        for (int i = 0; i < samples; ++i) xs.push_back(i + 1 == samples ? b : lo + (b - lo) * i / (samples - 1));
    } else {
        xs = base.grid();
    }

    std::ostringstream os;
    const Signature eta = base.eta();
    os << "# a=" << fmt12(lo) << " b=" << fmt12(b) << " eta=(" << eta[0] << "," << eta[1]
       << ") lambda=" << fmt12(ric ? ric->lambda() : base.lambda()) << "\n";
    os << "tau," << (ric ? "w" : "u") << "\n";
    for (double x : xs) os << fmt17(x) << "," << fmt17(ric ? ric->w(x) : base.u(x)) << "\n";
    if (winding) os << "# winding=" << fmt12(reconstruct_curve(base).winding) << "\n";
    emit(os.str(), out);
    return 0;
}

int cmd_compete(const DensitySpec& spec, double v, int trials, int max_annuli, std::uint64_t seed,
                double tol, const std::string& out) {
    if (trials <= 0) throw InputError("compete: --trials must be positive");
    if (max_annuli <= 0) throw InputError("compete: --max-annuli must be positive");
    if (!(v > 0.0)) throw InputError("compete: --volume must be positive");
    const WeightedDisc disc(spec);
    const auto res = run_compete(disc, v, trials, max_annuli, seed, tol);
    nlohmann::ordered_json doc;
    doc["seed"] = seed;
    doc["volume"] = v;
    doc["trials"] = trials;
    doc["max_annuli"] = max_annuli;
    doc["profile"] = res.profile;
    // The control row is reported on its own; min_slack covers the random draws.
    double min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < res.report.checks.size(); ++i) {
        min_slack = std::min(min_slack, res.report.checks[i].slack);
    }
    doc["min_slack"] = min_slack;
    doc["control_slack"] = res.control_slack;
    doc["checks"] = nlohmann::ordered_json::parse(res.report.to_json())["checks"];
    emit(doc.dump(2) + "\n", out);
    return res.report.passed() && min_slack >= -tol && std::abs(res.control_slack) <= tol ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted isoperimetric profiles on the hyperbolic disc"};
    app.require_subcommand(1);

    std::string density_path;
    std::string out;

    auto* profile = app.add_subcommand("profile", "CSV table v,r,I_v of the centred-ball profile");
    double vmin = 0.0;
    double vmax = 0.0;
    int steps = 0;
    profile->add_option("--density", density_path, "density JSON")->required();
    profile->add_option("--vmin", vmin)->required();
    profile->add_option("--vmax", vmax)->required();
    profile->add_option("--steps", steps)->required();
    profile->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "run the inequality suites and print a JSON report");
    std::optional<double> va;
    std::optional<double> vb;
    std::string suite = "all";
    SuiteOptions opt;
    verify->add_option("--density", density_path, "density JSON")->required();
    verify->add_option("--a", va);
    verify->add_option("--b", vb);
    verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "hh", "ode", "mu", "profile"}));
    verify->add_option("--levels", opt.levels, "levels per distribution-function comparison")
        ->check(CLI::Range(2, 10000));
    verify->add_option("--seed", opt.seed);
    verify->add_option("--out", out);

    auto* ode = app.add_subcommand("ode", "dump a closed-form ODE solution as CSV");
    std::optional<double> oa;
    double ob = 0.0;
    std::string eta;
    bool riccati = false;
    bool from_zero = false;
    int samples = 0;
    bool winding = false;
    ode->add_option("--density", density_path, "density JSON")->required();
    ode->add_option("--a", oa);
    ode->add_option("--b", ob)->required();
    ode->add_option("--eta", eta, "boundary values u(a),u(b), e.g. 1,-1");
    ode->add_flag("--riccati", riccati, "w = 1/u for eta = (1,1)");
    ode->add_flag("--from-zero", from_zero, "u(0) = 0, u(b) = 1");
    ode->add_option("--samples", samples, "uniform samples (default: the solution grid)");
    ode->add_flag("--winding", winding, "append the winding of theta_2");
    ode->add_option("--out", out);

    auto* compete = app.add_subcommand("compete", "random competitors against the centred ball");
    double volume = 0.0;
    int trials = 0;
    int max_annuli = 0;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    compete->add_option("--density", density_path, "density JSON")->required();
    compete->add_option("--volume", volume)->required();
    compete->add_option("--trials", trials)->required();
    compete->add_option("--max-annuli", max_annuli)->required();
    compete->add_option("--seed", seed)->required();
    compete->add_option("--tol", tol);
    compete->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        const DensitySpec spec = load_density_file(density_path);
        if (*profile) return cmd_profile(spec, vmin, vmax, steps, out);
        if (*verify) return cmd_verify(spec, va, vb, suite, opt, out);
        if (*ode) return cmd_ode(spec, oa, ob, eta, riccati, from_zero, samples, winding, out);
        if (*compete) return cmd_compete(spec, volume, trials, max_annuli, seed, tol, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
