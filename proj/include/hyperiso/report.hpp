#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hyperiso {

enum class Verdict { pass, fail, report_only, hypothesis_violated };

std::string to_string(Verdict v);

// One named inequality lhs <= rhs (or lhs >= rhs); slack is oriented so that
// a satisfied inequality has slack >= 0.
struct Check {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::pass;
    // Set when the check also classifies equality (|slack| <= 10 tol).
    std::optional<bool> equality;
};

enum class Relation { less_equal, greater_equal };

// Builds a check with verdict pass iff slack >= -tolerance.
Check make_check(std::string name, double lhs, double rhs, Relation rel, double tolerance);
Check report_only(std::string name, double lhs, double rhs, Relation rel, double tolerance);
Check hypothesis_violated(std::string name, const std::string& why);

struct VerificationReport {
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    void merge(const VerificationReport& other);
    bool passed() const;
    std::size_t count(Verdict v) const;
    double min_slack() const;

    // {"checks": [{"name", "lhs", "rhs", "slack", "tolerance", "verdict"[, "equality"]}]}
    std::string to_json(int indent = 2) const;
};

}  // namespace hyperiso
