#include "hyperiso/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace hyperiso {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::report_only: return "report-only";
        case Verdict::hypothesis_violated: return "hypothesis-violated";
    }
    return "fail";
}

Check make_check(std::string name, double lhs, double rhs, Relation rel, double tolerance) {
    Check c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rel == Relation::less_equal ? rhs - lhs : lhs - rhs;
    c.tolerance = tolerance;
    c.verdict = c.slack >= -tolerance ? Verdict::pass : Verdict::fail;
    return c;
}

Check report_only(std::string name, double lhs, double rhs, Relation rel, double tolerance) {
    Check c = make_check(std::move(name), lhs, rhs, rel, tolerance);
    c.verdict = Verdict::report_only;
    return c;
}

Check hypothesis_violated(std::string name, const std::string& why) {
    Check c;
    c.name = std::move(name) + " [" + why + "]";
    c.verdict = Verdict::hypothesis_violated;
    return c;
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::passed() const { return count(Verdict::fail) == 0; }

std::size_t VerificationReport::count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [v](const Check& c) { return c.verdict == v; }));
}

double VerificationReport::min_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : checks) {
        if (c.verdict == Verdict::pass || c.verdict == Verdict::fail) m = std::min(m, c.slack);
    }
    return m;
}

std::string VerificationReport::to_json(int indent) const {
    nlohmann::ordered_json doc;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["lhs"] = c.lhs;
        j["rhs"] = c.rhs;
        j["slack"] = c.slack;
        j["tolerance"] = c.tolerance;
        j["verdict"] = to_string(c.verdict);
        if (c.equality) j["equality"] = *c.equality;
        doc["checks"].push_back(std::move(j));
    }
    return doc.dump(indent);
}

}  // namespace hyperiso
