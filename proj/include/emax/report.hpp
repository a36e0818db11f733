// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace emax {

enum class Verdict { Pass, PassHeuristic, Fail, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

// Location and value of one condition violation. s is a difference order
// and k a sequence index; -1 marks a coordinate that does not apply.
struct Witness {
    std::string condition;
    int s = -1;
    int k = -1;
    double value = 0.0;
    std::string note;

    bool operator==(const Witness&) const = default;
};

// Result of a checking operation. verdicts is keyed by condition id,
// diagnostics is free-form JSON, and truncation records the scan depth
// actually reached against the one requested.
struct CheckReport {
    std::map<std::string, Verdict> verdicts;
    std::vector<Witness> witnesses;
    nlohmann::json diagnostics = nlohmann::json::object();

    struct Truncation {
        int requested = 0;
        int used = 0;
        std::string mode;

        bool operator==(const Truncation&) const = default;
    } truncation;

    bool any(Verdict v) const;

    // Worst verdict present: fail > inconclusive > pass-heuristic > pass.
    Verdict overall() const;

    nlohmann::json to_json() const;
    static CheckReport from_json(const nlohmann::json& j);

    bool operator==(const CheckReport&) const = default;
};

// Merges `from` into `into`, prefixing its condition ids when prefix is
// nonempty. Truncation keeps the smaller used depth.
void absorb_report(CheckReport& into, const CheckReport& from, const std::string& prefix = "");

// Shared exit-code convention: 0 all pass, 1 any fail, 2 inconclusive
// without a fail.
int exit_code(const CheckReport& r);

} // namespace emax
