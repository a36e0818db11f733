// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace emax {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::PassHeuristic: return "pass-heuristic";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "fail";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "pass") return Verdict::Pass;
    if (s == "pass-heuristic") return Verdict::PassHeuristic;
    if (s == "fail") return Verdict::Fail;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

bool CheckReport::any(Verdict v) const {
    return std::any_of(verdicts.begin(), verdicts.end(),
                       [v](const auto& kv) { return kv.second == v; });
}

Verdict CheckReport::overall() const {
    if (any(Verdict::Fail)) return Verdict::Fail;
    if (any(Verdict::Inconclusive)) return Verdict::Inconclusive;
    if (any(Verdict::PassHeuristic)) return Verdict::PassHeuristic;
    return Verdict::Pass;
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j;
    j["verdicts"] = nlohmann::json::object();
    for (const auto& [cond, v] : verdicts)
        j["verdicts"][cond] = to_string(v);
    j["witnesses"] = nlohmann::json::array();
    for (const Witness& w : witnesses) {
        j["witnesses"].push_back({{"condition", w.condition},
                                  {"s", w.s},
                                  {"k", w.k},
                                  {"value", w.value},
                                  {"note", w.note}});
    }
    j["diagnostics"] = diagnostics;
    j["truncation"] = {{"requested", truncation.requested},
                       {"used", truncation.used},
                       {"mode", truncation.mode}};
    return j;
}

CheckReport CheckReport::from_json(const nlohmann::json& j) {
    CheckReport r;
    for (const auto& [cond, v] : j.at("verdicts").items())
        r.verdicts[cond] = verdict_from_string(v.get<std::string>());
    for (const auto& w : j.at("witnesses")) {
        r.witnesses.push_back({w.at("condition").get<std::string>(), w.at("s").get<int>(),
                               w.at("k").get<int>(), w.at("value").get<double>(),
                               w.at("note").get<std::string>()});
    }
    r.diagnostics = j.at("diagnostics");
    r.truncation.requested = j.at("truncation").at("requested").get<int>();
    r.truncation.used = j.at("truncation").at("used").get<int>();
    r.truncation.mode = j.at("truncation").at("mode").get<std::string>();
    return r;
}

void absorb_report(CheckReport& into, const CheckReport& from, const std::string& prefix) {
    const std::string sep = prefix.empty() ? "" : prefix + "-";
    for (const auto& [cond, v] : from.verdicts)
        into.verdicts[sep + cond] = v;
    for (Witness w : from.witnesses) {
        w.condition = sep + w.condition;
        into.witnesses.push_back(std::move(w));
    }
    for (const auto& [key, value] : from.diagnostics.items())
        into.diagnostics[sep + key] = value;
    if (into.truncation.requested == 0) {
        into.truncation = from.truncation;
    } else if (from.truncation.requested != 0) {
        into.truncation.used = std::min(into.truncation.used, from.truncation.used);
        into.truncation.requested = std::max(into.truncation.requested, from.truncation.requested);
    }
}

int exit_code(const CheckReport& r) {
    switch (r.overall()) {
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
    default: return 0;
    }
}

} // namespace emax
