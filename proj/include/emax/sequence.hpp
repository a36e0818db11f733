// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "emax/arith.hpp"

#include <json.hpp>

#include <vector>

namespace emax {

enum class ArithmeticMode { Float, Exact, Extended };

std::string to_string(ArithmeticMode mode);

// Finite prefix (mu_1, ..., mu_K) of a real sequence, indexed from 1.
// Exact mode carries rationals and Extended mode 70-digit floats; every
// mode also keeps a double view for reporting and trend heuristics.
class Sequence {
public:
    Sequence() = default;

    static Sequence from_doubles(std::vector<double> values);
    static Sequence from_rationals(std::vector<Rational> values);
    static Sequence from_bigfloats(std::vector<BigFloat> values);

    int size() const { return static_cast<int>(values_.size()); }
    ArithmeticMode mode() const { return mode_; }

    double at(int k) const;
    const Rational& exact_at(int k) const;
    const BigFloat& big_at(int k) const;

    Sequence head(int K) const;
    Sequence scaled(const Rational& factor) const;

    bool operator==(const Sequence& other) const;

    nlohmann::json to_json() const;

    // Accepts {"values": [...]} optionally carrying "exact": true with
    // "rationals": [["num","den"], ...] and/or "decimals": ["...", ...].
    // The requested mode must be satisfiable from the fields present;
    // Extended falls back to widening doubles when no decimals are given.
    static Sequence from_json(const nlohmann::json& j, ArithmeticMode requested);

    // Mode inferred from the payload: exact when declared, float otherwise.
    static Sequence from_json(const nlohmann::json& j);

private:
    void check_index(int k) const;

    ArithmeticMode mode_ = ArithmeticMode::Float;
    std::vector<double> values_;
    std::vector<Rational> exact_;
    std::vector<BigFloat> big_;
};

} // namespace emax
