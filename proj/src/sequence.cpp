// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace emax {

std::string to_string(ArithmeticMode mode) {
    switch (mode) {
    case ArithmeticMode::Float: return "float";
    case ArithmeticMode::Exact: return "exact";
    case ArithmeticMode::Extended: return "extended";
    }
    return "float";
}

Sequence Sequence::from_doubles(std::vector<double> values) {
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("sequence values must be finite");
    Sequence s;
    s.mode_ = ArithmeticMode::Float;
    s.values_ = std::move(values);
    return s;
}

Sequence Sequence::from_rationals(std::vector<Rational> values) {
    Sequence s;
    s.mode_ = ArithmeticMode::Exact;
    s.values_.reserve(values.size());
    for (Rational& q : values) {
        q.canonicalize();
        s.values_.push_back(to_double(q));
    }
    s.exact_ = std::move(values);
    return s;
}

Sequence Sequence::from_bigfloats(std::vector<BigFloat> values) {
    Sequence s;
    s.mode_ = ArithmeticMode::Extended;
    s.values_.reserve(values.size());
    for (const BigFloat& v : values)
        s.values_.push_back(static_cast<double>(v));
    s.big_ = std::move(values);
    return s;
}

void Sequence::check_index(int k) const {
    if (k < 1 || k > size())
        throw std::out_of_range("sequence index out of range");
}

double Sequence::at(int k) const {
    check_index(k);
    return values_[k - 1];
}

const Rational& Sequence::exact_at(int k) const {
    check_index(k);
    if (mode_ != ArithmeticMode::Exact)
        throw std::logic_error("exact_at on a non-exact sequence");
    return exact_[k - 1];
}

const BigFloat& Sequence::big_at(int k) const {
    check_index(k);
    if (mode_ != ArithmeticMode::Extended)
        throw std::logic_error("big_at on a non-extended sequence");
    return big_[k - 1];
}

Sequence Sequence::head(int K) const {
    if (K < 0 || K > size())
        throw std::out_of_range("head length out of range");
    Sequence s;
    s.mode_ = mode_;
    s.values_.assign(values_.begin(), values_.begin() + K);
    if (mode_ == ArithmeticMode::Exact)
        s.exact_.assign(exact_.begin(), exact_.begin() + K);
    if (mode_ == ArithmeticMode::Extended)
        s.big_.assign(big_.begin(), big_.begin() + K);
    return s;
}

Sequence Sequence::scaled(const Rational& factor) const {
    Sequence s;
    s.mode_ = mode_;
    switch (mode_) {
    case ArithmeticMode::Float: {
        const double f = to_double(factor);
        s.values_.reserve(values_.size());
        for (double v : values_)
            s.values_.push_back(f * v);
        break;
    }
    case ArithmeticMode::Exact: {
        s.exact_.reserve(exact_.size());
        s.values_.reserve(exact_.size());
        for (const Rational& q : exact_) {
            Rational r = q * factor;
            r.canonicalize();
            s.values_.push_back(to_double(r));
            s.exact_.push_back(std::move(r));
        }
        break;
    }
    case ArithmeticMode::Extended: {
        const BigFloat f = to_bigfloat(factor);
        s.big_.reserve(big_.size());
        s.values_.reserve(big_.size());
        for (const BigFloat& v : big_) {
            s.big_.push_back(v * f);
            s.values_.push_back(static_cast<double>(s.big_.back()));
        }
        break;
    }
    }
    return s;
}

bool Sequence::operator==(const Sequence& other) const {
    if (mode_ != other.mode_ || values_.size() != other.values_.size())
        return false;
    switch (mode_) {
    case ArithmeticMode::Float: return values_ == other.values_;
    case ArithmeticMode::Exact: {
        for (size_t i = 0; i < exact_.size(); ++i)
            if (exact_[i] != other.exact_[i])
                return false;
        return true;
    }
    case ArithmeticMode::Extended: return big_ == other.big_;
    }
    return false;
}

nlohmann::json Sequence::to_json() const {
    nlohmann::json j;
    j["values"] = values_;
    j["exact"] = (mode_ == ArithmeticMode::Exact);
    if (mode_ == ArithmeticMode::Exact) {
        nlohmann::json rats = nlohmann::json::array();
        for (const Rational& q : exact_)
            rats.push_back({q.get_num().get_str(), q.get_den().get_str()});
        j["rationals"] = rats;
    }
    if (mode_ == ArithmeticMode::Extended) {
        nlohmann::json decs = nlohmann::json::array();
        for (const BigFloat& v : big_)
            decs.push_back(v.str());
        j["decimals"] = decs;
    }
    return j;
}

namespace {

std::vector<double> read_values(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
        throw std::invalid_argument("sequence JSON must carry a \"values\" array");
    std::vector<double> values;
    for (const auto& v : j["values"]) {
        if (!v.is_number())
            throw std::invalid_argument("sequence values must be numbers");
        values.push_back(v.get<double>());
    }
    return values;
}

std::vector<Rational> read_rationals(const nlohmann::json& j, size_t expected) {
    if (!j.contains("rationals") || !j["rationals"].is_array())
        throw std::invalid_argument("exact sequence JSON must carry \"rationals\"");
    std::vector<Rational> rats;
    for (const auto& r : j["rationals"]) {
        if (!r.is_array() || r.size() != 2)
            throw std::invalid_argument("each rational must be a [num, den] pair");
        rats.push_back(rational_from_parts(r[0].get<std::string>(), r[1].get<std::string>()));
    }
    if (rats.size() != expected)
        throw std::invalid_argument("rationals and values lengths differ");
    return rats;
}

} // namespace

Sequence Sequence::from_json(const nlohmann::json& j, ArithmeticMode requested) {
    std::vector<double> values = read_values(j);

    switch (requested) {
    case ArithmeticMode::Float:
        return from_doubles(std::move(values));
    case ArithmeticMode::Exact: {
        std::vector<Rational> rats = read_rationals(j, values.size());
        for (size_t i = 0; i < rats.size(); ++i) {
            const double v = to_double(rats[i]);
            if (std::fabs(values[i] - v) > 1e-9 * std::max(1.0, std::fabs(v)))
                throw std::invalid_argument("values and rationals disagree");
        }
        return from_rationals(std::move(rats));
    }
    case ArithmeticMode::Extended: {
        std::vector<BigFloat> big;
        if (j.contains("decimals")) {
            for (const auto& d : j["decimals"])
                big.emplace_back(d.get<std::string>());
            if (big.size() != values.size())
                throw std::invalid_argument("decimals and values lengths differ");
        } else if (j.contains("rationals")) {
            for (const Rational& q : read_rationals(j, values.size()))
                big.push_back(to_bigfloat(q));
        } else {
            for (double v : values)
                big.emplace_back(v);
        }
        return from_bigfloats(std::move(big));
    }
    }
    throw std::logic_error("unreachable");
}

Sequence Sequence::from_json(const nlohmann::json& j) {
    const bool exact = j.is_object() && j.value("exact", false);
    return from_json(j, exact ? ArithmeticMode::Exact : ArithmeticMode::Float);
}

} // namespace emax
