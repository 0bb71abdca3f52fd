#pragma once

#include <boost/rational.hpp>
#include <numeric>
#include <string>

#include "ncser/field.hpp"

namespace ncser {

using Rat = boost::rational<long long>;

inline std::string rat_str(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s), 1);
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw SchemaError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw SchemaError("malformed rational: " + s);
    } catch (const std::out_of_range&) {
        throw SchemaError("rational out of range: " + s);
    }
}

inline long long lcm_denominator(std::initializer_list<Rat> values) {
    long long l = 1;
    for (const auto& v : values) l = std::lcm(l, v.denominator());
    return l;
}

}  // namespace ncser
