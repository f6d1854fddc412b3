#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mstup {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. All solver arithmetic runs on this type; weights,
/// budgets and curve breakpoints are never rounded to floating point.
using Rat = boost::rational<BigInt>;

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

inline BigInt floor_rat(const Rat& r) {
    BigInt q = r.numerator() / r.denominator();
    if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
    return q;
}

inline BigInt ceil_rat(const Rat& r) { return -floor_rat(-r); }

inline Rat frac_part(const Rat& r) { return r - Rat(floor_rat(r)); }

inline long long to_long(const BigInt& v) { return v.convert_to<long long>(); }

/// Narrows an integral rational to long long; throws if it is not integral.
inline long long rat_to_long(const Rat& r) {
    if (!is_integer(r)) throw std::invalid_argument("expected an integral value, got " + r.numerator().str() + "/" + r.denominator().str());
    return to_long(r.numerator());
}

/// Renders integers as plain decimals and proper rationals as "num/den".
inline std::string format_rat(const Rat& r) {
    if (is_integer(r)) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

/// Parses "p", "-p" or "p/q". Inverse of format_rat.
inline Rat parse_rat(const std::string& text) {
    auto bad = [&]() { return std::invalid_argument("malformed rational '" + text + "'"); };
    if (text.empty()) throw bad();
    std::string::size_type slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

}  // namespace mstup
