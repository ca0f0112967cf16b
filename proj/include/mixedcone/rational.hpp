#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "mixedcone/errors.hpp"

namespace mixedcone {

using Int = boost::multiprecision::cpp_int;
// Expression templates are disabled so Rat behaves as a plain value type in
// generic code shared with Eps.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline int sgn(const Rat& q) { return q.sign(); }
inline int sgn(const Int& z) { return z.sign(); }

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }
inline Int int_abs(const Int& z) { return z < 0 ? Int(-z) : z; }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Serialization: "p/q", or just "p" when q == 1.
inline std::string rat_str(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline Rat parse_rat(const std::string& s) {
    auto bad = [&] { fail("ParseError", "bad rational literal '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) bad();
        return Rat(n, d);
    } catch (const std::exception&) {
        bad();
    }
    return Rat(); // unreachable
}

} // namespace mixedcone
