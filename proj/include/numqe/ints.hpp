#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <stdexcept>
#include <string>

namespace numqe {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Raised when a configurable work cap (DNF size, factor digit cap,
// eliminator step budget) is exceeded. Never stands for a wrong answer.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

// Remainder in [0, m); m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    assert(m > 0);
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return a % d == 0;
}

inline Int int_pow(Int base, Int exp) {
    assert(exp >= 0);
    Int r = 1;
    while (exp > 0) {
        if ((exp & 1) != 0) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// q^k with the 0^-1 = 0 convention, so 0^k = 0 for every k != 0.
inline Rat rat_pow(const Rat& q, const Int& k) {
    assert(k != 0);
    if (q == 0) return Rat(0);
    Rat base = k > 0 ? q : Rat(1) / q;
    Int e = numqe::abs(k);
    Rat r = 1;
    while (e > 0) {
        if ((e & 1) != 0) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int numer(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denom(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return denom(q) == 1; }

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rat& q) {
    if (is_integer(q)) return numer(q).str();
    return numer(q).str() + "/" + denom(q).str();
}

inline long to_long(const Int& a) { return a.convert_to<long>(); }

}  // namespace numqe
