#pragma once

#include "numqe/ints.hpp"

#include <set>
#include <vector>

namespace numqe {

namespace detail {

inline Int mod_pow(Int base, Int exp, const Int& mod) {
    return boost::multiprecision::powm(base, exp, mod);
}

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, int r) {
    Int x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace detail

// Deterministic for n < 2^64 (fixed Miller-Rabin base set); larger inputs
// are rejected rather than answered probabilistically.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n >> 64 != 0)
        throw std::domain_error("is_prime: input exceeds 64 bits");
    Int d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (detail::miller_rabin_witness(n, a, d, r)) return false;
    return true;
}

inline Int next_prime_above(Int n) {
    if (n < 2) return 2;
    ++n;
    while (!is_prime(n)) ++n;
    return n;
}

// Smallest prime not in `avoid`. Minimality keeps traces reproducible.
inline Int fresh_prime(const std::set<Int>& avoid) {
    Int p = 2;
    while (avoid.count(p) != 0) p = next_prime_above(p);
    return p;
}

// First k primes, by value (no shared mutable table).
inline std::vector<Int> first_primes(std::size_t k) {
    std::vector<Int> ps;
    Int p = 2;
    while (ps.size() < k) {
        ps.push_back(p);
        p = next_prime_above(p);
    }
    return ps;
}

}  // namespace numqe
