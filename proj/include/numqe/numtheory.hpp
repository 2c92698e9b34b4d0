#pragma once

#include "numqe/exponent_vector.hpp"
#include "numqe/ints.hpp"
#include "numqe/primes.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace numqe {

struct ExtGcd {
    Int g;  // gcd(|a|, |b|), >= 0
    Int s;
    Int t;  // s*a + t*b == g
};

// Classical extended Euclid; identity s*a + t*b = g holds exactly for all
// inputs including zero and negative ones.
inline ExtGcd ext_gcd(const Int& a, const Int& b) {
    // invariants: r0 == s0*a + t0*b, r1 == s1*a + t1*b
    Int r0 = a, s0 = 1, t0 = 0;
    Int r1 = b, s1 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        Int t2 = t0 - q * t1;
        r0 = r1; s0 = s1; t0 = t1;
        r1 = r2; s1 = s2; t1 = t2;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    assert(s0 * a + t0 * b == r0);
    return {r0, s0, t0};
}

struct GenBezout {
    Int g;                    // gcd of all inputs
    std::vector<Int> coeffs;  // sum coeffs[i]*as[i] == g
};

// Left fold of ext_gcd, so the coefficients are deterministic.
inline GenBezout gen_bezout(const std::vector<Int>& as) {
    if (as.empty()) throw std::invalid_argument("gen_bezout: empty input");
    for (const Int& a : as)
        if (a < 1) throw std::invalid_argument("gen_bezout: inputs must be positive");
    Int g = as[0];
    std::vector<Int> cs = {1};
    for (std::size_t i = 1; i < as.size(); ++i) {
        ExtGcd e = ext_gcd(g, as[i]);
        for (Int& c : cs) c *= e.s;
        cs.push_back(e.t);
        g = e.g;
    }
    Int check = 0;
    for (std::size_t i = 0; i < as.size(); ++i) check += cs[i] * as[i];
    assert(check == g);
    return {g, cs};
}

struct Congruence {
    Int modulus;  // >= 2
    Int residue;  // reduced, 0 <= residue < modulus
};

// Moduli-residue pairs; residues are stored reduced.
class CongruenceSystem {
  public:
    CongruenceSystem() = default;

    void add(const Int& modulus, const Int& residue) {
        if (modulus < 2) throw std::invalid_argument("CongruenceSystem: modulus must be >= 2");
        items_.push_back({modulus, mod_floor(residue, modulus)});
    }

    const std::vector<Congruence>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

  private:
    std::vector<Congruence> items_;
};

struct CrtSolution {
    Int x0;                   // 0 <= x0 < modulus
    Int modulus;              // lcm of the input moduli
    std::vector<Int> coeffs;  // sum coeffs[i]*(modulus/m_i) == 1
};

// Solvable iff residues agree modulo every pairwise gcd.
inline bool crt_solvable(const CongruenceSystem& sys) {
    const auto& cs = sys.items();
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            Int d = gcd(cs[i].modulus, cs[j].modulus);
            if (mod_floor(cs[i].residue - cs[j].residue, d) != 0) return false;
        }
    return true;
}

// x0 = sum r_i * c_i * (m/m_i) reduced mod m, where the c_i witness
// sum c_i*(m/m_i) = 1; every solution is congruent to x0 mod m.
inline std::optional<CrtSolution> crt_solve(const CongruenceSystem& sys) {
    if (!crt_solvable(sys)) return std::nullopt;
    if (sys.empty()) return CrtSolution{0, 1, {}};
    Int m = 1;
    for (const auto& c : sys.items()) m = lcm(m, c.modulus);
    std::vector<Int> quotients;
    for (const auto& c : sys.items()) quotients.push_back(m / c.modulus);
    GenBezout bz = gen_bezout(quotients);
    assert(bz.g == 1);  // the m/m_i are jointly coprime
    Int x0 = 0;
    for (std::size_t i = 0; i < sys.size(); ++i)
        x0 += sys.items()[i].residue * bz.coeffs[i] * quotients[i];
    x0 = mod_floor(x0, m);
    for (const auto& c : sys.items()) assert(mod_floor(x0 - c.residue, c.modulus) == 0);
    return CrtSolution{x0, m, bz.coeffs};
}

struct CrtWithInequations {
    bool solvable = false;
    Int witness = 0;  // meaningful only when solvable
};

// Finitely many forbidden values never change solvability: if x0 works,
// so does x0 + L*m for every L.
inline CrtWithInequations crt_with_inequations(const CongruenceSystem& sys,
                                               const std::vector<Int>& forbidden) {
    auto sol = crt_solve(sys);
    if (!sol) return {false, 0};
    auto allowed = [&](const Int& x) {
        return std::find(forbidden.begin(), forbidden.end(), x) == forbidden.end();
    };
    if (sys.empty()) {
        if (forbidden.empty()) return {true, 0};
        Int w = *std::max_element(forbidden.begin(), forbidden.end()) + 1;
        return {true, w};
    }
    Int x = sol->x0;
    while (!allowed(x)) x += sol->modulus;
    return {true, x};
}

struct Factorization {
    int sign;  // +1 or -1
    IntExponents exponents;
};

// Unique factorization of a nonzero rational; exponents of denominator
// primes come out negative. trial_bound caps the trial division; a
// remaining cofactor must then be a prime below 2^64 or the input is
// rejected (adversarial factorization is out of scope, smooth numbers of
// any size are not).
inline Factorization factor_rational(const Rat& q, const Int& trial_bound = Int(1000000)) {
    if (q == 0) throw std::domain_error("factor_rational: zero has no factorization");
    int sign = q < 0 ? -1 : 1;
    Int num = numqe::abs(numer(q));
    Int den = denom(q);
    IntExponents ev;
    auto factor_into = [&](Int n, int dir) {
        for (Int p = 2; p <= trial_bound && p * p <= n; p = (p == 2 ? Int(3) : p + 2)) {
            while (n % p == 0) {
                ev.add(p, dir);
                n /= p;
            }
        }
        if (n == 1) return;
        if (n <= trial_bound * trial_bound) {  // no factor below its square root
            ev.add(n, dir);
            return;
        }
        bool prime = false;
        try {
            prime = is_prime(n);
        } catch (const std::domain_error&) {
            throw resource_error("factor_rational: cofactor exceeds the primality range");
        }
        if (!prime)
            throw resource_error("factor_rational: composite cofactor above the trial bound");
        ev.add(n, dir);
    };
    factor_into(num, +1);
    factor_into(den, -1);
    return {sign, ev};
}

inline Rat recompose(int sign, const IntExponents& ev) {
    Rat r = sign;
    for (const auto& [p, e] : ev.entries()) r *= rat_pow(Rat(p), e);
    return r;
}

inline Rat recompose(const Factorization& f) { return recompose(f.sign, f.exponents); }

enum class SubstructureKind { z_over_m, q_over_m };

struct SubstructureSpec {
    SubstructureKind kind;
    Int m;  // >= 1
};

// z_over_m: {a/m | a in Z}.  q_over_m: {a/m^k | a in Z, k in N}, i.e. every
// prime of the reduced denominator divides m.
inline bool member_substructure(const Rat& q, const SubstructureSpec& spec) {
    if (spec.m < 1) throw std::invalid_argument("member_substructure: m must be >= 1");
    switch (spec.kind) {
        case SubstructureKind::z_over_m:
            return is_integer(q * spec.m);
        case SubstructureKind::q_over_m: {
            Int d = denom(q);
            if (d == 1) return true;
            // strip from d every prime factor it shares with m
            Int m = spec.m;
            while (true) {
                Int g = gcd(d, m);
                if (g == 1) break;
                while (d % g == 0) d /= g;
            }
            return d == 1;
        }
    }
    return false;
}

}  // namespace numqe
