#pragma once

#include "numqe/generate.hpp"
#include "numqe/model.hpp"
#include "numqe/numtheory.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace numqe {

// Substructures witnessing that none of the seven theories is finitely
// axiomatizable: each satisfies every axiom except one schema instance at
// a large prime. The checks run in exact arithmetic on the carriers; where
// a universal statement is not decidable by an exponent argument it is
// verified at seeded samples, and the seed is part of the report.

enum class CounterexampleKind {
    z_over_p,      // {a/p} under +: all A7,n for n<p hold, A7,p fails
    q_over_m,      // {a/M^k} under +: A7,n for n<=N hold, A7,p fails
    c_over_m,      // roots of unity times primes^(Q/M): M8,p fails
    r_over_m,      // {0} and +-primes^(Q/M): odd-root instances fail at p
    rpos_over_m,   // primes^(Q/M): M8,p fails
    qpos_omega_p,  // positive rationals times powers of w[p]: M7,p fails
};

struct CounterexampleSpec {
    CounterexampleKind kind;
    Int n = 5;    // M = n!
    Int prime = 127;
};

struct Finding {
    std::string check;
    bool holds;
    bool expected_holds;
    std::string witness;
};

struct Report {
    CounterexampleSpec spec;
    std::uint64_t seed = 0;
    std::vector<Finding> findings;

    bool matches_expectation() const {
        for (const Finding& f : findings)
            if (f.holds != f.expected_holds) return false;
        return true;
    }

    std::string to_text() const;
};

inline std::string counterexample_name(CounterexampleKind k) {
    switch (k) {
        case CounterexampleKind::z_over_p: return "z-over-p";
        case CounterexampleKind::q_over_m: return "q-over-m";
        case CounterexampleKind::c_over_m: return "c-over-m";
        case CounterexampleKind::r_over_m: return "r-over-m";
        case CounterexampleKind::rpos_over_m: return "rpos-over-m";
        case CounterexampleKind::qpos_omega_p: return "qpos-omega-p";
    }
    return "?";
}

inline std::string Report::to_text() const {
    std::ostringstream os;
    os << "counterexample " << counterexample_name(spec.kind) << " N=" << spec.n
       << " p=" << spec.prime << " seed=" << seed << "\n";
    os << "# verdicts computed in exact arithmetic on the substructure carrier;\n";
    os << "# sampled checks are marked; the expected pattern separates the finitely\n";
    os << "# many schema instances the substructure satisfies from the failing one\n";
    for (const Finding& f : findings) {
        os << "CHECK " << f.check << " " << (f.holds ? "HOLDS" : "FAILS")
           << " expected=" << (f.expected_holds ? "HOLDS" : "FAILS");
        if (!f.witness.empty()) os << " " << f.witness;
        os << "\n";
    }
    return os.str();
}

namespace detail {

inline Int factorial(const Int& n) {
    Int m = 1;
    for (Int i = 2; i <= n; ++i) m *= i;
    return m;
}

// a/M^k with |a| <= 10^6, k <= 3
inline Rat sample_q_over_m(Rng& rng, const Int& M) {
    Int a(rng.range(-1000000, 1000000));
    long k = rng.range(0, 3);
    Int den = 1;
    for (long i = 0; i < k; ++i) den *= M;
    return Rat(a, den);
}

inline Rat sample_z_over_p(Rng& rng, const Int& p) {
    return Rat(Int(rng.range(-1000000, 1000000)), p);
}

// exponent vector over small primes with entries in Q/M
inline RatExponents sample_exponents_q_over_m(Rng& rng, const Int& M) {
    RatExponents ev;
    static const int primes[5] = {2, 3, 5, 7, 11};
    int n = static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
        Rat e = sample_q_over_m(rng, M);
        if (e != 0) ev.set(Int(primes[rng.below(5)]), e);
    }
    return ev;
}

inline bool exponents_in_q_over_m(const RatExponents& ev, const Int& M) {
    for (const auto& [p, e] : ev.entries())
        if (!member_substructure(e, {SubstructureKind::q_over_m, M})) return false;
    return true;
}

}  // namespace detail

inline Report check_counterexample(const CounterexampleSpec& spec, std::uint64_t seed = 20170918) {
    Report rep{spec, seed, {}};
    Rng rng(seed);
    if (spec.n < 2) throw std::invalid_argument("check_counterexample: N must be >= 2");
    const Int M = detail::factorial(spec.n);
    const Int p = spec.prime;
    if (!is_prime(p)) throw std::invalid_argument("check_counterexample: p must be prime");
    auto finding = [&](std::string check, bool holds, bool expected, std::string witness) {
        rep.findings.push_back({std::move(check), holds, expected, std::move(witness)});
    };

    switch (spec.kind) {
        case CounterexampleKind::q_over_m: {
            SubstructureSpec carrier{SubstructureKind::q_over_m, M};
            bool closed = true;
            for (int i = 0; i < 100 && closed; ++i) {
                Rat a = detail::sample_q_over_m(rng, M);
                Rat b = detail::sample_q_over_m(rng, M);
                closed = member_substructure(a + b, carrier) && member_substructure(-a, carrier);
            }
            finding("closure-add-neg(sampled)", closed, true, "100 samples");
            for (Int n = 2; n <= spec.n; ++n) {
                bool ok = true;
                std::string w;
                for (int i = 0; i < 25 && ok; ++i) {
                    Rat x = detail::sample_q_over_m(rng, M);
                    Rat y = x / Rat(n);
                    ok = member_substructure(y, carrier) && Rat(n) * y == x;
                    if (ok && i == 0) w = "x=" + numqe::to_string(x) + " y=" + numqe::to_string(y);
                }
                finding("A7," + n.str() + "(sampled)", ok, true, w);
            }
            // A7,p: x = 1 has no y with x = p.y inside the carrier
            Rat bad = Rat(1) / Rat(p);
            bool fails_a7p = !member_substructure(bad, carrier);
            finding("A7," + p.str(), !fails_a7p, false,
                    "1/" + p.str() + (fails_a7p ? " not in " : " in ") + "Q/" + M.str());
            break;
        }
        case CounterexampleKind::z_over_p: {
            SubstructureSpec carrier{SubstructureKind::z_over_m, p};
            bool closed = true;
            for (int i = 0; i < 100 && closed; ++i) {
                Rat a = detail::sample_z_over_p(rng, p);
                Rat b = detail::sample_z_over_p(rng, p);
                closed = member_substructure(a + b, carrier) && member_substructure(-a, carrier);
            }
            finding("closure-add-neg(sampled)", closed, true, "100 samples");
            finding("A6o", Rat(1) != Rat(0) && member_substructure(1, carrier), true, "1 = p/p");
            for (Int n = 1; n <= 6; ++n) {
                bool ok = true;
                for (int i = 0; i < 25 && ok; ++i) {
                    Rat x = detail::sample_z_over_p(rng, p);
                    ok = (Rat(n) * x == 0) == (x == 0);
                }
                finding("A5," + n.str() + "(sampled)", ok, true, "");
            }
            // A7,n for n < p via the Bezout and division-algorithm witness
            for (Int n : std::vector<Int>{2, 3, 4, 5, 6}) {
                if (n >= p) break;
                bool ok = true;
                std::string w;
                for (int i = 0; i < 25 && ok; ++i) {
                    Int z(rng.range(-1000000, 1000000));
                    Rat x = Rat(z, p);
                    ExtGcd bz = ext_gcd(n, p);  // a*n + b*p = 1
                    assert(bz.g == 1);
                    Int rem = mod_floor(bz.t * z, n);           // b*z = n*q + i
                    Int q = (bz.t * z - rem) / n;
                    Rat y = Rat(bz.s * z + p * q, p);
                    ok = member_substructure(y, carrier) && Rat(n) * y + Rat(rem) == x;
                    // uniqueness: exactly one residue j < n admits a carrier witness
                    int witnesses = 0;
                    for (Int j = 0; j < n && ok; ++j) {
                        Rat cand = (x - Rat(j)) / Rat(n);
                        if (member_substructure(cand, carrier)) {
                            ++witnesses;
                            if (j != rem || cand != y) ok = false;
                        }
                    }
                    ok = ok && witnesses == 1;
                    if (ok && i == 0)
                        w = "x=" + numqe::to_string(x) + " y=" + numqe::to_string(y) +
                            " i=" + rem.str();
                }
                finding("A7," + n.str() + "o(sampled,bezout)", ok, true, w);
            }
            // A7,p fails at x = 1/p
            Rat x = Rat(1, p);
            bool any = false;
            for (Int j = 0; j < p && !any; ++j)
                any = member_substructure((x - Rat(j)) / Rat(p), carrier);
            finding("A7," + p.str() + "o", any, false, "x=1/" + p.str() + " has no decomposition");
            break;
        }
        case CounterexampleKind::c_over_m:
        case CounterexampleKind::rpos_over_m:
        case CounterexampleKind::r_over_m: {
            const bool has_torsion = spec.kind == CounterexampleKind::c_over_m;
            const bool has_sign = spec.kind == CounterexampleKind::r_over_m;
            auto sample = [&]() {
                RatExponents ev = detail::sample_exponents_q_over_m(rng, M);
                if (has_torsion) {
                    Int den(rng.range(1, 20));
                    Int num(rng.range(0, 19));
                    return complex_of(Rat(num, den), std::move(ev));
                }
                ComplexElem e;
                e.zero = false;
                e.torsion = (has_sign && rng.coin()) ? Rat(1, 2) : Rat(0);
                e.ev = std::move(ev);
                return e;
            };
            auto in_carrier = [&](const ComplexElem& e) {
                if (e.zero) return has_sign;  // only R/M contains 0
                if (!detail::exponents_in_q_over_m(e.ev, M)) return false;
                if (has_torsion) return true;
                if (has_sign) return e.torsion == 0 || e.torsion == Rat(1, 2);
                return e.torsion == 0;
            };
            bool closed = true;
            for (int i = 0; i < 100 && closed; ++i) {
                ComplexElem a = sample(), b = sample();
                closed = in_carrier(mul(a, b)) && in_carrier(inverse(a));
            }
            finding("closure-mul-inv(sampled)", closed, true, "100 samples");
            if (has_torsion) {
                // M6,n and M7,n: the n-torsion is exactly the w[n] powers
                bool ok = true;
                ComplexElem one{false, 0, {}};
                for (Int n = 2; n <= 8 && ok; ++n) {
                    std::set<Rat> seen;
                    for (Int i = 0; i < n; ++i) {
                        ComplexElem w = i == 0 ? one : pow(complex_omega(n), i);
                        ok = ok && in_carrier(w) && pow(w, n) == one;
                        seen.insert(w.torsion);
                    }
                    ok = ok && Int(seen.size()) == n;  // all n-th roots distinct
                }
                finding("M6-M7(n<=8)", ok, true, "torsion subgroup has exactly n elements");
            }
            if (has_sign) {
                // M11: the 2n-torsion is exactly {1, -1}
                ComplexElem one{false, 0, {}};
                ComplexElem minus_one{false, Rat(1, 2), {}};
                bool ok = true;
                for (Int n = 1; n <= 5 && ok; ++n) {
                    ok = pow(one, 2 * n) == one && pow(minus_one, 2 * n) == one;
                    for (int i = 0; i < 25 && ok; ++i) {
                        ComplexElem x = sample();
                        bool is_torsion = pow(x, 2 * n) == one;
                        bool is_unit = x == one || x == minus_one;
                        ok = is_torsion == is_unit;
                    }
                }
                finding("M11(sampled)", ok, true, "2n-torsion is {1, -1}");
            }
            if (!has_torsion && !has_sign) {
                // M7o: the positive carrier is torsion-free
                ComplexElem one{false, 0, {}};
                bool ok = true;
                for (Int n = 1; n <= 6 && ok; ++n)
                    for (int i = 0; i < 25 && ok; ++i) {
                        ComplexElem x = sample();
                        ok = (pow(x, n) == one) == (x == one);
                    }
                finding("M7o(sampled)", ok, true, "x^n = 1 only at x = 1");
            }
            // the signed carrier takes odd roots with the sign kept; the
            // others take the principal root
            auto carrier_root = [&](const ComplexElem& x, const Int& n) {
                if (has_sign) return ComplexElem{false, x.torsion, scale(x.ev, Rat(1, n))};
                return nth_root(x, n);
            };
            // root instances that stay inside: every prime of the degree
            // divides M, so exponents stay in Q/M
            const Int root_bound = has_sign ? Int(2 * spec.n + 1) : spec.n;
            for (Int n = 2; n <= root_bound; ++n) {
                if (has_sign && n % 2 == 0) continue;  // signed carrier: odd roots only
                if (!member_substructure(Rat(1, n), {SubstructureKind::q_over_m, M}))
                    continue;  // degree outside the carrier's divisibility range
                bool ok = true;
                std::string w;
                for (int i = 0; i < 20 && ok; ++i) {
                    ComplexElem x = sample();
                    ComplexElem y = carrier_root(x, n);
                    ok = in_carrier(y) && pow(y, n) == x;
                    if (ok && i == 0) w = "sampled root degree " + n.str();
                }
                std::string nm = has_sign ? "M12," + Int((n - 1) / 2).str() : "M8," + n.str();
                finding(nm + "(sampled)", ok, true, w);
            }
            // the p-th root of 2 leaves the carrier
            {
                RatExponents two;
                two.set(2, Rat(1));
                ComplexElem x{false, 0, two};
                bool root_exists = member_substructure(Rat(1, p), {SubstructureKind::q_over_m, M});
                assert(in_carrier(x));
                std::string nm = has_sign ? "M12," + Int((p - 1) / 2).str() : "M8," + p.str();
                finding(nm, root_exists, false,
                        "2^(1/" + p.str() + ") needs exponent 1/" + p.str() + ", not in Q/" +
                            M.str());
            }
            if (has_sign) {
                // M13/M14/M15 at sampled elements
                bool ok = true;
                for (int i = 0; i < 50 && ok; ++i) {
                    ComplexElem a = sample(), b = sample();
                    bool pa = a.torsion == 0, pb = b.torsion == 0;
                    ComplexElem ab = mul(a, b);
                    ok = ((ab.torsion == 0) == (pa == pb));              // M15
                    ok = ok && (pa != (mul(ComplexElem{false, Rat(1, 2), {}}, a).torsion == 0));  // M14
                    ComplexElem sq = pow(a, 2);
                    ok = ok && sq.torsion == 0 && in_carrier(sq);        // squares are positive
                }
                finding("M13-M15(sampled)", ok, true, "sign laws at 50 samples");
            }
            break;
        }
        case CounterexampleKind::qpos_omega_p: {
            // carrier: torsion j/p, integer exponent vectors
            auto sample = [&]() {
                IntExponents ev;
                static const int primes[4] = {2, 3, 5, 7};
                int n = static_cast<int>(rng.below(3));
                for (int i = 0; i < n; ++i) {
                    Int e(rng.range(-6, 6));
                    if (e != 0) ev.set(Int(primes[rng.below(4)]), e);
                }
                return complex_of(Rat(Int(rng.range(0, 1000)), p), to_rat_exponents(ev));
            };
            auto in_carrier = [&](const ComplexElem& e) {
                if (e.zero) return false;
                if (denom(e.torsion) != 1 && denom(e.torsion) != p) return false;
                for (const auto& [q, ex] : e.ev.entries())
                    if (!is_integer(ex)) return false;
                return true;
            };
            bool closed = true;
            for (int i = 0; i < 100 && closed; ++i) {
                ComplexElem a = sample(), b = sample();
                closed = in_carrier(mul(a, b)) && in_carrier(inverse(a));
            }
            finding("closure-mul-inv(sampled)", closed, true, "100 samples");
            // M7,n for n < p: the only n-torsion element is 1
            for (Int n : std::vector<Int>{2, 3, 4, 5, 6, 10}) {
                bool ok = true;
                for (Int j = 1; j < p && ok; ++j)
                    if (mod_floor(n * j, p) == 0) ok = false;  // w[p]^j would be n-torsion
                finding("M7," + n.str() + "o", ok, true, "torsion order is the prime " + p.str());
            }
            // M16,n at sampled parameters: a fresh prime witnesses the block
            {
                auto is_mth_power_in_carrier = [&](const ComplexElem& e, const Int& m) {
                    for (const auto& [q, ex] : e.ev.entries())
                        if (!is_integer(ex) || mod_floor(numer(ex), m) != 0) return false;
                    // torsion j/p: m*i = j (mod p) must be solvable for i
                    Int j = denom(e.torsion) == 1 ? Int(0) : numer(e.torsion);
                    return mod_floor(j, gcd(m, p)) == 0;
                };
                bool ok = true;
                std::string w;
                for (int trial = 0; trial < 20 && ok; ++trial) {
                    Int n(rng.range(1, 4));
                    Int m(rng.range(2, 6));
                    if (divides(m, n)) m = n + 1;
                    ComplexElem v = sample();
                    std::set<Int> avoid;
                    for (const auto& [q, e] : v.ev.entries()) avoid.insert(q);
                    Int fresh = fresh_prime(avoid);
                    RatExponents xev;
                    xev.set(fresh, Rat(1));
                    ComplexElem xn_v = mul(pow(ComplexElem{false, 0, xev}, n), v);
                    ok = !is_mth_power_in_carrier(xn_v, m);
                    if (ok && trial == 0)
                        w = "n=" + n.str() + " m=" + m.str() + " fresh prime " + fresh.str() +
                            " carries exponent " + n.str() + ", not divisible by " + m.str();
                }
                finding("M16(sampled)", ok, true, w);
            }
            // M7,p fails: w[p]^p = 1 but w[p] != 1
            {
                ComplexElem w = complex_omega(p);
                ComplexElem one{false, 0, {}};
                bool fails = pow(w, p) == one && !(w == one);
                finding("M7," + p.str() + "o", !fails, false,
                        "w[" + p.str() + "]^" + p.str() + " = 1 and w[" + p.str() + "] != 1");
            }
            break;
        }
    }
    return rep;
}

inline std::vector<Report> check_all_counterexamples(const Int& n, const Int& big_prime,
                                                     const Int& small_prime,
                                                     std::uint64_t seed = 20170918) {
    std::vector<Report> out;
    out.push_back(check_counterexample({CounterexampleKind::q_over_m, n, big_prime}, seed));
    out.push_back(check_counterexample({CounterexampleKind::z_over_p, n, small_prime}, seed));
    out.push_back(check_counterexample({CounterexampleKind::c_over_m, n, big_prime}, seed));
    out.push_back(check_counterexample({CounterexampleKind::r_over_m, n, big_prime}, seed));
    out.push_back(check_counterexample({CounterexampleKind::rpos_over_m, n, big_prime}, seed));
    out.push_back(check_counterexample({CounterexampleKind::qpos_omega_p, n, big_prime}, seed));
    return out;
}

}  // namespace numqe
