#pragma once

#include "numqe/ints.hpp"
#include "numqe/primes.hpp"

#include <map>
#include <set>

namespace numqe {

// Finite-support map prime -> exponent. E is Int for the rational
// multiplicative group and Rat where the ambient group is divisible.
// Zero exponents are never stored, keys are primality-checked on insert,
// so equality is structural.
template <typename E>
class ExponentVector {
  public:
    ExponentVector() = default;

    void set(const Int& prime, const E& exponent) {
        if (!is_prime(prime)) throw std::domain_error("ExponentVector: key is not prime");
        if (exponent == 0)
            exps_.erase(prime);
        else
            exps_[prime] = exponent;
    }

    void add(const Int& prime, const E& exponent) {
        if (!is_prime(prime)) throw std::domain_error("ExponentVector: key is not prime");
        auto it = exps_.find(prime);
        if (it == exps_.end()) {
            if (exponent != 0) exps_[prime] = exponent;
            return;
        }
        it->second += exponent;
        if (it->second == 0) exps_.erase(it);
    }

    E exponent(const Int& prime) const {
        auto it = exps_.find(prime);
        return it == exps_.end() ? E(0) : it->second;
    }

    bool empty() const { return exps_.empty(); }

    std::set<Int> support() const {
        std::set<Int> s;
        for (const auto& [p, e] : exps_) s.insert(p);
        return s;
    }

    const std::map<Int, E>& entries() const { return exps_; }

    friend ExponentVector mul(const ExponentVector& a, const ExponentVector& b) {
        ExponentVector r = a;
        for (const auto& [p, e] : b.exps_) r.add(p, e);
        return r;
    }

    friend ExponentVector inverse(const ExponentVector& a) {
        ExponentVector r;
        for (const auto& [p, e] : a.exps_) r.exps_[p] = -e;
        return r;
    }

    friend ExponentVector pow(const ExponentVector& a, const Int& k) {
        ExponentVector r;
        if (k == 0) return r;
        for (const auto& [p, e] : a.exps_) r.exps_[p] = e * E(k);
        return r;
    }

    bool operator==(const ExponentVector&) const = default;

  private:
    std::map<Int, E> exps_;
};

using IntExponents = ExponentVector<Int>;
using RatExponents = ExponentVector<Rat>;

// All exponents divisible by n: the n-th power test for integer exponents.
inline bool all_divisible(const IntExponents& ev, const Int& n) {
    for (const auto& [p, e] : ev.entries())
        if (e % n != 0) return false;
    return true;
}

inline IntExponents divide_exact(const IntExponents& ev, const Int& n) {
    IntExponents r;
    for (const auto& [p, e] : ev.entries()) {
        assert(e % n == 0);
        r.set(p, e / n);
    }
    return r;
}

inline RatExponents scale(const RatExponents& ev, const Rat& q) {
    RatExponents r;
    if (q == 0) return r;
    for (const auto& [p, e] : ev.entries()) r.set(p, e * q);
    return r;
}

inline RatExponents to_rat_exponents(const IntExponents& ev) {
    RatExponents r;
    for (const auto& [p, e] : ev.entries()) r.set(p, Rat(e));
    return r;
}

}  // namespace numqe
