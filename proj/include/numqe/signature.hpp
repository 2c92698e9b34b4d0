#pragma once

#include "numqe/ints.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace numqe {

// A symbol outside the ambient theory's signature; reported distinctly
// from syntax errors.
struct signature_error : std::runtime_error {
    std::size_t position;
    signature_error(std::size_t pos, const std::string& what)
        : std::runtime_error(what + (pos ? " (at offset " + std::to_string(pos) + ")" : "")),
          position(pos) {}
};

// The seven first-order theories. div_add is the shared theory of the
// additive rationals, reals and complexes.
enum class Theory {
    c_mul,        // complex numbers, multiplication, 0, 1, roots of unity w[n]
    r_mul,        // real numbers, multiplication, 0, 1, -1, positivity P
    rpos_mul,     // positive reals, multiplication, 1
    rnonneg_mul,  // non-negative reals, multiplication, 0, 1
    qpos_mul,     // positive rationals, multiplication, 1, n-th power predicates R[n]
    z_add,        // integers, addition, 0, 1, congruences =[n]
    div_add,      // rationals/reals/complexes, addition, 0
};

struct Signature {
    Theory theory;

    bool multiplicative() const {
        return theory != Theory::z_add && theory != Theory::div_add;
    }
    bool additive() const { return !multiplicative(); }
    // whether the constant 0 is in the multiplicative signature
    bool has_zero() const {
        return theory == Theory::c_mul || theory == Theory::r_mul ||
               theory == Theory::rnonneg_mul || theory == Theory::z_add ||
               theory == Theory::div_add;
    }
    bool admits_omega() const { return theory == Theory::c_mul; }
    bool admits_positivity() const { return theory == Theory::r_mul; }
    bool admits_root_predicate() const { return theory == Theory::qpos_mul; }
    bool admits_congruence() const { return theory == Theory::z_add; }

    // Ground parameters admitted per theory (rational numerals in the
    // grammar, interpreted in the exact models).
    bool admits_numeral(const Rat& q) const {
        switch (theory) {
            case Theory::c_mul:
            case Theory::r_mul:
            case Theory::div_add: return true;
            case Theory::rnonneg_mul: return q >= 0;
            case Theory::rpos_mul:
            case Theory::qpos_mul: return q > 0;
            case Theory::z_add: return is_integer(q);
        }
        return false;
    }

    bool operator==(const Signature&) const = default;
};

inline Signature sig(Theory t) { return Signature{t}; }

inline std::string theory_name(Theory t) {
    switch (t) {
        case Theory::c_mul: return "c-mul";
        case Theory::r_mul: return "r-mul";
        case Theory::rpos_mul: return "rpos-mul";
        case Theory::rnonneg_mul: return "rnonneg-mul";
        case Theory::qpos_mul: return "qpos-mul";
        case Theory::z_add: return "z-add";
        case Theory::div_add: return "div-add";
    }
    return "?";
}

inline std::optional<Theory> parse_theory_name(const std::string& name) {
    for (Theory t : {Theory::c_mul, Theory::r_mul, Theory::rpos_mul, Theory::rnonneg_mul,
                     Theory::qpos_mul, Theory::z_add, Theory::div_add})
        if (theory_name(t) == name) return t;
    return std::nullopt;
}

inline const Theory all_theories[] = {Theory::c_mul,       Theory::r_mul,    Theory::rpos_mul,
                                      Theory::rnonneg_mul, Theory::qpos_mul, Theory::z_add,
                                      Theory::div_add};

}  // namespace numqe
