#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "ffrec/poly.hpp"

namespace ffrec {

/// Value of a d-th power residue symbol: either the zero symbol (P | a) or a
/// d-th root of unity eta^exponent in F_q^*.
struct SymbolValue {
    bool zero;
    int64_t exponent;  // in [0, d); meaningful only when !zero
    FieldElement value;
    int64_t d;

    bool is_one() const { return !zero && exponent == 0; }
};

namespace detail {

inline void require_d_divides(const SpecPtr& spec, int64_t d) {
    if (d < 1 || (spec->q() - 1) % uint64_t(d) != 0)
        fail(errc::d_not_dividing,
             "d = " + std::to_string(d) + " does not divide q-1 = " + std::to_string(spec->q() - 1));
}

inline uint64_t checked_norm(const IrreduciblePoly& P) {
    uint64_t n = P.norm();
    if (n == std::numeric_limits<uint64_t>::max()) fail(errc::too_large, "|P| overflows");
    return n;
}

}  // namespace detail

/// Euler-criterion symbol: (a/P)_d = a^((|P|-1)/d) mod P, which is always a
/// d-th root of unity in F_q for P irreducible and P not dividing a, and 0
/// when P | a.
inline SymbolValue power_residue_symbol(const Poly& a, const IrreduciblePoly& P, int64_t d) {
    const SpecPtr& spec = P.spec();
    if (!a.spec()->compatible(*spec)) fail(errc::spec_mismatch, "a and P over different fields");
    detail::require_d_divides(spec, d);

    Poly r = a % P.poly();
    if (r.is_zero()) return SymbolValue{true, 0, zero_of(spec), d};

    uint64_t e = (detail::checked_norm(P) - 1) / uint64_t(d);
    Poly c = poly_modexp(r, e, P.poly());
    if (c.degree() != 0)
        fail(errc::non_constant_result,
             "a^((|P|-1)/d) mod P is not constant; P fails to be irreducible");
    FieldElement value = c.coeff(0);
    int64_t j = unity_dlog(spec, value, d);
    return SymbolValue{false, j, value, d};
}

/// Right-hand side of the reciprocity law: (-1)^(((q-1)/d) deg P deg Q).
inline FieldElement reciprocity_rhs(const IrreduciblePoly& P, const IrreduciblePoly& Q, int64_t d) {
    const SpecPtr& spec = P.spec();
    if (!Q.spec()->compatible(*spec)) fail(errc::spec_mismatch, "P and Q over different fields");
    detail::require_d_divides(spec, d);
    uint64_t exponent = ((spec->q() - 1) / uint64_t(d)) * uint64_t(P.degree()) * uint64_t(Q.degree());
    return exponent % 2 == 0 ? one_of(spec) : minus_one_of(spec);
}

struct ReciprocityCheck {
    FieldElement lhs;  // (P/Q)_d * ((Q/P)_d)^-1
    FieldElement rhs;  // (-1)^(((q-1)/d) deg P deg Q)
    bool pass;
};

/// Checks (P/Q)_d ((Q/P)_d)^-1 = (-1)^(((q-1)/d) deg P deg Q) for distinct
/// monic irreducibles P, Q.
inline ReciprocityCheck check_reciprocity(const IrreduciblePoly& P, const IrreduciblePoly& Q,
                                          int64_t d) {
    if (P.poly() == Q.poly()) fail(errc::equal_primes, "reciprocity needs distinct primes");
    SymbolValue p_over_q = power_residue_symbol(P.poly(), Q, d);
    SymbolValue q_over_p = power_residue_symbol(Q.poly(), P, d);
    FieldElement lhs = p_over_q.value * q_over_p.value.inverse();
    FieldElement rhs = reciprocity_rhs(P, Q, d);
    return ReciprocityCheck{lhs, rhs, lhs == rhs};
}

/// Independent oracle: a is a d-th power residue mod P iff some nonzero
/// residue x has x^d = a (mod P), found by scanning all of them.  Deliberately
/// brute force; |P| is capped at 3^6 = 729.
inline bool dth_power_oracle(const Poly& a, const IrreduciblePoly& P, int64_t d) {
    const SpecPtr& spec = P.spec();
    if (!a.spec()->compatible(*spec)) fail(errc::spec_mismatch, "a and P over different fields");
    detail::require_d_divides(spec, d);
    if (P.norm() > 729) fail(errc::too_large, "oracle restricted to |P| <= 729");

    Poly r = a % P.poly();
    if (r.is_zero()) fail(errc::divisible_input, "oracle requires P not dividing a");

    for (const Poly& x : enumerate_nonzero_below(spec, P.degree())) {
        if (poly_modexp(x, uint64_t(d), P.poly()) == r) return true;
    }
    return false;
}

}  // namespace ffrec
