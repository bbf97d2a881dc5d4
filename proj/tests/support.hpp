#pragma once

// Shared test oracles.  Everything here recomputes results by the most naive
// route available (digit vectors, trial division, exhaustive scans) so the
// library paths they check against stay independent.

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "ffrec/ffrec.hpp"

namespace oracle {

using ffrec::FieldElement;
using ffrec::IrreduciblePoly;
using ffrec::Poly;
using ffrec::SpecPtr;

// -- standard fields used across the suites ------------------------------

inline SpecPtr f3() {
    static SpecPtr s = ffrec::make_field_spec(3, 1);
    return s;
}
inline SpecPtr f5() {
    static SpecPtr s = ffrec::make_field_spec(5, 1);
    return s;
}
inline SpecPtr f7() {
    static SpecPtr s = ffrec::make_field_spec(7, 1);
    return s;
}
inline SpecPtr f9() {
    static SpecPtr s = ffrec::make_field_spec(3, 2, std::vector<int64_t>{1, 0, 1});
    return s;
}
inline SpecPtr f25() {
    static SpecPtr s = ffrec::make_field_spec(5, 2, std::vector<int64_t>{2, 0, 1});
    return s;
}

// -- independent field arithmetic on coefficient tuples -------------------

using Tuple = std::vector<int64_t>;  // ascending coefficients over F_p, length k

inline Tuple tuple_of(const SpecPtr& spec, uint16_t code) {
    return spec->coeffs_of(code);
}

inline uint16_t code_of(const SpecPtr& spec, const Tuple& t) { return spec->from_coeffs(t); }

// Schoolbook convolution reduced by the spec modulus, all in plain integers.
inline Tuple tuple_mul(const SpecPtr& spec, const Tuple& a, const Tuple& b) {
    int64_t p = spec->p();
    size_t k = size_t(spec->k());
    std::vector<int64_t> conv(2 * k - 1, 0);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) conv[i + j] = (conv[i + j] + a[i] * b[j]) % p;
    if (k > 1) {
        const auto& m = spec->modulus();
        for (size_t i = conv.size(); i-- > k;) {
            int64_t c = conv[i];
            if (c == 0) continue;
            conv[i] = 0;
            for (size_t j = 0; j < k; ++j)
                conv[i - k + j] = ((conv[i - k + j] - c * int64_t(m[j])) % p + p) % p;
        }
    }
    conv.resize(k);
    return conv;
}

inline bool tuple_is_one(const Tuple& t) {
    if (t.empty() || t[0] != 1) return false;
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] != 0) return false;
    return true;
}

// Multiplicative order by exhaustive repeated multiplication.
inline uint64_t tuple_order(const SpecPtr& spec, const Tuple& a) {
    Tuple acc = a;
    uint64_t n = 1;
    while (!tuple_is_one(acc)) {
        acc = tuple_mul(spec, acc, a);
        ++n;
        if (n > spec->q()) return 0;  // not a unit; cannot happen for nonzero codes
    }
    return n;
}

// First element of order q-1 in the ascending-coefficient lexicographic
// order, found without touching the library's tables.
inline uint16_t first_lex_generator(const SpecPtr& spec) {
    for (uint32_t rank = 0; rank < spec->q(); ++rank) {
        uint16_t code = spec->code_at_rank(uint16_t(rank));
        if (code == 0) continue;
        if (tuple_order(spec, tuple_of(spec, code)) == spec->q() - 1) return code;
    }
    return 0;
}

// -- polynomial oracles -----------------------------------------------------

// Trial division: monic f is irreducible iff no monic divisor of degree
// 1..deg(f)/2 divides it exactly.
inline bool irreducible_by_trial_division(const Poly& f) {
    for (const Poly& g : ffrec::enumerate_monic_below(f.spec(), f.degree() / 2 + 1)) {
        if (g.degree() < 1) continue;
        if ((f % g).is_zero()) return false;
    }
    return true;
}

// x^e by plain repeated multiplication mod m.
inline Poly repeated_mul_pow(const Poly& x, uint64_t e, const Poly& m) {
    Poly acc = Poly::one(x.spec()) % m;
    for (uint64_t i = 0; i < e; ++i) acc = ffrec::mulmod(acc, x, m);
    return acc;
}

// Product of all f with 0 < |f| < |P|, reduced mod P.
inline Poly unit_product_mod(const Poly& P) {
    Poly acc = Poly::one(P.spec());
    for (const Poly& f : ffrec::enumerate_nonzero_below(P.spec(), P.degree()))
        acc = ffrec::mulmod(acc, f, P);
    return acc;
}

// Keys of every d-th power among the nonzero residues mod P, with x^d formed
// by repeated multiplication rather than square-and-multiply.
inline std::unordered_set<uint64_t> dth_power_keys(const IrreduciblePoly& P, int64_t d) {
    std::unordered_set<uint64_t> keys;
    for (const Poly& x : ffrec::enumerate_nonzero_below(P.spec(), P.degree()))
        keys.insert(ffrec::poly_key(repeated_mul_pow(x, uint64_t(d), P.poly())));
    return keys;
}

// Canonical U-orbit keys of the whole group G_1 = (A/P)^* x (A/Q)^*, by
// enumerating every unit pair.  check_transversals must match this exactly.
inline std::unordered_set<uint64_t> all_coset_keys(const ffrec::CosetSystem& sys) {
    std::unordered_set<uint64_t> keys;
    auto units_p = ffrec::enumerate_nonzero_below(sys.P.spec(), sys.P.degree());
    auto units_q = ffrec::enumerate_nonzero_below(sys.Q.spec(), sys.Q.degree());
    for (const Poly& u : units_p)
        for (const Poly& v : units_q) keys.insert(ffrec::detail::canonical_u_key(sys, u, v));
    return keys;
}

inline std::unordered_set<uint64_t> s1_coset_keys(const ffrec::CosetSystem& sys) {
    std::unordered_set<uint64_t> keys;
    for (const Poly& f : sys.s_p)
        for (const Poly& h : sys.s_q) keys.insert(ffrec::detail::canonical_u_key(sys, f, h));
    return keys;
}

// -- randomness (fixed seeds keep every run identical) ---------------------

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline Poly random_poly(std::mt19937_64& gen, const SpecPtr& spec, int max_degree) {
    std::uniform_int_distribution<int> deg_dist(-1, max_degree);
    int deg = deg_dist(gen);
    if (deg < 0) return Poly::zero(spec);
    std::uniform_int_distribution<uint32_t> code_dist(0, spec->q() - 1);
    std::vector<uint16_t> codes(size_t(deg) + 1);
    for (auto& c : codes) c = uint16_t(code_dist(gen));
    codes.back() = uint16_t(1 + code_dist(gen) % (spec->q() - 1));  // nonzero lead
    return Poly(spec, std::move(codes));
}

inline Poly random_nonzero_below(std::mt19937_64& gen, const SpecPtr& spec, int degree_bound) {
    while (true) {
        Poly f = random_poly(gen, spec, degree_bound - 1);
        if (!f.is_zero()) return f;
    }
}

}  // namespace oracle
