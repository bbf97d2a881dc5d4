#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ffrec/symbol.hpp"

namespace ffrec {

// -- Chinese remainder machinery -----------------------------------------

/// Precomputed CRT data for coprime P, Q: e_p = 1 mod P, 0 mod Q and
/// symmetrically e_q, so combining is two scalings and a reduction.
struct CrtContext {
    Poly P, Q, PQ;
    Poly e_p, e_q;
};

inline CrtContext make_crt_context(const Poly& P, const Poly& Q) {
    auto [g, u, v] = poly_extended_gcd(P, Q);
    if (g.degree() != 0 || g.is_zero()) fail(errc::not_coprime, "CRT needs coprime moduli");
    Poly pq = P * Q;
    // u*P + v*Q = 1, so v*Q is 1 mod P and 0 mod Q; u*P the mirror image.
    return CrtContext{P, Q, pq, (v * Q) % pq, (u * P) % pq};
}

inline std::pair<Poly, Poly> crt_split(const Poly& h, const CrtContext& ctx) {
    return {h % ctx.P, h % ctx.Q};
}

inline Poly crt_combine(const std::pair<Poly, Poly>& residues, const CrtContext& ctx) {
    return (residues.first * ctx.e_p + residues.second * ctx.e_q) % ctx.PQ;
}

inline std::pair<Poly, Poly> crt_split(const Poly& h, const Poly& P, const Poly& Q) {
    return crt_split(h, make_crt_context(P, Q));
}

inline Poly crt_combine(const std::pair<Poly, Poly>& residues, const Poly& P, const Poly& Q) {
    return crt_combine(residues, make_crt_context(P, Q));
}

// -- coset systems ---------------------------------------------------------

/// The four representative sets the coset-product argument runs on.
///
///   S_P:  all f with 0 < |f| < |P|, a full set of unit residues mod P.
///   S_Q:  representatives of (A/Q)^* / <eta>: the h with 0 < |h| < |Q| whose
///         leading coefficient lies in the transversal {g^0, ..., g^(m-1)} of
///         <eta> in F_q^*, m = (q-1)/d.
///   S2~:  monic h, 0 < |h| < |PQ|, coprime to PQ.
///   S2:   union of g^i * S2~ for i < m, a transversal of U = <(eta,eta)> in
///         (A/P)^* x (A/Q)^* via CRT.
///
/// Construction verifies the eta-partition of the nonzero residues mod Q and
/// all four cardinalities before returning.
struct CosetSystem {
    IrreduciblePoly P, Q;
    int64_t d;
    FieldElement eta;
    std::vector<FieldElement> lead_transversal;  // g^0, ..., g^((q-1)/d - 1)
    std::vector<Poly> s_p, s_q, s2_tilde, s2;
};

namespace detail {

struct CosetBuildDiag {
    bool eq2_partition = false;
    bool cardinalities = false;
};

inline std::pair<CosetSystem, CosetBuildDiag> build_coset_systems_checked(
    const IrreduciblePoly& P, const IrreduciblePoly& Q, int64_t d) {
    const SpecPtr& spec = P.spec();
    if (!Q.spec()->compatible(*spec)) fail(errc::spec_mismatch, "P and Q over different fields");
    if (P.poly() == Q.poly()) fail(errc::equal_primes, "coset systems need distinct primes");
    require_d_divides(spec, d);
    if (checked_norm(P) > std::numeric_limits<uint64_t>::max() / checked_norm(Q))
        fail(errc::too_large, "|PQ| overflows");

    const uint64_t m = (spec->q() - 1) / uint64_t(d);
    FieldElement eta = eta_of(spec, d);

    std::vector<FieldElement> lead;
    lead.reserve(size_t(m));
    for (uint64_t i = 0; i < m; ++i) lead.emplace_back(spec, spec->exp(uint32_t(i)));

    std::vector<Poly> s_p = enumerate_nonzero_below(spec, P.degree());
    std::vector<Poly> s_q = enumerate_lead_in_set_below(spec, Q.degree(), lead);
    Poly pq = P.poly() * Q.poly();
    std::vector<Poly> s2_tilde = enumerate_monic_coprime_below(spec, pq.degree(), pq);

    std::vector<Poly> s2;
    s2.reserve(size_t(m) * s2_tilde.size());
    for (uint64_t i = 0; i < m; ++i) {
        uint16_t scale = spec->exp(uint32_t(i));
        for (const Poly& h : s2_tilde) s2.push_back(h.scaled(scale));
    }

    CosetBuildDiag diag;

    // Eq-partition check: the d translates eta^j * S_Q tile the nonzero
    // residues of degree < deg Q exactly once.
    {
        std::unordered_set<uint64_t> seen;
        bool clean = true;
        for (const Poly& h : s_q) {
            uint16_t scale = spec->one();
            for (int64_t j = 0; j < d; ++j) {
                if (!seen.insert(poly_key(h.scaled(scale))).second) clean = false;
                scale = spec->mul(scale, eta.code());
            }
        }
        uint64_t q_norm = Q.norm();
        diag.eq2_partition = clean && seen.size() == q_norm - 1;
    }

    {
        uint64_t p_norm = P.norm(), q_norm = Q.norm();
        uint64_t units = (p_norm - 1) * (q_norm - 1);
        diag.cardinalities = s_p.size() == p_norm - 1 &&
                             uint64_t(s_q.size()) * uint64_t(d) == q_norm - 1 &&
                             uint64_t(s2_tilde.size()) * (uint64_t(spec->q()) - 1) == units &&
                             uint64_t(s2.size()) * uint64_t(d) == units;
    }

    return {CosetSystem{P, Q, d, eta, std::move(lead), std::move(s_p), std::move(s_q),
                        std::move(s2_tilde), std::move(s2)},
            diag};
}

}  // namespace detail

inline CosetSystem build_coset_systems(const IrreduciblePoly& P, const IrreduciblePoly& Q,
                                       int64_t d) {
    auto [sys, diag] = detail::build_coset_systems_checked(P, Q, d);
    if (!diag.eq2_partition)
        fail(errc::partition_failure, "eta-translates of S_Q do not partition the residues mod Q");
    if (!diag.cardinalities) fail(errc::partition_failure, "coset system cardinality mismatch");
    return sys;
}

// -- transversal verification ----------------------------------------------

struct TransversalCheck {
    bool s1_ok;
    bool s2_ok;
    uint64_t coset_count;  // |G_1| / d
};

namespace detail {

// Order-preserving key for a unit-residue pair (u mod P, v mod Q).
inline uint64_t pair_key(const CosetSystem& sys, const Poly& u, const Poly& v) {
    uint64_t ku = poly_key(u), kv = poly_key(v);
    uint64_t width = 2;  // kv < 2 q^deg Q
    for (int i = 0; i < sys.Q.degree(); ++i) {
        if (width > std::numeric_limits<uint64_t>::max() / sys.P.spec()->q())
            fail(errc::too_large, "residue pair too large to key");
        width *= sys.P.spec()->q();
    }
    if (ku > (std::numeric_limits<uint64_t>::max() - kv) / width)
        fail(errc::too_large, "residue pair too large to key");
    return ku * width + kv;
}

// Canonical key of the U-orbit of (u, v): minimum pair key over the diagonal
// eta-scalings, i.e. over the whole coset of U.
inline uint64_t canonical_u_key(const CosetSystem& sys, const Poly& u, const Poly& v) {
    const SpecPtr& spec = sys.P.spec();
    uint64_t best = std::numeric_limits<uint64_t>::max();
    uint16_t scale = spec->one();
    for (int64_t j = 0; j < sys.d; ++j) {
        best = std::min(best, pair_key(sys, u.scaled(scale), v.scaled(scale)));
        scale = spec->mul(scale, sys.eta.code());
    }
    return best;
}

}  // namespace detail

/// Verifies that S_1 = S_P x S_Q and S_2 (through CRT) each pick exactly one
/// representative from every coset of U in G_1.  The diagonal action of eta
/// on unit pairs is free, so |G_1|/d pairwise-distinct orbit keys cover all
/// orbits.
inline TransversalCheck check_transversals(const CosetSystem& sys) {
    uint64_t group_order = (sys.P.norm() - 1) * (sys.Q.norm() - 1);
    uint64_t coset_count = group_order / uint64_t(sys.d);

    bool s1_ok = true;
    {
        std::unordered_set<uint64_t> keys;
        keys.reserve(sys.s_p.size() * sys.s_q.size());
        for (const Poly& f : sys.s_p)
            for (const Poly& h : sys.s_q)
                if (!keys.insert(detail::canonical_u_key(sys, f, h)).second) s1_ok = false;
        s1_ok = s1_ok && keys.size() == coset_count;
    }

    bool s2_ok = true;
    {
        std::unordered_set<uint64_t> keys;
        keys.reserve(sys.s2.size());
        for (const Poly& h : sys.s2) {
            Poly u = h % sys.P.poly(), v = h % sys.Q.poly();
            if (u.is_zero() || v.is_zero()) {
                s2_ok = false;
                continue;
            }
            if (!keys.insert(detail::canonical_u_key(sys, u, v)).second) s2_ok = false;
        }
        s2_ok = s2_ok && keys.size() == coset_count;
    }

    return TransversalCheck{s1_ok, s2_ok, coset_count};
}

// -- the intermediate identities -------------------------------------------

/// S2~ equals {monic f, 0<|f|<|P|} union {hP+f : h monic, 0<|h|<|Q|,
/// f arbitrary with 0<|f|<|P|} minus {fQ : f monic, 0<|f|<|P|}, as sets.
inline bool decomposition_identity(const CosetSystem& sys) {
    const SpecPtr& spec = sys.P.spec();
    std::unordered_set<uint64_t> expected;

    for (const Poly& f : enumerate_monic_below(spec, sys.P.degree())) expected.insert(poly_key(f));
    for (const Poly& h : enumerate_monic_below(spec, sys.Q.degree()))
        for (const Poly& f : enumerate_nonzero_below(spec, sys.P.degree()))
            expected.insert(poly_key(h * sys.P.poly() + f));
    for (const Poly& f : enumerate_monic_below(spec, sys.P.degree()))
        expected.erase(poly_key(f * sys.Q.poly()));

    if (expected.size() != sys.s2_tilde.size()) return false;
    for (const Poly& h : sys.s2_tilde)
        if (!expected.count(poly_key(h))) return false;
    return true;
}

/// eta^(d(d-1)/2) = (-1)^(d-1) in F_q.
inline bool eta_sign_identity(const SpecPtr& spec, int64_t d) {
    detail::require_d_divides(spec, d);
    FieldElement eta = eta_of(spec, d);
    FieldElement lhs = eta.pow(uint64_t(d) * uint64_t(d - 1) / 2);
    FieldElement rhs = (d - 1) % 2 == 0 ? one_of(spec) : minus_one_of(spec);
    return lhs == rhs;
}

/// (prod over S_Q of h)^d = (-1)^((|Q|-1)/d) * prod of all h with
/// 0 < |h| < |Q|, both sides reduced mod Q.
inline bool sq_power_identity(const CosetSystem& sys) {
    const SpecPtr& spec = sys.P.spec();
    const Poly& Q = sys.Q.poly();

    Poly prod_sq = Poly::one(spec);
    for (const Poly& h : sys.s_q) prod_sq = mulmod(prod_sq, h, Q);
    Poly lhs = poly_modexp(prod_sq, uint64_t(sys.d), Q);

    Poly all = Poly::one(spec);
    for (const Poly& h : enumerate_nonzero_below(spec, sys.Q.degree())) all = mulmod(all, h, Q);
    uint64_t b = (sys.Q.norm() - 1) / uint64_t(sys.d);
    Poly rhs = b % 2 == 0 ? all : all.scaled(spec->minus_one());

    return lhs == rhs;
}

// -- the two products --------------------------------------------------------

/// A point of G_1 written out: residues mod P and mod Q.
struct ResiduePair {
    Poly mod_p;
    Poly mod_q;

    friend bool operator==(const ResiduePair& a, const ResiduePair& b) {
        return a.mod_p == b.mod_p && a.mod_q == b.mod_q;
    }
    friend bool operator!=(const ResiduePair& a, const ResiduePair& b) { return !(a == b); }
};

/// The smallest i in [0, d) with a = (eta^i, eta^i) * b componentwise, if any:
/// the witness that a and b agree in G = G_1/U.
inline std::optional<int64_t> diagonal_eta_shift(const ResiduePair& a, const ResiduePair& b,
                                                 const CosetSystem& sys) {
    const SpecPtr& spec = sys.P.spec();
    uint16_t scale = spec->one();
    for (int64_t i = 0; i < sys.d; ++i) {
        if (a.mod_p == b.mod_p.scaled(scale) && a.mod_q == b.mod_q.scaled(scale)) return i;
        scale = spec->mul(scale, sys.eta.code());
    }
    return std::nullopt;
}

/// Direct product of all elements of S_2, reduced mod P and mod Q at every
/// step.  No closed form involved; this is the brute-force side of the check.
inline ResiduePair direct_s2_product(const CosetSystem& sys) {
    const SpecPtr& spec = sys.P.spec();
    Poly ap = Poly::one(spec), aq = Poly::one(spec);
    for (const Poly& h : sys.s2) {
        ap = mulmod(ap, h, sys.P.poly());
        aq = mulmod(aq, h, sys.Q.poly());
    }
    return ResiduePair{ap, aq};
}

namespace detail {

struct PiForms {
    ResiduePair s1_direct;  // componentwise product over S_1 = S_P x S_Q
    ResiduePair s1_closed;  // after the sign rewrite of the S_Q component
    ResiduePair s2_direct;
    ResiduePair s2_closed;  // closed form dividing out the two residue symbols
};

inline PiForms compute_pi_forms(const CosetSystem& sys) {
    const SpecPtr& spec = sys.P.spec();
    const Poly& P = sys.P.poly();
    const Poly& Q = sys.Q.poly();
    const uint64_t a_exp = (sys.P.norm() - 1) / uint64_t(sys.d);  // (|P|-1)/d
    const uint64_t b_exp = (sys.Q.norm() - 1) / uint64_t(sys.d);  // (|Q|-1)/d

    Poly prod_sp = Poly::one(spec);
    for (const Poly& f : sys.s_p) prod_sp = mulmod(prod_sp, f, P);
    Poly prod_sq = Poly::one(spec);
    for (const Poly& h : sys.s_q) prod_sq = mulmod(prod_sq, h, Q);
    Poly all_q = Poly::one(spec);  // product of every h with 0 < |h| < |Q|
    for (const Poly& h : enumerate_nonzero_below(spec, sys.Q.degree())) all_q = mulmod(all_q, h, Q);

    // Componentwise product over S_1: each f in S_P occurs |S_Q| times, each
    // h in S_Q occurs |S_P| times.
    ResiduePair s1_direct{poly_modexp(prod_sp, uint64_t(sys.s_q.size()), P),
                          poly_modexp(prod_sq, uint64_t(sys.s_p.size()), Q)};

    // Rewritten second component: (-1)^(((|P|-1)/d)((|Q|-1)/d)) times the
    // product of all residues raised to (|P|-1)/d.
    bool sign_negative = (a_exp % 2 == 1) && (b_exp % 2 == 1);
    Poly second = poly_modexp(all_q, a_exp, Q);
    if (sign_negative) second = second.scaled(spec->minus_one());
    ResiduePair s1_closed{poly_modexp(prod_sp, b_exp, P), second};

    ResiduePair s2_direct = direct_s2_product(sys);

    // Closed form of the S_2 product: the telescoped value divided by the
    // residue symbols (Q/P)_d mod P and (P/Q)_d mod Q.
    SymbolValue q_over_p = power_residue_symbol(Q, sys.P, sys.d);
    SymbolValue p_over_q = power_residue_symbol(P, sys.Q, sys.d);
    ResiduePair s2_closed{
        poly_modexp(prod_sp, b_exp, P).scaled(spec->inv(q_over_p.value.code())),
        poly_modexp(all_q, a_exp, Q).scaled(spec->inv(p_over_q.value.code()))};

    return PiForms{s1_direct, s1_closed, s2_direct, s2_closed};
}

}  // namespace detail

/// pi under S_1: ((prod S_P)^((|Q|-1)/d) mod P, (prod S_Q)^(|P|-1) mod Q).
/// Computed both as the plain componentwise product and through the sign
/// rewrite; the two must agree.
inline ResiduePair product_pi_s1(const CosetSystem& sys) {
    auto forms = detail::compute_pi_forms(sys);
    if (forms.s1_direct != forms.s1_closed)
        fail(errc::form_mismatch, "S_1 product disagrees with its sign rewrite");
    return forms.s1_direct;
}

/// pi under S_2, computed both as the direct product over S_2 and through the
/// closed form that divides out the two residue symbols; the two must agree.
inline ResiduePair product_pi_s2(const CosetSystem& sys) {
    auto forms = detail::compute_pi_forms(sys);
    if (forms.s2_direct != forms.s2_closed)
        fail(errc::form_mismatch, "S_2 product disagrees with its closed form");
    return forms.s2_direct;
}

// -- full proof replay --------------------------------------------------------

/// Everything verify_proof measured, plus the derived reciprocity verdict.
/// pass is true iff every identity flag holds and derived_lhs = expected_rhs.
struct ProofReport {
    ResiduePair pi_s1;
    ResiduePair pi_s2;
    std::optional<int64_t> u_witness;  // i with pi_s1 = (eta^i, eta^i) * pi_s2

    bool eq2_partition;
    bool s1_transversal;
    bool s2_transversal;
    bool decomposition_identity;
    bool eta_sign_identity;
    bool sq_power_identity;
    bool pi_equal_mod_u;
    bool telescoped_matches_direct;

    FieldElement derived_lhs;   // (P/Q)_d ((Q/P)_d)^-1 recovered from the ratios
    FieldElement expected_rhs;  // (-1)^(((q-1)/d) deg P deg Q)
    bool pass;
};

/// Replays the whole argument on (P, Q, d): builds both coset representations,
/// checks every intermediate identity, compares the two products modulo U and
/// derives the reciprocity statement.  Mathematical failures are report
/// states, never exceptions; precondition violations still throw.
inline ProofReport verify_proof(const IrreduciblePoly& P, const IrreduciblePoly& Q, int64_t d) {
    auto [sys, diag] = detail::build_coset_systems_checked(P, Q, d);
    const SpecPtr& spec = sys.P.spec();

    TransversalCheck transversals = check_transversals(sys);
    bool decomposition = decomposition_identity(sys);
    bool eta_sign = eta_sign_identity(spec, d);
    bool sq_power = sq_power_identity(sys);

    auto forms = detail::compute_pi_forms(sys);
    bool forms_agree =
        forms.s1_direct == forms.s1_closed && forms.s2_direct == forms.s2_closed;
    ResiduePair pi_s1 = forms.s1_direct;
    ResiduePair pi_s2 = forms.s2_direct;

    std::optional<int64_t> witness = diagonal_eta_shift(pi_s1, pi_s2, sys);

    // Componentwise ratios pi_s1 / pi_s2.  With the closed forms verified they
    // equal (Q/P)_d mod P and (-1)^(AB) (P/Q)_d mod Q, so the symbols fall out
    // of the product comparison itself.
    const uint64_t a_exp = (sys.P.norm() - 1) / uint64_t(d);
    const uint64_t b_exp = (sys.Q.norm() - 1) / uint64_t(d);
    bool sign_negative = (a_exp % 2 == 1) && (b_exp % 2 == 1);
    FieldElement sign_ab = sign_negative ? minus_one_of(spec) : one_of(spec);

    auto constant_ratio = [&](const Poly& num, const Poly& den,
                              const Poly& mod) -> std::optional<FieldElement> {
        if (poly_gcd(den, mod).degree() != 0) return std::nullopt;
        Poly ratio = mulmod(num, inverse_mod(den, mod), mod);
        if (ratio.degree() != 0) return std::nullopt;
        return ratio.coeff(0);
    };
    std::optional<FieldElement> ratio_p = constant_ratio(pi_s1.mod_p, pi_s2.mod_p, P.poly());
    std::optional<FieldElement> ratio_q = constant_ratio(pi_s1.mod_q, pi_s2.mod_q, Q.poly());

    FieldElement derived_lhs = [&] {
        if (ratio_p && ratio_q) return sign_ab * *ratio_q * ratio_p->inverse();
        // Degenerate ratios mean some identity above already failed; fall back
        // to the directly computed symbols so the report stays well-formed.
        SymbolValue p_over_q = power_residue_symbol(P.poly(), Q, d);
        SymbolValue q_over_p = power_residue_symbol(Q.poly(), P, d);
        return p_over_q.value * q_over_p.value.inverse();
    }();
    FieldElement expected_rhs = reciprocity_rhs(P, Q, d);

    bool ratios_ok = ratio_p.has_value() && ratio_q.has_value();
    bool all_flags = diag.eq2_partition && diag.cardinalities && transversals.s1_ok &&
                     transversals.s2_ok && decomposition && eta_sign && sq_power &&
                     witness.has_value() && forms_agree && ratios_ok;

    return ProofReport{pi_s1,
                       pi_s2,
                       witness,
                       diag.eq2_partition && diag.cardinalities,
                       transversals.s1_ok,
                       transversals.s2_ok,
                       decomposition,
                       eta_sign,
                       sq_power,
                       witness.has_value(),
                       forms_agree,
                       derived_lhs,
                       expected_rhs,
                       all_flags && derived_lhs == expected_rhs};
}

}  // namespace ffrec
