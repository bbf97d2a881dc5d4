#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "ffrec/field.hpp"

namespace ffrec {

/// An element of A = F_q[t] in canonical form: ascending coefficient codes
/// with a nonzero leading coefficient; the zero polynomial is the empty
/// sequence and reports degree -1.
class Poly {
public:
    explicit Poly(SpecPtr spec) : spec_(std::move(spec)) {}

    Poly(SpecPtr spec, std::vector<uint16_t> coeff_codes)
        : spec_(std::move(spec)), c_(std::move(coeff_codes)) {
        normalize();
    }

    static Poly zero(const SpecPtr& spec) { return Poly(spec); }
    static Poly one(const SpecPtr& spec) { return Poly(spec, {spec->one()}); }
    static Poly t(const SpecPtr& spec) { return Poly(spec, {0, spec->one()}); }
    static Poly constant(const FieldElement& c) { return Poly(c.spec(), {c.code()}); }

    /// Coefficients as integers embedded through the prime subfield (handy in
    /// prime fields where codes and integers coincide).
    static Poly from_ints(const SpecPtr& spec, const std::vector<int64_t>& coeffs) {
        std::vector<uint16_t> codes;
        codes.reserve(coeffs.size());
        for (int64_t c : coeffs) codes.push_back(spec->from_int(c));
        return Poly(spec, std::move(codes));
    }

    const SpecPtr& spec() const { return spec_; }
    const std::vector<uint16_t>& coeff_codes() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 marks the zero polynomial
    bool is_constant() const { return c_.size() <= 1; }

    uint16_t coeff_code(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint16_t leading_code() const { return c_.empty() ? 0 : c_.back(); }
    FieldElement coeff(size_t i) const { return FieldElement(spec_, coeff_code(i)); }
    FieldElement leading() const { return FieldElement(spec_, leading_code()); }
    bool is_monic() const { return !c_.empty() && c_.back() == spec_->one(); }

    /// |f| = q^deg f, with |0| = 0.  Saturates instead of wrapping.
    uint64_t norm() const {
        if (c_.empty()) return 0;
        uint64_t n = 1;
        for (int i = 0; i < degree(); ++i) {
            if (n > std::numeric_limits<uint64_t>::max() / spec_->q())
                return std::numeric_limits<uint64_t>::max();
            n *= spec_->q();
        }
        return n;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.c_ == b.c_ && a.spec_->compatible(*b.spec_);
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        const SpecPtr& s = same_spec(a, b);
        std::vector<uint16_t> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < out.size(); ++i) out[i] = s->add(a.coeff_code(i), b.coeff_code(i));
        return Poly(s, std::move(out));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        const SpecPtr& s = same_spec(a, b);
        std::vector<uint16_t> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < out.size(); ++i) out[i] = s->sub(a.coeff_code(i), b.coeff_code(i));
        return Poly(s, std::move(out));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        const SpecPtr& s = same_spec(a, b);
        if (a.is_zero() || b.is_zero()) return Poly(s);
        std::vector<uint16_t> out(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] = s->add(out[i + j], s->mul(a.c_[i], b.c_[j]));
        }
        return Poly(s, std::move(out));
    }

    Poly operator-() const {
        std::vector<uint16_t> out(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) out[i] = spec_->neg(c_[i]);
        return Poly(spec_, std::move(out));
    }

    Poly scaled(uint16_t scalar_code) const {
        if (scalar_code == 0) return Poly(spec_);
        std::vector<uint16_t> out(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) out[i] = spec_->mul(c_[i], scalar_code);
        return Poly(spec_, std::move(out));
    }

    friend Poly operator*(const FieldElement& c, const Poly& f) {
        if (!c.spec()->compatible(*f.spec_)) fail(errc::spec_mismatch, "scalar from a different field");
        return f.scaled(c.code());
    }

    Poly monic() const {
        if (is_zero() || is_monic()) return *this;
        return scaled(spec_->inv(c_.back()));
    }

private:
    static const SpecPtr& same_spec(const Poly& a, const Poly& b) {
        if (!a.spec_->compatible(*b.spec_)) fail(errc::spec_mismatch, "polynomials over different fields");
        return a.spec_;
    }

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    SpecPtr spec_;
    std::vector<uint16_t> c_;
};

/// Quotient and remainder with deg r < deg g.
inline std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
    if (!f.spec()->compatible(*g.spec())) fail(errc::spec_mismatch, "polynomials over different fields");
    const SpecPtr& s = f.spec();
    std::vector<uint16_t> r(f.coeff_codes());
    int dg = g.degree();
    if (f.degree() < dg) return {Poly(s), f};
    std::vector<uint16_t> q(size_t(f.degree() - dg) + 1, 0);
    uint16_t lead_inv = s->inv(g.leading_code());
    for (int i = f.degree(); i >= dg; --i) {
        uint16_t c = r[size_t(i)];
        if (c == 0) continue;
        uint16_t scale = s->mul(c, lead_inv);
        q[size_t(i - dg)] = scale;
        for (int j = 0; j <= dg; ++j)
            r[size_t(i - dg + j)] = s->sub(r[size_t(i - dg + j)], s->mul(scale, g.coeff_code(size_t(j))));
    }
    return {Poly(s, std::move(q)), Poly(s, std::move(r))};
}

inline Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }
inline Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// (g, u, v) with u*a + v*b = g = monic gcd(a, b).
inline std::tuple<Poly, Poly, Poly> poly_extended_gcd(const Poly& a, const Poly& b) {
    const SpecPtr& s = a.spec();
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(s), u1 = Poly::zero(s);
    Poly v0 = Poly::zero(s), v1 = Poly::one(s);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        Poly u2 = u0 - q * u1;
        Poly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    uint16_t scale = s->inv(r0.leading_code());
    return {r0.scaled(scale), u0.scaled(scale), v0.scaled(scale)};
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

/// f^e mod m by square-and-multiply, reducing at every step.
inline Poly poly_modexp(const Poly& f, uint64_t e, const Poly& m) {
    if (m.is_zero()) fail(errc::division_by_zero, "zero modulus");
    Poly result = Poly::one(f.spec()) % m;
    Poly base = f % m;
    while (e) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

/// Inverse of f mod m (f coprime to m).  The extended gcd is monic, so the
/// Bezout coefficient is already scaled.
inline Poly inverse_mod(const Poly& f, const Poly& m) {
    auto [g, u, v] = poly_extended_gcd(f % m, m);
    (void)v;
    if (g.degree() != 0) fail(errc::not_coprime, "element not invertible modulo m");
    return u % m;
}

// -- the canonical total order on polynomials ---------------------------
//
// Degree-major, then lexicographic on the ascending coefficient sequence
// (c0 compared first), with each coefficient compared by its own
// ascending-sequence rank.  The zero polynomial comes first.

inline bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& s = *a.spec();
    for (size_t i = 0; i <= size_t(std::max(a.degree(), 0)); ++i) {
        uint16_t ra = s.rank_of(a.coeff_code(i));
        uint16_t rb = s.rank_of(b.coeff_code(i));
        if (ra != rb) return ra < rb;
    }
    return false;
}

/// Order-preserving injection into uint64 for polynomials of bounded degree;
/// key(0) = 0, and nonzero f of degree e maps into [q^(e+1), 2 q^(e+1)).
/// Digits run c0 first, mirroring the canonical order above.
inline uint64_t poly_key(const Poly& f) {
    if (f.is_zero()) return 0;
    const auto& s = *f.spec();
    uint64_t key = 1;
    for (int i = 0; i <= f.degree(); ++i) {
        if (key > (std::numeric_limits<uint64_t>::max() - s.q()) / s.q())
            fail(errc::too_large, "polynomial too large to key");
        key = key * s.q() + s.rank_of(f.coeff_code(size_t(i)));
    }
    return key;
}

// -- enumeration ---------------------------------------------------------
//
// All enumerations emit each polynomial exactly once, in the canonical
// order above: by degree, then lexicographically on (c0, ..., c_deg).

namespace detail {

// Runs fn over all polynomials of degree exactly e whose leading coefficient
// is drawn from lead_codes (already rank-sorted); lower coefficients sweep
// all of F_q in rank order, c0 slowest.
template <typename Fn>
void for_each_of_degree(const SpecPtr& spec, int e, const std::vector<uint16_t>& lead_codes, Fn&& fn) {
    const uint32_t q = spec->q();
    std::vector<uint16_t> ranks(size_t(e) + 1, 0);  // ranks[i] is the rank of c_i
    while (true) {
        for (uint16_t lead : lead_codes) {
            std::vector<uint16_t> codes(size_t(e) + 1);
            for (int i = 0; i < e; ++i) codes[size_t(i)] = spec->code_at_rank(ranks[size_t(i)]);
            codes[size_t(e)] = lead;
            fn(Poly(spec, std::move(codes)));
        }
        // odometer on the low coefficients, last position fastest
        int i = e - 1;
        while (i >= 0 && ranks[size_t(i)] == q - 1) ranks[size_t(i--)] = 0;
        if (i < 0) break;
        ++ranks[size_t(i)];
    }
}

inline std::vector<uint16_t> rank_sorted(const SpecPtr& spec, std::vector<uint16_t> codes) {
    std::sort(codes.begin(), codes.end(),
              [&](uint16_t a, uint16_t b) { return spec->rank_of(a) < spec->rank_of(b); });
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

}  // namespace detail

/// All f with 0 < |f| < q^n, i.e. nonzero of degree < n.
inline std::vector<Poly> enumerate_nonzero_below(const SpecPtr& spec, int n) {
    std::vector<Poly> out;
    if (n < 1) return out;
    std::vector<uint16_t> leads;
    for (uint32_t r = 1; r < spec->q(); ++r) leads.push_back(spec->code_at_rank(uint16_t(r)));
    for (int e = 0; e < n; ++e)
        detail::for_each_of_degree(spec, e, leads, [&](Poly f) { out.push_back(std::move(f)); });
    return out;
}

/// All monic f of degree < n (degree 0 gives the constant 1).
inline std::vector<Poly> enumerate_monic_below(const SpecPtr& spec, int n) {
    std::vector<Poly> out;
    if (n < 1) return out;
    std::vector<uint16_t> leads = {spec->one()};
    for (int e = 0; e < n; ++e)
        detail::for_each_of_degree(spec, e, leads, [&](Poly f) { out.push_back(std::move(f)); });
    return out;
}

/// All nonzero f of degree < n whose leading coefficient lies in lead_set.
inline std::vector<Poly> enumerate_lead_in_set_below(const SpecPtr& spec, int n,
                                                     const std::vector<FieldElement>& lead_set) {
    std::vector<uint16_t> leads;
    leads.reserve(lead_set.size());
    for (const auto& c : lead_set) {
        if (c.is_zero()) fail(errc::invalid_parameter, "leading coefficients must be nonzero");
        leads.push_back(c.code());
    }
    leads = detail::rank_sorted(spec, std::move(leads));
    std::vector<Poly> out;
    if (n < 1) return out;
    for (int e = 0; e < n; ++e)
        detail::for_each_of_degree(spec, e, leads, [&](Poly f) { out.push_back(std::move(f)); });
    return out;
}

/// All monic f of degree < n with gcd(f, m) = 1.
inline std::vector<Poly> enumerate_monic_coprime_below(const SpecPtr& spec, int n, const Poly& m) {
    if (m.is_zero()) fail(errc::division_by_zero, "coprimality filter needs a nonzero modulus");
    std::vector<Poly> out;
    if (n < 1) return out;
    std::vector<uint16_t> leads = {spec->one()};
    for (int e = 0; e < n; ++e)
        detail::for_each_of_degree(spec, e, leads, [&](Poly f) {
            if (poly_gcd(f, m).degree() == 0) out.push_back(std::move(f));
        });
    return out;
}

// -- irreducibility -------------------------------------------------------

/// Rabin's test: monic f of degree n is irreducible over F_q iff
/// t^(q^n) = t (mod f) and gcd(t^(q^(n/l)) - t, f) = 1 for every prime l | n.
inline bool is_irreducible(const Poly& f_in) {
    if (f_in.degree() < 1) fail(errc::constant_input, "irreducibility needs degree >= 1");
    Poly f = f_in.monic();
    const SpecPtr& spec = f.spec();
    int n = f.degree();
    Poly t = Poly::t(spec) % f;

    // Frobenius ladder: frob[i] = t^(q^i) mod f
    std::vector<Poly> frob;
    frob.reserve(size_t(n) + 1);
    frob.push_back(t);
    for (int i = 0; i < n; ++i) frob.push_back(poly_modexp(frob.back(), spec->q(), f));

    if (frob[size_t(n)] != t) return false;
    for (int64_t l : detail::prime_factors(uint64_t(n))) {
        if (poly_gcd(frob[size_t(n / l)] - t, f).degree() != 0) return false;
    }
    return true;
}

/// Necklace count: the number of monic irreducibles of degree n over F_q,
/// (1/n) * sum over m | n of mu(n/m) q^m.
inline uint64_t count_monic_irreducible(const SpecPtr& spec, int n) {
    if (n < 1) fail(errc::invalid_parameter, "degree must be >= 1");
    auto mobius = [](uint64_t v) -> int64_t {
        int64_t mu = 1;
        for (uint64_t f = 2; f * f <= v; ++f) {
            if (v % f == 0) {
                v /= f;
                if (v % f == 0) return 0;
                mu = -mu;
            }
        }
        if (v > 1) mu = -mu;
        return mu;
    };
    auto qpow = [&](int e) {
        uint64_t r = 1;
        for (int i = 0; i < e; ++i) {
            if (r > std::numeric_limits<uint64_t>::max() / spec->q())
                fail(errc::too_large, "q^n overflows");
            r *= spec->q();
        }
        return r;
    };
    int64_t total = 0;
    for (int m = 1; m <= n; ++m) {
        if (n % m != 0) continue;
        total += mobius(uint64_t(n / m)) * int64_t(qpow(m));
    }
    return uint64_t(total / n);
}

/// A monic irreducible of degree >= 1, validated at construction.
class IrreduciblePoly {
public:
    explicit IrreduciblePoly(Poly f) : p_(std::move(f)) {
        if (p_.degree() < 1) fail(errc::constant_input, "irreducible polynomials have degree >= 1");
        if (!p_.is_monic()) fail(errc::not_monic, "irreducible moduli must be monic");
        if (!is_irreducible(p_)) fail(errc::not_irreducible, "polynomial is not irreducible over F_q");
    }

    const Poly& poly() const { return p_; }
    const SpecPtr& spec() const { return p_.spec(); }
    int degree() const { return p_.degree(); }
    uint64_t norm() const { return p_.norm(); }

    friend bool operator==(const IrreduciblePoly& a, const IrreduciblePoly& b) {
        return a.p_ == b.p_;
    }
    friend bool operator!=(const IrreduciblePoly& a, const IrreduciblePoly& b) {
        return !(a == b);
    }

private:
    Poly p_;
};

}  // namespace ffrec
