#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffrec/errors.hpp"

namespace ffrec {

class FieldSpec;
class FieldElement;

using SpecPtr = std::shared_ptr<const FieldSpec>;

/// The finite field F_q, q = p^k with p an odd prime.
///
/// Elements are stored as integer codes in [0, q): the code of an element with
/// coefficient vector (c0, ..., c_{k-1}) over F_p is sum c_i * p^i.  All
/// multiplicative structure goes through exp/log tables built from a fixed
/// primitive element g, so the whole object is immutable after construction
/// and safe to share across threads.
class FieldSpec {
public:
    int64_t p() const { return p_; }
    int k() const { return k_; }
    uint32_t q() const { return q_; }
    uint16_t generator() const { return g_; }

    /// Modulus coefficients (ascending, monic, length k+1); empty when k == 1.
    const std::vector<uint16_t>& modulus() const { return modulus_; }

    bool compatible(const FieldSpec& other) const {
        if (this == &other) return true;
        return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_ && g_ == other.g_;
    }

    // -- arithmetic on element codes ------------------------------------

    uint16_t add(uint16_t a, uint16_t b) const {
        if (!add_table_.empty()) return add_table_[size_t(a) * q_ + b];
        return add_digitwise(a, b);
    }

    uint16_t neg(uint16_t a) const { return neg_table_[a]; }

    uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg_table_[b]); }

    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[size_t(log_[a]) + log_[b]];
    }

    uint16_t inv(uint16_t a) const {
        if (a == 0) fail(errc::division_by_zero, "inverse of zero field element");
        return exp_[q_ - 1 - log_[a]];
    }

    uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

    uint16_t pow(uint16_t a, uint64_t e) const {
        if (a == 0) return e == 0 ? one() : 0;
        uint64_t r = (uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
        return exp_[r];
    }

    uint16_t one() const { return 1; }
    uint16_t minus_one() const { return neg_table_[1]; }

    /// g^e for e in [0, 2(q-1)); the table is doubled so sums of two logs index directly.
    uint16_t exp(uint32_t e) const { return exp_[e % (q_ - 1)]; }
    uint32_t log(uint16_t a) const {
        if (a == 0) fail(errc::zero_element, "discrete log of zero");
        return log_[a];
    }

    /// Embeds an integer via the prime subfield, reducing mod p.
    uint16_t from_int(int64_t v) const {
        int64_t r = v % p_;
        if (r < 0) r += p_;
        return uint16_t(r);
    }

    std::vector<int64_t> coeffs_of(uint16_t code) const {
        std::vector<int64_t> out(static_cast<size_t>(k_), 0);
        for (int i = 0; i < k_; ++i) {
            out[size_t(i)] = code % p_;
            code = uint16_t(code / p_);
        }
        return out;
    }

    uint16_t from_coeffs(const std::vector<int64_t>& coeffs) const {
        if (coeffs.size() > size_t(k_))
            fail(errc::coeff_length_mismatch,
                 "element needs at most " + std::to_string(k_) + " coefficients, got " +
                     std::to_string(coeffs.size()));
        uint32_t code = 0;
        for (size_t i = coeffs.size(); i-- > 0;) code = code * uint32_t(p_) + from_int(coeffs[i]);
        return uint16_t(code);
    }

    // -- the canonical total order on elements --------------------------
    //
    // Elements compare by their ascending coefficient sequence (c0 first),
    // lexicographically.  rank/unrank convert between codes and positions
    // in that order.

    uint16_t rank_of(uint16_t code) const { return rank_of_code_[code]; }
    uint16_t code_at_rank(uint16_t rank) const { return code_of_rank_[rank]; }

private:
    FieldSpec() = default;
    friend SpecPtr make_field_spec(int64_t p, int k, std::optional<std::vector<int64_t>> modulus,
                                   std::optional<std::vector<int64_t>> generator);

    uint16_t add_digitwise(uint32_t a, uint32_t b) const {
        uint32_t out = 0, scale = 1;
        for (int i = 0; i < k_; ++i) {
            uint32_t s = a % uint32_t(p_) + b % uint32_t(p_);
            if (s >= uint32_t(p_)) s -= uint32_t(p_);
            out += s * scale;
            scale *= uint32_t(p_);
            a /= uint32_t(p_);
            b /= uint32_t(p_);
        }
        return uint16_t(out);
    }

    int64_t p_ = 0;
    int k_ = 0;
    uint32_t q_ = 0;
    std::vector<uint16_t> modulus_;
    uint16_t g_ = 0;

    std::vector<uint16_t> exp_;         // size 2(q-1): g^i, doubled
    std::vector<uint32_t> log_;         // size q; log_[0] unused
    std::vector<uint16_t> neg_table_;   // size q
    std::vector<uint16_t> add_table_;   // size q*q when q is small, else empty
    std::vector<uint16_t> rank_of_code_;
    std::vector<uint16_t> code_of_rank_;
};

/// An element of F_q tied to its FieldSpec.  Canonical: equal iff codes equal.
class FieldElement {
public:
    FieldElement(SpecPtr spec, uint16_t code) : spec_(std::move(spec)), code_(code) {}

    const SpecPtr& spec() const { return spec_; }
    uint16_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    std::vector<int64_t> coeffs() const { return spec_->coeffs_of(code_); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.code_ == b.code_ && a.spec_->compatible(*b.spec_);
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        return FieldElement(same_spec(a, b), a.spec_->add(a.code_, b.code_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        return FieldElement(same_spec(a, b), a.spec_->sub(a.code_, b.code_));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        return FieldElement(same_spec(a, b), a.spec_->mul(a.code_, b.code_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return FieldElement(same_spec(a, b), a.spec_->div(a.code_, b.code_));
    }
    FieldElement operator-() const { return FieldElement(spec_, spec_->neg(code_)); }

    FieldElement inverse() const { return FieldElement(spec_, spec_->inv(code_)); }
    FieldElement pow(uint64_t e) const { return FieldElement(spec_, spec_->pow(code_, e)); }

private:
    static const SpecPtr& same_spec(const FieldElement& a, const FieldElement& b) {
        if (!a.spec_->compatible(*b.spec_))
            fail(errc::spec_mismatch, "operands belong to different fields");
        return a.spec_;
    }

    SpecPtr spec_;
    uint16_t code_;
};

namespace detail {

// Plain digit-vector arithmetic over F_p, used only while bootstrapping a
// FieldSpec (before the exp/log tables exist) and for modulus validation.

inline bool is_odd_prime(int64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int64_t i = 3; i * i <= p; i += 2)
        if (p % i == 0) return false;
    return true;
}

inline std::vector<int64_t> prime_factors(uint64_t n) {
    std::vector<int64_t> out;
    for (uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(int64_t(f));
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(int64_t(n));
    return out;
}

using Digits = std::vector<uint16_t>;  // ascending coefficients over F_p

inline void trim(Digits& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// (a * b) mod m over F_p; m monic of degree k, a and b of degree < k.
inline Digits mulmod_digits(const Digits& a, const Digits& b, const Digits& m, int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int64_t> conv(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) conv[i + j] = (conv[i + j] + int64_t(a[i]) * b[j]) % p;
    size_t k = m.size() - 1;
    for (size_t i = conv.size(); i-- > k;) {
        int64_t c = conv[i];
        if (c == 0) continue;
        conv[i] = 0;
        for (size_t j = 0; j < k; ++j) {
            conv[i - k + j] = ((conv[i - k + j] - c * m[j]) % p + p) % p;
        }
    }
    Digits out;
    out.reserve(k);
    for (size_t i = 0; i < k && i < conv.size(); ++i) out.push_back(uint16_t(conv[i]));
    trim(out);
    return out;
}

// Remainder of a by monic b over F_p.
inline Digits rem_digits(Digits a, const Digits& b, int64_t p) {
    trim(a);
    size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        int64_t c = a.back();
        size_t shift = a.size() - b.size();
        for (size_t j = 0; j <= db; ++j)
            a[shift + j] = uint16_t(((int64_t(a[shift + j]) - c * b[j]) % p + p) % p);
        trim(a);
    }
    return a;
}

// Trial division; fine here because candidates number at most p^(k/2) <= 256
// under the q <= 2^16 size guarantee.
inline bool irreducible_over_prime_field(const Digits& m, int64_t p) {
    size_t k = m.size() - 1;
    for (size_t d = 1; 2 * d <= k; ++d) {
        // all monic divisor candidates of degree d, by odometer over low coefficients
        std::vector<uint16_t> cand(d + 1, 0);
        cand[d] = 1;
        while (true) {
            if (rem_digits(m, cand, p).empty()) return false;
            size_t i = 0;
            while (i < d && cand[i] == p - 1) cand[i++] = 0;
            if (i == d) break;
            ++cand[i];
        }
    }
    return true;
}

}  // namespace detail

/// Builds the field F_q for q = p^k.  The modulus (ascending coefficients,
/// monic of degree k over F_p) is required exactly when k > 1.  When no
/// generator is supplied, g is the first element of multiplicative order q-1
/// in the ascending-coefficient lexicographic order, so specs are fully
/// deterministic.  A supplied generator must have order q-1.
inline SpecPtr make_field_spec(int64_t p, int k, std::optional<std::vector<int64_t>> modulus = std::nullopt,
                               std::optional<std::vector<int64_t>> generator = std::nullopt) {
    if (!detail::is_odd_prime(p)) fail(errc::not_odd_prime, "p must be an odd prime, got " + std::to_string(p));
    if (k < 1) fail(errc::invalid_parameter, "extension degree k must be >= 1");

    uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        q *= uint64_t(p);
        if (q > 65536) fail(errc::too_large, "q = p^k exceeds the supported bound 2^16");
    }

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
    spec->p_ = p;
    spec->k_ = k;
    spec->q_ = uint32_t(q);

    if (k == 1) {
        if (modulus && !modulus->empty())
            fail(errc::invalid_parameter, "modulus must be omitted for prime fields (k = 1)");
    } else {
        if (!modulus || modulus->empty())
            fail(errc::missing_modulus, "extension field needs a degree-" + std::to_string(k) + " modulus");
        if (modulus->size() != size_t(k) + 1)
            fail(errc::invalid_parameter, "modulus must list k+1 coefficients, ascending");
        spec->modulus_.reserve(modulus->size());
        for (int64_t c : *modulus) spec->modulus_.push_back(spec->from_int(c));
        if (spec->modulus_.back() != 1) fail(errc::not_monic, "modulus must be monic");
        if (!detail::irreducible_over_prime_field(spec->modulus_, p))
            fail(errc::reducible_modulus, "modulus is reducible over F_p");
    }

    // Bootstrap multiplication on codes (table-free).
    auto decode = [&](uint32_t code) {
        detail::Digits d;
        while (code) {
            d.push_back(uint16_t(code % uint32_t(p)));
            code /= uint32_t(p);
        }
        return d;
    };
    auto encode = [&](const detail::Digits& d) {
        uint32_t code = 0;
        for (size_t i = d.size(); i-- > 0;) code = code * uint32_t(p) + d[i];
        return uint16_t(code);
    };
    auto raw_mul = [&](uint16_t a, uint16_t b) -> uint16_t {
        if (k == 1) return uint16_t((uint64_t(a) * b) % uint64_t(p));
        return encode(detail::mulmod_digits(decode(a), decode(b), spec->modulus_, p));
    };
    auto raw_pow = [&](uint16_t a, uint64_t e) {
        uint16_t r = 1, base = a;
        while (e) {
            if (e & 1) r = raw_mul(r, base);
            base = raw_mul(base, base);
            e >>= 1;
        }
        return r;
    };

    // rank/unrank for the ascending-coefficient lexicographic order: the rank
    // of code sum c_i p^i is the digit-reversed integer sum c_i p^(k-1-i).
    spec->rank_of_code_.assign(q, 0);
    spec->code_of_rank_.assign(q, 0);
    for (uint32_t code = 0; code < q; ++code) {
        uint32_t rest = code, rank = 0;
        for (int i = 0; i < k; ++i) {
            rank = rank * uint32_t(p) + rest % uint32_t(p);
            rest /= uint32_t(p);
        }
        spec->rank_of_code_[code] = uint16_t(rank);
        spec->code_of_rank_[rank] = uint16_t(code);
    }

    const auto factors = detail::prime_factors(q - 1);
    auto has_full_order = [&](uint16_t a) {
        if (a == 0) return false;
        for (int64_t f : factors)
            if (raw_pow(a, (q - 1) / uint64_t(f)) == 1) return false;
        return true;
    };

    if (generator) {
        spec->g_ = spec->from_coeffs(*generator);
        if (!has_full_order(spec->g_))
            fail(errc::not_primitive, "supplied generator does not have order q-1");
    } else {
        for (uint32_t r = 0; r < q; ++r) {
            uint16_t cand = spec->code_of_rank_[r];
            if (has_full_order(cand)) {
                spec->g_ = cand;
                break;
            }
        }
    }

    spec->exp_.assign(2 * (q - 1), 0);
    spec->log_.assign(q, 0);
    uint16_t acc = 1;
    for (uint32_t i = 0; i < q - 1; ++i) {
        spec->exp_[i] = acc;
        spec->exp_[i + (q - 1)] = acc;
        spec->log_[acc] = i;
        acc = raw_mul(acc, spec->g_);
    }

    spec->neg_table_.assign(q, 0);
    for (uint32_t code = 0; code < q; ++code) {
        uint32_t rest = code, out = 0, scale = 1;
        for (int i = 0; i < k; ++i) {
            uint32_t c = rest % uint32_t(p);
            out += (c == 0 ? 0 : uint32_t(p) - c) * scale;
            scale *= uint32_t(p);
            rest /= uint32_t(p);
        }
        spec->neg_table_[code] = uint16_t(out);
    }

    if (q <= 1024) {
        spec->add_table_.assign(size_t(q) * q, 0);
        for (uint32_t a = 0; a < q; ++a)
            for (uint32_t b = 0; b < q; ++b)
                spec->add_table_[size_t(a) * q + b] = spec->add_digitwise(a, b);
    }

    return spec;
}

inline FieldElement element_of(const SpecPtr& spec, int64_t v) {
    return FieldElement(spec, spec->from_int(v));
}

inline FieldElement element_from_coeffs(const SpecPtr& spec, const std::vector<int64_t>& coeffs) {
    return FieldElement(spec, spec->from_coeffs(coeffs));
}

inline FieldElement zero_of(const SpecPtr& spec) { return FieldElement(spec, 0); }
inline FieldElement one_of(const SpecPtr& spec) { return FieldElement(spec, 1); }
inline FieldElement generator_of(const SpecPtr& spec) { return FieldElement(spec, spec->generator()); }
inline FieldElement minus_one_of(const SpecPtr& spec) { return FieldElement(spec, spec->minus_one()); }

/// Least n >= 1 with a^n = 1; divides q-1.
inline uint64_t element_order(const FieldElement& a) {
    if (a.is_zero()) fail(errc::zero_element, "order of zero is undefined");
    const auto& spec = *a.spec();
    uint64_t n = spec.q() - 1;
    for (int64_t f : detail::prime_factors(n)) {
        while (n % uint64_t(f) == 0 && spec.pow(a.code(), n / uint64_t(f)) == 1) n /= uint64_t(f);
    }
    return n;
}

/// eta = g^((q-1)/d), the canonical element of multiplicative order d.
inline FieldElement eta_of(const SpecPtr& spec, int64_t d) {
    if (d < 1 || (spec->q() - 1) % uint64_t(d) != 0)
        fail(errc::d_not_dividing, "d = " + std::to_string(d) + " does not divide q-1 = " +
                                       std::to_string(spec->q() - 1));
    return FieldElement(spec, spec->exp(uint32_t((spec->q() - 1) / uint64_t(d))));
}

/// The unique j in [0, d) with v = eta^j, by scanning the d powers of eta.
inline int64_t unity_dlog(const SpecPtr& spec, const FieldElement& v, int64_t d) {
    if (v.is_zero()) fail(errc::not_root_of_unity, "zero is not a root of unity");
    FieldElement eta = eta_of(spec, d);
    uint16_t acc = spec->one();
    for (int64_t j = 0; j < d; ++j) {
        if (acc == v.code()) return j;
        acc = spec->mul(acc, eta.code());
    }
    fail(errc::not_root_of_unity, "value is not a d-th root of unity for d = " + std::to_string(d));
}

}  // namespace ffrec
