#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffrec/poly.hpp"

namespace ffrec {

// Polynomial grammar (whitespace-insensitive, LL(1)):
//
//   poly   := sign? term (sign term)*          sign := '+' | '-'
//   term   := coeff ('*' tpart)? | tpart
//   tpart  := 't' ('^' uint)?
//   coeff  := uint | '[' int (',' int)* ']'
//
// A bare integer coefficient is prime-subfield shorthand, reduced mod p; a
// bracketed ascending list names an extension element.  '-' negates the term
// that follows it.  Duplicate exponents are summed.  The variable is always t.

namespace detail {

constexpr uint64_t kMaxExponent = 65535;

class PolyScanner {
public:
    explicit PolyScanner(std::string_view text) : text_(text) {}

    size_t pos() const { return pos_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    std::string found_here() const {
        if (pos_ >= text_.size()) return "end of input";
        return std::string("'") + text_[pos_] + "'";
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        skip_ws();
        if (!accept(c)) fail_parse(pos_, what, found_here());
    }

    uint64_t parse_uint(const std::string& what) {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail_parse(pos_, what, found_here());
        uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + uint64_t(text_[pos_] - '0');
            if (v > uint64_t(1) << 62) fail_parse(pos_, "a smaller integer", "overflowing literal");
            ++pos_;
        }
        return v;
    }

    int64_t parse_int(const std::string& what) {
        skip_ws();
        bool negative = accept('-');
        uint64_t v = parse_uint(what);
        return negative ? -int64_t(v) : int64_t(v);
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
};

// coeff := uint | '[' int (',' int)* ']'; returns the element code.
inline uint16_t parse_coeff(PolyScanner& sc, const SpecPtr& spec) {
    if (sc.accept('[')) {
        std::vector<int64_t> entries;
        entries.push_back(sc.parse_int("a coefficient entry"));
        while (sc.accept(',')) entries.push_back(sc.parse_int("a coefficient entry"));
        sc.expect(']', "',' or ']'");
        if (entries.size() > size_t(spec->k()))
            fail(errc::coeff_length_mismatch, "bracketed coefficient lists at most k = " +
                                                  std::to_string(spec->k()) + " entries");
        return spec->from_coeffs(entries);
    }
    return spec->from_int(int64_t(sc.parse_uint("a coefficient")));
}

}  // namespace detail

inline Poly parse_poly(std::string_view text, const SpecPtr& spec) {
    detail::PolyScanner sc(text);
    std::vector<uint16_t> acc;  // ascending coefficient codes, summed per exponent

    auto add_term = [&](uint64_t exponent, uint16_t code) {
        if (exponent > detail::kMaxExponent) fail(errc::too_large, "exponent beyond supported range");
        if (acc.size() <= exponent) acc.resize(size_t(exponent) + 1, 0);
        acc[size_t(exponent)] = spec->add(acc[size_t(exponent)], code);
    };

    bool first = true;
    while (true) {
        sc.skip_ws();
        bool negative = false;
        if (first) {
            negative = sc.accept('-');
            if (!negative) sc.accept('+');
        } else {
            if (sc.at_end()) break;
            if (sc.accept('-')) negative = true;
            else if (sc.accept('+')) negative = false;
            else fail_parse(sc.pos(), "'+', '-' or end of input", sc.found_here());
        }
        first = false;

        sc.skip_ws();
        uint16_t code;
        uint64_t exponent = 0;
        if (sc.accept('t')) {
            code = spec->one();
            exponent = sc.accept('^') ? sc.parse_uint("an exponent") : 1;
        } else {
            code = detail::parse_coeff(sc, spec);
            if (sc.accept('*')) {
                sc.expect('t', "'t'");
                exponent = sc.accept('^') ? sc.parse_uint("an exponent") : 1;
            }
        }
        if (negative) code = spec->neg(code);
        add_term(exponent, code);
        if (sc.at_end()) break;
    }
    return Poly(spec, std::move(acc));
}

/// Coefficient literal: bare integer for prime-subfield values, bracketed
/// ascending list otherwise.  Inverse of the coeff grammar rule.
inline std::string format_field_element(const FieldElement& c) {
    auto coeffs = c.coeffs();
    bool in_prime_subfield = true;
    for (size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) in_prime_subfield = false;
    if (in_prime_subfield) return std::to_string(coeffs.empty() ? 0 : coeffs[0]);
    std::string out = "[";
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coeffs[i]);
    }
    return out + "]";
}

/// Canonical descending-power rendering; parse_poly(format_poly(f)) == f.
inline std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    const SpecPtr& spec = f.spec();
    std::string out;
    for (int e = f.degree(); e >= 0; --e) {
        uint16_t code = f.coeff_code(size_t(e));
        if (code == 0) continue;
        if (!out.empty()) out += '+';
        if (e == 0) {
            out += format_field_element(FieldElement(spec, code));
        } else {
            if (code != spec->one()) {
                out += format_field_element(FieldElement(spec, code));
                out += '*';
            }
            out += 't';
            if (e > 1) out += '^' + std::to_string(e);
        }
    }
    return out;
}

// Field-spec text: `key = value` entries, one per line; ';' and top-level ','
// also separate entries so the same grammar works inline on a command line.
// Keys: p, k (default 1), modulus = [c0,...,ck], optional generator (element
// literal).  '#' starts a comment.

namespace detail {

inline std::vector<std::pair<size_t, std::string>> split_spec_entries(std::string_view text) {
    std::vector<std::pair<size_t, std::string>> entries;  // (offset, text)
    size_t start = 0;
    int bracket_depth = 0;
    auto flush = [&](size_t end) {
        std::string_view piece = text.substr(start, end - start);
        size_t lead = 0;
        while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
        size_t tail = piece.size();
        while (tail > lead && std::isspace(static_cast<unsigned char>(piece[tail - 1]))) --tail;
        if (tail > lead) entries.emplace_back(start + lead, std::string(piece.substr(lead, tail - lead)));
        start = end + 1;
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '[') ++bracket_depth;
        else if (c == ']') --bracket_depth;
        else if (c == '\n' || c == ';' || (c == ',' && bracket_depth == 0)) flush(i);
    }
    flush(text.size());
    return entries;
}

inline std::vector<int64_t> parse_int_list(PolyScanner& sc) {
    sc.expect('[', "'['");
    std::vector<int64_t> out;
    out.push_back(sc.parse_int("an integer"));
    while (sc.accept(',')) out.push_back(sc.parse_int("an integer"));
    sc.expect(']', "',' or ']'");
    return out;
}

}  // namespace detail

inline SpecPtr parse_field_spec(std::string_view text) {
    std::optional<int64_t> p;
    std::optional<int64_t> k;
    std::optional<std::vector<int64_t>> modulus;
    std::optional<std::vector<int64_t>> generator;

    for (auto& [offset, entry] : detail::split_spec_entries(text)) {
        if (entry[0] == '#') continue;
        size_t eq = entry.find('=');
        if (eq == std::string::npos) fail_parse(offset, "'key = value'", "'" + entry + "'");
        std::string key = entry.substr(0, eq);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        std::string value = entry.substr(eq + 1);
        detail::PolyScanner sc(value);

        auto ensure_fresh = [](bool already_set, std::size_t at, const std::string& k) {
            if (already_set) fail_parse(at, "each key at most once", "duplicate '" + k + "'");
        };
        if (key == "p") {
            ensure_fresh(p.has_value(), offset, key);
            p = sc.parse_int("an integer");
        } else if (key == "k") {
            ensure_fresh(k.has_value(), offset, key);
            k = sc.parse_int("an integer");
        } else if (key == "modulus") {
            ensure_fresh(modulus.has_value(), offset, key);
            modulus = detail::parse_int_list(sc);
        } else if (key == "generator") {
            ensure_fresh(generator.has_value(), offset, key);
            sc.skip_ws();
            if (sc.accept('[')) {
                std::vector<int64_t> entries;
                entries.push_back(sc.parse_int("a coefficient entry"));
                while (sc.accept(',')) entries.push_back(sc.parse_int("a coefficient entry"));
                sc.expect(']', "',' or ']'");
                generator = std::move(entries);
            } else {
                generator = std::vector<int64_t>{sc.parse_int("an element literal")};
            }
        } else {
            fail_parse(offset, "one of p, k, modulus, generator", "'" + key + "'");
        }
        if (!sc.at_end()) fail_parse(offset + eq + 1 + sc.pos(), "end of value", sc.found_here());
    }

    if (!p) fail_parse(text.size(), "a 'p = <prime>' entry", "end of input");
    int64_t k_value = k.value_or(1);
    if (k_value < 1 || k_value > 16) fail(errc::invalid_parameter, "k out of range");
    return make_field_spec(*p, int(k_value), std::move(modulus), std::move(generator));
}

}  // namespace ffrec
