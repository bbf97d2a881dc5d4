#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffrec {

/// Failure categories raised by the library. Every Error carries one.
enum class errc {
    invalid_parameter,
    not_odd_prime,
    missing_modulus,
    reducible_modulus,
    not_primitive,
    too_large,
    spec_mismatch,
    division_by_zero,
    zero_element,
    d_not_dividing,
    not_root_of_unity,
    constant_input,
    not_monic,
    not_irreducible,
    non_constant_result,
    equal_primes,
    divisible_input,
    not_coprime,
    partition_failure,
    form_mismatch,
    coeff_length_mismatch,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_parameter: return "invalid_parameter";
        case errc::not_odd_prime: return "not_odd_prime";
        case errc::missing_modulus: return "missing_modulus";
        case errc::reducible_modulus: return "reducible_modulus";
        case errc::not_primitive: return "not_primitive";
        case errc::too_large: return "too_large";
        case errc::spec_mismatch: return "spec_mismatch";
        case errc::division_by_zero: return "division_by_zero";
        case errc::zero_element: return "zero_element";
        case errc::d_not_dividing: return "d_not_dividing";
        case errc::not_root_of_unity: return "not_root_of_unity";
        case errc::constant_input: return "constant_input";
        case errc::not_monic: return "not_monic";
        case errc::not_irreducible: return "not_irreducible";
        case errc::non_constant_result: return "non_constant_result";
        case errc::equal_primes: return "equal_primes";
        case errc::divisible_input: return "divisible_input";
        case errc::not_coprime: return "not_coprime";
        case errc::partition_failure: return "partition_failure";
        case errc::form_mismatch: return "form_mismatch";
        case errc::coeff_length_mismatch: return "coeff_length_mismatch";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

/// Position + expectation attached to every rejected input text.
struct ParseDiagnostic {
    std::size_t position = 0;  // byte offset into the input
    std::string expected;
    std::string found;

    std::string to_string() const {
        return "offset " + std::to_string(position) + ": expected " + expected + ", found " + found;
    }
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(ParseDiagnostic diagnostic)
        : std::runtime_error("parse error at " + diagnostic.to_string()),
          diagnostic_(std::move(diagnostic)) {}

    const ParseDiagnostic& diagnostic() const noexcept { return diagnostic_; }

private:
    ParseDiagnostic diagnostic_;
};

[[noreturn]] inline void fail_parse(std::size_t position, std::string expected, std::string found) {
    throw ParseError(ParseDiagnostic{position, std::move(expected), std::move(found)});
}

}  // namespace ffrec
