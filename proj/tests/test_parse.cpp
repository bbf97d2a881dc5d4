#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "support.hpp"

using namespace ffrec;
using oracle::f25;
using oracle::f3;
using oracle::f9;

namespace {

ParseDiagnostic diag_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.diagnostic();
    }
    FAIL("expected a ParseError");
    return {};
}

}  // namespace

TEST_CASE("parse_poly worked examples") {
    CHECK(parse_poly("t^2+2*t+1", f3()) == Poly::from_ints(f3(), {1, 2, 1}));

    Poly f = parse_poly("[1,2]*t + 2", f9());
    REQUIRE(f.degree() == 1);
    CHECK(f.coeff(1).coeffs() == std::vector<int64_t>{1, 2});
    CHECK(f.coeff(0).coeffs() == std::vector<int64_t>{2, 0});

    auto d = diag_of([] { parse_poly("t^", f3()); });
    CHECK(d.position == 2);
    CHECK(d.expected == "an exponent");
}

TEST_CASE("parse_poly grammar corners") {
    CHECK(parse_poly("0", f3()).is_zero());
    CHECK(parse_poly("t", f3()) == Poly::t(f3()));
    CHECK(parse_poly("2*t", f3()) == Poly::from_ints(f3(), {0, 2}));
    CHECK(parse_poly("  t ^ 2 + 1 ", f3()) == Poly::from_ints(f3(), {1, 0, 1}));
    // duplicate exponents are summed
    CHECK(parse_poly("t+t", f3()) == Poly::from_ints(f3(), {0, 2}));
    CHECK(parse_poly("t+2*t", f3()).is_zero());
    // unary minus maps to p - c
    CHECK(parse_poly("-t+1", f3()) == Poly::from_ints(f3(), {1, 2}));
    CHECK(parse_poly("5", f3()) == Poly::from_ints(f3(), {2}));
    // bracketed literal within k entries; shorter lists are zero padded
    CHECK(parse_poly("[2]", f9()) == Poly::constant(element_of(f9(), 2)));
}

TEST_CASE("parse_poly rejections carry positions and expectations") {
    for (const char* bad : {"", "   ", "t^", "2**t", "[1,2", "t^-1", "t+", "x", "t 1", "2*", "()"}) {
        try {
            parse_poly(bad, f3());
            FAIL("accepted malformed input: " << bad);
        } catch (const ParseError& e) {
            REQUIRE_FALSE(e.diagnostic().expected.empty());
            REQUIRE(e.diagnostic().position <= std::string(bad).size());
        }
    }
    try {
        parse_poly("[1,2]", f3());
        FAIL("accepted an oversized coefficient list");
    } catch (const Error& e) {
        CHECK(e.code() == errc::coeff_length_mismatch);
    }
    try {
        parse_poly("t^70000", f3());
        FAIL("accepted an exponent beyond the supported range");
    } catch (const Error& e) {
        CHECK(e.code() == errc::too_large);
    }
}

TEST_CASE("format_poly canonical rendering") {
    CHECK(format_poly(Poly::zero(f3())) == "0");
    CHECK(format_poly(Poly::from_ints(f3(), {1, 2, 1})) == "t^2+2*t+1");
    CHECK(format_poly(Poly::t(f3())) == "t");
    CHECK(format_poly(Poly::one(f3())) == "1");
    CHECK(format_poly(Poly::from_ints(f3(), {0, 0, 2})) == "2*t^2");

    Poly f(f9(), {2, f9()->from_coeffs({1, 2})});
    CHECK(format_poly(f) == "[1,2]*t+2");
}

TEST_CASE("parse then format round trips") {
    auto gen = oracle::rng(0x5eed0003);
    for (const auto& spec : {f3(), f9(), f25()}) {
        for (int trial = 0; trial < 350; ++trial) {
            Poly f = oracle::random_poly(gen, spec, 6);
            REQUIRE(parse_poly(format_poly(f), spec) == f);
        }
    }
    // format o parse is idempotent on accepted inputs
    for (const char* text : {"2*t^2 + t + 1", "1+t", "t^3", " 2 ", "-2*t"}) {
        std::string once = format_poly(parse_poly(text, f3()));
        std::string twice = format_poly(parse_poly(once, f3()));
        REQUIRE(once == twice);
    }
}

TEST_CASE("parse_field_spec worked examples") {
    CHECK(parse_field_spec("p = 3\nk = 1")->q() == 3);
    CHECK(parse_field_spec("p = 3")->q() == 3);  // k defaults to 1
    auto s9 = parse_field_spec("p = 3\nk = 2\nmodulus = [1,0,1]");
    CHECK(s9->q() == 9);
    CHECK(s9->generator() == f9()->generator());

    try {
        parse_field_spec("p = 9\nk = 1");
        FAIL("accepted composite p");
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_odd_prime);
    }
}

TEST_CASE("parse_field_spec accepts inline separators and comments") {
    CHECK(parse_field_spec("p=3,k=2,modulus=[1,0,1]")->q() == 9);
    CHECK(parse_field_spec("p=5; k=1")->q() == 5);
    CHECK(parse_field_spec("# the base field\np = 7")->q() == 7);
}

TEST_CASE("parse_field_spec generator handling") {
    CHECK(parse_field_spec("p=3, generator=2")->generator() == 2);
    CHECK(parse_field_spec("p=3, k=2, modulus=[1,0,1], generator=[1,1]")->generator() ==
          f9()->generator());
    try {
        parse_field_spec("p=3, generator=1");
        FAIL("accepted a non-primitive generator");
    } catch (const Error& e) {
        CHECK(e.code() == errc::not_primitive);
    }
}

TEST_CASE("parse_field_spec rejections") {
    CHECK(diag_of([] { parse_field_spec("q = 3"); }).expected == "one of p, k, modulus, generator");
    CHECK_FALSE(diag_of([] { parse_field_spec("p == 3"); }).expected.empty());
    CHECK_FALSE(diag_of([] { parse_field_spec("p = 3, p = 5"); }).expected.empty());
    CHECK_FALSE(diag_of([] { parse_field_spec(""); }).expected.empty());
    CHECK_FALSE(diag_of([] { parse_field_spec("p = 3 extra"); }).expected.empty());
}
