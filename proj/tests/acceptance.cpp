// Acceptance suite.  Each criterion prints one PASS/FAIL line; the Catch2
// assertions carry the same verdicts so ctest fails when a criterion does.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace ffrec;

namespace {

struct CriterionResult {
    bool ok = true;
    uint64_t checks = 0;
    std::string detail;

    void require(bool condition) {
        ++checks;
        if (!condition) ok = false;
    }
};

void print_verdict(const char* id, const char* name, const CriterionResult& r) {
    std::string label = std::string("[criterion ") + id + "] " + name + " ";
    label.resize(58, '.');
    std::printf("%s %s (%llu checks%s%s)\n", label.c_str(), r.ok ? "PASS" : "FAIL",
                static_cast<unsigned long long>(r.checks), r.detail.empty() ? "" : ", ",
                r.detail.c_str());
    std::fflush(stdout);
}

struct FieldPlan {
    SpecPtr spec;
    int pair_degree_bound;   // criterion 1: deg P + deg Q <= bound
    uint64_t proof_norm_cap; // criterion 2: |PQ| <= cap
    int small_degree_bound;  // criteria 3-5: largest deg with |P| <= 729
};

const std::vector<FieldPlan>& plans() {
    static const std::vector<FieldPlan> p = [] {
        std::vector<FieldPlan> out;
        out.push_back({oracle::f3(), 5, 729, 6});
        out.push_back({oracle::f5(), 4, 125, 4});
        out.push_back({oracle::f7(), 4, 343, 3});
        out.push_back({oracle::f9(), 3, 729, 3});
        return out;
    }();
    return p;
}

// Irreducibles cached per field, by degree, up to everything any criterion needs.
const std::vector<std::vector<IrreduciblePoly>>& irreducibles_for(const FieldPlan& plan) {
    static std::vector<std::vector<std::vector<IrreduciblePoly>>> cache(plans().size());
    for (size_t i = 0; i < plans().size(); ++i) {
        if (plans()[i].spec != plan.spec) continue;
        if (cache[i].empty()) {
            int max_degree = std::max(plan.pair_degree_bound - 1, plan.small_degree_bound);
            cache[i] = irreducibles_by_degree(plan.spec, max_degree);
        }
        return cache[i];
    }
    throw std::logic_error("unknown field plan");
}

uint64_t norm_of_degree(const SpecPtr& spec, int degree) {
    uint64_t n = 1;
    for (int i = 0; i < degree; ++i) n *= spec->q();
    return n;
}

}  // namespace

TEST_CASE("criterion 01: reciprocity sweep") {
    CriterionResult r;
    auto started = std::chrono::steady_clock::now();
    for (const FieldPlan& plan : plans()) {
        const auto& by_degree = irreducibles_for(plan);
        uint64_t cases_this_field = 0;
        for (int64_t d : divisors_of(plan.spec->q() - 1)) {
            for (int dp = 1; dp < plan.pair_degree_bound; ++dp)
                for (const IrreduciblePoly& P : by_degree[size_t(dp)])
                    for (int dq = 1; dp + dq <= plan.pair_degree_bound; ++dq)
                        for (const IrreduciblePoly& Q : by_degree[size_t(dq)]) {
                            if (P.poly() == Q.poly()) continue;
                            r.require(check_reciprocity(P, Q, d).pass);
                            ++cases_this_field;
                        }
        }
        // cross-check the case count against the necklace formula
        uint64_t expected = 0;
        for (int dp = 1; dp < plan.pair_degree_bound; ++dp)
            for (int dq = 1; dp + dq <= plan.pair_degree_bound; ++dq) {
                uint64_t np = count_monic_irreducible(plan.spec, dp);
                uint64_t nq = count_monic_irreducible(plan.spec, dq);
                expected += np * nq - (dp == dq ? np : 0);
            }
        expected *= divisors_of(plan.spec->q() - 1).size();
        r.require(cases_this_field == expected);
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started).count();
    r.detail = std::to_string(ms) + " ms";
    print_verdict("01", "reciprocity sweep (exact, zero tolerance)", r);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("criterion 02: proof replay") {
    CriterionResult r;
    auto started = std::chrono::steady_clock::now();
    for (const FieldPlan& plan : plans()) {
        const auto& by_degree = irreducibles_for(plan);
        for (int64_t d : divisors_of(plan.spec->q() - 1)) {
            for (int dp = 1; dp < plan.pair_degree_bound; ++dp)
                for (const IrreduciblePoly& P : by_degree[size_t(dp)])
                    for (int dq = 1; dp + dq <= plan.pair_degree_bound; ++dq) {
                        if (norm_of_degree(plan.spec, dp + dq) > plan.proof_norm_cap) continue;
                        for (const IrreduciblePoly& Q : by_degree[size_t(dq)]) {
                            if (P.poly() == Q.poly()) continue;
                            ProofReport report = verify_proof(P, Q, d);
                            r.require(report.pass && report.eq2_partition &&
                                      report.s1_transversal && report.s2_transversal &&
                                      report.decomposition_identity && report.eta_sign_identity &&
                                      report.sq_power_identity && report.pi_equal_mod_u &&
                                      report.telescoped_matches_direct &&
                                      report.derived_lhs == report.expected_rhs);
                        }
                    }
        }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started).count();
    r.detail = std::to_string(ms) + " ms";
    print_verdict("02", "proof replay, all identity flags", r);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("criteria 03 and 04: Euler-criterion oracle, constancy and unity") {
    CriterionResult euler, constancy;
    auto started = std::chrono::steady_clock::now();
    for (const FieldPlan& plan : plans()) {
        const SpecPtr& spec = plan.spec;
        const auto& by_degree = irreducibles_for(plan);
        for (int deg = 1; deg <= plan.small_degree_bound; ++deg) {
            auto residues = enumerate_nonzero_below(spec, deg);
            for (const IrreduciblePoly& P : by_degree[size_t(deg)]) {
                for (int64_t d : divisors_of(spec->q() - 1)) {
                    auto powers = oracle::dth_power_keys(P, d);
                    size_t sample_stride =
                        P.norm() <= 243 ? 1 : std::max<size_t>(residues.size() / 16, 1);
                    for (size_t i = 0; i < residues.size(); ++i) {
                        const Poly& a = residues[i];
                        SymbolValue v = power_residue_symbol(a, P, d);
                        constancy.require(!v.zero && v.value.pow(uint64_t(d)) == one_of(spec));
                        bool residue_is_power = powers.count(poly_key(a)) > 0;
                        euler.require(v.is_one() == residue_is_power);
                        if (i % sample_stride == 0)
                            euler.require(dth_power_oracle(a, P, d) == residue_is_power);
                    }
                }
            }
        }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started).count();
    euler.detail = std::to_string(ms) + " ms shared";
    constancy.detail = euler.detail;
    print_verdict("03", "symbol = 1 iff d-th power (exhaustive)", euler);
    print_verdict("04", "a^((|P|-1)/d) constant, d-th power one", constancy);
    INFO(euler.detail);
    CHECK(euler.ok);
    CHECK(constancy.ok);
}

TEST_CASE("criterion 05: Wilson analogue") {
    CriterionResult r;
    for (const FieldPlan& plan : plans()) {
        const auto& by_degree = irreducibles_for(plan);
        for (int deg = 1; deg <= plan.small_degree_bound; ++deg)
            for (const IrreduciblePoly& P : by_degree[size_t(deg)])
                r.require(oracle::unit_product_mod(P.poly()) ==
                          Poly::constant(minus_one_of(plan.spec)));
    }
    print_verdict("05", "product over S_P is -1 mod P", r);
    CHECK(r.ok);
}

TEST_CASE("criterion 06: representative independence") {
    CriterionResult r;
    auto gen = oracle::rng(0xacc06);

    // All (field, d, pair-shape) combinations, then a seeded sample of 20.
    struct Case {
        SpecPtr spec;
        IrreduciblePoly P, Q;
        int64_t d;
    };
    std::vector<Case> pool;
    for (const FieldPlan& plan : plans()) {
        const auto& by_degree = irreducibles_for(plan);
        for (int64_t d : divisors_of(plan.spec->q() - 1)) {
            pool.push_back({plan.spec, by_degree[1][0], by_degree[1][1], d});
            if (norm_of_degree(plan.spec, 3) <= plan.proof_norm_cap)
                pool.push_back({plan.spec, by_degree[1][0], by_degree[2][0], d});
        }
    }
    std::shuffle(pool.begin(), pool.end(), gen);
    pool.erase(pool.begin() + 20, pool.end());

    for (const Case& c : pool) {
        CosetSystem sys = build_coset_systems(c.P, c.Q, c.d);
        ResiduePair base_s1 = product_pi_s1(sys);
        ResiduePair base_s2 = direct_s2_product(sys);
        FieldElement base_lhs = verify_proof(c.P, c.Q, c.d).derived_lhs;

        for (int trial = 0; trial < 100; ++trial) {
            CosetSystem reshuffled = sys;
            for (Poly& h : reshuffled.s_q)
                h = h.scaled(sys.eta.pow(gen() % uint64_t(sys.d)).code());
            for (Poly& h : reshuffled.s2)
                h = h.scaled(sys.eta.pow(gen() % uint64_t(sys.d)).code());

            // S_Q re-selection leaves both pi components literally unchanged.
            r.require(product_pi_s1(reshuffled) == base_s1);

            // S_2 re-selection moves pi only inside its U-coset...
            ResiduePair direct = direct_s2_product(reshuffled);
            auto shift = diagonal_eta_shift(direct, base_s2, reshuffled);
            r.require(shift.has_value());

            // ...so the derived symbol ratio is untouched.
            Poly rp = mulmod(base_s1.mod_p, inverse_mod(direct.mod_p, c.P.poly()), c.P.poly());
            Poly rq = mulmod(base_s1.mod_q, inverse_mod(direct.mod_q, c.Q.poly()), c.Q.poly());
            bool constants = rp.degree() == 0 && rq.degree() == 0;
            r.require(constants);
            if (constants) {
                uint64_t a_exp = (c.P.norm() - 1) / uint64_t(c.d);
                uint64_t b_exp = (c.Q.norm() - 1) / uint64_t(c.d);
                FieldElement sign = (a_exp % 2 == 1 && b_exp % 2 == 1)
                                        ? minus_one_of(c.spec)
                                        : one_of(c.spec);
                r.require(sign * rq.coeff(0) * rp.coeff(0).inverse() == base_lhs);
            }
        }
    }
    r.detail = "20 cases x 100 re-selections";
    print_verdict("06", "pi stable under re-selection", r);
    CHECK(r.ok);
}

TEST_CASE("criterion 07: irreducible counting cross-check") {
    CriterionResult r;
    for (const FieldPlan& plan : plans()) {
        for (int n = 1; n <= 4; ++n) {
            uint64_t found = 0;
            for (const Poly& f : enumerate_monic_below(plan.spec, n + 1))
                if (f.degree() == n && is_irreducible(f)) ++found;
            r.require(found == count_monic_irreducible(plan.spec, n));
        }
    }
    print_verdict("07", "filtered enumeration matches necklace counts", r);
    CHECK(r.ok);
}

TEST_CASE("criterion 08: parity bridge") {
    CriterionResult r;
    for (uint64_t q : {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27}) {
        for (uint64_t d = 1; d <= q - 1; ++d) {
            if ((q - 1) % d != 0) continue;
            for (int dp = 1; dp <= 4; ++dp)
                for (int dq = 1; dq <= 4; ++dq) {
                    uint64_t np = 1, nq = 1;
                    for (int i = 0; i < dp; ++i) np *= q;
                    for (int i = 0; i < dq; ++i) nq *= q;
                    uint64_t a = (np - 1) / d, b = (nq - 1) / d;
                    bool lhs_odd = (a % 2 == 1) && (b % 2 == 1);
                    bool rhs_odd = (((q - 1) / d) * uint64_t(dp) * uint64_t(dq)) % 2 == 1;
                    r.require(lhs_odd == rhs_odd);
                }
        }
    }
    print_verdict("08", "(-1)^(AB) equals (-1)^(((q-1)/d) degP degQ)", r);
    CHECK(r.ok);
}

TEST_CASE("criterion 09: pinned micro example") {
    CriterionResult r;
    auto spec = oracle::f3();
    IrreduciblePoly P(Poly::t(spec)), Q(Poly::from_ints(spec, {1, 1}));
    CosetSystem sys = build_coset_systems(P, Q, 2);

    r.require(sys.s_p == std::vector<Poly>{Poly::one(spec), Poly::from_ints(spec, {2})});
    r.require(sys.s_q == std::vector<Poly>{Poly::one(spec)});
    r.require(sys.s2 == std::vector<Poly>{Poly::one(spec), Poly::from_ints(spec, {2, 1})});

    ResiduePair expected{Poly::from_ints(spec, {2}), Poly::one(spec)};
    r.require(product_pi_s1(sys) == expected);
    r.require(product_pi_s2(sys) == expected);

    ProofReport report = verify_proof(P, Q, 2);
    r.require(report.pass);
    r.require(report.u_witness.has_value() && *report.u_witness == 0);
    r.require(report.derived_lhs == minus_one_of(spec));
    r.require(report.expected_rhs == minus_one_of(spec));
    print_verdict("09", "q=3 d=2 P=t Q=t+1 worked trace", r);
    CHECK(r.ok);
}

namespace {

struct CliRun {
    int exit_code;
    std::string output;  // stdout bytes
    std::string errout;  // stderr bytes
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliRun run_cli(const std::string& cli, const std::string& args, const std::string& tag) {
    std::string out_path = "acceptance_" + tag + ".out";
    std::string err_path = "acceptance_" + tag + ".err";
    std::string command = cli + " " + args + " > " + out_path + " 2> " + err_path;
    int status = std::system(command.c_str());
    CliRun run{status == -1 ? -1 : WEXITSTATUS(status), slurp(out_path), slurp(err_path)};
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return run;
}

}  // namespace

TEST_CASE("criterion 10: sweep determinism across parallelism") {
    CriterionResult r;
    const char* env = std::getenv("FFREC_CLI");
    std::string cli = env ? env : FFREC_CLI_PATH;

    for (const std::string format : {"json", "csv"}) {
        std::string base = "sweep --field p=3 --d all --max-deg 4 --proof-cap 729 --format " + format;
        CliRun serial = run_cli(cli, base + " --jobs 1", format + "1");
        CliRun serial_again = run_cli(cli, base + " --jobs 1", format + "2");
        CliRun parallel = run_cli(cli, base + " --jobs 4", format + "4");
        r.require(serial.exit_code == 0 && parallel.exit_code == 0);
        r.require(!serial.output.empty());
        r.require(serial.output == serial_again.output);
        r.require(serial.output == parallel.output);
        r.require(serial.errout == parallel.errout);
    }
    r.detail = "json+csv, jobs 1 vs 4";
    print_verdict("10", "byte-identical sweep output", r);
    CHECK(r.ok);
}
