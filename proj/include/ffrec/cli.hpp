#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffrec/sweep.hpp"

namespace ffrec {

// Exit codes: 0 all-pass, 1 mathematical failure found, 2 usage/validation
// error, 3 parse error.

namespace detail {

/// --field accepts either a path to a spec file or the spec text itself
/// (e.g. "p=3" or "p=3, k=2, modulus=[1,0,1]").
inline SpecPtr load_field_arg(const std::string& arg) {
    std::ifstream in(arg);
    if (in.good()) {
        std::ostringstream text;
        text << in.rdbuf();
        return parse_field_spec(text.str());
    }
    return parse_field_spec(arg);
}

inline IrreduciblePoly parse_irreducible(const std::string& text, const SpecPtr& spec) {
    return IrreduciblePoly(parse_poly(text, spec));
}

inline std::vector<int64_t> parse_d_selector(const std::string& text, const SpecPtr& spec) {
    if (text == "all") return divisors_of(spec->q() - 1);
    int64_t d = 0;
    try {
        size_t used = 0;
        d = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        fail(errc::invalid_parameter, "--d expects an integer or 'all'");
    }
    require_d_divides(spec, d);
    return {d};
}

}  // namespace detail

inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"d-th power residue symbols, the reciprocity law, and its"
                 " coset-product verification in F_q[t]"};
    app.require_subcommand(1);

    std::string field_arg;
    std::string a_text, p_text, q_text, d_text;
    std::string sweep_d = "all";
    std::string format = "";
    int max_deg = 4;
    uint64_t proof_cap = 1000000;
    unsigned jobs = 1;

    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--field", field_arg, "field spec: file path or inline 'p=..,k=..[,modulus=[...]]'")
            ->required();
    };

    CLI::App* sym = app.add_subcommand("symbol", "compute the d-th power residue symbol (a/P)_d");
    add_field(sym);
    sym->add_option("--a", a_text, "numerator polynomial")->required();
    sym->add_option("--P", p_text, "monic irreducible modulus")->required();
    sym->add_option("--d", d_text, "symbol order, divides q-1")->required();

    CLI::App* rec = app.add_subcommand("reciprocity", "check the reciprocity law for one pair");
    add_field(rec);
    rec->add_option("--P", p_text, "first monic irreducible")->required();
    rec->add_option("--Q", q_text, "second monic irreducible")->required();
    rec->add_option("--d", d_text, "symbol order, divides q-1")->required();

    CLI::App* vp = app.add_subcommand("verify-proof", "replay the coset-product argument for one pair");
    add_field(vp);
    vp->add_option("--P", p_text, "first monic irreducible")->required();
    vp->add_option("--Q", q_text, "second monic irreducible")->required();
    vp->add_option("--d", d_text, "symbol order, divides q-1")->required();
    vp->add_option("--format", format, "text (default) or json")
        ->check(CLI::IsMember({"text", "json", ""}));

    CLI::App* sw = app.add_subcommand("sweep", "exhaustive checks over all pairs within a degree bound");
    add_field(sw);
    sw->add_option("--d", sweep_d, "a divisor of q-1, or 'all'")->capture_default_str();
    sw->add_option("--max-deg", max_deg, "bound on deg P + deg Q")->capture_default_str();
    sw->add_option("--format", format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv", ""}));
    sw->add_option("--proof-cap", proof_cap, "run verify-proof when |PQ| <= cap")
        ->capture_default_str();
    sw->add_option("--jobs", jobs, "worker threads")->capture_default_str();

    CLI::App* irr = app.add_subcommand("irreducibles", "list monic irreducibles up to a degree");
    add_field(irr);
    irr->add_option("--max-deg", max_deg, "largest degree to list")->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        SpecPtr spec = detail::load_field_arg(field_arg);

        if (sym->parsed()) {
            std::vector<int64_t> ds = detail::parse_d_selector(d_text, spec);
            if (ds.size() != 1) fail(errc::invalid_parameter, "symbol needs a single d");
            Poly a = parse_poly(a_text, spec);
            IrreduciblePoly P = detail::parse_irreducible(p_text, spec);
            SymbolValue v = power_residue_symbol(a, P, ds[0]);
            out << "value = " << format_field_element(v.value) << '\n';
            if (v.zero) out << "exponent = none\n";
            else out << "exponent = " << v.exponent << '\n';
            out << "eta = " << format_field_element(eta_of(spec, ds[0])) << '\n';
            return 0;
        }

        if (rec->parsed()) {
            std::vector<int64_t> ds = detail::parse_d_selector(d_text, spec);
            if (ds.size() != 1) fail(errc::invalid_parameter, "reciprocity needs a single d");
            IrreduciblePoly P = detail::parse_irreducible(p_text, spec);
            IrreduciblePoly Q = detail::parse_irreducible(q_text, spec);
            ReciprocityCheck check = check_reciprocity(P, Q, ds[0]);
            out << "lhs = " << format_field_element(check.lhs) << '\n';
            out << "rhs = " << format_field_element(check.rhs) << '\n';
            out << "pass = " << (check.pass ? "true" : "false") << '\n';
            return check.pass ? 0 : 1;
        }

        if (vp->parsed()) {
            std::vector<int64_t> ds = detail::parse_d_selector(d_text, spec);
            if (ds.size() != 1) fail(errc::invalid_parameter, "verify-proof needs a single d");
            IrreduciblePoly P = detail::parse_irreducible(p_text, spec);
            IrreduciblePoly Q = detail::parse_irreducible(q_text, spec);
            ProofReport report = verify_proof(P, Q, ds[0]);
            if (format == "json") {
                CaseRecord record{spec, ds[0], P.poly(), Q.poly(),
                                  check_reciprocity(P, Q, ds[0]), report};
                out << record_to_json_line(record) << '\n';
            } else {
                out << render_proof_report(report);
            }
            return report.pass ? 0 : 1;
        }

        if (sw->parsed()) {
            SweepConfig config;
            config.spec = spec;
            config.ds = detail::parse_d_selector(sweep_d, spec);
            config.max_total_degree = max_deg;
            config.format = format == "csv" ? SweepFormat::csv : SweepFormat::json;
            config.proof_cap = proof_cap;
            config.jobs = jobs;
            SweepSummary summary = run_sweep(config, out);
            err << summary.to_string() << '\n';
            return summary.all_pass() ? 0 : 1;
        }

        if (irr->parsed()) {
            if (max_deg < 1) fail(errc::invalid_parameter, "--max-deg must be >= 1");
            for (const auto& of_degree : irreducibles_by_degree(spec, max_deg))
                for (const IrreduciblePoly& f : of_degree) out << format_poly(f.poly()) << '\n';
            return 0;
        }
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace ffrec
