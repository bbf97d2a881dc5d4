#pragma once

#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ffrec/parse.hpp"
#include "ffrec/rousseau.hpp"

namespace ffrec {

/// One sweep case: the reciprocity check, plus the full proof replay when it
/// was within the configured cap.
struct CaseRecord {
    SpecPtr spec;
    int64_t d;
    Poly P, Q;
    ReciprocityCheck reciprocity;
    std::optional<ProofReport> proof;

    bool pass() const { return reciprocity.pass && (!proof || proof->pass); }
};

// The JSON field set below is the published record schema; the CSV columns
// mirror it in the same order, with proof columns left empty when the proof
// was not run.

inline nlohmann::ordered_json record_to_json(const CaseRecord& rec) {
    nlohmann::ordered_json j;
    j["q"] = rec.spec->q();
    j["p"] = rec.spec->p();
    j["k"] = rec.spec->k();
    if (rec.spec->k() > 1) {
        auto mod = nlohmann::ordered_json::array();
        for (uint16_t c : rec.spec->modulus()) mod.push_back(c);
        j["modulus"] = mod;
    } else {
        j["modulus"] = nullptr;
    }
    j["d"] = rec.d;
    j["P"] = format_poly(rec.P);
    j["Q"] = format_poly(rec.Q);
    j["lhs"] = format_field_element(rec.reciprocity.lhs);
    j["rhs"] = format_field_element(rec.reciprocity.rhs);
    j["pass"] = rec.pass();
    if (rec.proof) {
        const ProofReport& pr = *rec.proof;
        j["eq2_partition"] = pr.eq2_partition;
        j["s1_transversal"] = pr.s1_transversal;
        j["s2_transversal"] = pr.s2_transversal;
        j["decomposition_identity"] = pr.decomposition_identity;
        j["eta_sign_identity"] = pr.eta_sign_identity;
        j["sq_power_identity"] = pr.sq_power_identity;
        j["pi_equal_mod_U"] = pr.pi_equal_mod_u;
        j["telescoped_matches_direct"] = pr.telescoped_matches_direct;
        j["pi_S1_mod_P"] = format_poly(pr.pi_s1.mod_p);
        j["pi_S1_mod_Q"] = format_poly(pr.pi_s1.mod_q);
        j["pi_S2_mod_P"] = format_poly(pr.pi_s2.mod_p);
        j["pi_S2_mod_Q"] = format_poly(pr.pi_s2.mod_q);
        if (pr.u_witness) j["u_witness"] = *pr.u_witness;
        else j["u_witness"] = nullptr;
        j["proof_pass"] = pr.pass;
    }
    return j;
}

inline std::string record_to_json_line(const CaseRecord& rec) { return record_to_json(rec).dump(); }

namespace detail {

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    return out + "\"";
}

inline std::string csv_bool(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline std::string csv_header() {
    return "q,p,k,modulus,d,P,Q,lhs,rhs,pass,"
           "eq2_partition,s1_transversal,s2_transversal,decomposition_identity,"
           "eta_sign_identity,sq_power_identity,pi_equal_mod_U,telescoped_matches_direct,"
           "pi_S1_mod_P,pi_S1_mod_Q,pi_S2_mod_P,pi_S2_mod_Q,u_witness,proof_pass";
}

inline std::string record_to_csv_row(const CaseRecord& rec) {
    std::ostringstream out;
    out << rec.spec->q() << ',' << rec.spec->p() << ',' << rec.spec->k() << ',';
    if (rec.spec->k() > 1) {
        std::string mod = "[";
        for (size_t i = 0; i < rec.spec->modulus().size(); ++i) {
            if (i) mod += ',';
            mod += std::to_string(rec.spec->modulus()[i]);
        }
        out << detail::csv_quote(mod + "]");
    }
    out << ',' << rec.d << ',' << detail::csv_quote(format_poly(rec.P)) << ','
        << detail::csv_quote(format_poly(rec.Q)) << ','
        << detail::csv_quote(format_field_element(rec.reciprocity.lhs)) << ','
        << detail::csv_quote(format_field_element(rec.reciprocity.rhs)) << ','
        << detail::csv_bool(rec.pass());
    if (rec.proof) {
        const ProofReport& pr = *rec.proof;
        out << ',' << detail::csv_bool(pr.eq2_partition) << ','
            << detail::csv_bool(pr.s1_transversal) << ',' << detail::csv_bool(pr.s2_transversal)
            << ',' << detail::csv_bool(pr.decomposition_identity) << ','
            << detail::csv_bool(pr.eta_sign_identity) << ','
            << detail::csv_bool(pr.sq_power_identity) << ',' << detail::csv_bool(pr.pi_equal_mod_u)
            << ',' << detail::csv_bool(pr.telescoped_matches_direct) << ','
            << detail::csv_quote(format_poly(pr.pi_s1.mod_p)) << ','
            << detail::csv_quote(format_poly(pr.pi_s1.mod_q)) << ','
            << detail::csv_quote(format_poly(pr.pi_s2.mod_p)) << ','
            << detail::csv_quote(format_poly(pr.pi_s2.mod_q)) << ',';
        if (pr.u_witness) out << *pr.u_witness;
        out << ',' << detail::csv_bool(pr.pass);
    } else {
        out << ",,,,,,,,,,,,,,";
    }
    return out.str();
}

/// Human-readable proof report, one line per fact.
inline std::string render_proof_report(const ProofReport& r) {
    std::ostringstream out;
    auto flag = [&](const char* name, bool v) { out << name << " = " << (v ? "true" : "false") << '\n'; };
    out << "pi_S1 = (" << format_poly(r.pi_s1.mod_p) << " mod P, " << format_poly(r.pi_s1.mod_q)
        << " mod Q)\n";
    out << "pi_S2 = (" << format_poly(r.pi_s2.mod_p) << " mod P, " << format_poly(r.pi_s2.mod_q)
        << " mod Q)\n";
    if (r.u_witness) out << "u_witness = " << *r.u_witness << '\n';
    else out << "u_witness = none\n";
    flag("eq2_partition", r.eq2_partition);
    flag("s1_transversal", r.s1_transversal);
    flag("s2_transversal", r.s2_transversal);
    flag("decomposition_identity", r.decomposition_identity);
    flag("eta_sign_identity", r.eta_sign_identity);
    flag("sq_power_identity", r.sq_power_identity);
    flag("pi_equal_mod_U", r.pi_equal_mod_u);
    flag("telescoped_matches_direct", r.telescoped_matches_direct);
    out << "derived_lhs = " << format_field_element(r.derived_lhs) << '\n';
    out << "expected_rhs = " << format_field_element(r.expected_rhs) << '\n';
    out << "pass = " << (r.pass ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace ffrec
