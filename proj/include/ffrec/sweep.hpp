#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ffrec/report.hpp"

namespace ffrec {

enum class SweepFormat { json, csv };

/// Configuration for an exhaustive reciprocity sweep over all ordered pairs
/// of distinct monic irreducibles with deg P + deg Q <= max_total_degree and
/// every selected d.  The proof replay runs for cases with |PQ| <= proof_cap.
struct SweepConfig {
    SpecPtr spec;
    std::vector<int64_t> ds;        // each must divide q-1
    int max_total_degree = 4;       // >= 2
    SweepFormat format = SweepFormat::json;
    uint64_t proof_cap = 1000000;   // |PQ| bound for running verify_proof
    unsigned jobs = 1;
};

struct SweepSummary {
    uint64_t cases = 0;
    uint64_t reciprocity_failures = 0;
    uint64_t proof_runs = 0;
    uint64_t proof_failures = 0;

    bool all_pass() const { return reciprocity_failures == 0 && proof_failures == 0; }

    std::string to_string() const {
        return "cases=" + std::to_string(cases) +
               " reciprocity_failures=" + std::to_string(reciprocity_failures) +
               " proof_runs=" + std::to_string(proof_runs) +
               " proof_failures=" + std::to_string(proof_failures);
    }
};

inline std::vector<int64_t> divisors_of(uint64_t n) {
    std::vector<int64_t> out;
    for (uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(int64_t(d));
    return out;
}

namespace detail {

struct SweepCase {
    int64_t d;
    const IrreduciblePoly* P;
    const IrreduciblePoly* Q;
};

inline CaseRecord evaluate_case(const SpecPtr& spec, const SweepCase& c, uint64_t proof_cap) {
    CaseRecord rec{spec, c.d, c.P->poly(), c.Q->poly(), check_reciprocity(*c.P, *c.Q, c.d),
                   std::nullopt};
    uint64_t pq_norm = c.P->norm() <= proof_cap / c.Q->norm() ? c.P->norm() * c.Q->norm() : 0;
    if (pq_norm != 0 && pq_norm <= proof_cap) rec.proof = verify_proof(*c.P, *c.Q, c.d);
    return rec;
}

}  // namespace detail

/// Lists the monic irreducibles of each degree in [1, max_degree], in the
/// canonical enumeration order.
inline std::vector<std::vector<IrreduciblePoly>> irreducibles_by_degree(const SpecPtr& spec,
                                                                        int max_degree) {
    std::vector<std::vector<IrreduciblePoly>> by_degree(size_t(std::max(max_degree, 0)) + 1);
    if (max_degree < 1) return by_degree;
    for (const Poly& f : enumerate_monic_below(spec, max_degree + 1)) {
        if (f.degree() < 1) continue;
        if (is_irreducible(f)) by_degree[size_t(f.degree())].emplace_back(f);
    }
    return by_degree;
}

/// Runs the sweep, writing one record line per case to `out` in the fixed
/// case order (d, deg P, P, deg Q, Q).  The emitted bytes are independent of
/// the number of worker threads.
inline SweepSummary run_sweep(const SweepConfig& config, std::ostream& out) {
    if (config.max_total_degree < 2)
        fail(errc::invalid_parameter, "sweep degree bound must be >= 2");
    if (config.ds.empty()) fail(errc::invalid_parameter, "no d selected");
    for (int64_t d : config.ds) detail::require_d_divides(config.spec, d);
    if (config.jobs < 1) fail(errc::invalid_parameter, "jobs must be >= 1");

    auto by_degree = irreducibles_by_degree(config.spec, config.max_total_degree - 1);

    std::vector<detail::SweepCase> cases;
    for (int64_t d : config.ds)
        for (int deg_p = 1; deg_p < config.max_total_degree; ++deg_p)
            for (const IrreduciblePoly& P : by_degree[size_t(deg_p)])
                for (int deg_q = 1; deg_p + deg_q <= config.max_total_degree; ++deg_q)
                    for (const IrreduciblePoly& Q : by_degree[size_t(deg_q)]) {
                        if (P.poly() == Q.poly()) continue;
                        cases.push_back({d, &P, &Q});
                    }

    struct CaseResult {
        std::string line;
        bool reciprocity_pass = true;
        bool proof_ran = false;
        bool proof_pass = true;
    };
    std::vector<CaseResult> results(cases.size());

    auto work = [&](size_t index) {
        CaseRecord rec = detail::evaluate_case(config.spec, cases[index], config.proof_cap);
        CaseResult& res = results[index];
        res.line = config.format == SweepFormat::json ? record_to_json_line(rec)
                                                      : record_to_csv_row(rec);
        res.reciprocity_pass = rec.reciprocity.pass;
        res.proof_ran = rec.proof.has_value();
        res.proof_pass = !rec.proof || rec.proof->pass;
    };

    size_t jobs = std::min<size_t>(config.jobs, std::max<size_t>(cases.size(), 1));
    if (jobs <= 1) {
        for (size_t i = 0; i < cases.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (size_t j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                try {
                    for (size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1))
                        work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    if (config.format == SweepFormat::csv) out << csv_header() << '\n';
    SweepSummary summary;
    summary.cases = cases.size();
    for (const CaseResult& res : results) {
        out << res.line << '\n';
        if (!res.reciprocity_pass) ++summary.reciprocity_failures;
        if (res.proof_ran) {
            ++summary.proof_runs;
            if (!res.proof_pass) ++summary.proof_failures;
        }
    }
    return summary;
}

}  // namespace ffrec
