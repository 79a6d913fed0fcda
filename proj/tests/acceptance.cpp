// Acceptance suite: runs every check over its full ring family and
// prints one verdict line per criterion. The determinism check makes
// the underlying computations run three times (threads 1, 4, 4) and
// compares the serialized group data.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "pgl2hom/harness.hpp"

using namespace pgl2hom;

int main() {
    struct Criterion {
        int number;
        const char* id;
        const char* label;
        double budget_s;  // stated per-run budget; 0 = none
    };
    const std::vector<Criterion> criteria = {
        {1, "complex-exactness", "complex exactness below the residue degree", 300},
        {2, "universality-dichotomy", "H1(Y) dichotomy and the two H1 routes", 120},
        {3, "presentation-equivalence", "classical vs orbit scissors presentations", 300},
        {4, "four-term-exactness", "four-term order identities for F_q, 5 <= q <= 27", 180},
        {5, "h1-closed-form", "PGL2 abelianization = G_A + A_{A^x}", 180},
        {6, "h2-order", "H2 order and the odd-part identity with K2M", 120},
        {7, "homology-tables", "dihedral table and bar = Kunneth through degree 3", 600},
        {8, "pgl2z", "PGL2(Z) Mayer-Vietoris in degrees 1..3", 60},
        {9, "pb2-vs-pt2", "H_q(PB2) = H_q(PT2) for q <= 2 over F5", 120},
        {10, "bloch-wigner", "Bloch-Wigner order consistency and literature flags", 180},
        {11, "determinism", "identical group data across threads and reruns", 0},
    };

    SuiteConfig cfg;  // defaults: all checks, acceptance ring families
    std::vector<CheckResult> results = run_suite(cfg);

    std::map<std::string, std::vector<const CheckResult*>> by_id;
    for (const auto& r : results) by_id[r.id].push_back(&r);

    int failures = 0;
    for (const auto& c : criteria) {
        const auto& rows = by_id[c.id];
        int fail = 0, skip = 0, flag = 0;
        double ms = 0;
        for (const auto* r : rows) {
            ms += r->ms;
            if (r->status == CheckStatus::Fail) ++fail;
            if (r->status == CheckStatus::Skipped) ++skip;
            if (r->status == CheckStatus::Flagged) ++flag;
        }
        bool time_ok = c.budget_s == 0 || ms / 1000.0 < c.budget_s;
        bool pass = fail == 0 && !rows.empty() && time_ok;
        if (!pass) ++failures;
        std::printf("criterion %2d %-28s %s  (%zu checks, %.1fs%s%s%s)\n", c.number, c.id,
                    pass ? "PASS" : "FAIL", rows.size(), ms / 1000.0,
                    skip ? (", " + std::to_string(skip) + " skipped").c_str() : "",
                    flag ? (", " + std::to_string(flag) + " flagged").c_str() : "",
                    time_ok ? "" : ", OVER TIME BUDGET");
        std::printf("             %s\n", c.label);
        for (const auto* r : rows)
            if (r->status == CheckStatus::Fail)
                std::printf("             FAIL %s: %s\n", r->ring.c_str(), r->detail.c_str());
    }
    std::printf("ACCEPTANCE: %s (%zu/%zu criteria)\n", failures == 0 ? "PASS" : "FAIL",
                criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
