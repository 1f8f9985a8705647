// Acceptance suite: one pass/fail line per criterion, with the runtime
// budgets enforced. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "sullivan/corpus.hpp"
#include "sullivan/exponents.hpp"
#include "sullivan/selftest.hpp"

using namespace sullivan;

namespace {

int failures = 0;

double run_timed(const std::string& label, double budget_seconds, bool (*body)(std::string*)) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = body(&detail);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = budget_seconds <= 0 || secs <= budget_seconds;
    if (!in_budget) detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("%s %s: %s(%.2fs%s)\n", pass ? "PASS" : "FAIL", label.c_str(),
                detail.empty() ? "" : (detail + " ").c_str(), secs,
                budget_seconds > 0 ? (", budget " + std::to_string(static_cast<int>(budget_seconds)) + "s").c_str()
                                   : "");
    return secs;
}

bool criterion1(std::string* detail) {
    ReportNode v = check_bundled_validation();
    ReportNode f = check_fixture_diagnostics();
    *detail = "six bundled models validated, three failure fixtures diagnosed";
    return v.all_pass() && f.all_pass();
}

bool criterion2(std::string* detail) {
    ReportNode n = check_filtration_equality(42, 100);
    *detail = "naive = cautious on bundled + 100 randomized models, exact equality";
    return n.all_pass();
}

bool criterion3(std::string* detail) {
    ReportNode n = check_structure_lemmas(42, 100);
    *detail = "delta injective, d_nil blocks i+j <= J, coformal refinement i1+i2 <= J+c";
    return n.all_pass();
}

bool criterion4(std::string* detail) {
    ReportNode n = check_weight_bound_corpus(42, 100);
    *detail = "degree-1/degree-2/general/simple/coformal weight bounds, exact integers";
    return n.all_pass();
}

bool criterion5(std::string* detail) {
    bool ok = true;
    for (int n = 2; n <= 5; ++n) {
        for (int c = 1; c <= 4; ++c) {
            ExponentTable t = exponent_table(n, c);
            long sc_up = n + n;
            long simple_up = n + n + 1;
            long nil_up = 4 * c * n - n;
            long cof_up = c * n + n;
            long sc_low = n + n - 2;
            long cof_low = c * n - c + n - 1;
            long cof_low_printed = c * n - c - n + 1;
            long conj = 3 * n * c;
            ok = ok && t.sc_upper == sc_up && t.simple_upper == simple_up &&
                 t.nilpotent_upper == nil_up && t.coformal_upper == cof_up &&
                 t.sc_lower == sc_low && t.coformal_lower == cof_low &&
                 t.coformal_lower_printed == cof_low_printed &&
                 t.nilpotent_conjecture == conj;
        }
    }
    // the discrepancy handling and the conjecture flag must be surfaced
    ModelFile h = load_bundled("heisenberg");
    ExponentReport er = exponent_report(*h.model, 3, 3);
    ok = ok && er.rows[0].upper == 9 && er.rows[0].lower && *er.rows[0].lower == 6 &&
         er.rows[0].lower_alt && *er.rows[0].lower_alt == 2 && !er.notes.empty();
    ModelFile nc = load_bundled("noncoformal");
    ExponentReport er2 = exponent_report(*nc.model, 3, 3);
    ok = ok && er2.rows[0].upper == 6 && er2.rows[0].lower && *er2.rows[0].lower == 4;
    *detail = "all six table cells at (n,c) in {2..5}x{1..4}; alternative + conjecture flagged";
    return ok;
}

bool criterion6(std::string* detail) {
    ReportNode n = check_ftc_suite(43, 200);
    *detail = "both identities exact on 200 random interval elements per bundled model";
    return n.all_pass();
}

bool criterion7(std::string* detail) {
    ReportNode n = check_obstruction_suite(44, 12);
    *detail = "cocycle condition, extension round trip, worked nonzero obstruction";
    return n.all_pass();
}

bool criterion8(std::string* detail) {
    ReportNode n = check_whitehead_suite(6, 3);
    *detail = "[t,z(k,c)] = 0, z(k,j) = [a_j, z(k-1,c)], nonvanishing, weights (c+1)(k-1)";
    return n.all_pass();
}

bool criterion9(std::string* detail) {
    std::string a = render_json(selftest_report(42));
    std::string b = render_json(selftest_report(42));
    *detail = "two selftest --seed 42 reports are byte-identical";
    return !a.empty() && a == b;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    run_timed("criterion 1 (validation + fixtures)", 1.0, criterion1);
    run_timed("criterion 2 (filtration equality)", 30.0, criterion2);
    run_timed("criterion 3 (delta/block lemmas)", 30.0, criterion3);
    run_timed("criterion 4 (weight bounds)", 30.0, criterion4);
    run_timed("criterion 5 (exponent table)", 0.0, criterion5);
    run_timed("criterion 6 (fundamental theorems)", 10.0, criterion6);
    run_timed("criterion 7 (obstruction calculus)", 0.0, criterion7);
    run_timed("criterion 8 (whitehead suite)", 60.0, criterion8);
    run_timed("criterion 9 (determinism)", 0.0, criterion9);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
