#include "sullivan/exponents.hpp"

#include <sstream>

namespace sullivan {

ExponentTable exponent_table(int n, int c) {
    ExponentTable t;
    t.sc_upper = 2L * n;
    t.simple_upper = 2L * n + 1;
    t.nilpotent_upper = (4L * c - 1) * n;
    t.coformal_upper = (c + 1L) * n;
    t.sc_lower = 2L * (n - 1);
    t.coformal_lower = (c + 1L) * (n - 1);
    t.coformal_lower_printed = (c - 1L) * (n - 1);
    t.nilpotent_conjecture = 3L * n * c;
    return t;
}

std::string classification_string(const MinimalModel& model) {
    const Analysis& a = model.analysis();
    std::ostringstream os;
    if (a.simply_connected)
        os << "simply connected";
    else if (a.simple)
        os << "simple";
    else
        os << a.nilpotency_class << "-step nilpotent";
    if (a.coformal) os << ", coformal";
    return os.str();
}

ExponentReport exponent_report(const MinimalModel& model, int n_min, int n_max) {
    const Analysis& a = model.analysis();
    ExponentReport rep;
    rep.classification = classification_string(model);
    rep.nilpotency_class = a.nilpotency_class;
    rep.simply_connected = a.simply_connected;
    rep.simple = a.simple;
    rep.coformal = a.coformal;
    const int c = a.nilpotency_class;

    for (int n = n_min; n <= n_max; ++n) {
        ExponentTable t = exponent_table(n, c);
        ExponentRow row;
        row.n = n;
        if (a.simply_connected) {
            row.upper = t.sc_upper;
            row.upper_rule = "2n";
            row.lower = t.sc_lower;
            row.lower_rule = "2(n-1)";
        } else if (a.coformal) {
            row.upper = t.coformal_upper;
            row.upper_rule = "(c+1)n";
            row.lower = t.coformal_lower;
            row.lower_rule = "(c+1)(n-1), bracket construction";
            row.lower_alt = t.coformal_lower_printed;
        } else if (a.simple) {
            row.upper = t.simple_upper;
            row.upper_rule = "2n+1";
        } else {
            row.upper = t.nilpotent_upper;
            row.upper_rule = "(4c-1)n";
            row.conjecture = t.nilpotent_conjecture;
        }
        rep.rows.push_back(std::move(row));
    }

    if (!a.simply_connected && a.coformal)
        rep.notes.push_back(
            "coformal lower exponent uses the construction value (c+1)(n-1); the "
            "published summary table prints (c-1)(n-1), surfaced as lower_alt");
    if (!a.simply_connected && !a.coformal && c >= 2)
        rep.notes.push_back("conjectured upper exponent 3nc is unproven and flagged");
    return rep;
}

}  // namespace sullivan
