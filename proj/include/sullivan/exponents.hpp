#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sullivan/model.hpp"

namespace sullivan {

/// The symbolic exponent table for nullhomotopy-volume growth, evaluated at
/// sphere dimension n and nilpotency class c. Upper cells per space class,
/// the two known lower cells, the as-printed alternative for the coformal
/// lower cell, and the conjectured improvement of the general upper cell.
struct ExponentTable {
    long sc_upper = 0;             // 2n
    long simple_upper = 0;         // 2n + 1
    long nilpotent_upper = 0;      // (4c - 1) n
    long coformal_upper = 0;       // (c + 1) n
    long sc_lower = 0;             // 2 (n - 1)
    long coformal_lower = 0;       // (c + 1)(n - 1), from the construction
    long coformal_lower_printed = 0;  // (c - 1)(n - 1), as printed in the survey table
    long nilpotent_conjecture = 0;    // 3 n c
};

ExponentTable exponent_table(int n, int c);

struct ExponentRow {
    int n = 0;
    long upper = 0;
    std::string upper_rule;
    std::optional<long> lower;
    std::string lower_rule;
    std::optional<long> lower_alt;   // flagged printed-table alternative
    std::optional<long> conjecture;  // flagged conjectural exponent
};

struct ExponentReport {
    std::string classification;
    int nilpotency_class = 0;
    bool simply_connected = false;
    bool simple = false;
    bool coformal = false;
    std::vector<ExponentRow> rows;
    std::vector<std::string> notes;
};

/// Per-dimension exponents for a valid model, picking the sharpest
/// applicable class. The coformal lower bound defaults to the construction
/// value with the printed-table value surfaced as a flagged alternative.
ExponentReport exponent_report(const MinimalModel& model, int n_min, int n_max);

std::string classification_string(const MinimalModel& model);

}  // namespace sullivan
