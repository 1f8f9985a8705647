#pragma once

#include <cstdint>

#include "sullivan/report.hpp"

namespace sullivan {

/// The individual bundled check suites. Each returns a deterministic report
/// for a fixed seed.
ReportNode check_bundled_validation();
ReportNode check_fixture_diagnostics();
ReportNode check_filtration_equality(uint64_t seed, int count);
ReportNode check_structure_lemmas(uint64_t seed, int count);
ReportNode check_weight_bound_corpus(uint64_t seed, int count);
ReportNode check_exponent_cells();
ReportNode check_ftc_suite(uint64_t seed, int samples_per_model);
ReportNode check_obstruction_suite(uint64_t seed, int samples);
ReportNode check_whitehead_suite(int k_max, int c_max);

/// The full bundled acceptance suite as one report. Byte-identical output
/// for a fixed seed.
ReportNode selftest_report(uint64_t seed);

}  // namespace sullivan
