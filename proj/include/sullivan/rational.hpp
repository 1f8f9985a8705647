#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace sullivan {

/// Exact rational number. All arithmetic in this library is exact; there is
/// no floating-point fallback anywhere in the computational path.
using Rat = mpq_class;

/// Build a reduced rational with positive denominator.
inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

/// Renders as "p" or "p/q" with q > 1.
std::string rat_to_string(const Rat& q);

/// Parses "p" or "p/q". Returns nullopt on malformed input.
std::optional<Rat> rat_from_string(const std::string& s);

/// |q| as a rational.
inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// Approximate double value, for display only.
inline double rat_to_double(const Rat& q) { return q.get_d(); }

}  // namespace sullivan
