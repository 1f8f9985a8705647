#pragma once

#include <cstdint>

#include "sullivan/rational.hpp"

namespace sullivan {

/// Deterministic splitmix64 generator. Used instead of <random> engines with
/// standard distributions so that sampled reports are byte-identical across
/// platforms for a fixed seed.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), n > 0. Rejection-sampled, unbiased.
    uint64_t below(uint64_t n) {
        uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin(uint64_t num = 1, uint64_t den = 2) { return below(den) < num; }

    /// Small nonzero rational with |num| <= max_num and 1 <= den <= max_den.
    Rat small_rat(long max_num = 3, long max_den = 2) {
        long n = range(1, max_num);
        long d = range(1, max_den);
        if (coin()) n = -n;
        return rat(n, d);
    }

    /// Fork an independent stream (stable function of current state).
    Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

  private:
    uint64_t state_;
};

}  // namespace sullivan
