#pragma once

#include "sullivan/model.hpp"
#include "sullivan/rng.hpp"

namespace sullivan {

/// Parameters for the randomized valid-model sampler. Models are built
/// constructively so that d^2 = 0, minimality and the nilpotence condition
/// hold by construction: generators are created in tower order and each
/// differential is drawn from the kernel of d on the span of word-length
/// >= 2 monomials in earlier generators.
struct SamplerOptions {
    int max_degree = 4;           // generator degrees 1..max_degree
    int max_gens_per_degree = 3;
    bool coformal_only = false;   // quadratic differentials only
    bool simple_only = false;     // images in ∧^{>=2} V^{<n}
    bool simply_connected = false;  // no degree-1 generators
    // guarantees a full row of degree-1 generators, which deepens towers
    bool degree1_rich = false;
    // probability (out of 100) that a generator is closed
    int closed_percent = 35;
};

ModelPtr sample_model(Rng& rng, const SamplerOptions& options, const std::string& name);

}  // namespace sullivan
