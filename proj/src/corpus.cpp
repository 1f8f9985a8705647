#include "sullivan/corpus.hpp"

#include <stdexcept>

namespace sullivan {

const std::vector<BundledFile>& bundled_models() {
    static const std::vector<BundledFile> files = {
        {"s2", "s2.sm",
         "# rational model of the 2-sphere\n"
         "model s2 maxdeg 4\n"
         "gen x deg 2\n"
         "gen y deg 3\n"
         "d y = x^2\n"},
        {"s3", "s3.sm",
         "# rational model of the 3-sphere: one closed generator\n"
         "model s3 maxdeg 4\n"
         "gen z deg 3\n"},
        {"heisenberg", "heisenberg.sm",
         "# minimal model of the heisenberg nilmanifold\n"
         "model heisenberg maxdeg 3\n"
         "gen x deg 1 step 1\n"
         "gen y deg 1 step 1\n"
         "gen z deg 1 step 2\n"
         "d z = x*y\n"},
        {"threestep", "threestep.sm",
         "# three-step tower in degree 1\n"
         "model threestep maxdeg 3\n"
         "gen x deg 1 step 1\n"
         "gen y deg 1 step 1\n"
         "gen z deg 1 step 2\n"
         "gen w deg 1 step 3\n"
         "d z = x*y\n"
         "d w = x*z\n"},
        {"noncoformal", "noncoformal.sm",
         "# simply connected model with a cubic differential\n"
         "model noncoformal maxdeg 5\n"
         "gen x deg 2\n"
         "gen z deg 5\n"
         "d z = x^3\n"},
        {"random1", "random1.smr",
         "# randomized-model recipe; materialized deterministically\n"
         "sample random1 maxdeg 3 seed 11 maxgens 3 closedpct 40\n"},
    };
    return files;
}

const std::vector<FailureFixture>& failure_fixtures() {
    static const std::vector<FailureFixture> fixtures = {
        {{"broken_minimality", "broken_minimality.sm",
          "# word-length-1 differential: rejected while parsing\n"
          "model broken_minimality maxdeg 2\n"
          "gen x deg 1\n"
          "gen z deg 1\n"
          "d z = x\n"},
         "parse"},
        {{"broken_dsq", "broken_dsq.sm",
          "# d^2(w) = x*y*u is nonzero\n"
          "model broken_dsq maxdeg 2\n"
          "gen x deg 1\n"
          "gen y deg 1\n"
          "gen u deg 1\n"
          "gen z deg 1\n"
          "gen w deg 1\n"
          "d z = x*y\n"
          "d w = z*u\n"},
         "d-squared"},
        {{"broken_nilpotence", "broken_nilpotence.sm",
          "# dx involves x itself: the Z(r) tower never absorbs it\n"
          "model broken_nilpotence maxdeg 2\n"
          "gen x deg 1\n"
          "gen y deg 1\n"
          "d x = x*y\n"},
         "nilpotence"},
    };
    return fixtures;
}

ModelFile load_bundled(const std::string& name) {
    for (const BundledFile& f : bundled_models()) {
        if (f.name == name) {
            ParseResult r = parse_model(f.source);
            if (auto* mf = std::get_if<ModelFile>(&r)) return std::move(*mf);
            throw std::logic_error("bundled model fails to parse: " + name);
        }
    }
    throw std::invalid_argument("unknown bundled model: " + name);
}

}  // namespace sullivan
