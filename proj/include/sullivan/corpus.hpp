#pragma once

#include "sullivan/parser.hpp"

namespace sullivan {

struct BundledFile {
    std::string name;      // e.g. "heisenberg"
    std::string filename;  // e.g. "heisenberg.sm"
    std::string source;
};

/// The six bundled model files: s2, s3, heisenberg, threestep (degree-1,
/// class 3), noncoformal (cubic differential), and a randomized-model
/// recipe.
const std::vector<BundledFile>& bundled_models();

/// Injected-failure fixtures with their expected diagnostic kind:
/// parse (minimality at parse time), d-squared, nilpotence.
struct FailureFixture {
    BundledFile file;
    std::string expected_check;
};
const std::vector<FailureFixture>& failure_fixtures();

/// Parses or materializes a bundled model by name; throws on unknown name.
ModelFile load_bundled(const std::string& name);

}  // namespace sullivan
