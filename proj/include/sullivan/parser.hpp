#pragma once

#include <variant>

#include "sullivan/morphism.hpp"
#include "sullivan/sampler.hpp"

namespace sullivan {

struct ParseError {
    int line = 0;
    std::string message;
};

struct NamedMorphism {
    std::string name;
    std::vector<Element> images;  // per generator, in the model's own algebra
};

struct NamedHomotopy {
    std::string name;
    std::string from;  // names of declared morphisms
    std::string to;
    std::vector<IntervalElement> images;
};

/// A parsed model file: the model plus any morphism / homotopy blocks.
struct ModelFile {
    ModelPtr model;
    std::vector<NamedMorphism> morphisms;
    std::vector<NamedHomotopy> homotopies;
    bool from_recipe = false;
};

using ParseResult = std::variant<ModelFile, std::vector<ParseError>>;

/// Parses the line-oriented model language:
///   model <name> maxdeg <N>
///   gen <id> deg <n> [step <J>]
///   d <id> = <expr>
///   morphism <name>            followed by   m <id> = <expr>
///   homotopy <name> from <f> to <g>   followed by   h <id> = <iexpr>
/// where <expr> is a +/- separated sum of <rat>*g1^e1*...*gk^ek, rationals
/// are p/q or integers, and <iexpr> may also use the reserved symbols t and
/// dt. '#' starts a comment. Recipe files start with `sample` instead and
/// are materialized through the model sampler:
///   sample <name> maxdeg <N> seed <S> [maxgens <k>] [closedpct <p>]
///          [coformal] [simple] [simplyconnected]
ParseResult parse_model(const std::string& text);

/// Canonical text form; parse(print(m)) reproduces the model exactly.
std::string print_model(const MinimalModel& model);

}  // namespace sullivan
