#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sullivan/rational.hpp"
#include "sullivan/rng.hpp"

namespace sullivan {

/// A generator of a free graded Lie algebra. Degrees are Samelson degrees
/// (Whitehead degree minus one), so classes of maps from S^2 are odd of
/// degree 1 and self-brackets [x,x] of odd classes are nonzero.
struct LieGenerator {
    std::string name;
    int samelson_degree = 0;
    long scale_weight = 0;  // exponent of L carried by the L-Lipschitz representative
};

class LieUniverse {
  public:
    explicit LieUniverse(std::vector<LieGenerator> gens);
    size_t size() const { return gens_.size(); }
    const LieGenerator& gen(uint32_t i) const { return gens_[i]; }
    std::optional<uint32_t> index_of(const std::string& name) const;

  private:
    std::vector<LieGenerator> gens_;
    std::map<std::string, uint32_t> by_name_;
};

using LieUniPtr = std::shared_ptr<const LieUniverse>;

/// An element of the free graded Lie algebra, represented faithfully by its
/// expansion in the free associative (tensor) algebra: brackets expand as
/// [x,y] = xy - (-1)^{|x||y|} yx, and an element is zero exactly when its
/// expansion is zero. A formal bracket expression is retained for reports.
class LieElement {
  public:
    LieElement() = default;
    explicit LieElement(LieUniPtr universe);
    static LieElement generator(LieUniPtr universe, uint32_t index);

    const LieUniPtr& universe() const { return universe_; }
    bool is_zero() const { return words_.empty(); }
    const std::map<std::vector<uint32_t>, Rat>& words() const { return words_; }

    std::optional<int> homogeneous_degree() const;

    LieElement operator+(const LieElement& o) const;
    LieElement operator-(const LieElement& o) const;
    LieElement operator*(const Rat& c) const;
    bool operator==(const LieElement& o) const;

    const std::string& formula() const { return formula_; }
    LieElement with_formula(std::string f) const;
    std::string expansion_string() const;

    /// Per-word sums of generator scale weights.
    std::map<long, size_t> scale_weight_census() const;
    /// The common scale weight when homogeneous; nullopt otherwise.
    std::optional<long> scaling_weight() const;

    /// Word-wise generator substitution (an algebra morphism into the
    /// target universe).
    LieElement substitute(const LieUniPtr& target,
                          const std::vector<uint32_t>& gen_map) const;

    void add_word(const std::vector<uint32_t>& w, const Rat& c);

  private:
    LieUniPtr universe_;
    std::map<std::vector<uint32_t>, Rat> words_;
    std::string formula_;
};

/// [x, y] with the graded sign, bilinear over homogeneous components.
LieElement bracket(const LieElement& x, const LieElement& y);

/// The mapping-torus circle class t acting as a degree-0 derivation:
/// D[x,y] = [Dx,y] + [x,Dy]. t is never an algebra element; [x,t] = -D(x).
class TorusAction {
  public:
    TorusAction(LieUniPtr universe, std::vector<LieElement> images);
    LieElement apply(const LieElement& x) const;

  private:
    LieUniPtr universe_;
    std::vector<LieElement> images_;
};

/// The two-torus setup: generators a1..ac, b1..bc of Samelson degree 1 and
/// scale weight j+1, with D(a_j) = a_{j+1}, D(a_c) = 0 (same for b).
struct MappingTorus {
    int c = 0;
    LieUniPtr universe;
    TorusAction action;

    LieElement alpha(int j) const;
    LieElement beta(int j) const;
    /// The (c x c) matrix of t • (-) on the alpha block (lower bidiagonal).
    std::vector<std::vector<long>> action_matrix() const;
};

MappingTorus mapping_torus(int c);

/// The iterated-bracket classes: zeta(2,1) = b1, zeta(k,1) = [a1,
/// zeta(k-1,c)] for k > 2, zeta(k,j) = [t, zeta(k,j-1)] for j > 1. The
/// Whitehead degree of zeta(k,j) is k (Samelson degree k-1).
LieElement zeta(const MappingTorus& torus, int k, int j);

struct LieCheckReport {
    bool ok = true;
    int checked = 0;
    std::vector<std::string> failures;
};

/// For 2 <= k <= k_max, 1 <= j <= c: [t, zeta(k,c)] = 0 and, for k > 2,
/// zeta(k,j) = [a_j, zeta(k-1,c)]; plus the derivation identity on sampled
/// bracket pairs.
LieCheckReport verify_jacobi_lemmas(int k_max, int c, uint64_t seed = 7);

/// zeta(k,c) != 0 both directly and through the deformation-retract
/// substitution a_j, b_j -> a_c-class, b_c-class, whose image must be the
/// right-nested iterated bracket up to a nonzero scalar.
LieCheckReport verify_nonvanishing(int k_max, int c);

/// scaling_weight(zeta(k,c)) = (c+1)(k-1) for all 2 <= k <= k_max.
LieCheckReport verify_scaling_weights(int k_max, int c);

}  // namespace sullivan
