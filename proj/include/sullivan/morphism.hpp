#pragma once

#include <optional>

#include "sullivan/interval.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

class Dga;
using DgaPtr = std::shared_ptr<const Dga>;

/// A finitely presented target DGA: a free graded-commutative algebra with
/// differential, truncated at a degree cap. Truncation at a lower cap is a
/// surjective quotient morphism (monomials above the cap are dropped), which
/// is how the relative obstruction instances are built.
class Dga {
  public:
    Dga(GenSetPtr universe, Derivation d, std::optional<int> cap = {});

    static DgaPtr of_model(const ModelPtr& m);
    static DgaPtr free_dga(GenSetPtr universe, Derivation d, std::optional<int> cap = {});
    /// The base field as a DGA (no generators, cap 0).
    static DgaPtr rationals();
    /// Same presentation with a lower degree cap.
    static DgaPtr truncation(const DgaPtr& base, int cap);

    const GenSetPtr& universe() const { return universe_; }
    const Derivation& differential() const { return d_; }
    int cap() const { return cap_; }

    /// Quotient projection: drops monomials above the cap.
    Element reduce(const Element& e) const;
    Element d(const Element& e) const;
    IntervalElement reduce(const IntervalElement& u) const;
    IntervalElement d(const IntervalElement& u) const;

    /// Monomial coordinates of the degree-k piece (empty above the cap).
    std::vector<Monomial> basis(int degree) const;
    QVec coordinates(const Element& e, int degree) const;
    Element element(const QVec& coords, int degree) const;

    bool same_as(const Dga& o) const;

  private:
    GenSetPtr universe_;
    Derivation d_;
    int cap_;
};

/// A DGA morphism from (a stage of) a minimal model into a target DGA,
/// given by generator images and extended multiplicatively. Whether it
/// commutes with the differentials is a checkable property.
class DgaMorphism {
  public:
    DgaMorphism(ModelPtr source, size_t source_prefix, DgaPtr target,
                std::vector<Element> images);

    /// Morphism defined on the whole model.
    static DgaMorphism total(ModelPtr source, DgaPtr target, std::vector<Element> images);
    static DgaMorphism zero(ModelPtr source, size_t source_prefix, DgaPtr target);
    /// Identity-shaped inclusion when source and target share the universe.
    static DgaMorphism inclusion(ModelPtr source, size_t source_prefix, DgaPtr target);

    const ModelPtr& source() const { return source_; }
    size_t source_prefix() const { return prefix_; }
    const DgaPtr& target() const { return target_; }
    const Element& image(uint32_t gen) const { return images_[gen]; }

    Element apply(const Element& e) const;

    /// Residuals of φ∘d - d∘φ per generator; empty when the morphism
    /// commutes with the differentials.
    std::vector<std::pair<uint32_t, Element>> chain_map_violations() const;
    bool is_chain_map() const { return chain_map_violations().empty(); }

    /// Post-composition with a morphism out of this target.
    DgaMorphism then(const DgaMorphism& next) const;

    bool same_maps(const DgaMorphism& o) const;

  private:
    ModelPtr source_;
    size_t prefix_;
    DgaPtr target_;
    std::vector<Element> images_;
};

/// An algebraic homotopy: a morphism from (a stage of) a model into
/// target ⊗ R<t,dt>, with DGA-morphism endpoints at t=0 and t=1.
class AlgebraicHomotopy {
  public:
    AlgebraicHomotopy(ModelPtr source, size_t source_prefix, DgaPtr target,
                      std::vector<IntervalElement> images);

    static AlgebraicHomotopy constant(const DgaMorphism& phi);

    const ModelPtr& source() const { return source_; }
    size_t source_prefix() const { return prefix_; }
    const DgaPtr& target() const { return target_; }
    const IntervalElement& image(uint32_t gen) const { return images_[gen]; }

    IntervalElement apply(const Element& e) const;

    DgaMorphism endpoint_at_0() const;
    DgaMorphism endpoint_at_1() const;

    std::vector<std::pair<uint32_t, IntervalElement>> chain_map_violations() const;
    bool is_chain_map() const { return chain_map_violations().empty(); }

    /// Post-composition with a DGA morphism out of the target.
    AlgebraicHomotopy then(const DgaMorphism& next) const;

  private:
    ModelPtr source_;
    size_t prefix_;
    DgaPtr target_;
    std::vector<IntervalElement> images_;
};

/// The stage model on the first `count` generators. Requires the
/// declaration order to be tower-compatible (differentials of kept
/// generators only involve kept generators).
ModelPtr prefix_model(const ModelPtr& model, size_t count);

/// Reorders generators so every differential only references earlier ones,
/// when such an order exists (it does whenever the generator-level tower
/// exhausts). Returns the model itself when already ordered; nullptr when
/// no generator-level order exists.
ModelPtr tower_ordered(const ModelPtr& model);

/// Per-degree operator norms of a morphism in the coefficient max-norms of
/// the declared bases; every norm is an exact rational.
struct Dilatation {
    std::map<int, Rat> norm;  // degree k -> ||φ|_{V_k}||_op
    /// Exact comparison Dil ≤ L decided by norm_k <= L^k for all k.
    bool leq(const Rat& L) const;
    /// max_k norm_k^{1/k}; display only.
    double approx() const;
};

Dilatation dilatation(const DgaMorphism& phi);
/// Dil_T: rescales t -> t/T first, then measures coefficient norms over the
/// monomial ⊗ t^i (dt)^j basis.
Dilatation dilatation(const AlgebraicHomotopy& phi, const Rat& T = Rat(1));

/// Formal length: the per-degree norms of g -> ∫₀¹Φ(g), a degree -1 map,
/// under the T = 1 normalization.
Dilatation formal_length(const AlgebraicHomotopy& phi);

}  // namespace sullivan
