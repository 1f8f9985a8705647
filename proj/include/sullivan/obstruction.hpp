#pragma once

#include "sullivan/morphism.hpp"
#include "sullivan/rng.hpp"

namespace sullivan {

/// A value in the relative complex C^k(η) = B^k ⊕ C^{k-1} of a DGA
/// morphism η : B → C, with differential d(a, b) = (da, η(a) - db).
struct RelPair {
    Element in_b;  // degree k
    Element in_c;  // degree k-1
    bool is_zero() const { return in_b.is_zero() && in_c.is_zero(); }
};

RelPair relative_d(const DgaMorphism& eta, const RelPair& v);

/// Decides exactness of a closed value in C^k(η) by exact linear algebra on
/// the truncated complex; returns a primitive when one exists.
std::optional<RelPair> relative_primitive(const DgaMorphism& eta, int k, const RelPair& value);

/// Degreewise surjectivity of a morphism onto its target, through the
/// target's cap.
bool is_surjective(const DgaMorphism& mu);

/// An elementary-extension lifting square: A = stage of the total model,
/// Z = the next generators (an elementary slot, d(Z) ⊆ A),
///
///     A --f--> B
///     |         |eta
///     A<Z> -g-> C
///
/// together with a homotopy Phi : A → C⊗R<t,dt> whose endpoints are g∘ι at
/// t=0 and η∘f at t=1 (the orientation that makes the obstruction cochain a
/// relative cocycle).
struct ExtensionProblem {
    ModelPtr total;       // A<Z>
    size_t stage = 0;     // generators [0, stage) form A; [stage, end) form Z
    DgaMorphism f;        // A → B
    DgaMorphism g;        // A<Z> → C
    DgaMorphism eta;      // B → C
    AlgebraicHomotopy phi;  // A → C ⊗ R<t,dt>

    void check_coherent() const;  // throws on endpoint mismatch etc.
};

struct ObstructionCochain {
    /// Per Z-generator: O(z) = (f(dz), g(z) + ∫₀¹Φ(dz)) in B^{n+1} ⊕ C^n.
    std::map<uint32_t, RelPair> value;
    bool cocycle_ok = true;  // d(O(z)) = 0 in the relative complex
    std::vector<std::string> cocycle_witnesses;
};

ObstructionCochain obstruction_cochain(const ExtensionProblem& p);

/// Decides vanishing of the obstruction class and returns (b, c) with
/// d(b, c) = O when it vanishes.
std::optional<std::map<uint32_t, RelPair>> solve_obstruction(const ExtensionProblem& p,
                                                             const ObstructionCochain& o);

struct ExtensionResult {
    DgaMorphism f_tilde;        // A<Z> → B
    AlgebraicHomotopy phi_tilde;  // A<Z> → C ⊗ R<t,dt>
};

/// Builds f̃(z) = b(z) and Φ̃(z) = g(z) + d(c(z)⊗t) + ∫₀ᵗΦ(dz) after
/// verifying d(b, c) = O exactly; throws std::invalid_argument carrying the
/// residual otherwise.
ExtensionResult extend_homotopy(const ExtensionProblem& p,
                                const std::map<uint32_t, RelPair>& bc);

/// The relative qualitative obstruction for two total maps φ, ψ : A<Z> → B
/// homotopic on A by Φ (endpoints φ|A at t=0, ψ|A at t=1), with a
/// surjection μ : B ↠ C and a homotopy χ : A<Z> → C⊗R<t,dt> extending μ∘Φ.
struct RelativeObstructionProblem {
    ModelPtr total;
    size_t stage = 0;
    DgaMorphism phi, psi;   // A<Z> → B
    DgaMorphism mu;         // B ↠ C
    AlgebraicHomotopy big_phi;  // A → B ⊗ R<t,dt>
    AlgebraicHomotopy chi;      // A<Z> → C ⊗ R<t,dt>

    void check_coherent() const;
};

struct RelativeObstruction {
    /// O(z) = (ψ(z) − φ(z) − ∫₀¹Φ(dz), ∫₀¹χ(z)) in B^n ⊕ C^{n-1}.
    std::map<uint32_t, RelPair> value;
    bool cocycle_ok = true;
    bool vanishes = false;
    int truncation_cap = 0;  // cap of the relative complex instance
};

RelativeObstruction relative_obstruction(const RelativeObstructionProblem& p);

/// Draws a chain map from a model into a target by solving d_B(y) = φ(dg)
/// generator by generator; nullopt when some slot has no solution.
std::optional<DgaMorphism> random_morphism(const ModelPtr& source, const DgaPtr& target,
                                           Rng& rng);

/// Extends homotopies slot by slot up the model's tower; nullopt when a
/// genuine nonzero obstruction class blocks the construction. With an rng,
/// primitives are perturbed by random cocycles for variety.
std::optional<AlgebraicHomotopy> build_homotopy(const DgaMorphism& phi,
                                                const DgaMorphism& psi, Rng* rng);

}  // namespace sullivan
