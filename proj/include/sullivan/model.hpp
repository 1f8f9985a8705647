#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "sullivan/derivation.hpp"

namespace sullivan {

struct ValidationIssue {
    std::string check;      // "d-squared" | "minimality" | "nilpotence"
    std::string generator;  // offending generator
    std::string detail;
};

struct ValidationReport {
    bool d_squared_ok = false;
    bool minimal_ok = false;
    bool nilpotent_ok = false;
    std::vector<ValidationIssue> issues;
    /// Generator names newly absorbed at each stage of the Z(r) tower.
    std::vector<std::vector<std::string>> tower;
    bool ok() const { return d_squared_ok && minimal_ok && nilpotent_ok; }
};

/// The cautious or naive filtration of the indecomposables, one tower of
/// subspaces per degree. Subspaces live in the declared coordinates of the
/// degree slot V^n. All towers are stored with a common length (`levels`)
/// so equality of tables is levelwise subspace equality.
struct FiltrationTable {
    int levels = 0;
    std::map<int, std::vector<Subspace>> filtration;  // C^n(J), index J-1
    std::map<int, std::vector<Subspace>> steps;       // E^n(J), index J-1
    std::map<int, int> exhaust_step;  // minimal J with C^n(J) = V^n; 0 when never

    bool exhausted() const;
    /// Smallest c with C^n(c) = V^n for every degree; 0 when not exhausted.
    int nilpotency_class() const;
    bool operator==(const FiltrationTable& o) const;
};

/// Word-length and step decomposition of d(g) for a step-adapted generator.
struct DifferentialSplit {
    int degree = 0;
    int step = 0;
    Element d_sim;  // part in ∧^{>=2} V^{<n}
    Element d_nil;  // part in V^1 ∧ V^n
    /// Nilpotent blocks: (i, j) -> component in E^1(i) ∧ E^n(j). For n = 1
    /// the block index is the unordered step pair (i <= j).
    std::map<std::pair<int, int>, Element> blocks;
    Element delta;  // abelian component, block (1, step-1)
};

class MinimalModel;
using ModelPtr = std::shared_ptr<const MinimalModel>;

/// Classification and step structure of a valid model, computed once.
struct Analysis {
    FiltrationTable cautious;
    FiltrationTable naive;
    int nilpotency_class = 0;
    bool simply_connected = false;
    bool simple = false;   // class 1
    bool coformal = false;

    /// Step-adapted presentation. Equal to the analyzed model when every
    /// declared generator already lies in a single cautious step.
    ModelPtr adapted;
    bool adapted_is_declared = false;
    std::vector<int> adapted_gen_step;  // step per adapted generator
    /// Adapted generators expressed in declared coordinates of their slot.
    std::vector<QVec> adapted_in_declared;
};

/// A free graded-commutative algebra with differential and a working degree
/// bound. Construction enforces well-formedness (degrees, universes);
/// minimality, d^2 = 0 and the nilpotence condition are reported by
/// validate(). Analysis requires a valid model.
class MinimalModel : public std::enable_shared_from_this<MinimalModel> {
  public:
    static ModelPtr create(std::string name, GenSetPtr gens, Derivation d);

    const std::string& name() const { return name_; }
    const GenSetPtr& universe() const { return gens_; }
    const Derivation& differential() const { return d_; }
    int max_degree() const { return gens_->max_degree(); }

    const ValidationReport& validate() const;
    bool is_valid() const { return validate().ok(); }

    /// Filtrations, classification, adapted presentation. Throws
    /// std::invalid_argument when the model is invalid.
    const Analysis& analysis() const;

    bool is_coformal() const;
    bool simply_connected() const;
    int nilpotency_class() const { return analysis().nilpotency_class; }

    /// Step decomposition of the differential of an adapted generator,
    /// indexed in the adapted model's universe.
    DifferentialSplit split_differential(uint32_t adapted_gen_index) const;

    /// Monomial span of ∧^{>=2} V^{<n} in degree n+1 (declared coords of
    /// the monomial basis).
    Subspace simple_span(int degree_n, const MonomialBasis& basis) const;

  private:
    MinimalModel(std::string name, GenSetPtr gens, Derivation d);

    void compute_validation() const;
    void compute_analysis() const;
    FiltrationTable compute_filtration(bool cautious) const;

    std::string name_;
    GenSetPtr gens_;
    Derivation d_;

    // single-writer caches: computed once on first use, immutable afterwards
    mutable std::once_flag validation_once_;
    mutable std::once_flag analysis_once_;
    mutable std::unique_ptr<ValidationReport> validation_;
    mutable std::unique_ptr<Analysis> analysis_;
};

/// Per-generator recursive weights of a valid model (adapted presentation).
struct WeightAssignment {
    std::map<std::string, long> weight;  // adapted generator name -> wt
    long monomial_weight(const MinimalModel& adapted, const Monomial& m) const;
};

WeightAssignment weights(const MinimalModel& model);

struct BoundCheck {
    std::string generator;
    int degree = 0;
    int step = 0;
    long weight = 0;
    long bound = 0;        // sharpest applicable bound
    std::string rule;      // which bound applied
    long margin = 0;       // bound - weight
    bool ok = false;
};

struct DeltaInjectivityReport {
    bool ok = true;
    std::vector<std::string> violations;  // "E^n(J): kernel vector ..."
};

struct BlockBoundReport {
    bool ok = true;
    std::vector<std::string> violations;
    bool coformal_refinement_checked = false;
};

struct WeightBoundReport {
    bool ok = true;
    std::vector<BoundCheck> checks;
};

/// δ = D_{1,J-1} has zero kernel on every step E^n(J), J >= 2.
DeltaInjectivityReport check_delta_injective(const MinimalModel& model);

/// Every nilpotent block of a step-J generator satisfies i + j <= J; for
/// coformal models additionally i1 + i2 <= J + c on all quadratic blocks.
BlockBoundReport check_dnil_step_bound(const MinimalModel& model);

/// The sharpest applicable weight bound per adapted generator.
WeightBoundReport check_weight_bounds(const MinimalModel& model);

/// Optional conjecture: when the weight of a step-adapted generator is
/// maximized only by summands of d_sim, some weight-maximizing summand has
/// a step-1 factor. May fail on adversarial models; informational only.
struct ConjectureReport {
    bool holds = true;
    std::vector<std::string> counterexamples;
    int instances_checked = 0;
};
ConjectureReport check_light_factor_conjecture(const MinimalModel& model);

}  // namespace sullivan
