#pragma once

#include <vector>

#include "sullivan/algebra.hpp"

namespace sullivan {

/// A degree +1 derivation of the free graded-commutative algebra, given by
/// its images on generators and extended by the graded Leibniz rule
///   d(ab) = (da)b + (-1)^{|a|} a (db).
/// Degree correctness of the images is enforced at construction;
/// d∘d = 0 is a reportable check, not a construction invariant.
class Derivation {
  public:
    Derivation(GenSetPtr universe, std::vector<Element> images);

    /// The zero derivation.
    static Derivation zero(GenSetPtr universe);

    const GenSetPtr& universe() const { return universe_; }
    const Element& image(uint32_t gen_index) const { return images_[gen_index]; }
    const std::vector<Element>& images() const { return images_; }

    Element apply(const Element& e) const;

    /// Generators g with d(d(g)) != 0, with the offending residuals.
    std::vector<std::pair<uint32_t, Element>> d_squared_violations() const;

    /// The word-length component d_k: images replaced by their
    /// length-(k+1) parts. Summing over k >= 1 reassembles d.
    Derivation wordlength_component(int k) const;

    /// Largest k with d_k nonzero (0 for the zero derivation).
    int max_wordlength_component() const;

  private:
    GenSetPtr universe_;
    std::vector<Element> images_;
};

/// Exact solution set { v in V^degree : d(v) in target }, as a subspace of
/// the degree slot (coordinates in the declared generator basis). The target
/// is a subspace of the degree-(degree+1) monomial span.
Subspace preimage(const Derivation& d, int degree, const Subspace& target,
                  const MonomialBasis& target_basis);

}  // namespace sullivan
