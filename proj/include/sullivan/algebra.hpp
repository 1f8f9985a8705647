#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sullivan/linalg.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

struct Generator {
    std::string name;
    int degree = 0;                 // >= 1
    std::optional<int> declared_step;  // filtration annotation from model files
};

/// The generator universe of a free graded-commutative algebra, together
/// with the working degree truncation. Two universes are compatible when
/// their generator lists (names and degrees) agree.
class GeneratorSet {
  public:
    GeneratorSet(std::vector<Generator> gens, int max_degree);

    size_t size() const { return gens_.size(); }
    const Generator& gen(uint32_t i) const { return gens_[i]; }
    const std::vector<Generator>& gens() const { return gens_; }
    std::optional<uint32_t> index_of(const std::string& name) const;

    int max_degree() const { return max_degree_; }
    /// Monomials above this total degree are dropped by all operations.
    int truncation_degree() const { return max_degree_ + 2; }

    /// Position in the fixed (degree, name) total order used to sort
    /// monomial factors.
    uint32_t sort_rank(uint32_t i) const { return rank_[i]; }

    /// Generator indices of a given degree, in declaration order. These are
    /// the coordinates of the degree slot V^n.
    std::vector<uint32_t> degree_slot(int degree) const;

    bool same_universe(const GeneratorSet& o) const;

  private:
    std::vector<Generator> gens_;
    std::vector<uint32_t> rank_;
    std::map<std::string, uint32_t> by_name_;
    int max_degree_;
};

using GenSetPtr = std::shared_ptr<const GeneratorSet>;

/// A normalized graded-commutative monomial: factor indices sorted by the
/// universe's total order. The normalization sign is absorbed into the
/// coefficient of the owning Element; a monomial with a repeated odd factor
/// is the zero element and never stored.
struct Monomial {
    std::vector<uint32_t> factors;  // sorted by sort_rank
    int degree = 0;

    size_t word_length() const { return factors.size(); }
    bool is_unit() const { return factors.empty(); }
    bool operator==(const Monomial& o) const { return factors == o.factors; }
};

struct MonomialOrder {
    const GeneratorSet* u;
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// An element of the free graded-commutative algebra: a finite rational
/// combination of normalized monomials. Canonical: no zero coefficients.
class Element {
  public:
    Element() = default;
    explicit Element(GenSetPtr universe);

    static Element zero(GenSetPtr universe) { return Element(universe); }
    static Element unit(GenSetPtr universe, const Rat& c = Rat(1));
    static Element generator(GenSetPtr universe, uint32_t index);
    /// Monomial with explicit factor list (any order, sign normalized).
    static Element monomial(GenSetPtr universe, std::vector<uint32_t> factors,
                            const Rat& coeff = Rat(1));

    const GenSetPtr& universe() const { return universe_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    const std::map<Monomial, Rat, MonomialOrder>& terms() const { return terms_; }

    /// Degree if all terms share one; nullopt for 0 or inhomogeneous input.
    std::optional<int> homogeneous_degree() const;
    /// Splits into homogeneous parts keyed by degree.
    std::map<int, Element> homogeneous_components() const;
    /// The part with the given word length (number of factors).
    Element word_length_part(size_t k) const;
    Element word_length_at_least(size_t k) const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Rat& c) const;
    Element& operator+=(const Element& o);

    /// Graded-commutative product with Koszul signs, truncated above the
    /// universe's working degree.
    Element wedge(const Element& o) const;

    bool operator==(const Element& o) const;

    std::string to_string() const;

    void add_term(const Monomial& m, const Rat& c);

  private:
    GenSetPtr universe_;
    std::map<Monomial, Rat, MonomialOrder> terms_;
};

Element wedge(const Element& a, const Element& b);

/// All normalized monomials of the exact total degree over the universe,
/// in the canonical monomial order. This is the coordinate basis used for
/// subspaces of monomial spans.
class MonomialBasis {
  public:
    MonomialBasis(GenSetPtr universe, int degree);

    size_t size() const { return monomials_.size(); }
    int degree() const { return degree_; }
    const Monomial& at(size_t i) const { return monomials_[i]; }
    std::optional<size_t> index_of(const Monomial& m) const;

    /// Coordinates of the degree-homogeneous element in this basis.
    QVec coordinates(const Element& e) const;
    Element element(const QVec& coords) const;

  private:
    GenSetPtr universe_;
    int degree_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, size_t, MonomialOrder> index_;
};

/// Coordinates of a degree-n indecomposable (word-length-1) element in the
/// declared generator basis of V^n.
QVec degree_slot_coordinates(const Element& e, const std::vector<uint32_t>& slot);
Element element_from_slot(GenSetPtr universe, const std::vector<uint32_t>& slot,
                          const QVec& coords);

}  // namespace sullivan
