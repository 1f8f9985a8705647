#pragma once

#include <functional>
#include <map>

#include "sullivan/derivation.hpp"

namespace sullivan {

/// An element of B ⊗ R<t,dt> for an ambient free graded-commutative algebra
/// B: a polynomial in t with B-coefficients plus a dt-part (at most one dt
/// factor; dt^2 = 0 is structural). The degree of b⊗t^i is |b|, of
/// b⊗t^i dt is |b|+1.
class IntervalElement {
  public:
    IntervalElement() = default;
    explicit IntervalElement(GenSetPtr universe);

    static IntervalElement embed(const Element& b);              // b ⊗ 1
    static IntervalElement poly(const Element& b, int t_power);  // b ⊗ t^i
    static IntervalElement dt(const Element& b, int t_power);    // b ⊗ t^i dt

    const GenSetPtr& universe() const { return universe_; }
    bool is_zero() const { return poly_.empty() && dt_.empty(); }

    const std::map<int, Element>& poly_part() const { return poly_; }
    const std::map<int, Element>& dt_part() const { return dt_; }

    IntervalElement operator+(const IntervalElement& o) const;
    IntervalElement operator-(const IntervalElement& o) const;
    IntervalElement operator*(const Rat& c) const;
    IntervalElement& operator+=(const IntervalElement& o);

    /// Product in B ⊗ R<t,dt> with Koszul signs (dt is odd, t is even).
    IntervalElement wedge(const IntervalElement& o) const;

    Element restrict_at_0() const;  // t = 0, dt = 0
    Element restrict_at_1() const;  // t = 1, dt = 0

    /// Applies a linear map to every B-coefficient.
    IntervalElement map_coefficients(const std::function<Element(const Element&)>& f) const;

    /// Substitutes t -> t/T (so dt -> dt/T); T > 0.
    IntervalElement rescale_t(const Rat& T) const;

    bool operator==(const IntervalElement& o) const;
    std::string to_string() const;

  private:
    void add_poly(int i, const Element& b);
    void add_dt(int i, const Element& b);

    GenSetPtr universe_;
    std::map<int, Element> poly_;
    std::map<int, Element> dt_;
};

/// d(b⊗t^i) = (db)⊗t^i + (-1)^{|b|} i b⊗t^{i-1}dt,  d(b⊗t^i dt) = (db)⊗t^i dt.
IntervalElement interval_differential(const Derivation& ambient_d, const IntervalElement& u);

/// ∫₀¹: kills the polynomial part; b⊗t^i dt -> (-1)^{|b|} b/(i+1).
Element integrate_0_1(const IntervalElement& u);

/// ∫₀ᵗ: kills the polynomial part; b⊗t^i dt -> (-1)^{|b|} b⊗t^{i+1}/(i+1).
IntervalElement integrate_0_t(const IntervalElement& u);

struct FtcReport {
    bool ftc1_ok = false;
    bool ftc2_ok = false;
    Element residual1;          // d∫₀¹u + ∫₀¹du - (u|₁ - u|₀)
    IntervalElement residual2;  // d∫₀ᵗu + ∫₀ᵗdu - (u - u|₀⊗1)
    bool ok() const { return ftc1_ok && ftc2_ok; }
};

/// Verifies both fundamental-theorem identities exactly.
FtcReport check_fundamental_theorems(const Derivation& ambient_d, const IntervalElement& u);

}  // namespace sullivan
