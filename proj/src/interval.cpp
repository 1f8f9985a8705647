#include "sullivan/interval.hpp"

#include <sstream>
#include <stdexcept>

namespace sullivan {

IntervalElement::IntervalElement(GenSetPtr universe) : universe_(std::move(universe)) {
    if (!universe_) throw std::invalid_argument("null universe");
}

IntervalElement IntervalElement::embed(const Element& b) { return poly(b, 0); }

IntervalElement IntervalElement::poly(const Element& b, int t_power) {
    if (t_power < 0) throw std::invalid_argument("negative t power");
    IntervalElement u(b.universe());
    u.add_poly(t_power, b);
    return u;
}

IntervalElement IntervalElement::dt(const Element& b, int t_power) {
    if (t_power < 0) throw std::invalid_argument("negative t power");
    IntervalElement u(b.universe());
    u.add_dt(t_power, b);
    return u;
}

void IntervalElement::add_poly(int i, const Element& b) {
    if (b.is_zero()) return;
    auto it = poly_.find(i);
    if (it == poly_.end())
        poly_.emplace(i, b);
    else {
        it->second += b;
        if (it->second.is_zero()) poly_.erase(it);
    }
}

void IntervalElement::add_dt(int i, const Element& b) {
    if (b.is_zero()) return;
    auto it = dt_.find(i);
    if (it == dt_.end())
        dt_.emplace(i, b);
    else {
        it->second += b;
        if (it->second.is_zero()) dt_.erase(it);
    }
}

IntervalElement IntervalElement::operator+(const IntervalElement& o) const {
    IntervalElement u(*this);
    u += o;
    return u;
}

IntervalElement& IntervalElement::operator+=(const IntervalElement& o) {
    if (!universe_) *this = IntervalElement(o.universe_);
    for (const auto& [i, b] : o.poly_) add_poly(i, b);
    for (const auto& [i, b] : o.dt_) add_dt(i, b);
    return *this;
}

IntervalElement IntervalElement::operator-(const IntervalElement& o) const {
    IntervalElement u(*this);
    for (const auto& [i, b] : o.poly_) u.add_poly(i, -b);
    for (const auto& [i, b] : o.dt_) u.add_dt(i, -b);
    return u;
}

IntervalElement IntervalElement::operator*(const Rat& c) const {
    IntervalElement u(universe_);
    for (const auto& [i, b] : poly_) u.add_poly(i, b * c);
    for (const auto& [i, b] : dt_) u.add_dt(i, b * c);
    return u;
}

IntervalElement IntervalElement::wedge(const IntervalElement& o) const {
    IntervalElement u(universe_);
    // poly * poly and poly * dt carry no extra sign (t is even)
    for (const auto& [i, a] : poly_) {
        for (const auto& [j, b] : o.poly_) u.add_poly(i + j, a.wedge(b));
        for (const auto& [j, b] : o.dt_) u.add_dt(i + j, a.wedge(b));
    }
    // (a⊗t^i dt)(b⊗t^j) = (-1)^{|b|} ab ⊗ t^{i+j} dt;  dt·dt = 0
    for (const auto& [i, a] : dt_) {
        for (const auto& [j, b] : o.poly_) {
            for (const auto& [deg, bh] : b.homogeneous_components()) {
                Element prod = a.wedge(bh);
                u.add_dt(i + j, (deg % 2) ? -prod : prod);
            }
        }
    }
    return u;
}

Element IntervalElement::restrict_at_0() const {
    auto it = poly_.find(0);
    if (it == poly_.end()) return universe_ ? Element::zero(universe_) : Element();
    return it->second;
}

Element IntervalElement::restrict_at_1() const {
    Element e = universe_ ? Element::zero(universe_) : Element();
    for (const auto& [i, b] : poly_) e += b;
    return e;
}

IntervalElement IntervalElement::map_coefficients(
    const std::function<Element(const Element&)>& f) const {
    IntervalElement u(universe_);
    for (const auto& [i, b] : poly_) u.add_poly(i, f(b));
    for (const auto& [i, b] : dt_) u.add_dt(i, f(b));
    return u;
}

IntervalElement IntervalElement::rescale_t(const Rat& T) const {
    if (!(T > 0)) throw std::invalid_argument("rescale_t needs T > 0");
    IntervalElement u(universe_);
    Rat inv = Rat(1) / T;
    // t^i -> t^i / T^i, dt -> dt / T
    std::map<int, Rat> powers;
    auto power = [&](int i) {
        Rat r(1);
        for (int k = 0; k < i; ++k) r *= inv;
        return r;
    };
    for (const auto& [i, b] : poly_) u.add_poly(i, b * power(i));
    for (const auto& [i, b] : dt_) u.add_dt(i, b * power(i + 1));
    return u;
}

bool IntervalElement::operator==(const IntervalElement& o) const {
    return poly_ == o.poly_ && dt_ == o.dt_;
}

std::string IntervalElement::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, b] : poly_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << b.to_string() << ")";
        if (i > 0) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    for (const auto& [i, b] : dt_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << b.to_string() << ")";
        if (i > 0) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
        os << "*dt";
    }
    return os.str();
}

IntervalElement interval_differential(const Derivation& ambient_d, const IntervalElement& u) {
    IntervalElement out(u.universe() ? u.universe() : ambient_d.universe());
    for (const auto& [i, b] : u.poly_part()) {
        out += IntervalElement::poly(ambient_d.apply(b), i);
        if (i > 0) {
            for (const auto& [deg, bh] : b.homogeneous_components()) {
                Element scaled = bh * rat(i);
                out += IntervalElement::dt((deg % 2) ? -scaled : scaled, i - 1);
            }
        }
    }
    for (const auto& [i, b] : u.dt_part()) out += IntervalElement::dt(ambient_d.apply(b), i);
    return out;
}

Element integrate_0_1(const IntervalElement& u) {
    Element e = u.universe() ? Element::zero(u.universe()) : Element();
    for (const auto& [i, b] : u.dt_part()) {
        for (const auto& [deg, bh] : b.homogeneous_components()) {
            Element term = bh * (Rat(1) / Rat(i + 1));
            e += (deg % 2) ? -term : term;
        }
    }
    return e;
}

IntervalElement integrate_0_t(const IntervalElement& u) {
    IntervalElement out(u.universe());
    for (const auto& [i, b] : u.dt_part()) {
        for (const auto& [deg, bh] : b.homogeneous_components()) {
            Element term = bh * (Rat(1) / Rat(i + 1));
            out += IntervalElement::poly((deg % 2) ? -term : term, i + 1);
        }
    }
    return out;
}

FtcReport check_fundamental_theorems(const Derivation& ambient_d, const IntervalElement& u) {
    FtcReport rep;
    IntervalElement du = interval_differential(ambient_d, u);

    // d(∫₀¹u) + ∫₀¹du = u|₁ - u|₀
    Element lhs1 = ambient_d.apply(integrate_0_1(u)) + integrate_0_1(du);
    Element rhs1 = u.restrict_at_1() - u.restrict_at_0();
    rep.residual1 = lhs1 - rhs1;
    rep.ftc1_ok = rep.residual1.is_zero();

    // d(∫₀ᵗu) + ∫₀ᵗdu = u - u|₀ ⊗ 1
    IntervalElement lhs2 =
        interval_differential(ambient_d, integrate_0_t(u)) + integrate_0_t(du);
    IntervalElement rhs2 = u - IntervalElement::embed(u.restrict_at_0());
    rep.residual2 = lhs2 - rhs2;
    rep.ftc2_ok = rep.residual2.is_zero();
    return rep;
}

}  // namespace sullivan
