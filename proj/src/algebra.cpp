#include "sullivan/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sullivan {

GeneratorSet::GeneratorSet(std::vector<Generator> gens, int max_degree)
    : gens_(std::move(gens)), max_degree_(max_degree) {
    if (max_degree_ < 1) throw std::invalid_argument("max_degree must be >= 1");
    for (uint32_t i = 0; i < gens_.size(); ++i) {
        const Generator& g = gens_[i];
        if (g.degree < 1) throw std::invalid_argument("generator degree must be >= 1: " + g.name);
        if (g.declared_step && *g.declared_step < 1)
            throw std::invalid_argument("declared step must be >= 1: " + g.name);
        if (!by_name_.emplace(g.name, i).second)
            throw std::invalid_argument("duplicate generator id: " + g.name);
    }
    std::vector<uint32_t> order(gens_.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (gens_[a].degree != gens_[b].degree) return gens_[a].degree < gens_[b].degree;
        return gens_[a].name < gens_[b].name;
    });
    rank_.resize(gens_.size());
    for (uint32_t pos = 0; pos < order.size(); ++pos) rank_[order[pos]] = pos;
}

std::optional<uint32_t> GeneratorSet::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::vector<uint32_t> GeneratorSet::degree_slot(int degree) const {
    std::vector<uint32_t> slot;
    for (uint32_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].degree == degree) slot.push_back(i);
    return slot;
}

bool GeneratorSet::same_universe(const GeneratorSet& o) const {
    if (this == &o) return true;
    if (gens_.size() != o.gens_.size() || max_degree_ != o.max_degree_) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree)
            return false;
    return true;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
    for (size_t i = 0; i < a.factors.size(); ++i) {
        uint32_t ra = u->sort_rank(a.factors[i]), rb = u->sort_rank(b.factors[i]);
        if (ra != rb) return ra < rb;
    }
    return false;
}

namespace {

void require_same_universe(const Element& a, const Element& b) {
    if (!a.universe() || !b.universe()) throw std::invalid_argument("element without universe");
    if (!a.universe()->same_universe(*b.universe()))
        throw std::invalid_argument("mixed generator universes");
}

/// Sorts factors by the universe order; returns the Koszul sign, or 0 if an
/// odd-degree factor repeats (the monomial vanishes).
int normalize_factors(const GeneratorSet& u, std::vector<uint32_t>& f) {
    // insertion sort, counting odd-odd transpositions
    int sign = 1;
    for (size_t i = 1; i < f.size(); ++i) {
        uint32_t v = f[i];
        size_t j = i;
        while (j > 0 && u.sort_rank(f[j - 1]) > u.sort_rank(v)) {
            if ((u.gen(f[j - 1]).degree % 2) && (u.gen(v).degree % 2)) sign = -sign;
            f[j] = f[j - 1];
            --j;
        }
        f[j] = v;
    }
    for (size_t i = 1; i < f.size(); ++i)
        if (f[i] == f[i - 1] && (u.gen(f[i]).degree % 2)) return 0;
    return sign;
}

}  // namespace

Element::Element(GenSetPtr universe)
    : universe_(std::move(universe)), terms_(MonomialOrder{universe_.get()}) {
    if (!universe_) throw std::invalid_argument("null universe");
}

Element Element::unit(GenSetPtr universe, const Rat& c) {
    Element e(universe);
    if (!sullivan::is_zero(c)) e.terms_.emplace(Monomial{}, c);
    return e;
}

Element Element::generator(GenSetPtr universe, uint32_t index) {
    return monomial(universe, {index});
}

Element Element::monomial(GenSetPtr universe, std::vector<uint32_t> factors, const Rat& coeff) {
    Element e(universe);
    if (sullivan::is_zero(coeff)) return e;
    int sign = normalize_factors(*universe, factors);
    if (sign == 0) return e;
    Monomial m;
    m.degree = 0;
    for (uint32_t i : factors) m.degree += universe->gen(i).degree;
    if (m.degree > universe->truncation_degree()) return e;
    m.factors = std::move(factors);
    e.terms_.emplace(std::move(m), sign == 1 ? coeff : Rat(-coeff));
    return e;
}

void Element::add_term(const Monomial& m, const Rat& c) {
    if (sullivan::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sullivan::is_zero(it->second)) terms_.erase(it);
    }
}

std::optional<int> Element::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.degree;
    for (const auto& [m, c] : terms_)
        if (m.degree != d) return std::nullopt;
    return d;
}

std::map<int, Element> Element::homogeneous_components() const {
    std::map<int, Element> out;
    for (const auto& [m, c] : terms_) {
        auto it = out.find(m.degree);
        if (it == out.end()) it = out.emplace(m.degree, Element(universe_)).first;
        it->second.add_term(m, c);
    }
    return out;
}

Element Element::word_length_part(size_t k) const {
    Element e(universe_);
    for (const auto& [m, c] : terms_)
        if (m.word_length() == k) e.add_term(m, c);
    return e;
}

Element Element::word_length_at_least(size_t k) const {
    Element e(universe_);
    for (const auto& [m, c] : terms_)
        if (m.word_length() >= k) e.add_term(m, c);
    return e;
}

Element Element::operator+(const Element& o) const {
    require_same_universe(*this, o);
    Element e(*this);
    for (const auto& [m, c] : o.terms_) e.add_term(m, c);
    return e;
}

Element& Element::operator+=(const Element& o) {
    require_same_universe(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Element Element::operator-(const Element& o) const {
    require_same_universe(*this, o);
    Element e(*this);
    for (const auto& [m, c] : o.terms_) e.add_term(m, Rat(-c));
    return e;
}

Element Element::operator-() const {
    Element e(universe_);
    for (const auto& [m, c] : terms_) e.terms_.emplace(m, Rat(-c));
    return e;
}

Element Element::operator*(const Rat& c) const {
    Element e(universe_);
    if (sullivan::is_zero(c)) return e;
    for (const auto& [m, k] : terms_) e.terms_.emplace(m, Rat(k * c));
    return e;
}

Element Element::wedge(const Element& o) const {
    require_same_universe(*this, o);
    Element e(universe_);
    const GeneratorSet& u = *universe_;
    const int trunc = u.truncation_degree();
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            if (ma.degree + mb.degree > trunc) continue;
            // merge the two sorted factor lists, accumulating the Koszul sign
            std::vector<uint32_t> f;
            f.reserve(ma.factors.size() + mb.factors.size());
            int sign = 1;
            size_t i = 0, j = 0;
            int odd_remaining_a = 0;
            for (uint32_t g : ma.factors)
                if (u.gen(g).degree % 2) ++odd_remaining_a;
            bool dead = false;
            while (i < ma.factors.size() && j < mb.factors.size()) {
                uint32_t ga = ma.factors[i], gb = mb.factors[j];
                if (u.sort_rank(ga) <= u.sort_rank(gb)) {
                    if (ga == gb && (u.gen(ga).degree % 2)) { dead = true; break; }
                    f.push_back(ga);
                    if (u.gen(ga).degree % 2) --odd_remaining_a;
                    ++i;
                } else {
                    if ((u.gen(gb).degree % 2) && (odd_remaining_a % 2)) sign = -sign;
                    f.push_back(gb);
                    ++j;
                }
            }
            if (dead) continue;
            while (i < ma.factors.size()) f.push_back(ma.factors[i++]);
            while (j < mb.factors.size()) f.push_back(mb.factors[j++]);
            bool repeat_odd = false;
            for (size_t k = 1; k < f.size(); ++k)
                if (f[k] == f[k - 1] && (u.gen(f[k]).degree % 2)) { repeat_odd = true; break; }
            if (repeat_odd) continue;
            Monomial m;
            m.factors = std::move(f);
            m.degree = ma.degree + mb.degree;
            e.add_term(m, sign == 1 ? Rat(ca * cb) : Rat(-(ca * cb)));
        }
    }
    return e;
}

bool Element::operator==(const Element& o) const {
    if (!universe_ || !o.universe_) return terms_.empty() && o.terms_.empty();
    if (!universe_->same_universe(*o.universe_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (!(it->first == jt->first) || it->second != jt->second) return false;
    return true;
}

std::string Element::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = rat_abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool coeff_shown = !(a == 1) || m.is_unit();
        if (coeff_shown) os << rat_to_string(a);
        size_t i = 0;
        while (i < m.factors.size()) {
            size_t j = i;
            while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
            if (coeff_shown || i > 0) os << "*";
            coeff_shown = true;
            os << universe_->gen(m.factors[i]).name;
            if (j - i > 1) os << "^" << (j - i);
            i = j;
        }
    }
    return os.str();
}

Element wedge(const Element& a, const Element& b) { return a.wedge(b); }

namespace {

void enumerate_monomials(const GeneratorSet& u, const std::vector<uint32_t>& order,
                         size_t pos, int remaining, std::vector<uint32_t>& current,
                         std::vector<Monomial>& out) {
    if (remaining == 0) {
        Monomial m;
        m.factors = current;
        for (uint32_t g : m.factors) m.degree += u.gen(g).degree;
        out.push_back(std::move(m));
        return;
    }
    if (pos == order.size()) return;
    uint32_t g = order[pos];
    int d = u.gen(g).degree;
    int max_mult = (d % 2) ? 1 : remaining / d;
    // multiplicity 0 first, then increasing: keeps canonical order by factors
    for (int mult = 0; mult <= max_mult; ++mult) {
        if (mult > 0) {
            if (d * mult > remaining) break;
            current.insert(current.end(), static_cast<size_t>(mult), g);
        }
        enumerate_monomials(u, order, pos + 1, remaining - d * mult, current, out);
        if (mult > 0) current.resize(current.size() - static_cast<size_t>(mult));
    }
}

}  // namespace

MonomialBasis::MonomialBasis(GenSetPtr universe, int degree)
    : universe_(std::move(universe)), degree_(degree), index_(MonomialOrder{universe_.get()}) {
    if (degree < 0 || degree > universe_->truncation_degree())
        throw std::invalid_argument("monomial basis degree out of truncation range");
    std::vector<uint32_t> order(universe_->size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return universe_->sort_rank(a) < universe_->sort_rank(b);
    });
    std::vector<uint32_t> current;
    enumerate_monomials(*universe_, order, 0, degree, current, monomials_);
    std::sort(monomials_.begin(), monomials_.end(),
              [&](const Monomial& a, const Monomial& b) {
                  return MonomialOrder{universe_.get()}(a, b);
              });
    for (size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::optional<size_t> MonomialBasis::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

QVec MonomialBasis::coordinates(const Element& e) const {
    QVec v(monomials_.size(), Rat(0));
    for (const auto& [m, c] : e.terms()) {
        if (m.degree != degree_)
            throw std::invalid_argument("coordinates: element not homogeneous of basis degree");
        auto idx = index_of(m);
        if (!idx) throw std::logic_error("monomial missing from basis");
        v[*idx] = c;
    }
    return v;
}

Element MonomialBasis::element(const QVec& coords) const {
    if (coords.size() != monomials_.size())
        throw std::invalid_argument("element: coordinate length mismatch");
    Element e(universe_);
    for (size_t i = 0; i < coords.size(); ++i)
        if (!is_zero(coords[i])) e.add_term(monomials_[i], coords[i]);
    return e;
}

QVec degree_slot_coordinates(const Element& e, const std::vector<uint32_t>& slot) {
    QVec v(slot.size(), Rat(0));
    for (const auto& [m, c] : e.terms()) {
        if (m.word_length() != 1)
            throw std::invalid_argument("degree slot coordinates need an indecomposable");
        auto it = std::find(slot.begin(), slot.end(), m.factors[0]);
        if (it == slot.end()) throw std::invalid_argument("generator outside the degree slot");
        v[static_cast<size_t>(it - slot.begin())] = c;
    }
    return v;
}

Element element_from_slot(GenSetPtr universe, const std::vector<uint32_t>& slot,
                          const QVec& coords) {
    Element e(universe);
    for (size_t i = 0; i < slot.size(); ++i)
        if (!is_zero(coords[i])) e += Element::generator(universe, slot[i]) * coords[i];
    return e;
}

}  // namespace sullivan
