#include "sullivan/derivation.hpp"

#include <stdexcept>

namespace sullivan {

Derivation::Derivation(GenSetPtr universe, std::vector<Element> images)
    : universe_(std::move(universe)), images_(std::move(images)) {
    if (images_.size() != universe_->size())
        throw std::invalid_argument("derivation needs one image per generator");
    for (uint32_t i = 0; i < images_.size(); ++i) {
        const Element& img = images_[i];
        if (img.is_zero()) continue;
        if (!img.universe() || !img.universe()->same_universe(*universe_))
            throw std::invalid_argument("derivation image in a different universe");
        auto deg = img.homogeneous_degree();
        if (!deg || *deg != universe_->gen(i).degree + 1)
            throw std::invalid_argument("derivation image of wrong degree for generator " +
                                        universe_->gen(i).name);
    }
}

Derivation Derivation::zero(GenSetPtr universe) {
    std::vector<Element> images(universe->size(), Element::zero(universe));
    return Derivation(universe, std::move(images));
}

Element Derivation::apply(const Element& e) const {
    if (!e.universe() || !e.universe()->same_universe(*universe_))
        throw std::invalid_argument("derivation applied across universes");
    Element out(universe_);
    const GeneratorSet& u = *universe_;
    for (const auto& [m, c] : e.terms()) {
        // d(g1...gk) = sum_i (-1)^{|g1...g_{i-1}|} g1...d(gi)...gk
        int degree_before = 0;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            uint32_t g = m.factors[i];
            const Element& dg = images_[g];
            if (!dg.is_zero()) {
                std::vector<uint32_t> prefix(m.factors.begin(),
                                             m.factors.begin() + static_cast<long>(i));
                std::vector<uint32_t> suffix(m.factors.begin() + static_cast<long>(i) + 1,
                                             m.factors.end());
                Rat coeff = (degree_before % 2) ? Rat(-c) : c;
                Element piece = Element::monomial(universe_, std::move(prefix), coeff);
                piece = piece.wedge(dg);
                piece = piece.wedge(Element::monomial(universe_, std::move(suffix)));
                out += piece;
            }
            degree_before += u.gen(g).degree;
        }
    }
    return out;
}

std::vector<std::pair<uint32_t, Element>> Derivation::d_squared_violations() const {
    std::vector<std::pair<uint32_t, Element>> out;
    for (uint32_t i = 0; i < images_.size(); ++i) {
        Element dd = apply(images_[i]);
        if (!dd.is_zero()) out.emplace_back(i, std::move(dd));
    }
    return out;
}

Derivation Derivation::wordlength_component(int k) const {
    if (k < 1) throw std::invalid_argument("wordlength component index must be >= 1");
    std::vector<Element> images;
    images.reserve(images_.size());
    for (const Element& img : images_)
        images.push_back(img.word_length_part(static_cast<size_t>(k) + 1));
    return Derivation(universe_, std::move(images));
}

int Derivation::max_wordlength_component() const {
    size_t max_len = 0;
    for (const Element& img : images_)
        for (const auto& [m, c] : img.terms()) max_len = std::max(max_len, m.word_length());
    return max_len == 0 ? 0 : static_cast<int>(max_len) - 1;
}

Subspace preimage(const Derivation& d, int degree, const Subspace& target,
                  const MonomialBasis& target_basis) {
    if (target_basis.degree() != degree + 1)
        throw std::invalid_argument("preimage: target basis must sit in degree+1");
    if (target.ambient_dim() != target_basis.size())
        throw std::invalid_argument("preimage: target subspace/basis mismatch");
    const std::vector<uint32_t> slot = d.universe()->degree_slot(degree);
    const size_t n = slot.size(), m = target_basis.size();
    if (n == 0) return Subspace(0);

    // REEF keeps coordinate-axis rows of the target intact, so split the
    // basis into free axis coordinates and a small residual block; only the
    // non-axis coordinates constrain the solution.
    std::vector<bool> axis(m, false);
    std::vector<size_t> residual_rows;
    for (size_t k = 0; k < target.dim(); ++k) {
        size_t nonzero = 0, pos = 0;
        for (size_t i = 0; i < m; ++i)
            if (!is_zero(target.basis().at(k, i))) { ++nonzero; pos = i; }
        if (nonzero == 1 && target.basis().at(k, pos) == 1)
            axis[pos] = true;
        else
            residual_rows.push_back(k);
    }
    std::vector<size_t> keep;  // non-axis coordinates
    for (size_t i = 0; i < m; ++i)
        if (!axis[i]) keep.push_back(i);

    const size_t t = residual_rows.size();
    QMat sys(keep.size(), n + t);
    for (size_t j = 0; j < n; ++j) {
        QVec col = target_basis.coordinates(d.image(slot[j]));
        for (size_t i = 0; i < keep.size(); ++i) sys.at(i, j) = col[keep[i]];
    }
    for (size_t k = 0; k < t; ++k)
        for (size_t i = 0; i < keep.size(); ++i)
            sys.at(i, n + k) = -target.basis().at(residual_rows[k], keep[i]);

    std::vector<QVec> sols;
    for (const QVec& xy : kernel_basis(sys))
        sols.emplace_back(xy.begin(), xy.begin() + static_cast<long>(n));
    return Subspace::span(n, sols);
}

}  // namespace sullivan
