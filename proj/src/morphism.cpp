#include "sullivan/morphism.hpp"

#include <cmath>
#include <stdexcept>

namespace sullivan {

Dga::Dga(GenSetPtr universe, Derivation d, std::optional<int> cap)
    : universe_(std::move(universe)), d_(std::move(d)),
      cap_(cap.value_or(0)) {
    if (!cap) cap_ = universe_->truncation_degree();
    if (cap_ < 0) throw std::invalid_argument("negative truncation cap");
    if (!d_.universe()->same_universe(*universe_))
        throw std::invalid_argument("dga differential universe mismatch");
    for (const auto& [g, res] : d_.d_squared_violations())
        if (!reduce(res).is_zero())
            throw std::invalid_argument("dga differential does not square to zero");
}

DgaPtr Dga::of_model(const ModelPtr& m) {
    return std::make_shared<Dga>(m->universe(), m->differential());
}

DgaPtr Dga::free_dga(GenSetPtr universe, Derivation d, std::optional<int> cap) {
    return std::make_shared<Dga>(std::move(universe), std::move(d), cap);
}

DgaPtr Dga::rationals() {
    auto u = std::make_shared<GeneratorSet>(std::vector<Generator>{}, 1);
    return std::make_shared<Dga>(u, Derivation::zero(u), 0);
}

DgaPtr Dga::truncation(const DgaPtr& base, int cap) {
    if (cap > base->cap()) throw std::invalid_argument("truncation must lower the cap");
    return std::make_shared<Dga>(base->universe(), base->differential(), cap);
}

Element Dga::reduce(const Element& e) const {
    Element out(universe_);
    for (const auto& [m, c] : e.terms())
        if (m.degree <= cap_) out.add_term(m, c);
    return out;
}

Element Dga::d(const Element& e) const { return reduce(d_.apply(reduce(e))); }

IntervalElement Dga::reduce(const IntervalElement& u) const {
    return u.map_coefficients([this](const Element& b) { return reduce(b); });
}

IntervalElement Dga::d(const IntervalElement& u) const {
    return reduce(interval_differential(d_, reduce(u)));
}

std::vector<Monomial> Dga::basis(int degree) const {
    if (degree > cap_ || degree < 0) return {};
    MonomialBasis mb(universe_, degree);
    std::vector<Monomial> out;
    for (size_t i = 0; i < mb.size(); ++i) out.push_back(mb.at(i));
    return out;
}

QVec Dga::coordinates(const Element& e, int degree) const {
    std::vector<Monomial> b = basis(degree);
    QVec v(b.size(), Rat(0));
    MonomialOrder less{universe_.get()};
    for (const auto& [m, c] : e.terms()) {
        if (m.degree != degree)
            throw std::invalid_argument("coordinates: element not homogeneous of degree");
        auto it = std::lower_bound(b.begin(), b.end(), m, less);
        if (it == b.end() || !(*it == m)) throw std::logic_error("monomial above cap");
        v[static_cast<size_t>(it - b.begin())] = c;
    }
    return v;
}

Element Dga::element(const QVec& coords, int degree) const {
    std::vector<Monomial> b = basis(degree);
    if (coords.size() != b.size()) throw std::invalid_argument("element: bad coordinate size");
    Element e(universe_);
    for (size_t i = 0; i < coords.size(); ++i)
        if (!is_zero(coords[i])) e.add_term(b[i], coords[i]);
    return e;
}

bool Dga::same_as(const Dga& o) const {
    return universe_->same_universe(*o.universe_) && cap_ == o.cap_;
}

DgaMorphism::DgaMorphism(ModelPtr source, size_t source_prefix, DgaPtr target,
                         std::vector<Element> images)
    : source_(std::move(source)), prefix_(source_prefix), target_(std::move(target)),
      images_(std::move(images)) {
    if (prefix_ > source_->universe()->size())
        throw std::invalid_argument("source prefix out of range");
    if (images_.size() != prefix_)
        throw std::invalid_argument("morphism needs one image per prefix generator");
    for (Element& img : images_) {
        if (img.is_zero() && !img.universe()) img = Element::zero(target_->universe());
        if (!img.universe()->same_universe(*target_->universe()))
            throw std::invalid_argument("morphism image outside the target universe");
        img = target_->reduce(img);
    }
}

DgaMorphism DgaMorphism::total(ModelPtr source, DgaPtr target, std::vector<Element> images) {
    size_t n = source->universe()->size();
    return DgaMorphism(std::move(source), n, std::move(target), std::move(images));
}

DgaMorphism DgaMorphism::zero(ModelPtr source, size_t source_prefix, DgaPtr target) {
    std::vector<Element> images(source_prefix, Element::zero(target->universe()));
    return DgaMorphism(std::move(source), source_prefix, std::move(target), std::move(images));
}

DgaMorphism DgaMorphism::inclusion(ModelPtr source, size_t source_prefix, DgaPtr target) {
    if (!source->universe()->same_universe(*target->universe()))
        throw std::invalid_argument("inclusion needs matching universes");
    std::vector<Element> images;
    for (uint32_t i = 0; i < source_prefix; ++i)
        images.push_back(Element::generator(target->universe(), i));
    return DgaMorphism(std::move(source), source_prefix, std::move(target), std::move(images));
}

Element DgaMorphism::apply(const Element& e) const {
    Element out = Element::zero(target_->universe());
    for (const auto& [m, c] : e.terms()) {
        Element prod = Element::unit(target_->universe(), c);
        for (uint32_t g : m.factors) {
            if (g >= prefix_)
                throw std::invalid_argument("morphism applied to a generator beyond its stage");
            prod = prod.wedge(images_[g]);
            if (prod.is_zero()) break;
        }
        out += prod;
    }
    return target_->reduce(out);
}

std::vector<std::pair<uint32_t, Element>> DgaMorphism::chain_map_violations() const {
    std::vector<std::pair<uint32_t, Element>> out;
    for (uint32_t g = 0; g < prefix_; ++g) {
        Element lhs = target_->d(images_[g]);
        Element rhs = apply(source_->differential().image(g));
        if (!(lhs == rhs)) out.emplace_back(g, lhs - rhs);
    }
    return out;
}

DgaMorphism DgaMorphism::then(const DgaMorphism& next) const {
    if (!next.source_->universe()->same_universe(*target_->universe()))
        throw std::invalid_argument("composition: target/source mismatch");
    std::vector<Element> images;
    for (uint32_t g = 0; g < prefix_; ++g) images.push_back(next.apply(images_[g]));
    return DgaMorphism(source_, prefix_, next.target_, std::move(images));
}

bool DgaMorphism::same_maps(const DgaMorphism& o) const {
    if (prefix_ != o.prefix_ || !target_->same_as(*o.target_)) return false;
    for (uint32_t g = 0; g < prefix_; ++g)
        if (!(images_[g] == o.images_[g])) return false;
    return true;
}

AlgebraicHomotopy::AlgebraicHomotopy(ModelPtr source, size_t source_prefix, DgaPtr target,
                                     std::vector<IntervalElement> images)
    : source_(std::move(source)), prefix_(source_prefix), target_(std::move(target)),
      images_(std::move(images)) {
    if (images_.size() != prefix_)
        throw std::invalid_argument("homotopy needs one image per prefix generator");
    for (IntervalElement& img : images_) img = target_->reduce(img);
}

AlgebraicHomotopy AlgebraicHomotopy::constant(const DgaMorphism& phi) {
    std::vector<IntervalElement> images;
    for (uint32_t g = 0; g < phi.source_prefix(); ++g)
        images.push_back(IntervalElement::embed(phi.image(g)));
    return AlgebraicHomotopy(phi.source(), phi.source_prefix(), phi.target(),
                             std::move(images));
}

IntervalElement AlgebraicHomotopy::apply(const Element& e) const {
    IntervalElement out(target_->universe());
    for (const auto& [m, c] : e.terms()) {
        IntervalElement prod =
            IntervalElement::embed(Element::unit(target_->universe(), c));
        for (uint32_t g : m.factors) {
            if (g >= prefix_)
                throw std::invalid_argument("homotopy applied to a generator beyond its stage");
            prod = prod.wedge(images_[g]);
            if (prod.is_zero()) break;
        }
        out += prod;
    }
    return target_->reduce(out);
}

DgaMorphism AlgebraicHomotopy::endpoint_at_0() const {
    std::vector<Element> images;
    for (const IntervalElement& img : images_) images.push_back(img.restrict_at_0());
    return DgaMorphism(source_, prefix_, target_, std::move(images));
}

DgaMorphism AlgebraicHomotopy::endpoint_at_1() const {
    std::vector<Element> images;
    for (const IntervalElement& img : images_) images.push_back(img.restrict_at_1());
    return DgaMorphism(source_, prefix_, target_, std::move(images));
}

std::vector<std::pair<uint32_t, IntervalElement>> AlgebraicHomotopy::chain_map_violations()
    const {
    std::vector<std::pair<uint32_t, IntervalElement>> out;
    for (uint32_t g = 0; g < prefix_; ++g) {
        IntervalElement lhs = target_->d(images_[g]);
        IntervalElement rhs = apply(source_->differential().image(g));
        IntervalElement res = lhs - rhs;
        if (!res.is_zero()) out.emplace_back(g, std::move(res));
    }
    return out;
}

AlgebraicHomotopy AlgebraicHomotopy::then(const DgaMorphism& next) const {
    if (!next.source()->universe()->same_universe(*target_->universe()))
        throw std::invalid_argument("composition: target/source mismatch");
    std::vector<IntervalElement> images;
    for (uint32_t g = 0; g < prefix_; ++g)
        images.push_back(images_[g].map_coefficients(
            [&](const Element& b) { return next.apply(b); }));
    return AlgebraicHomotopy(source_, prefix_, next.target(), std::move(images));
}

ModelPtr prefix_model(const ModelPtr& model, size_t count) {
    const GeneratorSet& u = *model->universe();
    if (count > u.size()) throw std::invalid_argument("prefix larger than model");
    std::vector<Generator> gens(u.gens().begin(), u.gens().begin() + static_cast<long>(count));
    auto sub = std::make_shared<GeneratorSet>(gens, u.max_degree());
    std::vector<Element> images;
    for (uint32_t g = 0; g < count; ++g) {
        Element img(sub);
        for (const auto& [m, c] : model->differential().image(g).terms()) {
            for (uint32_t f : m.factors)
                if (f >= count)
                    throw std::invalid_argument(
                        "declaration order is not tower-compatible at generator " +
                        u.gen(g).name);
            img.add_term(m, c);
        }
        images.push_back(std::move(img));
    }
    return MinimalModel::create(model->name() + "(" + std::to_string(count) + ")", sub,
                                Derivation(sub, std::move(images)));
}

ModelPtr tower_ordered(const ModelPtr& model) {
    const GeneratorSet& u = *model->universe();
    std::vector<uint32_t> order;
    std::vector<bool> placed(u.size(), false);
    bool progress = true;
    while (order.size() < u.size() && progress) {
        progress = false;
        for (uint32_t g = 0; g < u.size(); ++g) {
            if (placed[g]) continue;
            bool ready = true;
            for (const auto& [m, c] : model->differential().image(g).terms())
                for (uint32_t f : m.factors)
                    if (f == g || !placed[f]) ready = false;
            if (ready) {
                placed[g] = true;
                order.push_back(g);
                progress = true;
            }
        }
    }
    if (order.size() < u.size()) return nullptr;
    bool identity = true;
    for (uint32_t i = 0; i < order.size(); ++i)
        if (order[i] != i) identity = false;
    if (identity) return model;

    std::vector<Generator> gens;
    for (uint32_t g : order) gens.push_back(u.gen(g));
    auto nu = std::make_shared<GeneratorSet>(gens, u.max_degree());
    std::vector<Element> images(nu->size(), Element::zero(nu));
    for (uint32_t g : order) {
        Element img(nu);
        for (const auto& [m, c] : model->differential().image(g).terms()) {
            std::vector<uint32_t> factors;
            for (uint32_t f : m.factors) factors.push_back(*nu->index_of(u.gen(f).name));
            img += Element::monomial(nu, factors, c);
        }
        images[*nu->index_of(u.gen(g).name)] = std::move(img);
    }
    return MinimalModel::create(model->name(), nu, Derivation(nu, std::move(images)));
}

bool Dilatation::leq(const Rat& L) const {
    for (const auto& [k, nk] : norm) {
        Rat pow(1);
        for (int i = 0; i < k; ++i) pow *= L;
        if (nk > pow) return false;
    }
    return true;
}

double Dilatation::approx() const {
    double best = 0.0;
    for (const auto& [k, nk] : norm)
        if (k > 0) best = std::max(best, std::pow(rat_to_double(nk), 1.0 / k));
    return best;
}

namespace {

Rat row_sum_norms(const std::map<std::pair<int, size_t>, std::map<size_t, Rat>>& rows) {
    Rat best(0);
    for (const auto& [row, entries] : rows) {
        Rat sum(0);
        for (const auto& [col, v] : entries) sum += rat_abs(v);
        if (sum > best) best = sum;
    }
    return best;
}

}  // namespace

Dilatation dilatation(const DgaMorphism& phi) {
    Dilatation out;
    const GeneratorSet& u = *phi.source()->universe();
    for (int k = 1; k <= u.max_degree(); ++k) {
        auto slot = u.degree_slot(k);
        std::vector<size_t> cols;
        for (size_t j = 0; j < slot.size(); ++j)
            if (slot[j] < phi.source_prefix()) cols.push_back(j);
        if (cols.empty()) continue;
        // rows: target monomials; max absolute row sum
        std::map<std::pair<int, size_t>, std::map<size_t, Rat>> rows;
        for (size_t j = 0; j < cols.size(); ++j) {
            const Element& img = phi.image(slot[cols[j]]);
            QVec coords = phi.target()->coordinates(img, k);
            for (size_t i = 0; i < coords.size(); ++i)
                if (!is_zero(coords[i])) rows[{0, i}][j] = coords[i];
        }
        out.norm[k] = row_sum_norms(rows);
    }
    return out;
}

Dilatation formal_length(const AlgebraicHomotopy& phi) {
    Dilatation out;
    const GeneratorSet& u = *phi.source()->universe();
    for (int k = 1; k <= u.max_degree(); ++k) {
        auto slot = u.degree_slot(k);
        std::vector<size_t> cols;
        for (size_t j = 0; j < slot.size(); ++j)
            if (slot[j] < phi.source_prefix()) cols.push_back(j);
        if (cols.empty()) continue;
        std::map<std::pair<int, size_t>, std::map<size_t, Rat>> rows;
        for (size_t j = 0; j < cols.size(); ++j) {
            Element img = integrate_0_1(phi.image(slot[cols[j]]));
            QVec coords = phi.target()->coordinates(img, k - 1);
            for (size_t r = 0; r < coords.size(); ++r)
                if (!is_zero(coords[r])) rows[{0, r}][j] = coords[r];
        }
        out.norm[k] = row_sum_norms(rows);
    }
    return out;
}

Dilatation dilatation(const AlgebraicHomotopy& phi, const Rat& T) {
    Dilatation out;
    const GeneratorSet& u = *phi.source()->universe();
    for (int k = 1; k <= u.max_degree(); ++k) {
        auto slot = u.degree_slot(k);
        std::vector<size_t> cols;
        for (size_t j = 0; j < slot.size(); ++j)
            if (slot[j] < phi.source_prefix()) cols.push_back(j);
        if (cols.empty()) continue;
        // rows indexed by (t-power with dt flag, target monomial)
        std::map<std::pair<int, size_t>, std::map<size_t, Rat>> rows;
        for (size_t j = 0; j < cols.size(); ++j) {
            IntervalElement img = phi.image(slot[cols[j]]).rescale_t(T);
            for (const auto& [i, b] : img.poly_part()) {
                QVec coords = phi.target()->coordinates(b, k);
                for (size_t r = 0; r < coords.size(); ++r)
                    if (!is_zero(coords[r])) rows[{2 * i, r}][j] = coords[r];
            }
            for (const auto& [i, b] : img.dt_part()) {
                QVec coords = phi.target()->coordinates(b, k - 1);
                for (size_t r = 0; r < coords.size(); ++r)
                    if (!is_zero(coords[r])) rows[{2 * i + 1, r}][j] = coords[r];
            }
        }
        out.norm[k] = row_sum_norms(rows);
    }
    return out;
}

}  // namespace sullivan
