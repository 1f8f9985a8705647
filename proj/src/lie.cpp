#include "sullivan/lie.hpp"

#include <sstream>
#include <stdexcept>

namespace sullivan {

LieUniverse::LieUniverse(std::vector<LieGenerator> gens) : gens_(std::move(gens)) {
    for (uint32_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].samelson_degree < 0)
            throw std::invalid_argument("negative Samelson degree: " + gens_[i].name);
        if (!by_name_.emplace(gens_[i].name, i).second)
            throw std::invalid_argument("duplicate Lie generator: " + gens_[i].name);
    }
}

std::optional<uint32_t> LieUniverse::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

LieElement::LieElement(LieUniPtr universe) : universe_(std::move(universe)) {
    if (!universe_) throw std::invalid_argument("null Lie universe");
}

LieElement LieElement::generator(LieUniPtr universe, uint32_t index) {
    LieElement e(universe);
    e.words_.emplace(std::vector<uint32_t>{index}, Rat(1));
    e.formula_ = universe->gen(index).name;
    return e;
}

void LieElement::add_word(const std::vector<uint32_t>& w, const Rat& c) {
    if (sullivan::is_zero(c)) return;
    auto [it, inserted] = words_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (sullivan::is_zero(it->second)) words_.erase(it);
    }
}

std::optional<int> LieElement::homogeneous_degree() const {
    if (words_.empty()) return std::nullopt;
    std::optional<int> deg;
    for (const auto& [w, c] : words_) {
        int d = 0;
        for (uint32_t g : w) d += universe_->gen(g).samelson_degree;
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

LieElement LieElement::operator+(const LieElement& o) const {
    LieElement e(*this);
    for (const auto& [w, c] : o.words_) e.add_word(w, c);
    e.formula_.clear();
    return e;
}

LieElement LieElement::operator-(const LieElement& o) const {
    LieElement e(*this);
    for (const auto& [w, c] : o.words_) e.add_word(w, Rat(-c));
    e.formula_.clear();
    return e;
}

LieElement LieElement::operator*(const Rat& c) const {
    LieElement e(universe_);
    if (sullivan::is_zero(c)) return e;
    for (const auto& [w, k] : words_) e.words_.emplace(w, Rat(k * c));
    return e;
}

bool LieElement::operator==(const LieElement& o) const { return words_ == o.words_; }

LieElement LieElement::with_formula(std::string f) const {
    LieElement e(*this);
    e.formula_ = std::move(f);
    return e;
}

std::string LieElement::expansion_string() const {
    if (words_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : words_) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Rat a = rat_abs(c);
        if (!(a == 1)) os << rat_to_string(a) << "*";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) os << ".";
            os << universe_->gen(w[i]).name;
        }
    }
    return os.str();
}

std::map<long, size_t> LieElement::scale_weight_census() const {
    std::map<long, size_t> census;
    for (const auto& [w, c] : words_) {
        long s = 0;
        for (uint32_t g : w) s += universe_->gen(g).scale_weight;
        ++census[s];
    }
    return census;
}

std::optional<long> LieElement::scaling_weight() const {
    auto census = scale_weight_census();
    if (census.size() != 1) return std::nullopt;
    return census.begin()->first;
}

LieElement LieElement::substitute(const LieUniPtr& target,
                                  const std::vector<uint32_t>& gen_map) const {
    LieElement out(target);
    for (const auto& [w, c] : words_) {
        std::vector<uint32_t> mapped;
        mapped.reserve(w.size());
        for (uint32_t g : w) mapped.push_back(gen_map.at(g));
        out.add_word(mapped, c);
    }
    return out;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
    if (!x.universe() || !y.universe())
        throw std::invalid_argument("bracket of elements without universe");
    if (x.universe() != y.universe() &&
        x.universe()->size() != y.universe()->size())
        throw std::invalid_argument("bracket across Lie universes");
    const LieUniPtr& u = x.universe();
    LieElement out(u);
    auto degree_of = [&](const std::vector<uint32_t>& w) {
        int d = 0;
        for (uint32_t g : w) d += u->gen(g).samelson_degree;
        return d;
    };
    for (const auto& [wx, cx] : x.words()) {
        for (const auto& [wy, cy] : y.words()) {
            std::vector<uint32_t> xy(wx);
            xy.insert(xy.end(), wy.begin(), wy.end());
            out.add_word(xy, Rat(cx * cy));
            std::vector<uint32_t> yx(wy);
            yx.insert(yx.end(), wx.begin(), wx.end());
            int sign = (degree_of(wx) * degree_of(wy)) % 2 ? 1 : -1;
            out.add_word(yx, sign == 1 ? Rat(cx * cy) : Rat(-(cx * cy)));
        }
    }
    std::string fx = x.formula().empty() ? x.expansion_string() : x.formula();
    std::string fy = y.formula().empty() ? y.expansion_string() : y.formula();
    return out.with_formula("[" + fx + "," + fy + "]");
}

TorusAction::TorusAction(LieUniPtr universe, std::vector<LieElement> images)
    : universe_(std::move(universe)), images_(std::move(images)) {
    if (images_.size() != universe_->size())
        throw std::invalid_argument("torus action needs one image per generator");
    for (uint32_t i = 0; i < images_.size(); ++i) {
        if (images_[i].is_zero()) continue;
        auto deg = images_[i].homogeneous_degree();
        if (!deg || *deg != universe_->gen(i).samelson_degree)
            throw std::invalid_argument("torus action must preserve degree");
    }
}

LieElement TorusAction::apply(const LieElement& x) const {
    LieElement out(universe_);
    for (const auto& [w, c] : x.words()) {
        for (size_t pos = 0; pos < w.size(); ++pos) {
            const LieElement& img = images_[w[pos]];
            if (img.is_zero()) continue;
            for (const auto& [iw, ic] : img.words()) {
                std::vector<uint32_t> nw;
                nw.reserve(w.size() + iw.size() - 1);
                nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long>(pos));
                nw.insert(nw.end(), iw.begin(), iw.end());
                nw.insert(nw.end(), w.begin() + static_cast<long>(pos) + 1, w.end());
                out.add_word(nw, Rat(c * ic));
            }
        }
    }
    std::string fx = x.formula().empty() ? x.expansion_string() : x.formula();
    return out.with_formula("[t," + fx + "]");
}

MappingTorus mapping_torus(int c) {
    if (c < 1) throw std::invalid_argument("nilpotency class must be >= 1");
    std::vector<LieGenerator> gens;
    for (int j = 1; j <= c; ++j) gens.push_back({"a" + std::to_string(j), 1, j + 1});
    for (int j = 1; j <= c; ++j) gens.push_back({"b" + std::to_string(j), 1, j + 1});
    auto u = std::make_shared<LieUniverse>(gens);
    std::vector<LieElement> images;
    for (int j = 1; j <= c; ++j)
        images.push_back(j < c ? LieElement::generator(u, static_cast<uint32_t>(j))
                               : LieElement(u));
    for (int j = 1; j <= c; ++j)
        images.push_back(j < c ? LieElement::generator(u, static_cast<uint32_t>(c + j))
                               : LieElement(u));
    return MappingTorus{c, u, TorusAction(u, std::move(images))};
}

LieElement MappingTorus::alpha(int j) const {
    if (j < 1 || j > c) throw std::invalid_argument("alpha index out of range");
    return LieElement::generator(universe, static_cast<uint32_t>(j - 1));
}

LieElement MappingTorus::beta(int j) const {
    if (j < 1 || j > c) throw std::invalid_argument("beta index out of range");
    return LieElement::generator(universe, static_cast<uint32_t>(c + j - 1));
}

std::vector<std::vector<long>> MappingTorus::action_matrix() const {
    std::vector<std::vector<long>> m(static_cast<size_t>(c),
                                     std::vector<long>(static_cast<size_t>(c), 0));
    for (int i = 0; i < c; ++i) {
        m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;  // t • a_j = a_j + a_{j+1}
        if (i + 1 < c) m[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = 1;
    }
    return m;
}

LieElement zeta(const MappingTorus& torus, int k, int j) {
    if (k < 2 || j < 1 || j > torus.c)
        throw std::invalid_argument("zeta parameters out of range");
    const std::string label = "z(" + std::to_string(k) + "," + std::to_string(j) + ")";
    if (j > 1) return torus.action.apply(zeta(torus, k, j - 1)).with_formula(label);
    if (k == 2) return torus.beta(1).with_formula(label);
    return bracket(torus.alpha(1), zeta(torus, k - 1, torus.c)).with_formula(label);
}

LieCheckReport verify_jacobi_lemmas(int k_max, int c, uint64_t seed) {
    MappingTorus torus = mapping_torus(c);
    LieCheckReport rep;
    for (int k = 2; k <= k_max; ++k) {
        // [t, zeta(k,c)] = 0
        LieElement top = zeta(torus, k, c);
        ++rep.checked;
        if (!torus.action.apply(top).is_zero()) {
            rep.ok = false;
            rep.failures.push_back("[t, z(" + std::to_string(k) + "," + std::to_string(c) +
                                   ")] != 0");
        }
        if (k > 2) {
            for (int j = 1; j <= c; ++j) {
                ++rep.checked;
                if (!(zeta(torus, k, j) == bracket(torus.alpha(j), zeta(torus, k - 1, c)))) {
                    rep.ok = false;
                    rep.failures.push_back("z(" + std::to_string(k) + "," +
                                           std::to_string(j) + ") != [a" +
                                           std::to_string(j) + ", z(" +
                                           std::to_string(k - 1) + "," + std::to_string(c) +
                                           ")]");
                }
            }
        }
    }
    // D is a derivation on sampled bracket pairs
    Rng rng(seed);
    auto random_bracket = [&](auto&& self, int depth) -> LieElement {
        if (depth == 0 || rng.coin(1, 3)) {
            uint32_t idx = static_cast<uint32_t>(rng.below(torus.universe->size()));
            return LieElement::generator(torus.universe, idx);
        }
        return bracket(self(self, depth - 1), self(self, depth - 1));
    };
    for (int trial = 0; trial < 30; ++trial) {
        LieElement x = random_bracket(random_bracket, 2);
        LieElement y = random_bracket(random_bracket, 2);
        ++rep.checked;
        LieElement lhs = torus.action.apply(bracket(x, y));
        LieElement rhs = bracket(torus.action.apply(x), y) + bracket(x, torus.action.apply(y));
        if (!(lhs == rhs)) {
            rep.ok = false;
            rep.failures.push_back("derivation identity failed on sampled pair");
        }
    }
    return rep;
}

LieCheckReport verify_nonvanishing(int k_max, int c) {
    MappingTorus torus = mapping_torus(c);
    LieCheckReport rep;

    // retract target: two classes of Samelson degree 1
    auto hat = std::make_shared<LieUniverse>(std::vector<LieGenerator>{
        {"ahat", 1, c + 1}, {"bhat", 1, c + 1}});
    std::vector<uint32_t> gen_map(torus.universe->size());
    for (uint32_t i = 0; i < torus.universe->size(); ++i)
        gen_map[i] = i < static_cast<uint32_t>(c) ? 0u : 1u;

    for (int k = 2; k <= k_max; ++k) {
        LieElement top = zeta(torus, k, c);
        ++rep.checked;
        if (top.is_zero()) {
            rep.ok = false;
            rep.failures.push_back("z(" + std::to_string(k) + "," + std::to_string(c) +
                                   ") expands to zero");
            continue;
        }
        // right-nested bracket with k-2 copies of ahat around bhat
        LieElement nested = LieElement::generator(hat, 1);
        for (int i = 0; i < k - 2; ++i) nested = bracket(LieElement::generator(hat, 0), nested);
        LieElement image = top.substitute(hat, gen_map);
        ++rep.checked;
        bool proportional = false;
        if (!image.is_zero() && !nested.is_zero()) {
            // match on the first word of the nested expansion
            const auto& [w0, c0] = *nested.words().begin();
            auto it = image.words().find(w0);
            if (it != image.words().end()) {
                Rat ratio = it->second / c0;
                proportional = !sullivan::is_zero(ratio) && image == nested * ratio;
            }
        }
        if (!proportional) {
            rep.ok = false;
            rep.failures.push_back("retraction image of z(" + std::to_string(k) + "," +
                                   std::to_string(c) +
                                   ") is not a nonzero multiple of the nested bracket");
        }
    }
    return rep;
}

LieCheckReport verify_scaling_weights(int k_max, int c) {
    MappingTorus torus = mapping_torus(c);
    LieCheckReport rep;
    for (int k = 2; k <= k_max; ++k) {
        LieElement top = zeta(torus, k, c);
        ++rep.checked;
        auto w = top.scaling_weight();
        long expected = static_cast<long>(c + 1) * (k - 1);
        if (!w || *w != expected) {
            rep.ok = false;
            std::ostringstream os;
            os << "scaling weight of z(" << k << "," << c << ")";
            if (w)
                os << " = " << *w << " != " << expected;
            else
                os << " is inhomogeneous";
            rep.failures.push_back(os.str());
        }
    }
    return rep;
}

}  // namespace sullivan
