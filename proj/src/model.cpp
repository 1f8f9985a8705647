#include "sullivan/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sullivan {

bool FiltrationTable::exhausted() const {
    for (const auto& [n, step] : exhaust_step)
        if (step == 0) return false;
    return true;
}

int FiltrationTable::nilpotency_class() const {
    int c = 1;
    for (const auto& [n, step] : exhaust_step) {
        if (step == 0) return 0;
        c = std::max(c, step);
    }
    return c;
}

bool FiltrationTable::operator==(const FiltrationTable& o) const {
    if (filtration.size() != o.filtration.size()) return false;
    for (const auto& [n, tower] : filtration) {
        auto it = o.filtration.find(n);
        if (it == o.filtration.end()) return false;
        // compare levelwise, extending the shorter tower by its final value
        size_t len = std::max(tower.size(), it->second.size());
        for (size_t j = 0; j < len; ++j) {
            const Subspace& a = tower[std::min(j, tower.size() - 1)];
            const Subspace& b = it->second[std::min(j, it->second.size() - 1)];
            if (!(a == b)) return false;
        }
    }
    return true;
}

MinimalModel::MinimalModel(std::string name, GenSetPtr gens, Derivation d)
    : name_(std::move(name)), gens_(std::move(gens)), d_(std::move(d)) {
    if (!d_.universe()->same_universe(*gens_))
        throw std::invalid_argument("differential universe mismatch");
}

ModelPtr MinimalModel::create(std::string name, GenSetPtr gens, Derivation d) {
    return ModelPtr(new MinimalModel(std::move(name), std::move(gens), std::move(d)));
}

const ValidationReport& MinimalModel::validate() const {
    std::call_once(validation_once_, [this] { compute_validation(); });
    return *validation_;
}

namespace {

/// Basis elements of the subalgebra generated by a graded family of
/// subspaces, in a fixed total degree. Used by the nilpotence tower.
std::vector<Element> subalgebra_span(const GenSetPtr& u,
                                     const std::map<int, std::vector<Element>>& graded_basis,
                                     int total_degree) {
    std::vector<std::pair<int, Element>> flat;  // (degree, vector)
    for (const auto& [deg, vecs] : graded_basis)
        for (const Element& v : vecs) flat.emplace_back(deg, v);
    std::vector<Element> out;
    // multisets of basis vectors with total degree as required; odd-degree
    // vectors square to zero so appear at most once
    std::vector<size_t> stack;
    std::function<void(size_t, int, Element)> rec = [&](size_t pos, int remaining,
                                                        Element acc) {
        if (remaining == 0) {
            out.push_back(acc);
            return;
        }
        if (pos == flat.size()) return;
        const auto& [deg, vec] = flat[pos];
        int max_mult = (deg % 2) ? 1 : remaining / deg;
        Element acc_m = acc;
        for (int mult = 0; mult <= max_mult; ++mult) {
            if (mult > 0) {
                if (deg * mult > remaining) break;
                acc_m = acc_m.wedge(vec);
                if (acc_m.is_zero()) break;
            }
            rec(pos + 1, remaining - deg * mult, acc_m);
        }
    };
    rec(0, total_degree, Element::unit(u));
    return out;
}

}  // namespace

void MinimalModel::compute_validation() const {
    auto rep = std::make_unique<ValidationReport>();
    const GeneratorSet& u = *gens_;

    rep->d_squared_ok = true;
    for (const auto& [idx, residual] : d_.d_squared_violations()) {
        rep->d_squared_ok = false;
        rep->issues.push_back({"d-squared", u.gen(idx).name,
                               "d(d(" + u.gen(idx).name + ")) = " + residual.to_string()});
    }

    rep->minimal_ok = true;
    for (uint32_t i = 0; i < u.size(); ++i) {
        Element linear = d_.image(i).word_length_part(1);
        if (!linear.is_zero()) {
            rep->minimal_ok = false;
            rep->issues.push_back({"minimality", u.gen(i).name,
                                   "word length 1 part " + linear.to_string()});
        }
        if (!d_.image(i).word_length_part(0).is_zero()) {
            rep->minimal_ok = false;
            rep->issues.push_back({"minimality", u.gen(i).name, "constant part in image"});
        }
    }

    // Nilpotence: iterate Z(r) = { v : d(v) in ∧(Z(r-1)) } on subspaces of
    // each degree slot until stabilization.
    const int N = u.max_degree();
    std::map<int, Subspace> z;  // per degree
    for (int n = 1; n <= N; ++n) z[n] = Subspace(u.degree_slot(n).size());
    std::map<int, MonomialBasis> bases;
    for (int n = 1; n <= N; ++n) bases.emplace(n + 1, MonomialBasis(gens_, n + 1));

    while (true) {
        std::map<int, std::vector<Element>> graded;
        for (int n = 1; n <= N; ++n) {
            const Subspace& s = z[n];
            auto slot = u.degree_slot(n);
            for (size_t i = 0; i < s.dim(); ++i)
                graded[n].push_back(element_from_slot(gens_, slot, s.basis().row(i)));
        }
        bool changed = false;
        std::map<int, Subspace> next;
        std::vector<std::string> absorbed;
        for (int n = 1; n <= N; ++n) {
            const MonomialBasis& mb = bases.at(n + 1);
            std::vector<QVec> target_vecs;
            for (const Element& p : subalgebra_span(gens_, graded, n + 1))
                if (!p.is_zero()) target_vecs.push_back(mb.coordinates(p));
            Subspace target = Subspace::span(mb.size(), target_vecs);
            Subspace zn = preimage(d_, n, target, mb);
            if (!(zn == z[n])) changed = true;
            // record generators newly absorbed at this stage
            auto slot = u.degree_slot(n);
            for (size_t k = 0; k < slot.size(); ++k) {
                QVec e(slot.size(), Rat(0));
                e[k] = 1;
                if (zn.contains(e) && !z[n].contains(e))
                    absorbed.push_back(u.gen(slot[k]).name);
            }
            next[n] = std::move(zn);
        }
        if (!changed) break;
        std::sort(absorbed.begin(), absorbed.end());
        rep->tower.push_back(std::move(absorbed));
        z = std::move(next);
    }

    rep->nilpotent_ok = true;
    for (int n = 1; n <= N; ++n) {
        auto slot = u.degree_slot(n);
        for (size_t k = 0; k < slot.size(); ++k) {
            QVec e(slot.size(), Rat(0));
            e[k] = 1;
            if (!z[n].contains(e)) {
                rep->nilpotent_ok = false;
                rep->issues.push_back({"nilpotence", u.gen(slot[k]).name,
                                       "not absorbed by the Z(r) tower"});
            }
        }
    }

    validation_ = std::move(rep);
}

bool MinimalModel::is_coformal() const {
    for (int k = 2; k <= d_.max_wordlength_component(); ++k) {
        const Derivation dk = d_.wordlength_component(k);
        for (uint32_t i = 0; i < gens_->size(); ++i)
            if (!dk.image(i).is_zero()) return false;
    }
    return true;
}

bool MinimalModel::simply_connected() const { return gens_->degree_slot(1).empty(); }

Subspace MinimalModel::simple_span(int degree_n, const MonomialBasis& basis) const {
    std::vector<QVec> vecs;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Monomial& m = basis.at(i);
        if (m.word_length() < 2) continue;
        bool low = true;
        for (uint32_t g : m.factors)
            if (gens_->gen(g).degree >= degree_n) { low = false; break; }
        if (!low) continue;
        QVec v(basis.size(), Rat(0));
        v[i] = 1;
        vecs.push_back(std::move(v));
    }
    return Subspace::span(basis.size(), vecs);
}

const Analysis& MinimalModel::analysis() const {
    std::call_once(analysis_once_, [this] { compute_analysis(); });
    return *analysis_;
}

}  // namespace sullivan
