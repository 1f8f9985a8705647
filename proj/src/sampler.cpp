#include "sullivan/sampler.hpp"

#include <algorithm>
#include <stdexcept>

namespace sullivan {

ModelPtr sample_model(Rng& rng, const SamplerOptions& opt, const std::string& name) {
    // 1. draw the generator skeleton, degree-major so that declaration order
    //    is a valid tower order
    int top = static_cast<int>(rng.range(opt.simply_connected ? 2 : 1, opt.max_degree));
    std::vector<Generator> gens;
    int label = 0;
    for (int n = 1; n <= top; ++n) {
        if (opt.simply_connected && n == 1) continue;
        int lo = n == top ? 1 : 0;
        if (n == 1 && opt.degree1_rich) lo = std::max(lo, opt.max_gens_per_degree - 1);
        int count = static_cast<int>(rng.range(lo, opt.max_gens_per_degree));
        for (int k = 0; k < count; ++k)
            gens.push_back({"g" + std::to_string(label++) + "d" + std::to_string(n), n, {}});
    }
    if (gens.empty()) gens.push_back({"g0d" + std::to_string(top), top, {}});
    auto u = std::make_shared<GeneratorSet>(gens, top);

    // 2. assign differentials in declaration order, sampling from the exact
    //    kernel of d on monomials over the earlier generators
    std::vector<Element> images(u->size(), Element::zero(u));
    for (uint32_t i = 0; i < u->size(); ++i) {
        const int n = u->gen(i).degree;
        if (rng.range(1, 100) <= opt.closed_percent) continue;  // stays closed

        MonomialBasis mb(u, n + 1);
        std::vector<size_t> candidate;  // indices into mb
        for (size_t m = 0; m < mb.size(); ++m) {
            const Monomial& mono = mb.at(m);
            if (mono.word_length() < 2) continue;
            if (opt.coformal_only && mono.word_length() != 2) continue;
            bool ok = true;
            for (uint32_t f : mono.factors) {
                if (f >= i) ok = false;  // only earlier generators
                if (opt.simple_only && u->gen(f).degree >= n) ok = false;
            }
            if (ok) candidate.push_back(m);
        }
        if (candidate.empty()) continue;

        // kernel of d restricted to the candidate span
        Derivation partial(u, images);
        MonomialBasis target(u, n + 2);
        QMat mat(target.size(), candidate.size());
        for (size_t c = 0; c < candidate.size(); ++c) {
            Element mono_el(u);
            mono_el.add_term(mb.at(candidate[c]), Rat(1));
            QVec col = target.coordinates(partial.apply(mono_el));
            for (size_t r = 0; r < target.size(); ++r) mat.at(r, c) = col[r];
        }
        auto kern = kernel_basis(mat);
        if (kern.empty()) continue;

        Element img(u);
        int picks = static_cast<int>(rng.range(1, std::min<long>(3, static_cast<long>(kern.size()))));
        for (int p = 0; p < picks; ++p) {
            const QVec& k = kern[rng.below(kern.size())];
            Rat coeff = rng.small_rat();
            for (size_t c = 0; c < candidate.size(); ++c)
                if (!is_zero(k[c])) img.add_term(mb.at(candidate[c]), Rat(coeff * k[c]));
        }
        images[i] = std::move(img);
    }

    auto model = MinimalModel::create(name, u, Derivation(u, std::move(images)));
    if (!model->is_valid())
        throw std::logic_error("sampler produced an invalid model: " + name);
    return model;
}

}  // namespace sullivan
