#include "sullivan/obstruction.hpp"

#include <sstream>
#include <stdexcept>

namespace sullivan {

namespace {

// η's source model viewed as the untruncated DGA B.
DgaPtr b_side(const DgaMorphism& eta) { return Dga::of_model(eta.source()); }

// matrix of d : target^{from} -> target^{from+1} in monomial coordinates
QMat d_matrix(const Dga& dga, int from) {
    std::vector<Monomial> dom = dga.basis(from);
    std::vector<Monomial> cod = dga.basis(from + 1);
    QMat m(cod.size(), dom.size());
    for (size_t j = 0; j < dom.size(); ++j) {
        QVec v(dom.size(), Rat(0));
        v[j] = 1;
        QVec dv = dga.coordinates(dga.d(dga.element(v, from)), from + 1);
        for (size_t i = 0; i < cod.size(); ++i) m.at(i, j) = dv[i];
    }
    return m;
}

}  // namespace

RelPair relative_d(const DgaMorphism& eta, const RelPair& v) {
    RelPair out;
    out.in_b = b_side(eta)->d(v.in_b);
    out.in_c = eta.apply(v.in_b) - eta.target()->d(v.in_c);
    return out;
}

std::optional<RelPair> relative_primitive(const DgaMorphism& eta, int k, const RelPair& value) {
    // unknowns (x, y) in B^{k-1} ⊕ C^{k-2} with d(x, y) = (dx, η(x) - dy)
    const DgaPtr B = b_side(eta);
    const DgaPtr& C = eta.target();
    std::vector<Monomial> bx = B->basis(k - 1);
    std::vector<Monomial> by = C->basis(k - 2);
    std::vector<Monomial> rb = B->basis(k);
    std::vector<Monomial> rc = C->basis(k - 1);

    QMat m(rb.size() + rc.size(), bx.size() + by.size());
    for (size_t j = 0; j < bx.size(); ++j) {
        QVec v(bx.size(), Rat(0));
        v[j] = 1;
        Element gen = B->element(v, k - 1);
        QVec db = B->coordinates(B->d(gen), k);
        for (size_t i = 0; i < rb.size(); ++i) m.at(i, j) = db[i];
        QVec ec = C->coordinates(eta.apply(gen), k - 1);
        for (size_t i = 0; i < rc.size(); ++i) m.at(rb.size() + i, j) = ec[i];
    }
    for (size_t j = 0; j < by.size(); ++j) {
        QVec v(by.size(), Rat(0));
        v[j] = 1;
        QVec dc = C->coordinates(C->d(C->element(v, k - 2)), k - 1);
        for (size_t i = 0; i < rc.size(); ++i) m.at(rb.size() + i, bx.size() + j) = -dc[i];
    }

    QVec rhs(rb.size() + rc.size(), Rat(0));
    QVec vb = B->coordinates(value.in_b, k);
    for (size_t i = 0; i < rb.size(); ++i) rhs[i] = vb[i];
    QVec vc = C->coordinates(value.in_c, k - 1);
    for (size_t i = 0; i < rc.size(); ++i) rhs[rb.size() + i] = vc[i];

    auto x = solve(m, rhs);
    if (!x) return std::nullopt;
    RelPair out;
    out.in_b = B->element(QVec(x->begin(), x->begin() + static_cast<long>(bx.size())), k - 1);
    out.in_c = C->element(QVec(x->begin() + static_cast<long>(bx.size()), x->end()), k - 2);
    return out;
}

bool is_surjective(const DgaMorphism& mu) {
    const DgaPtr B = b_side(mu);
    const DgaPtr& C = mu.target();
    for (int k = 0; k <= C->cap(); ++k) {
        std::vector<Monomial> cb = C->basis(k);
        if (cb.empty()) continue;
        std::vector<Monomial> bb = B->basis(k);
        std::vector<QVec> images;
        for (size_t j = 0; j < bb.size(); ++j) {
            QVec v(bb.size(), Rat(0));
            v[j] = 1;
            images.push_back(C->coordinates(mu.apply(B->element(v, k)), k));
        }
        if (Subspace::span(cb.size(), images).dim() != cb.size()) return false;
    }
    return true;
}

void ExtensionProblem::check_coherent() const {
    const GeneratorSet& u = *total->universe();
    if (stage >= u.size()) throw std::invalid_argument("extension slot is empty");
    const int n = u.gen(static_cast<uint32_t>(stage)).degree;
    for (uint32_t z = static_cast<uint32_t>(stage); z < u.size(); ++z) {
        if (u.gen(z).degree != n)
            throw std::invalid_argument("extension slot must be concentrated in one degree");
        for (const auto& [m, c] : total->differential().image(z).terms())
            for (uint32_t fi : m.factors)
                if (fi >= stage)
                    throw std::invalid_argument("slot is not elementary: d(Z) leaves the stage");
    }
    if (f.source_prefix() != stage || g.source_prefix() != u.size() ||
        phi.source_prefix() != stage)
        throw std::invalid_argument("stage mismatch between maps");
    if (!f.target()->universe()->same_universe(*eta.source()->universe()))
        throw std::invalid_argument("f and eta do not compose");
    if (!g.target()->same_as(*eta.target()) || !phi.target()->same_as(*eta.target()))
        throw std::invalid_argument("g, eta and phi must share the target");

    // endpoint orientation: Φ|₀ = g∘ι, Φ|₁ = η∘f (the orientation under
    // which the displayed cochain is a relative cocycle)
    DgaMorphism at0 = phi.endpoint_at_0();
    DgaMorphism at1 = phi.endpoint_at_1();
    for (uint32_t a = 0; a < stage; ++a) {
        if (!(at0.image(a) == g.image(a)))
            throw std::invalid_argument("homotopy endpoint mismatch at t=0 for generator " +
                                        u.gen(a).name);
        if (!(at1.image(a) == eta.apply(f.image(a))))
            throw std::invalid_argument("homotopy endpoint mismatch at t=1 for generator " +
                                        u.gen(a).name);
    }
}

ObstructionCochain obstruction_cochain(const ExtensionProblem& p) {
    p.check_coherent();
    const GeneratorSet& u = *p.total->universe();
    const DgaPtr B = b_side(p.eta);
    ObstructionCochain out;
    for (uint32_t z = static_cast<uint32_t>(p.stage); z < u.size(); ++z) {
        const Element dz = p.total->differential().image(z);
        RelPair o;
        o.in_b = p.f.apply(dz);
        o.in_c = p.g.image(z) + integrate_0_1(p.phi.apply(dz));
        RelPair d_o = relative_d(p.eta, o);
        if (!d_o.is_zero()) {
            out.cocycle_ok = false;
            out.cocycle_witnesses.push_back(u.gen(z).name + ": (" + d_o.in_b.to_string() +
                                            ", " + d_o.in_c.to_string() + ")");
        }
        out.value.emplace(z, std::move(o));
    }
    return out;
}

std::optional<std::map<uint32_t, RelPair>> solve_obstruction(const ExtensionProblem& p,
                                                             const ObstructionCochain& o) {
    const GeneratorSet& u = *p.total->universe();
    const int n = u.gen(static_cast<uint32_t>(p.stage)).degree;
    std::map<uint32_t, RelPair> out;
    for (const auto& [z, val] : o.value) {
        auto prim = relative_primitive(p.eta, n + 1, val);
        if (!prim) return std::nullopt;
        out.emplace(z, std::move(*prim));
    }
    return out;
}

ExtensionResult extend_homotopy(const ExtensionProblem& p,
                                const std::map<uint32_t, RelPair>& bc) {
    p.check_coherent();
    const GeneratorSet& u = *p.total->universe();
    const DgaPtr B = b_side(p.eta);
    const DgaPtr& C = p.eta.target();

    // d(b, c) = O means db(z) = f(dz) and dc(z) = η(b(z)) - g(z) - ∫₀¹Φ(dz)
    for (uint32_t z = static_cast<uint32_t>(p.stage); z < u.size(); ++z) {
        const auto it = bc.find(z);
        if (it == bc.end())
            throw std::invalid_argument("missing (b, c) for slot generator " + u.gen(z).name);
        const Element dz = p.total->differential().image(z);
        Element res_b = B->d(it->second.in_b) - p.f.apply(dz);
        Element res_c =
            C->d(it->second.in_c) - (p.eta.apply(it->second.in_b) - p.g.image(z) -
                                     integrate_0_1(p.phi.apply(dz)));
        if (!res_b.is_zero() || !res_c.is_zero())
            throw std::invalid_argument("d(b,c) != O at " + u.gen(z).name + ": residual (" +
                                        res_b.to_string() + ", " + res_c.to_string() + ")");
    }

    std::vector<Element> f_images;
    for (uint32_t a = 0; a < p.stage; ++a) f_images.push_back(p.f.image(a));
    std::vector<IntervalElement> h_images;
    for (uint32_t a = 0; a < p.stage; ++a) h_images.push_back(p.phi.image(a));
    for (uint32_t z = static_cast<uint32_t>(p.stage); z < u.size(); ++z) {
        const RelPair& pair = bc.at(z);
        f_images.push_back(pair.in_b);
        const Element dz = p.total->differential().image(z);
        // Φ̃(z) = g(z) + d(c(z) ⊗ t) + ∫₀ᵗ Φ(dz)
        IntervalElement phi_tilde = IntervalElement::embed(p.g.image(z));
        phi_tilde += C->d(IntervalElement::poly(pair.in_c, 1));
        phi_tilde += integrate_0_t(p.phi.apply(dz));
        h_images.push_back(std::move(phi_tilde));
    }
    ExtensionResult result{
        DgaMorphism(p.total, u.size(), p.f.target(), std::move(f_images)),
        AlgebraicHomotopy(p.total, u.size(), C, std::move(h_images))};

    DgaMorphism at0 = result.phi_tilde.endpoint_at_0();
    DgaMorphism at1 = result.phi_tilde.endpoint_at_1();
    if (!at0.same_maps(p.g))
        throw std::logic_error("extended homotopy does not restrict to g at t=0");
    if (!at1.same_maps(result.f_tilde.then(p.eta)))
        throw std::logic_error("extended homotopy does not restrict to eta∘f~ at t=1");
    if (!result.phi_tilde.is_chain_map())
        throw std::logic_error("extended homotopy does not commute with d");
    return result;
}

void RelativeObstructionProblem::check_coherent() const {
    const GeneratorSet& u = *total->universe();
    if (stage >= u.size()) throw std::invalid_argument("extension slot is empty");
    if (phi.source_prefix() != u.size() || psi.source_prefix() != u.size() ||
        chi.source_prefix() != u.size() || big_phi.source_prefix() != stage)
        throw std::invalid_argument("stage mismatch between maps");
    if (!is_surjective(mu)) throw std::invalid_argument("mu is not surjective");

    DgaMorphism at0 = big_phi.endpoint_at_0();
    DgaMorphism at1 = big_phi.endpoint_at_1();
    for (uint32_t a = 0; a < stage; ++a)
        if (!(at0.image(a) == phi.image(a)) || !(at1.image(a) == psi.image(a)))
            throw std::invalid_argument("homotopy endpoint mismatch on the stage at " +
                                        u.gen(a).name);

    DgaMorphism c0 = chi.endpoint_at_0();
    DgaMorphism c1 = chi.endpoint_at_1();
    for (uint32_t g = 0; g < u.size(); ++g)
        if (!(c0.image(g) == mu.apply(phi.image(g))) ||
            !(c1.image(g) == mu.apply(psi.image(g))))
            throw std::invalid_argument("chi endpoint mismatch at " + u.gen(g).name);

    for (uint32_t a = 0; a < stage; ++a) {
        IntervalElement mapped = big_phi.image(a).map_coefficients(
            [this](const Element& b) { return mu.apply(b); });
        if (!(chi.image(a) == mapped))
            throw std::invalid_argument("chi does not extend mu∘Phi at " + u.gen(a).name);
    }
}

RelativeObstruction relative_obstruction(const RelativeObstructionProblem& p) {
    p.check_coherent();
    const GeneratorSet& u = *p.total->universe();
    const int n = u.gen(static_cast<uint32_t>(p.stage)).degree;
    RelativeObstruction out;
    out.truncation_cap = p.mu.target()->cap();
    bool all_exact = true;
    for (uint32_t z = static_cast<uint32_t>(p.stage); z < u.size(); ++z) {
        const Element dz = p.total->differential().image(z);
        RelPair o;
        o.in_b = p.psi.image(z) - p.phi.image(z) - integrate_0_1(p.big_phi.apply(dz));
        o.in_c = integrate_0_1(p.chi.image(z));
        RelPair d_o = relative_d(p.mu, o);
        if (!d_o.is_zero()) out.cocycle_ok = false;
        if (!relative_primitive(p.mu, n, o)) all_exact = false;
        out.value.emplace(z, std::move(o));
    }
    out.vanishes = all_exact;
    return out;
}

std::optional<DgaMorphism> random_morphism(const ModelPtr& source, const DgaPtr& target,
                                           Rng& rng) {
    const GeneratorSet& u = *source->universe();
    std::vector<Element> images;
    for (uint32_t g = 0; g < u.size(); ++g) {
        DgaMorphism partial(source, g, target, images);
        const int n = u.gen(g).degree;
        Element rhs = partial.apply(source->differential().image(g));
        std::vector<Monomial> yb = target->basis(n);
        QMat m = d_matrix(*target, n);
        auto x = solve(m, target->coordinates(rhs, n + 1));
        if (!x) return std::nullopt;
        for (const QVec& kv : kernel_basis(m))
            if (rng.coin()) add_scaled(*x, kv, rng.small_rat());
        images.push_back(target->element(*x, n));
    }
    return DgaMorphism::total(source, target, std::move(images));
}

std::optional<AlgebraicHomotopy> build_homotopy(const DgaMorphism& phi,
                                                const DgaMorphism& psi, Rng* rng) {
    const ModelPtr& model = phi.source();
    if (!model->universe()->same_universe(*psi.source()->universe()) ||
        !phi.target()->same_as(*psi.target()))
        throw std::invalid_argument("homotopy endpoints must share source and target");
    if (phi.source_prefix() != model->universe()->size() ||
        psi.source_prefix() != psi.source()->universe()->size())
        throw std::invalid_argument("build_homotopy needs total morphisms");
    const GeneratorSet& u = *model->universe();
    const DgaPtr& B = phi.target();

    std::vector<IntervalElement> images;
    for (uint32_t g = 0; g < u.size(); ++g) {
        AlgebraicHomotopy partial(model, g, B, images);
        const int n = u.gen(g).degree;
        const Element dz = model->differential().image(g);
        IntervalElement phi_dz = partial.apply(dz);
        // the class of ψ(z) - φ(z) - ∫₀¹Φ(dz) in H^n(B) obstructs the slot
        Element o = psi.image(g) - phi.image(g) - integrate_0_1(phi_dz);
        QMat mat = d_matrix(*B, n - 1);
        auto x = solve(mat, B->coordinates(o, n));
        if (!x) return std::nullopt;  // genuine nonzero obstruction class
        if (rng)
            for (const QVec& kv : kernel_basis(mat))
                if (rng->coin(1, 3)) add_scaled(*x, kv, rng->small_rat());
        Element m = B->element(*x, n - 1);
        // Φ(z) = φ(z)⊗1 + ∫₀ᵗΦ(dz) + d(m ⊗ t)
        IntervalElement img = IntervalElement::embed(phi.image(g));
        img += integrate_0_t(phi_dz);
        img += B->d(IntervalElement::poly(m, 1));
        images.push_back(std::move(img));
    }
    AlgebraicHomotopy h(model, u.size(), B, std::move(images));
    if (!h.is_chain_map()) throw std::logic_error("built homotopy is not a chain map");
    if (!h.endpoint_at_0().same_maps(phi) || !h.endpoint_at_1().same_maps(psi))
        throw std::logic_error("built homotopy has wrong endpoints");
    return h;
}

}  // namespace sullivan
