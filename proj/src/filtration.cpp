#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sullivan/model.hpp"

namespace sullivan {

FiltrationTable MinimalModel::compute_filtration(bool cautious) const {
    const GeneratorSet& u = *gens_;
    const int N = u.max_degree();
    FiltrationTable table;

    std::map<int, MonomialBasis> bases;
    for (int n = 1; n <= N; ++n) bases.emplace(n + 1, MonomialBasis(gens_, n + 1));
    std::map<int, std::vector<uint32_t>> slots;
    for (int n = 1; n <= N; ++n) slots[n] = u.degree_slot(n);
    std::map<int, Subspace> simple_spans;
    for (int n = 1; n <= N; ++n) simple_spans.emplace(n, simple_span(n, bases.at(n + 1)));

    // wedge of two slot subspaces, as a subspace of the degree-(n+1) span
    auto product_span = [&](int deg_a, const Subspace& a, int deg_b, const Subspace& b) {
        const MonomialBasis& mb = bases.at(deg_a + deg_b);
        std::vector<QVec> vecs;
        for (size_t i = 0; i < a.dim(); ++i) {
            Element ea = element_from_slot(gens_, slots[deg_a], a.basis().row(i));
            for (size_t j = 0; j < b.dim(); ++j) {
                Element eb = element_from_slot(gens_, slots[deg_b], b.basis().row(j));
                Element w = ea.wedge(eb);
                if (!w.is_zero()) vecs.push_back(mb.coordinates(w));
            }
        }
        return Subspace::span(mb.size(), vecs);
    };

    // level 1
    std::map<int, std::vector<Subspace>> towers;
    for (int n = 1; n <= N; ++n)
        towers[n].push_back(preimage(d_, n, simple_spans.at(n), bases.at(n + 1)));

    // higher levels until every degree stabilizes; the degree-1 tower is
    // the cautious one in both tables (the naive replacement of the product
    // is only meaningful for n >= 2, where the two wedge factors live in
    // distinct degrees)
    bool stable = false;
    while (!stable) {
        stable = true;
        int J = static_cast<int>(towers[1].size()) + 1;
        std::map<int, Subspace> next;
        for (int n = 1; n <= N; ++n) {
            const Subspace& deg1_prev =
                (cautious || n == 1) ? towers[1].back() : Subspace::full(slots[1].size());
            const Subspace& prev = towers[n].back();
            Subspace target =
                simple_spans.at(n).sum(product_span(1, deg1_prev, n, prev));
            next[n] = preimage(d_, n, target, bases.at(n + 1));
            if (!(next[n] == towers[n].back())) stable = false;
        }
        if (!stable)
            for (int n = 1; n <= N; ++n) towers[n].push_back(next[n]);
        if (J > 2 * static_cast<int>(u.size()) + 4)
            break;  // defensive cap; towers are monotone and must stabilize
    }

    table.levels = static_cast<int>(towers[1].size());
    for (int n = 1; n <= N; ++n) {
        table.filtration[n] = towers[n];
        // steps: E(1) = C(1), E(J) = C(J) ∩ C(J-1)^⊥
        std::vector<Subspace> steps;
        for (size_t j = 0; j < towers[n].size(); ++j) {
            if (j == 0)
                steps.push_back(towers[n][0]);
            else
                steps.push_back(towers[n][j].complement_within(towers[n][j - 1]));
        }
        table.steps[n] = std::move(steps);
        table.exhaust_step[n] = 0;
        Subspace full = Subspace::full(slots[n].size());
        for (size_t j = 0; j < towers[n].size(); ++j) {
            if (towers[n][j] == full) {
                table.exhaust_step[n] = static_cast<int>(j) + 1;
                break;
            }
        }
        if (slots[n].empty()) table.exhaust_step[n] = 1;
    }
    return table;
}

void MinimalModel::compute_analysis() const {
    if (!is_valid())
        throw std::invalid_argument("analysis requires a valid model: " + name_);
    auto a = std::make_unique<Analysis>();
    a->cautious = compute_filtration(true);
    a->naive = compute_filtration(false);
    a->nilpotency_class = a->cautious.nilpotency_class();
    if (a->nilpotency_class == 0)
        throw std::logic_error("valid model whose filtration does not exhaust: " + name_);
    a->simply_connected = simply_connected();
    a->simple = a->nilpotency_class == 1;
    a->coformal = is_coformal();

    // Step-adapted presentation. Within each step the basis is chosen
    // kernel-first (closed vectors, then an orthogonal complement): the
    // weight bounds are proved for bases of this shape, and generators with
    // linearly dependent differentials are otherwise inflated by phantom
    // high-weight summands that cancel after the change of basis.
    const GeneratorSet& u = *gens_;
    const int N = u.max_degree();
    std::map<int, std::vector<std::pair<Subspace, Subspace>>> kernel_split;  // per (n, J)
    for (int n = 1; n <= N; ++n) {
        MonomialBasis mb(gens_, n + 1);
        Subspace closed = preimage(d_, n, Subspace(mb.size()), mb);
        const auto& steps = a->cautious.steps.at(n);
        for (size_t j = 0; j < steps.size(); ++j) {
            Subspace kernel_part = steps[j].intersect(closed);
            Subspace rest = steps[j].complement_within(kernel_part);
            kernel_split[n].emplace_back(std::move(kernel_part), std::move(rest));
        }
    }

    // A declared generator is adapted when it lies in a single step and on
    // one side of that step's kernel split.
    bool all_single = true;
    std::vector<int> declared_step(u.size(), 0);
    for (int n = 1; n <= N && all_single; ++n) {
        auto slot = u.degree_slot(n);
        const auto& steps = a->cautious.steps.at(n);
        for (size_t k = 0; k < slot.size(); ++k) {
            QVec e(slot.size(), Rat(0));
            e[k] = 1;
            int found = 0;
            for (size_t j = 0; j < steps.size(); ++j) {
                if (steps[j].dim() > 0 && steps[j].contains(e)) {
                    found = static_cast<int>(j) + 1;
                    break;
                }
            }
            if (found == 0) { all_single = false; break; }
            const auto& [kernel_part, rest] = kernel_split[n][static_cast<size_t>(found - 1)];
            if (!kernel_part.contains(e) && !rest.contains(e)) {
                all_single = false;
                break;
            }
            declared_step[slot[k]] = found;
        }
    }

    if (all_single) {
        a->adapted = shared_from_this();
        a->adapted_is_declared = true;
        a->adapted_gen_step = declared_step;
        for (uint32_t i = 0; i < u.size(); ++i) {
            auto slot = u.degree_slot(u.gen(i).degree);
            QVec e(slot.size(), Rat(0));
            for (size_t k = 0; k < slot.size(); ++k)
                if (slot[k] == i) e[k] = 1;
            a->adapted_in_declared.push_back(std::move(e));
        }
        analysis_ = std::move(a);
        return;
    }

    // Change of basis: one new generator per step-basis vector.
    std::vector<Generator> new_gens;
    std::vector<int> new_steps;
    std::vector<QVec> new_vectors;  // declared coordinates, per new gen
    for (int n = 1; n <= N; ++n) {
        auto slot = u.degree_slot(n);
        const auto& steps = a->cautious.steps.at(n);
        for (size_t j = 0; j < steps.size(); ++j) {
            // kernel rows first, then the orthogonal complement rows
            const auto& [kernel_part, rest] = kernel_split[n][j];
            std::vector<QVec> step_rows;
            for (size_t r = 0; r < kernel_part.dim(); ++r)
                step_rows.push_back(kernel_part.basis().row(r));
            for (size_t r = 0; r < rest.dim(); ++r) step_rows.push_back(rest.basis().row(r));
            for (size_t r = 0; r < step_rows.size(); ++r) {
                QVec v = step_rows[r];
                // keep the declared name when the step vector is a declared axis
                std::string nm;
                int axis = -1, nz = 0;
                for (size_t k = 0; k < v.size(); ++k)
                    if (!is_zero(v[k])) { ++nz; axis = static_cast<int>(k); }
                if (nz == 1 && v[static_cast<size_t>(axis)] == 1)
                    nm = u.gen(slot[static_cast<size_t>(axis)]).name;
                else
                    nm = "s" + std::to_string(n) + "_" + std::to_string(j + 1) + "_" +
                         std::to_string(r);
                new_gens.push_back({nm, n, {}});
                new_steps.push_back(static_cast<int>(j) + 1);
                new_vectors.push_back(std::move(v));
            }
        }
    }
    // disambiguate any name collisions deterministically
    {
        std::map<std::string, int> seen;
        for (auto& g : new_gens) {
            int& cnt = seen[g.name];
            if (cnt++ > 0) g.name += "_" + std::to_string(cnt);
        }
    }
    auto new_u = std::make_shared<GeneratorSet>(new_gens, u.max_degree());

    // old generator -> Element over the new universe
    std::map<int, std::vector<uint32_t>> new_by_degree;
    for (uint32_t i = 0; i < new_u->size(); ++i)
        new_by_degree[new_u->gen(i).degree].push_back(i);
    std::vector<Element> old_to_new(u.size(), Element::zero(new_u));
    for (int n = 1; n <= N; ++n) {
        auto slot = u.degree_slot(n);
        if (slot.empty()) continue;
        const auto& members = new_by_degree[n];
        // rows: new gens in old coords
        QMat A(members.size(), slot.size());
        for (size_t i = 0; i < members.size(); ++i) {
            // new_vectors index: members are created in the same order
            size_t global = 0;
            for (size_t g = 0; g < new_gens.size(); ++g)
                if (new_gens[g].degree == n && new_u->index_of(new_gens[g].name) == members[i]) {
                    global = g;
                    break;
                }
            A.set_row(i, new_vectors[global]);
        }
        // solve old_k = sum_i y_i new_i: old axes as combinations of new rows
        QMat At(slot.size(), members.size());
        for (size_t i = 0; i < members.size(); ++i)
            for (size_t j = 0; j < slot.size(); ++j) At.at(j, i) = A.at(i, j);
        for (size_t k = 0; k < slot.size(); ++k) {
            QVec ek(slot.size(), Rat(0));
            ek[k] = 1;
            auto y = solve(At, ek);
            if (!y) throw std::logic_error("step basis does not span the slot");
            Element e(new_u);
            for (size_t i = 0; i < members.size(); ++i)
                if (!is_zero((*y)[i]))
                    e += Element::generator(new_u, members[i]) * (*y)[i];
            old_to_new[slot[k]] = std::move(e);
        }
    }

    auto substitute = [&](const Element& src) {
        Element out(new_u);
        for (const auto& [m, c] : src.terms()) {
            Element prod = Element::unit(new_u, c);
            for (uint32_t g : m.factors) prod = prod.wedge(old_to_new[g]);
            out += prod;
        }
        return out;
    };

    std::vector<Element> new_images(new_u->size(), Element::zero(new_u));
    for (uint32_t i = 0; i < new_u->size(); ++i) {
        // d'(new_i) = substitute(d(new_i in old coordinates))
        size_t global = 0;
        for (size_t g = 0; g < new_gens.size(); ++g)
            if (new_u->index_of(new_gens[g].name) == i) { global = g; break; }
        int n = new_gens[global].degree;
        Element old_expr = element_from_slot(gens_, u.degree_slot(n), new_vectors[global]);
        new_images[i] = substitute(d_.apply(old_expr));
    }
    auto adapted = MinimalModel::create(name_ + "~adapted", new_u,
                                        Derivation(new_u, std::move(new_images)));
    a->adapted = adapted;
    a->adapted_is_declared = false;
    a->adapted_gen_step = new_steps;
    a->adapted_in_declared = new_vectors;
    analysis_ = std::move(a);
}

DifferentialSplit MinimalModel::split_differential(uint32_t adapted_gen_index) const {
    const Analysis& a = analysis();
    const MinimalModel& m = *a.adapted;
    if (&m != this) return m.split_differential(adapted_gen_index);

    const GeneratorSet& u = *gens_;
    const int n = u.gen(adapted_gen_index).degree;
    DifferentialSplit split;
    split.degree = n;
    split.step = a.adapted_gen_step[adapted_gen_index];
    split.d_sim = Element::zero(gens_);
    split.d_nil = Element::zero(gens_);
    split.delta = Element::zero(gens_);

    const Element& dg = d_.image(adapted_gen_index);
    for (const auto& [mono, c] : dg.terms()) {
        bool all_low = true;
        for (uint32_t g : mono.factors)
            if (u.gen(g).degree >= n) all_low = false;
        Element term(gens_);
        term.add_term(mono, c);
        if (all_low) {
            split.d_sim += term;
            continue;
        }
        // nilpotent part: degree-1 factor wedge degree-n factor
        if (mono.word_length() != 2)
            throw std::logic_error("unexpected high-degree monomial outside ∧V^{<n}");
        int i_step, j_step;
        if (n == 1) {
            int s0 = a.adapted_gen_step[mono.factors[0]];
            int s1 = a.adapted_gen_step[mono.factors[1]];
            i_step = std::min(s0, s1);
            j_step = std::max(s0, s1);
        } else {
            uint32_t f1 = u.gen(mono.factors[0]).degree == 1 ? mono.factors[0] : mono.factors[1];
            uint32_t fn = u.gen(mono.factors[0]).degree == 1 ? mono.factors[1] : mono.factors[0];
            i_step = a.adapted_gen_step[f1];
            j_step = a.adapted_gen_step[fn];
        }
        split.d_nil += term;
        auto key = std::make_pair(i_step, j_step);
        auto it = split.blocks.find(key);
        if (it == split.blocks.end())
            split.blocks.emplace(key, term);
        else
            it->second += term;
        if (i_step == 1 && j_step == split.step - 1) split.delta += term;
    }
    return split;
}


}  // namespace sullivan
