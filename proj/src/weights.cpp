#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sullivan/model.hpp"

namespace sullivan {

namespace {

long gen_weight(const MinimalModel& m, uint32_t idx, std::vector<long>& memo,
                std::vector<int>& state) {
    // state: 0 untouched, 1 in progress, 2 done
    if (state[idx] == 2) return memo[idx];
    if (state[idx] == 1)
        throw std::invalid_argument("weight recursion cycle at " +
                                    m.universe()->gen(idx).name);
    state[idx] = 1;
    const Element& dg = m.differential().image(idx);
    long w;
    if (dg.is_zero()) {
        w = m.universe()->gen(idx).degree;
    } else {
        w = 0;
        for (const auto& [mono, c] : dg.terms()) {
            long s = 0;
            for (uint32_t f : mono.factors) s += gen_weight(m, f, memo, state);
            w = std::max(w, s);
        }
    }
    memo[idx] = w;
    state[idx] = 2;
    return w;
}

}  // namespace

WeightAssignment weights(const MinimalModel& model) {
    const MinimalModel& m = *model.analysis().adapted;
    std::vector<long> memo(m.universe()->size(), 0);
    std::vector<int> state(m.universe()->size(), 0);
    WeightAssignment out;
    for (uint32_t i = 0; i < m.universe()->size(); ++i)
        out.weight[m.universe()->gen(i).name] = gen_weight(m, i, memo, state);
    return out;
}

long WeightAssignment::monomial_weight(const MinimalModel& adapted, const Monomial& m) const {
    long s = 0;
    for (uint32_t f : m.factors) s += weight.at(adapted.universe()->gen(f).name);
    return s;
}

DeltaInjectivityReport check_delta_injective(const MinimalModel& model) {
    const Analysis& a = model.analysis();
    const MinimalModel& m = *a.adapted;
    const Analysis& ma = m.analysis();
    DeltaInjectivityReport rep;

    const GeneratorSet& u = *m.universe();
    for (int n = 1; n <= u.max_degree(); ++n) {
        const auto& steps = ma.cautious.steps.at(n);
        for (int J = 2; J <= static_cast<int>(steps.size()); ++J) {
            // columns: adapted generators in E^n(J); stack δ-images
            std::vector<uint32_t> members;
            for (uint32_t i = 0; i < u.size(); ++i)
                if (u.gen(i).degree == n && ma.adapted_gen_step[i] == J) members.push_back(i);
            if (members.empty()) continue;
            MonomialBasis mb(m.universe(), n + 1);
            QMat mat(mb.size(), members.size());
            for (size_t k = 0; k < members.size(); ++k) {
                Element delta = m.split_differential(members[k]).delta;
                QVec col = mb.coordinates(delta);
                for (size_t r = 0; r < mb.size(); ++r) mat.at(r, k) = col[r];
            }
            auto kern = kernel_basis(mat);
            if (!kern.empty()) {
                rep.ok = false;
                std::ostringstream os;
                os << "delta kernel on E^" << n << "(" << J << "), combination of";
                for (uint32_t i : members) os << " " << u.gen(i).name;
                rep.violations.push_back(os.str());
            }
        }
    }
    return rep;
}

BlockBoundReport check_dnil_step_bound(const MinimalModel& model) {
    const Analysis& a = model.analysis();
    const MinimalModel& m = *a.adapted;
    const Analysis& ma = m.analysis();
    BlockBoundReport rep;

    const GeneratorSet& u = *m.universe();
    const int c = ma.nilpotency_class;
    const bool coformal = ma.coformal;
    rep.coformal_refinement_checked = coformal;

    for (uint32_t g = 0; g < u.size(); ++g) {
        DifferentialSplit split = m.split_differential(g);
        for (const auto& [key, component] : split.blocks) {
            if (component.is_zero()) continue;
            if (key.first + key.second > split.step) {
                rep.ok = false;
                std::ostringstream os;
                os << u.gen(g).name << " in E^" << split.degree << "(" << split.step
                   << ") has nilpotent block (" << key.first << "," << key.second
                   << ") with " << key.first + key.second << " > " << split.step;
                rep.violations.push_back(os.str());
            }
        }
        if (coformal) {
            // quadratic blocks across all degree splits: i1 + i2 <= J + c
            for (const auto& [mono, coeff] : m.differential().image(g).terms()) {
                if (mono.word_length() != 2) continue;
                int i1 = ma.adapted_gen_step[mono.factors[0]];
                int i2 = ma.adapted_gen_step[mono.factors[1]];
                if (i1 + i2 > split.step + c) {
                    rep.ok = false;
                    std::ostringstream os;
                    os << u.gen(g).name << " in E^" << split.degree << "(" << split.step
                       << ") has quadratic block steps (" << i1 << "," << i2 << ") with "
                       << i1 + i2 << " > J + c = " << split.step + c;
                    rep.violations.push_back(os.str());
                }
            }
        }
    }
    return rep;
}

WeightBoundReport check_weight_bounds(const MinimalModel& model) {
    const Analysis& a = model.analysis();
    const MinimalModel& m = *a.adapted;
    const Analysis& ma = m.analysis();
    WeightBoundReport rep;

    const GeneratorSet& u = *m.universe();
    const int c = ma.nilpotency_class;
    WeightAssignment wt = weights(m);

    for (uint32_t g = 0; g < u.size(); ++g) {
        const int n = u.gen(g).degree;
        const int J = ma.adapted_gen_step[g];
        const long w = wt.weight.at(u.gen(g).name);

        long bound = 0;
        std::string rule;
        if (n == 1) {
            bound = J;
            rule = "degree-1: wt <= J";
        } else {
            bound = static_cast<long>(n) * (4 * c - 1) - 3 * (2 * c - 1) + (J - 1);
            rule = "general: wt <= n(4c-1) - 3(2c-1) + (J-1)";
            if (n == 2) {
                long b2 = J + 2 * c;
                if (b2 <= bound) {
                    bound = b2;
                    rule = "degree-2: wt <= J + 2c";
                }
            }
            if (ma.simple) {
                long bs = 2 * static_cast<long>(n) - 1;
                if (bs < bound) {
                    bound = bs;
                    rule = "simple: wt <= 2n - 1";
                }
            }
            if (ma.coformal) {
                long bc = static_cast<long>(c + 1) * (n - 1) + J - c;
                if (bc < bound) {
                    bound = bc;
                    rule = "coformal: wt <= (c+1)(n-1) + J - c";
                }
            }
        }

        BoundCheck check;
        check.generator = u.gen(g).name;
        check.degree = n;
        check.step = J;
        check.weight = w;
        check.bound = bound;
        check.rule = rule;
        check.margin = bound - w;
        check.ok = w <= bound;
        if (!check.ok) rep.ok = false;
        rep.checks.push_back(std::move(check));
    }
    return rep;
}

ConjectureReport check_light_factor_conjecture(const MinimalModel& model) {
    const Analysis& a = model.analysis();
    const MinimalModel& m = *a.adapted;
    const Analysis& ma = m.analysis();
    ConjectureReport rep;

    const GeneratorSet& u = *m.universe();
    WeightAssignment wt = weights(m);

    for (uint32_t g = 0; g < u.size(); ++g) {
        const Element& dg = m.differential().image(g);
        if (dg.is_zero()) continue;
        DifferentialSplit split = m.split_differential(g);
        long w = wt.weight.at(u.gen(g).name);
        long w_nil = 0;
        for (const auto& [mono, c] : split.d_nil.terms())
            w_nil = std::max(w_nil, wt.monomial_weight(m, mono));
        long w_sim = 0;
        for (const auto& [mono, c] : split.d_sim.terms())
            w_sim = std::max(w_sim, wt.monomial_weight(m, mono));
        if (split.d_sim.is_zero() || w_sim < w || (w_nil == w && !split.d_nil.is_zero()))
            continue;  // weight not maximized exclusively by d_sim
        ++rep.instances_checked;
        bool found_light = false;
        for (const auto& [mono, c] : split.d_sim.terms()) {
            if (wt.monomial_weight(m, mono) != w) continue;
            for (uint32_t f : mono.factors)
                if (ma.adapted_gen_step[f] == 1) { found_light = true; break; }
            if (found_light) break;
        }
        if (!found_light) {
            rep.holds = false;
            rep.counterexamples.push_back(u.gen(g).name);
        }
    }
    return rep;
}

}  // namespace sullivan
