#include "sullivan/selftest.hpp"

#include <algorithm>
#include <sstream>

#include "sullivan/corpus.hpp"
#include "sullivan/exponents.hpp"
#include "sullivan/obstruction.hpp"
#include "sullivan/lie.hpp"
#include "sullivan/sampler.hpp"

namespace sullivan {

namespace {

std::vector<ModelPtr> randomized_corpus(uint64_t seed, int count) {
    // mixed corpus: every third model coformal, every fifth simple, every
    // seventh simply connected; bounds stay within 6 generators per degree
    // and degrees at most 5. Cached so that the three corpus checks share
    // the per-model analysis.
    static std::map<std::pair<uint64_t, int>, std::vector<ModelPtr>> cache;
    auto it = cache.find({seed, count});
    if (it != cache.end()) return it->second;
    std::vector<ModelPtr> corpus;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        SamplerOptions opt;
        opt.max_degree = (i % 4 == 1) ? 5 : 3 + (i % 2);
        opt.max_gens_per_degree = (i % 11 == 4) ? 6 : (i % 4 == 2) ? 4 : 3;
        opt.coformal_only = (i % 3 == 0);
        opt.simple_only = (i % 5 == 0);
        opt.simply_connected = (i % 7 == 0);
        opt.degree1_rich = (i % 9 == 2) && !opt.simple_only && !opt.simply_connected;
        if (opt.degree1_rich) {
            // deep degree-1 towers; low degrees keep the monomial spans small
            opt.closed_percent = 25;
            opt.max_degree = std::min(opt.max_degree, 3);
            opt.max_gens_per_degree = std::min(opt.max_gens_per_degree, 5);
        }
        corpus.push_back(sample_model(rng, opt, "sample" + std::to_string(i)));
    }
    cache.emplace(std::make_pair(seed, count), corpus);
    return corpus;
}

std::vector<std::pair<std::string, ModelPtr>> bundled_valid_models() {
    std::vector<std::pair<std::string, ModelPtr>> out;
    for (const BundledFile& f : bundled_models()) {
        ModelFile mf = load_bundled(f.name);
        out.emplace_back(f.name, mf.model);
    }
    return out;
}

Element random_element(const GenSetPtr& u, Rng& rng, int max_len = 2) {
    Element e(u);
    int terms = static_cast<int>(rng.range(1, 3));
    for (int t = 0; t < terms; ++t) {
        std::vector<uint32_t> factors;
        int len = static_cast<int>(rng.range(1, max_len));
        for (int i = 0; i < len; ++i)
            factors.push_back(static_cast<uint32_t>(rng.below(u->size())));
        e += Element::monomial(u, factors, rng.small_rat());
    }
    return e;
}

IntervalElement random_interval_element(const GenSetPtr& u, Rng& rng) {
    IntervalElement out(u);
    int pieces = static_cast<int>(rng.range(1, 3));
    for (int p = 0; p < pieces; ++p) {
        Element b = random_element(u, rng);
        int i = static_cast<int>(rng.range(0, 3));
        if (rng.coin())
            out += IntervalElement::poly(b, i);
        else
            out += IntervalElement::dt(b, i);
    }
    return out;
}

}  // namespace

ReportNode check_bundled_validation() {
    ReportNode node = ReportNode::info("bundled-validation");
    node.paper_ref = "minimality-and-nilpotence-conditions";
    bool all = true;
    for (const auto& [name, model] : bundled_valid_models()) {
        const ValidationReport& v = model->validate();
        std::ostringstream os;
        os << "d2=" << (v.d_squared_ok ? "ok" : "fail")
           << " minimal=" << (v.minimal_ok ? "ok" : "fail")
           << " nilpotent=" << (v.nilpotent_ok ? "ok" : "fail");
        node.add(v.ok() ? ReportNode::pass("validate " + name, os.str())
                        : ReportNode::fail("validate " + name, os.str()));
        all = all && v.ok();
    }
    node.status = all ? "pass" : "fail";
    return node;
}

ReportNode check_fixture_diagnostics() {
    ReportNode node = ReportNode::info("failure-fixtures");
    bool all = true;
    for (const FailureFixture& fx : failure_fixtures()) {
        ParseResult r = parse_model(fx.file.source);
        bool ok = false;
        std::string witness;
        if (auto* errs = std::get_if<std::vector<ParseError>>(&r)) {
            ok = fx.expected_check == "parse";
            witness = "parse error at line " + std::to_string((*errs)[0].line) + ": " +
                      (*errs)[0].message;
        } else {
            const ModelPtr model = std::get<ModelFile>(r).model;
            const ValidationReport& v = model->validate();
            ok = !v.ok();
            if (ok) {
                // the failing check must be the expected one
                ok = false;
                for (const ValidationIssue& issue : v.issues) {
                    if (issue.check == fx.expected_check) {
                        ok = true;
                        witness = issue.check + " at " + issue.generator;
                        break;
                    }
                }
            }
        }
        node.add(ok ? ReportNode::pass("fixture " + fx.file.name, witness)
                    : ReportNode::fail("fixture " + fx.file.name,
                                       "expected diagnostic " + fx.expected_check));
        all = all && ok;
    }
    node.status = all ? "pass" : "fail";
    return node;
}

ReportNode check_filtration_equality(uint64_t seed, int count) {
    ReportNode node = ReportNode::info("filtration-equality");
    node.paper_ref = "naive-equals-cautious";
    bool all = true;
    auto run = [&](const std::string& name, const ModelPtr& m) {
        const Analysis& a = m->analysis();
        bool eq = a.naive == a.cautious;
        bool monotone = true, exhausted = true;
        for (const auto& [n, tower] : a.cautious.filtration) {
            for (size_t j = 1; j < tower.size(); ++j)
                if (!tower[j].contains(tower[j - 1])) monotone = false;
            if (!(tower.back() == Subspace::full(tower.back().ambient_dim())))
                exhausted = false;
        }
        bool ok = eq && monotone && exhausted;
        std::ostringstream os;
        os << "class " << a.nilpotency_class << ", levels " << a.cautious.levels;
        node.add(ok ? ReportNode::pass(name, os.str())
                    : ReportNode::fail(name, eq ? "tower not monotone/exhaustive"
                                                : "naive differs from cautious"));
        all = all && ok;
    };
    for (const auto& [name, model] : bundled_valid_models()) run("bundled " + name, model);
    auto corpus = randomized_corpus(seed, count);
    int failures = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const Analysis& a = corpus[i]->analysis();
        if (!(a.naive == a.cautious)) {
            ++failures;
            node.add(ReportNode::fail(corpus[i]->name(), "naive differs from cautious"));
        }
    }
    std::ostringstream os;
    os << count << " randomized models, " << failures << " failures";
    node.add(failures == 0 ? ReportNode::pass("randomized corpus", os.str())
                           : ReportNode::fail("randomized corpus", os.str()));
    all = all && failures == 0;
    node.status = all ? "pass" : "fail";
    return node;
}

ReportNode check_structure_lemmas(uint64_t seed, int count) {
    ReportNode node = ReportNode::info("structure-lemmas");
    node.paper_ref = "delta-injectivity-and-dnil-block-support";
    int delta_fail = 0, block_fail = 0, coformal_checked = 0;
    auto corpus = randomized_corpus(seed, count);
    std::vector<std::pair<std::string, ModelPtr>> all_models = bundled_valid_models();
    for (size_t i = 0; i < corpus.size(); ++i)
        all_models.emplace_back(corpus[i]->name(), corpus[i]);
    for (const auto& [name, m] : all_models) {
        DeltaInjectivityReport dr = check_delta_injective(*m);
        if (!dr.ok) {
            ++delta_fail;
            node.add(ReportNode::fail("delta " + name, dr.violations[0]));
        }
        BlockBoundReport br = check_dnil_step_bound(*m);
        if (!br.ok) {
            ++block_fail;
            node.add(ReportNode::fail("blocks " + name, br.violations[0]));
        }
        if (br.coformal_refinement_checked) ++coformal_checked;
    }
    std::ostringstream os;
    os << all_models.size() << " models, " << delta_fail << " delta failures, " << block_fail
       << " block failures, coformal refinement on " << coformal_checked;
    node.add(delta_fail + block_fail == 0 ? ReportNode::pass("summary", os.str())
                                          : ReportNode::fail("summary", os.str()));
    node.status = delta_fail + block_fail == 0 ? "pass" : "fail";
    return node;
}

ReportNode check_weight_bound_corpus(uint64_t seed, int count) {
    ReportNode node = ReportNode::info("weight-bounds");
    node.paper_ref = "degree-1-degree-2-general-simple-coformal-bounds";
    int failures = 0, checked = 0;
    auto corpus = randomized_corpus(seed, count);
    std::vector<std::pair<std::string, ModelPtr>> all_models = bundled_valid_models();
    for (size_t i = 0; i < corpus.size(); ++i)
        all_models.emplace_back(corpus[i]->name(), corpus[i]);
    for (const auto& [name, m] : all_models) {
        WeightBoundReport r = check_weight_bounds(*m);
        checked += static_cast<int>(r.checks.size());
        if (!r.ok) {
            ++failures;
            for (const BoundCheck& c : r.checks)
                if (!c.ok)
                    node.add(ReportNode::fail(
                        "bound " + name + "." + c.generator,
                        "wt " + std::to_string(c.weight) + " > " + std::to_string(c.bound) +
                            " (" + c.rule + ")"));
        }
    }
    std::ostringstream os;
    os << all_models.size() << " models, " << checked << " generator bounds, " << failures
       << " failing models";
    node.add(failures == 0 ? ReportNode::pass("summary", os.str())
                           : ReportNode::fail("summary", os.str()));
    node.status = failures == 0 ? "pass" : "fail";
    return node;
}

ReportNode check_exponent_cells() {
    ReportNode node = ReportNode::info("exponent-cells");
    node.paper_ref = "volume-exponent-table";
    bool all = true;
    for (int n = 2; n <= 5; ++n) {
        for (int c = 1; c <= 4; ++c) {
            ExponentTable t = exponent_table(n, c);
            bool ok = t.sc_upper == 2 * n && t.simple_upper == 2 * n + 1 &&
                      t.nilpotent_upper == (4 * c - 1) * n && t.coformal_upper == (c + 1) * n &&
                      t.sc_lower == 2 * (n - 1) && t.coformal_lower == (c + 1) * (n - 1) &&
                      t.coformal_lower_printed == (c - 1) * (n - 1) &&
                      t.nilpotent_conjecture == 3 * n * c;
            if (!ok) {
                all = false;
                node.add(ReportNode::fail("cells at n=" + std::to_string(n) +
                                          " c=" + std::to_string(c)));
            }
        }
    }
    node.add(ReportNode::info("coformal lower bound",
                              "(c+1)(n-1) from the bracket construction; printed table "
                              "value (c-1)(n-1) surfaced as a flagged alternative",
                              "printed-table-discrepancy"));
    node.add(ReportNode{
        "conjecture 3nc", "conjecture",
        "general-nilpotent upper exponent conjectured to improve to 3nc", "conjecture-3nc",
        {}});
    if (all) node.add(ReportNode::pass("all 16 (n, c) evaluations"));
    node.status = all ? "pass" : "fail";
    return node;
}

ReportNode check_ftc_suite(uint64_t seed, int samples_per_model) {
    ReportNode node = ReportNode::info("fundamental-theorems");
    node.paper_ref = "interval-integration-identities";
    bool all = true;
    Rng rng(seed);
    for (const auto& [name, m] : bundled_valid_models()) {
        int failures = 0;
        for (int i = 0; i < samples_per_model; ++i) {
            IntervalElement u = random_interval_element(m->universe(), rng);
            FtcReport rep = check_fundamental_theorems(m->differential(), u);
            if (!rep.ok()) ++failures;
        }
        std::ostringstream os;
        os << samples_per_model << " samples, " << failures << " failures";
        node.add(failures == 0 ? ReportNode::pass("ftc " + name, os.str())
                               : ReportNode::fail("ftc " + name, os.str()));
        all = all && failures == 0;
    }
    node.status = all ? "pass" : "fail";
    return node;
}

ReportNode check_obstruction_suite(uint64_t seed, int samples) {
    ReportNode node = ReportNode::info("obstruction-calculus");
    node.paper_ref = "elementary-extension-obstructions";
    bool all = true;
    Rng rng(seed);

    // worked nonzero example: phi(x) = u, psi(x) = 2u into ∧(u), mu = cap-0
    {
        auto total_u = std::make_shared<GeneratorSet>(
            std::vector<Generator>{{"x", 2, {}}}, 4);
        auto total = MinimalModel::create("qx", total_u, Derivation::zero(total_u));
        auto tgt_u = std::make_shared<GeneratorSet>(
            std::vector<Generator>{{"u", 2, {}}}, 4);
        auto tgt_model = MinimalModel::create("target", tgt_u, Derivation::zero(tgt_u));
        auto B = Dga::of_model(tgt_model);
        auto C = Dga::truncation(B, 0);
        Element uu = Element::generator(tgt_u, 0);
        RelativeObstructionProblem p{
            total,
            0,
            DgaMorphism::total(total, B, {uu}),
            DgaMorphism::total(total, B, {uu * rat(2)}),
            DgaMorphism(tgt_model, 1, C, {Element::zero(tgt_u)}),
            AlgebraicHomotopy(total, 0, B, {}),
            AlgebraicHomotopy(total, 1, C, {IntervalElement(tgt_u)})};
        RelativeObstruction o = relative_obstruction(p);
        bool ok = o.cocycle_ok && !o.vanishes && o.value.at(0).in_b == uu;
        node.add(ok ? ReportNode::pass("worked example", "obstruction value u, nonvanishing")
                    : ReportNode::fail("worked example"));
        all = all && ok;
    }

    // sampled extension problems over randomized models: cocycle condition
    // and the endpoint round trip of the extension formulas
    int cocycle_fail = 0, roundtrip_fail = 0, solve_fail = 0, instances = 0;
    int tries = 0;
    while (instances < samples && tries < samples * 25) {
        ++tries;
        SamplerOptions opt;
        opt.max_degree = 3;
        opt.max_gens_per_degree = 2;
        opt.closed_percent = 45;
        Rng mrng = rng.fork();
        ModelPtr m = sample_model(mrng, opt, "obs" + std::to_string(tries));
        if (m->universe()->size() < 2) continue;
        size_t stage = m->universe()->size() - 1;
        // slot must be elementary over the stage (single top generator is)
        auto B = Dga::of_model(m);
        ModelPtr stage_model = prefix_model(m, stage);
        auto f0 = random_morphism(stage_model, B, mrng);
        if (!f0) continue;
        DgaMorphism f(m, stage, B, [&] {
            std::vector<Element> imgs;
            for (uint32_t i = 0; i < stage; ++i) imgs.push_back(f0->image(i));
            return imgs;
        }());
        auto g0 = random_morphism(m, B, mrng);
        if (!g0) continue;
        DgaMorphism g = *g0;
        DgaMorphism eta = DgaMorphism::inclusion(m, m->universe()->size(), B);
        // homotopy from g∘ι (t=0) to η∘f (t=1), built over the stage model
        DgaMorphism g_stage(stage_model, stage, B, [&] {
            std::vector<Element> imgs;
            for (uint32_t i = 0; i < stage; ++i) imgs.push_back(g.image(i));
            return imgs;
        }());
        auto hopt = build_homotopy(g_stage, f0->then(eta), nullptr);
        if (!hopt) continue;
        AlgebraicHomotopy phi(m, stage, B, [&] {
            std::vector<IntervalElement> imgs;
            for (uint32_t i = 0; i < stage; ++i) imgs.push_back(hopt->image(i));
            return imgs;
        }());
        ExtensionProblem p{m, stage, f, g, eta, phi};
        ObstructionCochain o = obstruction_cochain(p);
        ++instances;
        if (!o.cocycle_ok) {
            ++cocycle_fail;
            continue;
        }
        auto bc = solve_obstruction(p, o);
        if (!bc) {
            // eta is the identity here, so the relative cohomology vanishes
            // and a primitive must exist
            ++solve_fail;
            continue;
        }
        try {
            ExtensionResult res = extend_homotopy(p, *bc);
            (void)res;  // postconditions verified inside
        } catch (const std::exception&) {
            ++roundtrip_fail;
        }
    }
    {
        std::ostringstream os;
        os << instances << " sampled instances, " << cocycle_fail << " cocycle failures, "
           << solve_fail << " primitive failures, " << roundtrip_fail
           << " round-trip failures";
        bool ok = instances >= samples / 2 && cocycle_fail == 0 && solve_fail == 0 &&
                  roundtrip_fail == 0;
        node.add(ok ? ReportNode::pass("sampled instances", os.str())
                    : ReportNode::fail("sampled instances", os.str()));
        all = all && ok;
    }

    // second family: eta is the stage inclusion B = ∧(stage) ⊆ C, where the
    // obstruction class may genuinely refuse to vanish; the cocycle
    // condition and, when a primitive exists, the round trip must still be
    // exact
    int incl_instances = 0, incl_cocycle_fail = 0, incl_blocked = 0, incl_roundtrip_fail = 0;
    tries = 0;
    while (incl_instances < samples && tries < samples * 25) {
        ++tries;
        SamplerOptions opt;
        opt.max_degree = 3;
        opt.max_gens_per_degree = 2;
        opt.closed_percent = 50;
        Rng mrng = rng.fork();
        ModelPtr m = sample_model(mrng, opt, "oinc" + std::to_string(tries));
        if (m->universe()->size() < 2) continue;
        size_t stage = m->universe()->size() - 1;
        ModelPtr stage_model = prefix_model(m, stage);
        auto B = Dga::of_model(stage_model);
        auto C = Dga::of_model(m);
        // eta : ∧(stage) -> ∧V sends stage generators to themselves
        std::vector<Element> eta_images;
        for (uint32_t i = 0; i < stage; ++i)
            eta_images.push_back(Element::generator(m->universe(), i));
        DgaMorphism eta(stage_model, stage, C, std::move(eta_images));
        auto f0 = random_morphism(stage_model, B, mrng);
        if (!f0) continue;
        DgaMorphism f(m, stage, B, [&] {
            std::vector<Element> imgs;
            for (uint32_t i = 0; i < stage; ++i) imgs.push_back(f0->image(i));
            return imgs;
        }());
        auto g0 = random_morphism(m, C, mrng);
        if (!g0) continue;
        DgaMorphism g_stage(stage_model, stage, C, [&] {
            std::vector<Element> imgs;
            for (uint32_t i = 0; i < stage; ++i) imgs.push_back(g0->image(i));
            return imgs;
        }());
        auto hopt = build_homotopy(g_stage, f0->then(eta), nullptr);
        if (!hopt) continue;
        AlgebraicHomotopy phi(m, stage, C, [&] {
            std::vector<IntervalElement> imgs;
            for (uint32_t i = 0; i < stage; ++i) imgs.push_back(hopt->image(i));
            return imgs;
        }());
        ExtensionProblem p{m, stage, f, *g0, eta, phi};
        ObstructionCochain o = obstruction_cochain(p);
        ++incl_instances;
        if (!o.cocycle_ok) {
            ++incl_cocycle_fail;
            continue;
        }
        auto bc = solve_obstruction(p, o);
        if (!bc) {
            ++incl_blocked;  // legitimate nonvanishing class
            continue;
        }
        try {
            extend_homotopy(p, *bc);
        } catch (const std::exception&) {
            ++incl_roundtrip_fail;
        }
    }
    {
        std::ostringstream os;
        os << incl_instances << " stage-inclusion instances, " << incl_cocycle_fail
           << " cocycle failures, " << incl_blocked << " nonvanishing classes, "
           << incl_roundtrip_fail << " round-trip failures";
        bool ok = incl_instances >= samples / 2 && incl_cocycle_fail == 0 &&
                  incl_roundtrip_fail == 0;
        node.add(ok ? ReportNode::pass("stage-inclusion instances", os.str())
                    : ReportNode::fail("stage-inclusion instances", os.str()));
        all = all && ok;
    }
    node.status = all ? "pass" : "fail";
    return node;
}

ReportNode check_whitehead_suite(int k_max, int c_max) {
    ReportNode node = ReportNode::info("whitehead-suite");
    node.paper_ref = "mapping-torus-bracket-classes";
    bool all = true;
    for (int c = 1; c <= c_max; ++c) {
        LieCheckReport jac = verify_jacobi_lemmas(k_max, c);
        LieCheckReport nv = verify_nonvanishing(k_max, c);
        LieCheckReport sc = verify_scaling_weights(k_max, c);
        std::ostringstream os;
        os << "k <= " << k_max << ": " << jac.checked << " bracket identities, " << nv.checked
           << " nonvanishing checks, " << sc.checked << " scaling weights";
        bool ok = jac.ok && nv.ok && sc.ok;
        ReportNode child = ok ? ReportNode::pass("c = " + std::to_string(c), os.str())
                              : ReportNode::fail("c = " + std::to_string(c), os.str());
        for (const auto& f : jac.failures) child.add(ReportNode::fail("jacobi", f));
        for (const auto& f : nv.failures) child.add(ReportNode::fail("nonvanishing", f));
        for (const auto& f : sc.failures) child.add(ReportNode::fail("scaling", f));
        node.add(std::move(child));
        all = all && ok;
    }
    node.status = all ? "pass" : "fail";
    return node;
}

ReportNode selftest_report(uint64_t seed) {
    ReportNode root = ReportNode::info("selftest");
    root.witness = "seed " + std::to_string(seed);
    root.add(check_bundled_validation());
    root.add(check_fixture_diagnostics());
    root.add(check_filtration_equality(seed, 100));
    root.add(check_structure_lemmas(seed, 100));
    root.add(check_weight_bound_corpus(seed, 100));
    root.add(check_exponent_cells());
    root.add(check_ftc_suite(seed + 1, 200));
    root.add(check_obstruction_suite(seed + 2, 12));
    root.add(check_whitehead_suite(6, 3));
    root.status = root.all_pass() ? "pass" : "fail";
    return root;
}

}  // namespace sullivan
