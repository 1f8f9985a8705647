#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sullivan/corpus.hpp"
#include "sullivan/exponents.hpp"
#include "sullivan/obstruction.hpp"
#include "sullivan/selftest.hpp"

using namespace sullivan;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct GlobalOptions {
    std::string model_path;
    bool json = false;
    uint64_t seed = 42;
    int truncate = 0;  // 0 = use the file's maxdeg
};

uint64_t env_seed() {
    const char* s = std::getenv("SULLIVAN_SEED");
    if (!s) return 42;
    try {
        return static_cast<uint64_t>(std::stoull(s));
    } catch (...) {
        return 42;
    }
}

int emit(const ReportNode& report, bool json) {
    std::cout << (json ? render_json(report) : render_text(report));
    return report.all_pass() ? kExitPass : kExitCheckFailed;
}

/// Reads a model file from disk, or a bundled model by name.
std::optional<std::string> read_source(const std::string& path, std::string* err) {
    std::ifstream in(path);
    if (in) {
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    for (const BundledFile& f : bundled_models())
        if (f.name == path || f.filename == path) return f.source;
    *err = "cannot open model file '" + path + "'";
    return std::nullopt;
}

/// Rebuilds a model with a lower working degree: generators above the bound
/// are dropped together with their differentials.
ModelPtr truncate_model(const ModelPtr& m, int maxdeg) {
    std::vector<Generator> gens;
    std::vector<uint32_t> kept;
    for (uint32_t i = 0; i < m->universe()->size(); ++i)
        if (m->universe()->gen(i).degree <= maxdeg) {
            kept.push_back(i);
            gens.push_back(m->universe()->gen(i));
        }
    auto u = std::make_shared<GeneratorSet>(gens, maxdeg);
    std::vector<Element> images;
    for (uint32_t k = 0; k < kept.size(); ++k) {
        Element img(u);
        for (const auto& [mono, c] : m->differential().image(kept[k]).terms()) {
            std::vector<uint32_t> factors;
            bool ok = true;
            for (uint32_t f : mono.factors) {
                auto idx = u->index_of(m->universe()->gen(f).name);
                if (!idx) { ok = false; break; }
                factors.push_back(*idx);
            }
            if (ok) img += Element::monomial(u, factors, c);
        }
        images.push_back(std::move(img));
    }
    return MinimalModel::create(m->name(), u, Derivation(u, std::move(images)));
}

std::optional<ModelFile> load_model(const GlobalOptions& opt, int* exit_code, bool quiet_json) {
    std::string err;
    auto source = read_source(opt.model_path, &err);
    if (!source) {
        ReportNode node = ReportNode{"load-model", "error", err, "", {}};
        std::cout << (quiet_json ? render_json(node) : render_text(node));
        *exit_code = kExitInputError;
        return std::nullopt;
    }
    ParseResult r = parse_model(*source);
    if (auto* errs = std::get_if<std::vector<ParseError>>(&r)) {
        ReportNode node = ReportNode{"parse-model", "error", opt.model_path, "", {}};
        for (const ParseError& e : *errs)
            node.add(ReportNode{"line " + std::to_string(e.line), "error", e.message, "", {}});
        std::cout << (quiet_json ? render_json(node) : render_text(node));
        *exit_code = kExitInputError;
        return std::nullopt;
    }
    ModelFile mf = std::get<ModelFile>(std::move(r));
    if (opt.truncate > 0) mf.model = truncate_model(mf.model, opt.truncate);
    return mf;
}

ReportNode validation_node(const MinimalModel& m) {
    const ValidationReport& v = m.validate();
    ReportNode node = ReportNode::info("validate " + m.name());
    node.paper_ref = "minimality-and-nilpotence-conditions";
    node.add(v.d_squared_ok ? ReportNode::pass("d-squared") : ReportNode::fail("d-squared"));
    node.add(v.minimal_ok ? ReportNode::pass("minimality") : ReportNode::fail("minimality"));
    node.add(v.nilpotent_ok ? ReportNode::pass("nilpotence") : ReportNode::fail("nilpotence"));
    for (const ValidationIssue& issue : v.issues)
        node.add(ReportNode::fail(issue.check + " " + issue.generator, issue.detail));
    if (v.nilpotent_ok) {
        std::ostringstream os;
        for (size_t r = 0; r < v.tower.size(); ++r) {
            if (r) os << "; ";
            os << "Z(" << r + 1 << ") += {";
            for (size_t i = 0; i < v.tower[r].size(); ++i)
                os << (i ? "," : "") << v.tower[r][i];
            os << "}";
        }
        node.add(ReportNode::info("tower", os.str()));
    }
    node.status = v.ok() ? "pass" : "fail";
    return node;
}

std::string subspace_string(const MinimalModel& m, int degree, const Subspace& s) {
    std::ostringstream os;
    auto slot = m.universe()->degree_slot(degree);
    os << "span{";
    for (size_t r = 0; r < s.dim(); ++r) {
        if (r) os << ", ";
        Element e = element_from_slot(m.universe(), slot, s.basis().row(r));
        os << e.to_string();
    }
    os << "}";
    return os.str();
}

ReportNode filtration_node(const MinimalModel& m) {
    const Analysis& a = m.analysis();
    ReportNode node = ReportNode::info("filtration " + m.name());
    node.paper_ref = "cautious-and-naive-filtrations";
    for (const auto& [n, tower] : a.cautious.filtration) {
        if (tower[0].ambient_dim() == 0) continue;  // no generators in this degree
        ReportNode deg = ReportNode::info("degree " + std::to_string(n));
        const auto& naive_tower = a.naive.filtration.at(n);
        for (size_t j = 0; j < tower.size(); ++j) {
            std::ostringstream os;
            os << "dim " << tower[j].dim() << ", step dim "
               << a.cautious.steps.at(n)[j].dim() << ", naive dim "
               << naive_tower[std::min(j, naive_tower.size() - 1)].dim() << ", C = "
               << subspace_string(m, n, tower[j]);
            deg.add(ReportNode::info("J = " + std::to_string(j + 1), os.str()));
        }
        node.add(std::move(deg));
    }
    bool eq = a.naive == a.cautious;
    node.add(eq ? ReportNode::pass("naive equals cautious", "", "naive-equals-cautious")
                : ReportNode::fail("naive equals cautious", "", "naive-equals-cautious"));
    // declared step annotations, when present, must match the computed steps
    const MinimalModel& ad = *a.adapted;
    const Analysis& ada = ad.analysis();
    for (uint32_t i = 0; i < ad.universe()->size(); ++i) {
        const Generator& g = ad.universe()->gen(i);
        if (!g.declared_step) continue;
        if (*g.declared_step != ada.adapted_gen_step[i])
            node.add(ReportNode::fail(
                "declared step " + g.name,
                "declared " + std::to_string(*g.declared_step) + ", computed " +
                    std::to_string(ada.adapted_gen_step[i])));
    }
    if (!a.adapted_is_declared)
        node.add(ReportNode::info("step-adapted basis",
                                  "declared generators straddle steps; reports use the "
                                  "adapted basis"));
    node.status = node.all_pass() ? "pass" : "fail";
    return node;
}

ReportNode classify_node(const MinimalModel& m) {
    const Analysis& a = m.analysis();
    ReportNode node = ReportNode::info("classify " + m.name());
    node.add(ReportNode::info("classification", classification_string(m)));
    node.add(ReportNode::info("nilpotency class", std::to_string(a.nilpotency_class),
                              "c-step-decomposition"));
    node.add(ReportNode::info("coformal", a.coformal ? "true" : "false",
                              "quadratic-differential"));
    node.add(ReportNode::info("simply connected", a.simply_connected ? "true" : "false"));
    node.status = "pass";
    return node;
}

ReportNode weights_node(const MinimalModel& m) {
    const Analysis& a = m.analysis();
    const MinimalModel& ad = *a.adapted;
    WeightAssignment w = weights(m);
    ReportNode node = ReportNode::info("weights " + m.name());
    node.paper_ref = "recursive-weight-of-indecomposables";
    for (uint32_t i = 0; i < ad.universe()->size(); ++i) {
        const std::string& name = ad.universe()->gen(i).name;
        node.add(ReportNode::info(name, "wt = " + std::to_string(w.weight.at(name))));
    }
    node.status = "pass";
    return node;
}

ReportNode bounds_node(const MinimalModel& m, bool conjectures) {
    ReportNode node = ReportNode::info("bounds " + m.name());
    node.add(ReportNode::info("classification", classification_string(m)));

    WeightBoundReport wb = check_weight_bounds(m);
    ReportNode wnode = ReportNode::info("weight-bounds");
    wnode.paper_ref = "degree-1-degree-2-general-simple-coformal-bounds";
    for (const BoundCheck& c : wb.checks) {
        std::ostringstream os;
        os << "wt " << c.weight << " <= " << c.bound << " (" << c.rule << "), margin "
           << c.margin;
        wnode.add(c.ok ? ReportNode::pass(c.generator, os.str())
                       : ReportNode::fail(c.generator, os.str()));
    }
    wnode.status = wb.ok ? "pass" : "fail";
    node.add(std::move(wnode));

    DeltaInjectivityReport dr = check_delta_injective(m);
    node.add(dr.ok ? ReportNode::pass("delta-injectivity", "", "delta-injectivity")
                   : ReportNode::fail("delta-injectivity",
                                      dr.violations.empty() ? "" : dr.violations[0],
                                      "delta-injectivity"));
    BlockBoundReport br = check_dnil_step_bound(m);
    node.add(br.ok ? ReportNode::pass("dnil-block-bounds",
                                      br.coformal_refinement_checked
                                          ? "with coformal refinement"
                                          : "",
                                      "dnil-block-support")
                   : ReportNode::fail("dnil-block-bounds",
                                      br.violations.empty() ? "" : br.violations[0],
                                      "dnil-block-support"));

    ExponentReport er = exponent_report(m, 2, 5);
    ReportNode enode = ReportNode::info("volume-exponents");
    enode.paper_ref = "volume-exponent-table";
    for (const ExponentRow& row : er.rows) {
        std::ostringstream os;
        os << "upper " << row.upper << " [" << row.upper_rule << "]";
        if (row.lower) os << ", lower " << *row.lower << " [" << row.lower_rule << "]";
        if (row.lower_alt)
            os << ", printed-table alternative " << *row.lower_alt << " (flagged)";
        if (row.conjecture) os << ", conjectured " << *row.conjecture << " (flagged)";
        enode.add(ReportNode::info("n = " + std::to_string(row.n), os.str()));
    }
    for (const std::string& noteText : er.notes)
        enode.add(ReportNode::info("note", noteText, "printed-table-discrepancy"));
    enode.status = "pass";
    node.add(std::move(enode));

    if (conjectures) {
        ConjectureReport cr = check_light_factor_conjecture(m);
        std::ostringstream os;
        os << cr.instances_checked << " applicable generators";
        if (!cr.holds) {
            os << "; counterexamples:";
            for (const std::string& g : cr.counterexamples) os << " " << g;
        }
        node.add(ReportNode{"light-factor-conjecture",
                            cr.holds ? "conjecture" : "info", os.str(),
                            "light-factor-conjecture", {}});
    }
    node.status = node.all_pass() ? "pass" : "fail";
    return node;
}

ReportNode homotopy_check_node(const ModelFile& mf, uint64_t seed, int samples) {
    const MinimalModel& m = *mf.model;
    ReportNode node = ReportNode::info("homotopy-check " + m.name());
    node.paper_ref = "interval-integration-identities";
    Rng rng(seed);

    int ftc_failures = 0;
    for (int i = 0; i < samples; ++i) {
        IntervalElement u(m.universe());
        // sample like the selftest does
        int pieces = static_cast<int>(rng.range(1, 3));
        for (int p = 0; p < pieces; ++p) {
            Element b(m.universe());
            int terms = static_cast<int>(rng.range(1, 3));
            for (int t = 0; t < terms; ++t) {
                std::vector<uint32_t> factors;
                int len = static_cast<int>(rng.range(1, 2));
                for (int k = 0; k < len; ++k)
                    factors.push_back(static_cast<uint32_t>(rng.below(m.universe()->size())));
                b += Element::monomial(m.universe(), factors, rng.small_rat());
            }
            int ti = static_cast<int>(rng.range(0, 3));
            u += rng.coin() ? IntervalElement::poly(b, ti) : IntervalElement::dt(b, ti);
        }
        if (!check_fundamental_theorems(m.differential(), u).ok()) ++ftc_failures;
    }
    {
        std::ostringstream os;
        os << samples << " random interval elements, " << ftc_failures << " failures";
        node.add(ftc_failures == 0 ? ReportNode::pass("fundamental-theorems", os.str())
                                   : ReportNode::fail("fundamental-theorems", os.str()));
    }

    auto B = Dga::of_model(mf.model);
    std::map<std::string, DgaMorphism> named;
    for (const NamedMorphism& nm : mf.morphisms) {
        DgaMorphism phi = DgaMorphism::total(mf.model, B, nm.images);
        auto violations = phi.chain_map_violations();
        if (violations.empty()) {
            node.add(ReportNode::pass("morphism " + nm.name, "commutes with d"));
            named.emplace(nm.name, std::move(phi));
        } else {
            std::ostringstream os;
            os << "fails to commute with d at "
               << m.universe()->gen(violations[0].first).name << ": residual "
               << violations[0].second.to_string();
            node.add(ReportNode::fail("morphism " + nm.name, os.str()));
        }
        Dilatation dil = dilatation(DgaMorphism::total(mf.model, B, nm.images));
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, nk] : dil.norm) {
            os << (first ? "" : ", ") << "deg " << k << ": " << rat_to_string(nk);
            first = false;
        }
        node.add(ReportNode::info("dilatation " + nm.name, os.str(), "dilatation-norms"));
    }
    for (const NamedHomotopy& nh : mf.homotopies) {
        auto from = named.find(nh.from);
        auto to = named.find(nh.to);
        if (from == named.end() || to == named.end()) {
            node.add(ReportNode::fail("homotopy " + nh.name,
                                      "endpoints must name declared morphisms"));
            continue;
        }
        AlgebraicHomotopy h(mf.model, m.universe()->size(), B, nh.images);
        bool ok = h.is_chain_map() && h.endpoint_at_0().same_maps(from->second) &&
                  h.endpoint_at_1().same_maps(to->second);
        node.add(ok ? ReportNode::pass("homotopy " + nh.name,
                                       "chain map with endpoints " + nh.from + ", " + nh.to)
                    : ReportNode::fail("homotopy " + nh.name,
                                       "endpoint or chain-map violation"));
    }

    // canonical self-homotopy of the identity as an end-to-end exercise
    ModelPtr ordered = tower_ordered(mf.model);
    if (ordered) {
        auto OB = Dga::of_model(ordered);
        DgaMorphism incl = DgaMorphism::inclusion(ordered, ordered->universe()->size(), OB);
        auto h = build_homotopy(incl, incl, nullptr);
        node.add(h ? ReportNode::pass("identity self-homotopy", "built and verified")
                   : ReportNode::fail("identity self-homotopy"));
    } else {
        node.add(ReportNode::info("identity self-homotopy",
                                  "skipped: no generator-level tower order exists"));
    }
    node.status = node.all_pass() ? "pass" : "fail";
    return node;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for minimal Sullivan models"};
    app.require_subcommand(1);

    GlobalOptions opt;
    opt.seed = env_seed();
    app.add_flag("--json", opt.json, "emit the structured report as JSON");
    app.add_option("--seed", opt.seed, "seed for randomized suites (env SULLIVAN_SEED)");

    std::string model_arg;
    int truncate = 0, max_k = 5, c_param = 2, samples = 200;
    bool conjectures = false;

    auto add_model_option = [&](CLI::App* cmd, bool required = true) {
        auto* o = cmd->add_option("--model", model_arg,
                                  "model file path or bundled name (s2, s3, heisenberg, "
                                  "threestep, noncoformal, random1)");
        if (required) o->required();
        cmd->add_option("--truncate", truncate, "override the working degree bound");
    };

    CLI::App* validate = app.add_subcommand("validate", "d^2, minimality, nilpotence");
    add_model_option(validate);
    CLI::App* classify = app.add_subcommand("classify", "classification flags and class");
    add_model_option(classify);
    CLI::App* filtration = app.add_subcommand("filtration", "cautious and naive towers");
    add_model_option(filtration);
    CLI::App* weights_cmd = app.add_subcommand("weights", "recursive generator weights");
    add_model_option(weights_cmd);
    CLI::App* bounds = app.add_subcommand("bounds", "weight bounds and volume exponents");
    add_model_option(bounds);
    bounds->add_flag("--check-conjectures", conjectures,
                     "also evaluate the optional light-factor conjecture");
    CLI::App* homotopy = app.add_subcommand("homotopy-check",
                                            "interval calculus and homotopy blocks");
    add_model_option(homotopy);
    homotopy->add_option("--samples", samples, "random interval elements to test");
    CLI::App* whitehead = app.add_subcommand("whitehead", "bracket class suite");
    whitehead->add_option("--max-k", max_k, "largest Whitehead degree (default 5)");
    whitehead->add_option("--c", c_param, "nilpotency class (default 2)");
    CLI::App* selftest = app.add_subcommand("selftest", "full bundled acceptance suite");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    opt.model_path = model_arg;
    opt.truncate = truncate;

    try {
        if (selftest->parsed()) return emit(selftest_report(opt.seed), opt.json);
        if (whitehead->parsed()) {
            if (max_k < 2 || c_param < 1) {
                std::cout << render_text(ReportNode{
                    "whitehead", "error", "need --max-k >= 2 and --c >= 1", "", {}});
                return kExitInputError;
            }
            // tensor expansions grow exponentially in k; keep desk scale
            if (max_k > 12 || c_param > 8) {
                std::cout << render_text(ReportNode{
                    "whitehead", "error", "parameters exceed desk scale (k <= 12, c <= 8)",
                    "", {}});
                return kExitInputError;
            }
            ReportNode node = ReportNode::info("whitehead");
            node.add(check_whitehead_suite(max_k, c_param));
            node.status = node.all_pass() ? "pass" : "fail";
            return emit(node, opt.json);
        }

        int exit_code = kExitPass;
        auto mf = load_model(opt, &exit_code, opt.json);
        if (!mf) return exit_code;
        const MinimalModel& m = *mf->model;

        if (validate->parsed()) return emit(validation_node(m), opt.json);
        if (!m.is_valid()) {
            ReportNode node = validation_node(m);
            node.add(ReportNode{"analysis", "error", "model is invalid", "", {}});
            std::cout << (opt.json ? render_json(node) : render_text(node));
            return kExitCheckFailed;
        }
        if (classify->parsed()) return emit(classify_node(m), opt.json);
        if (filtration->parsed()) return emit(filtration_node(m), opt.json);
        if (weights_cmd->parsed()) return emit(weights_node(m), opt.json);
        if (bounds->parsed()) return emit(bounds_node(m, conjectures), opt.json);
        if (homotopy->parsed())
            return emit(homotopy_check_node(*mf, opt.seed, samples), opt.json);
    } catch (const std::exception& e) {
        std::cout << render_text(ReportNode{"error", "error", e.what(), "", {}});
        return kExitInputError;
    }
    return kExitInputError;
}
