#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sullivan/corpus.hpp"

using namespace sullivan;

namespace {

ModelFile must_parse(const std::string& text) {
    ParseResult r = parse_model(text);
    auto* errs = std::get_if<std::vector<ParseError>>(&r);
    if (errs) {
        for (const auto& e : *errs) MESSAGE("line ", e.line, ": ", e.message);
        REQUIRE(errs == nullptr);
    }
    return std::get<ModelFile>(std::move(r));
}

std::vector<ParseError> must_fail(const std::string& text) {
    ParseResult r = parse_model(text);
    auto* errs = std::get_if<std::vector<ParseError>>(&r);
    REQUIRE(errs != nullptr);
    return *errs;
}

}  // namespace

TEST_CASE("s2 and heisenberg files parse to the expected models") {
    ModelFile s2 = must_parse("model s2 maxdeg 4\ngen x deg 2\ngen y deg 3\nd y = x^2\n");
    CHECK(s2.model->is_valid());
    CHECK(s2.model->simply_connected());
    CHECK(s2.model->universe()->size() == 2);

    ModelFile h = must_parse(
        "model h maxdeg 3\ngen x deg 1\ngen y deg 1\ngen z deg 1\nd z = x*y\n");
    CHECK(h.model->is_valid());
    CHECK(h.model->nilpotency_class() == 2);
}

TEST_CASE("rationals, exponents, signs, comments") {
    ModelFile f = must_parse(
        "# comment\n"
        "model m maxdeg 5  # trailing comment\n"
        "gen a deg 1\n"
        "gen b deg 1\n"
        "gen c deg 1\n"
        "gen w deg 1\n"
        "d w = 1/2*a*b - 3*a*c + b*c\n");
    const Element& dw = f.model->differential().image(3);
    CHECK(dw.term_count() == 3);
    auto u = f.model->universe();
    Element expected = Element::monomial(u, {0, 1}, rat(1, 2)) +
                       Element::monomial(u, {0, 2}, rat(-3)) + Element::monomial(u, {1, 2});
    CHECK(dw == expected);
}

TEST_CASE("semantic errors carry line numbers") {
    SUBCASE("word length 1 violates minimality") {
        auto errs = must_fail("model m maxdeg 2\ngen x deg 1\ngen z deg 1\nd z = x\n");
        REQUIRE(errs.size() == 1);
        CHECK(errs[0].line == 4);
        CHECK(errs[0].message.find("minimality") != std::string::npos);
    }
    SUBCASE("unknown generator") {
        auto errs = must_fail("model m maxdeg 2\ngen x deg 1\nd x = q*x\n");
        CHECK(errs[0].line == 3);
        CHECK(errs[0].message.find("unknown generator") != std::string::npos);
    }
    SUBCASE("degree mismatch") {
        auto errs = must_fail(
            "model m maxdeg 3\ngen x deg 1\ngen y deg 2\ngen z deg 1\nd z = x*y\n");
        CHECK(errs[0].line == 5);
        CHECK(errs[0].message.find("degree mismatch") != std::string::npos);
    }
    SUBCASE("duplicate generator") {
        auto errs = must_fail("model m maxdeg 2\ngen x deg 1\ngen x deg 1\n");
        CHECK(errs[0].line == 3);
        CHECK(errs[0].message.find("duplicate") != std::string::npos);
    }
    SUBCASE("reserved names") {
        auto errs = must_fail("model m maxdeg 2\ngen t deg 1\n");
        CHECK(errs[0].message.find("reserved") != std::string::npos);
    }
}

TEST_CASE("print-parse round trip is the identity on bundled models") {
    for (const BundledFile& f : bundled_models()) {
        ModelFile parsed = load_bundled(f.name);
        std::string printed = print_model(*parsed.model);
        ModelFile reparsed = must_parse(printed);
        CHECK(reparsed.model->name() == parsed.model->name());
        REQUIRE(reparsed.model->universe()->same_universe(*parsed.model->universe()));
        for (uint32_t i = 0; i < parsed.model->universe()->size(); ++i) {
            Element a = parsed.model->differential().image(i);
            Element b(parsed.model->universe());
            for (const auto& [mono, c] : reparsed.model->differential().image(i).terms())
                b.add_term(mono, c);
            CHECK(a == b);
        }
        // printing again is a fixed point
        CHECK(print_model(*reparsed.model) == printed);
    }
}

TEST_CASE("bundled corpus: all six models valid, fixtures fail as declared") {
    int count = 0;
    for (const BundledFile& f : bundled_models()) {
        ModelFile mf = load_bundled(f.name);
        CHECK(mf.model->is_valid());
        ++count;
    }
    CHECK(count == 6);

    for (const FailureFixture& fx : failure_fixtures()) {
        ParseResult r = parse_model(fx.file.source);
        if (fx.expected_check == "parse") {
            CHECK(std::get_if<std::vector<ParseError>>(&r) != nullptr);
        } else {
            auto* mf = std::get_if<ModelFile>(&r);
            REQUIRE(mf != nullptr);
            const ValidationReport& v = mf->model->validate();
            CHECK_FALSE(v.ok());
            bool found = false;
            for (const ValidationIssue& issue : v.issues)
                if (issue.check == fx.expected_check) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("recipe files materialize deterministically") {
    std::string recipe = "sample r maxdeg 3 seed 7 maxgens 3\n";
    ModelFile a = must_parse(recipe);
    ModelFile b = must_parse(recipe);
    CHECK(a.from_recipe);
    CHECK(print_model(*a.model) == print_model(*b.model));
    CHECK(a.model->is_valid());
}

TEST_CASE("morphism and homotopy blocks parse and verify") {
    ModelFile f = must_parse(
        "model m maxdeg 4\n"
        "gen z deg 2\n"
        "morphism phi\n"
        "m z = z\n"
        "morphism psi\n"
        "m z = 2*z\n"
        "homotopy H from phi to psi\n"
        "h z = z + z*t\n");
    REQUIRE(f.morphisms.size() == 2);
    REQUIRE(f.homotopies.size() == 1);
    CHECK(f.morphisms[0].name == "phi");
    CHECK(f.homotopies[0].from == "phi");
    CHECK(f.homotopies[0].to == "psi");
    // the homotopy image z + z t has endpoints z and 2z
    const IntervalElement& hz = f.homotopies[0].images[0];
    CHECK(hz.restrict_at_0() == f.morphisms[0].images[0]);
    CHECK(hz.restrict_at_1() == f.morphisms[1].images[0]);
}

TEST_CASE("interval expressions with dt") {
    ModelFile f = must_parse(
        "model m maxdeg 4\n"
        "gen z deg 2\n"
        "homotopy H from a to b\n"
        "h z = 1/2*z*t^2 + z*t*dt - z*dt\n");
    const IntervalElement& hz = f.homotopies[0].images[0];
    REQUIRE(hz.poly_part().count(2) == 1);
    REQUIRE(hz.dt_part().count(1) == 1);
    REQUIRE(hz.dt_part().count(0) == 1);
}

#ifdef SULLIVAN_MODELS_DIR
#include <fstream>
#include <sstream>
TEST_CASE("models directory matches the embedded corpus byte for byte") {
    auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        REQUIRE(in.good());
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const std::string dir = SULLIVAN_MODELS_DIR;
    for (const BundledFile& f : bundled_models())
        CHECK(slurp(dir + "/" + f.filename) == f.source);
    for (const FailureFixture& fx : failure_fixtures())
        CHECK(slurp(dir + "/fixtures/" + fx.file.filename) == fx.file.source);
}
#endif

TEST_CASE("explicit zero differential parses as closed") {
    ModelFile f = must_parse("model m maxdeg 2\ngen x deg 1\nd x = 0\n");
    CHECK(f.model->differential().image(0).is_zero());
    CHECK(f.model->is_valid());
}
