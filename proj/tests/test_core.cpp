#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sullivan/algebra.hpp"
#include "sullivan/derivation.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/rng.hpp"

using namespace sullivan;

namespace {

GenSetPtr make_universe(std::vector<Generator> gens, int maxdeg) {
    return std::make_shared<GeneratorSet>(std::move(gens), maxdeg);
}

// The sphere model used throughout: x deg 2 closed, y deg 3, dy = x^2.
struct S2 {
    GenSetPtr u = make_universe({{"x", 2, {}}, {"y", 3, {}}}, 6);
    Element x = Element::generator(u, 0);
    Element y = Element::generator(u, 1);
    Derivation d{u, {Element::zero(u), Element::monomial(u, {0, 0})}};
};

Element random_element(GenSetPtr u, Rng& rng, int max_len = 3) {
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

// Independent Leibniz route: compute d(a ∧ b) from the product rule alone.
Element leibniz_oracle(const Derivation& d, const Element& a, const Element& b) {
    auto deg = a.homogeneous_degree();
    REQUIRE(deg.has_value());
    Element left = d.apply(a).wedge(b);
    Element right = a.wedge(d.apply(b)) * rat((*deg % 2) ? -1 : 1);
    return left + right;
}

}  // namespace

TEST_CASE("wedge koszul signs on generators") {
    auto u = make_universe({{"x", 1, {}}, {"y", 1, {}}, {"u", 2, {}}, {"v", 2, {}}}, 5);
    Element x = Element::generator(u, 0), y = Element::generator(u, 1);
    Element a = Element::generator(u, 2), b = Element::generator(u, 3);

    CHECK(x.wedge(y) == -(y.wedge(x)));      // odd-odd anticommute
    CHECK(x.wedge(x).is_zero());             // odd square vanishes
    CHECK(a.wedge(b) == b.wedge(a));         // even-even commute
    CHECK(x.wedge(a) == a.wedge(x));         // odd-even commute
    CHECK_FALSE(a.wedge(a).is_zero());       // even square survives
}

TEST_CASE("wedge is associative and graded-commutative on random homogeneous elements") {
    auto u = make_universe({{"x", 1, {}}, {"y", 1, {}}, {"z", 1, {}}, {"u", 2, {}}, {"w", 3, {}}},
                           9);
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        Element a = random_element(u, rng);
        Element b = random_element(u, rng);
        Element c = random_element(u, rng);
        CHECK(a.wedge(b).wedge(c) == a.wedge(b.wedge(c)));
        for (const auto& [da, ea] : a.homogeneous_components()) {
            for (const auto& [db, eb] : b.homogeneous_components()) {
                Element lhs = ea.wedge(eb);
                Element rhs = eb.wedge(ea) * rat((da * db) % 2 ? -1 : 1);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("mixed universes are rejected") {
    auto u1 = make_universe({{"x", 1, {}}}, 3);
    auto u2 = make_universe({{"y", 1, {}}}, 3);
    Element a = Element::generator(u1, 0);
    Element b = Element::generator(u2, 0);
    CHECK_THROWS_AS(a.wedge(b), std::invalid_argument);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("derivation on the sphere model") {
    S2 s;
    CHECK(s.d.apply(s.y) == Element::monomial(s.u, {0, 0}));
    // d(x ∧ y) = x ∧ dy = x^3, sign +1 since |x| is even
    CHECK(s.d.apply(s.x.wedge(s.y)) == Element::monomial(s.u, {0, 0, 0}));
    CHECK(s.d.apply(Element::unit(s.u)).is_zero());
    CHECK(s.d.d_squared_violations().empty());
}

TEST_CASE("derivation satisfies graded Leibniz against the product-rule oracle") {
    auto u = make_universe({{"x", 1, {}}, {"y", 1, {}}, {"z", 1, {}}, {"u", 2, {}}}, 8);
    Derivation d(u, {Element::zero(u), Element::zero(u), Element::monomial(u, {0, 1}),
                     Element::zero(u)});
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        Element a = random_element(u, rng, 2);
        Element b = random_element(u, rng, 2);
        for (const auto& [da, ea] : a.homogeneous_components())
            CHECK(d.apply(ea.wedge(b)) == leibniz_oracle(d, ea, b));
        (void)b;
    }
}

TEST_CASE("derivation image degree is enforced at construction") {
    auto u = make_universe({{"x", 1, {}}, {"z", 1, {}}}, 4);
    // dz = x has degree 1, needs degree 2
    CHECK_THROWS_AS(Derivation(u, {Element::zero(u), Element::generator(u, 0)}),
                    std::invalid_argument);
}

TEST_CASE("wordlength components split and reassemble the differential") {
    auto u = make_universe({{"x", 1, {}}, {"y", 1, {}}, {"z", 1, {}}, {"w", 5, {}}, {"q", 2, {}}},
                           8);
    Element dw = Element::monomial(u, {4, 4, 4});  // q^3, degree 6
    Derivation d(u, {Element::zero(u), Element::zero(u), Element::monomial(u, {0, 1}),
                     dw, Element::zero(u)});
    CHECK(d.wordlength_component(1).image(2) == Element::monomial(u, {0, 1}));
    CHECK(d.wordlength_component(2).image(2).is_zero());
    CHECK(d.wordlength_component(2).image(3) == dw);
    CHECK(d.wordlength_component(1).image(3).is_zero());
    // sum of components equals d on every generator
    for (uint32_t g = 0; g < u->size(); ++g) {
        Element sum = Element::zero(u);
        for (int k = 1; k <= d.max_wordlength_component(); ++k)
            sum += d.wordlength_component(k).image(g);
        CHECK(sum == d.image(g));
    }
}

TEST_CASE("rref gives canonical bases and kernels check out by substitution") {
    Rng rng(5150);
    for (int trial = 0; trial < 120; ++trial) {
        size_t rows = static_cast<size_t>(rng.range(1, 5));
        size_t cols = static_cast<size_t>(rng.range(1, 6));
        QMat m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                if (rng.coin(2, 3)) m.at(i, j) = rng.small_rat(4, 3);
        RrefResult rr = rref(m);
        CHECK(rr.rank == rr.reduced.rows());
        // pivots are leading ones with cleared columns
        for (size_t i = 0; i < rr.rank; ++i) {
            CHECK(rr.reduced.at(i, rr.pivots[i]) == rat(1));
            for (size_t k = 0; k < rr.rank; ++k)
                if (k != i) CHECK(is_zero(rr.reduced.at(k, rr.pivots[i])));
        }
        // every original row is in the row span of the reduced matrix
        Subspace rowspan = Subspace::span(cols, [&] {
            std::vector<QVec> v;
            for (size_t i = 0; i < rr.reduced.rows(); ++i) v.push_back(rr.reduced.row(i));
            return v;
        }());
        for (size_t i = 0; i < rows; ++i) CHECK(rowspan.contains(m.row(i)));
        // kernel vectors satisfy M x = 0
        for (const QVec& x : kernel_basis(m)) {
            for (size_t i = 0; i < rows; ++i) {
                Rat s(0);
                for (size_t j = 0; j < cols; ++j) s += m.at(i, j) * x[j];
                CHECK(is_zero(s));
            }
        }
        // rank-nullity
        CHECK(kernel_basis(m).size() + rr.rank == cols);
    }
}

TEST_CASE("solve returns a particular solution exactly when consistent") {
    QMat m(2, 3);
    m.at(0, 0) = rat(1); m.at(0, 1) = rat(2); m.at(0, 2) = rat(-1);
    m.at(1, 0) = rat(2); m.at(1, 1) = rat(4); m.at(1, 2) = rat(-2);
    CHECK(solve(m, {rat(3), rat(6)}).has_value());
    CHECK_FALSE(solve(m, {rat(3), rat(7)}).has_value());
    auto x = solve(m, {rat(3), rat(6)});
    Rat s0 = (*x)[0] + 2 * (*x)[1] - (*x)[2];
    CHECK(s0 == rat(3));
}

TEST_CASE("subspace lattice identities") {
    Rng rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        size_t ambient = static_cast<size_t>(rng.range(2, 6));
        auto random_space = [&] {
            std::vector<QVec> v;
            size_t k = static_cast<size_t>(rng.range(0, 3));
            for (size_t i = 0; i < k; ++i) {
                QVec x(ambient, Rat(0));
                for (size_t j = 0; j < ambient; ++j)
                    if (rng.coin()) x[j] = rng.small_rat();
                v.push_back(std::move(x));
            }
            return Subspace::span(ambient, v);
        };
        Subspace a = random_space(), b = random_space();
        Subspace meet = a.intersect(b), join = a.sum(b);
        CHECK(a.contains(meet));
        CHECK(b.contains(meet));
        CHECK(join.contains(a));
        CHECK(join.contains(b));
        CHECK(join.dim() == a.dim() + b.dim() - meet.dim());
        // complement of b inside a: contained in a, orthogonal to b, and
        // together with (a ∩ b) spans a when b ⊆ a
        Subspace comp = a.complement_within(b);
        CHECK(a.contains(comp));
        for (size_t i = 0; i < comp.dim(); ++i)
            for (size_t j = 0; j < b.dim(); ++j)
                CHECK(is_zero(dot(comp.basis().row(i), b.basis().row(j))));
        Subspace inner = a.intersect(b);
        CHECK(inner.sum(a.complement_within(inner)) == a);
    }
}

TEST_CASE("preimage matches brute-force enumeration on a rational grid") {
    // Heisenberg-flavoured universe: x,y,z degree 1 with dz = x∧y
    auto u = make_universe({{"x", 1, {}}, {"y", 1, {}}, {"z", 1, {}}}, 4);
    Derivation d(u, {Element::zero(u), Element::zero(u), Element::monomial(u, {0, 1})});
    MonomialBasis deg2(u, 2);

    SUBCASE("kernel of d in degree 1") {
        Subspace zero_target(deg2.size());
        Subspace pre = preimage(d, 1, zero_target, deg2);
        CHECK(pre.dim() == 2);  // span{x, y}
        // brute force over the grid {-1,0,1}^3
        std::vector<QVec> hits;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c) {
                    QVec v{rat(a), rat(b), rat(c)};
                    Element e = element_from_slot(u, u->degree_slot(1), v);
                    if (d.apply(e).is_zero()) hits.push_back(v);
                }
        Subspace brute = Subspace::span(3, hits);
        CHECK(pre == brute);
    }

    SUBCASE("full target gives the whole slot") {
        Subspace pre = preimage(d, 1, Subspace::full(deg2.size()), deg2);
        CHECK(pre == Subspace::full(3));
    }

    SUBCASE("span{x∧y} target recovers everything") {
        Subspace target = Subspace::span(deg2.size(),
                                         {deg2.coordinates(Element::monomial(u, {0, 1}))});
        Subspace pre = preimage(d, 1, target, deg2);
        CHECK(pre == Subspace::full(3));
        // independent grid check: d(v) ∈ target for every grid vector
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c) {
                    QVec v{rat(a), rat(b), rat(c)};
                    Element e = element_from_slot(u, u->degree_slot(1), v);
                    CHECK(target.contains(deg2.coordinates(d.apply(e))));
                }
    }
}

TEST_CASE("preimage against brute force on random derivations") {
    Rng rng(917);
    for (int trial = 0; trial < 40; ++trial) {
        auto u = make_universe(
            {{"a", 1, {}}, {"b", 1, {}}, {"c", 1, {}}, {"e", 1, {}}}, 4);
        // random closed-image derivation on the last two generators
        Element img1 = Element::monomial(u, {0, 1}, rng.small_rat());
        Element img2 = Element::monomial(u, {0, 1}, rng.small_rat()) +
                       Element::monomial(u, {0, 2}, rng.small_rat());
        Derivation d(u, {Element::zero(u), Element::zero(u), img1, img2});
        if (!d.d_squared_violations().empty()) continue;
        MonomialBasis deg2(u, 2);
        // random target subspace spanned by one or two monomials
        std::vector<QVec> tv;
        tv.push_back(deg2.coordinates(Element::monomial(u, {0, 1})));
        if (rng.coin()) tv.push_back(deg2.coordinates(Element::monomial(u, {1, 2})));
        Subspace target = Subspace::span(deg2.size(), tv);

        Subspace pre = preimage(d, 1, target, deg2);
        std::vector<QVec> hits;
        auto slot = u->degree_slot(1);
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c)
                    for (int e = -1; e <= 1; ++e) {
                        QVec v{rat(a), rat(b), rat(c), rat(e)};
                        Element el = element_from_slot(u, slot, v);
                        Element dv = d.apply(el);
                        if (dv.is_zero() || target.contains(deg2.coordinates(dv)))
                            hits.push_back(v);
                    }
        CHECK(pre == Subspace::span(4, hits));
    }
}

TEST_CASE("preimage brute force on a six-dimensional degree slot") {
    auto u = make_universe({{"a", 1, {}}, {"b", 1, {}}, {"c", 1, {}},
                            {"e", 1, {}}, {"f", 1, {}}, {"g", 1, {}}}, 3);
    // two relations into the closed quadratic span
    Derivation d(u, {Element::zero(u), Element::zero(u), Element::zero(u),
                     Element::monomial(u, {0, 1}),
                     Element::monomial(u, {0, 2}) + Element::monomial(u, {1, 2}, rat(1, 2)),
                     Element::zero(u)});
    REQUIRE(d.d_squared_violations().empty());
    MonomialBasis deg2(u, 2);
    Subspace target = Subspace::span(
        deg2.size(), {deg2.coordinates(Element::monomial(u, {0, 1})),
                      deg2.coordinates(Element::monomial(u, {0, 2}))});
    Subspace pre = preimage(d, 1, target, deg2);
    // exhaustive check over the rational grid {-1,0,1}^6
    auto slot = u->degree_slot(1);
    std::vector<QVec> hits;
    for (int mask = 0; mask < 729; ++mask) {
        int digits = mask;
        QVec v(6);
        for (int i = 0; i < 6; ++i) {
            v[static_cast<size_t>(i)] = rat(digits % 3 - 1);
            digits /= 3;
        }
        Element el = element_from_slot(u, slot, v);
        Element dv = d.apply(el);
        if (dv.is_zero() || target.contains(deg2.coordinates(dv))) hits.push_back(v);
    }
    CHECK(pre == Subspace::span(6, hits));
}
