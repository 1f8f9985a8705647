#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sullivan/lie.hpp"

using namespace sullivan;

namespace {

LieElement random_lie(const MappingTorus& torus, Rng& rng, int depth) {
    if (depth == 0 || rng.coin(1, 3)) {
        uint32_t idx = static_cast<uint32_t>(rng.below(torus.universe->size()));
        return LieElement::generator(torus.universe, idx);
    }
    return bracket(random_lie(torus, rng, depth - 1), random_lie(torus, rng, depth - 1));
}

}  // namespace

TEST_CASE("bracket signs on degree-1 generators") {
    MappingTorus torus = mapping_torus(2);
    LieElement a1 = torus.alpha(1), b1 = torus.beta(1);

    // [a1, b1] = a1.b1 + b1.a1 for odd-odd
    LieElement br = bracket(a1, b1);
    REQUIRE(br.words().size() == 2);
    for (const auto& [w, c] : br.words()) CHECK(c == rat(1));

    // odd self-bracket is 2 x.x, not zero
    LieElement self = bracket(a1, a1);
    REQUIRE(self.words().size() == 1);
    CHECK(self.words().begin()->second == rat(2));

    // graded antisymmetry: [x,y] + (-1)^{|x||y|}[y,x] = 0
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        LieElement x = random_lie(torus, rng, 2);
        LieElement y = random_lie(torus, rng, 2);
        if (x.is_zero() || y.is_zero()) continue;
        auto dx = x.homogeneous_degree(), dy = y.homogeneous_degree();
        REQUIRE(dx.has_value());
        REQUIRE(dy.has_value());
        int sign = (*dx * *dy) % 2 ? -1 : 1;  // (-1)^{|x||y|}
        LieElement lhs = bracket(x, y) + bracket(y, x) * rat(sign);
        CHECK(lhs.is_zero());
    }
}

TEST_CASE("graded jacobi identity holds in the tensor embedding") {
    MappingTorus torus = mapping_torus(3);
    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        LieElement x = random_lie(torus, rng, 1);
        LieElement y = random_lie(torus, rng, 1);
        LieElement z = random_lie(torus, rng, 1);
        if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
        auto dx = x.homogeneous_degree(), dy = y.homogeneous_degree();
        REQUIRE(dx.has_value());
        REQUIRE(dy.has_value());
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
        int sign = (*dx * *dy) % 2 ? -1 : 1;
        LieElement lhs = bracket(x, bracket(y, z));
        LieElement rhs = bracket(bracket(x, y), z) + bracket(y, bracket(x, z)) * rat(sign);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("torus action: tower, top annihilation, derivation rule") {
    MappingTorus torus = mapping_torus(3);
    CHECK(torus.action.apply(torus.alpha(1)) == torus.alpha(2));
    CHECK(torus.action.apply(torus.alpha(2)) == torus.alpha(3));
    CHECK(torus.action.apply(torus.alpha(3)).is_zero());
    CHECK(torus.action.apply(torus.beta(3)).is_zero());
    // D[a1, b1] = [a2, b1] + [a1, b2]
    LieElement lhs = torus.action.apply(bracket(torus.alpha(1), torus.beta(1)));
    LieElement rhs =
        bracket(torus.alpha(2), torus.beta(1)) + bracket(torus.alpha(1), torus.beta(2));
    CHECK(lhs == rhs);
    // action matrix is lower bidiagonal with unit entries
    auto m = torus.action_matrix();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(m[i][j] == ((i == j || i == j + 1) ? 1 : 0));
}

TEST_CASE("zeta recursion base cases and hand-unrolled values") {
    {
        MappingTorus torus = mapping_torus(2);
        CHECK(zeta(torus, 2, 1) == torus.beta(1));
        CHECK(zeta(torus, 2, 2) == torus.beta(2));  // c-1 applications of D
        // z(3,2) = [a2, b2] after the recursion unrolls
        CHECK(zeta(torus, 3, 2) == bracket(torus.alpha(2), torus.beta(2)));
    }
    {
        MappingTorus torus = mapping_torus(1);
        CHECK(zeta(torus, 2, 1) == torus.beta(1));
        CHECK(zeta(torus, 3, 1) == bracket(torus.alpha(1), torus.beta(1)));
    }
}

TEST_CASE("whitehead degree of zeta(k,j) is k") {
    for (int c = 1; c <= 3; ++c) {
        MappingTorus torus = mapping_torus(c);
        for (int k = 2; k <= 5; ++k) {
            for (int j = 1; j <= c; ++j) {
                auto deg = zeta(torus, k, j).homogeneous_degree();
                REQUIRE(deg.has_value());
                CHECK(*deg == k - 1);  // Samelson degree
            }
        }
    }
}

TEST_CASE("jacobi lemma suite passes for desk-scale parameters") {
    for (int c = 1; c <= 3; ++c) {
        LieCheckReport rep = verify_jacobi_lemmas(6, c);
        CHECK(rep.ok);
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("nonvanishing: direct expansion and retraction route") {
    for (int c = 1; c <= 3; ++c) {
        LieCheckReport rep = verify_nonvanishing(6, c);
        CHECK(rep.ok);
    }
    // witness word: zeta(3,2) at c=2 contains a2.b2 with nonzero coefficient
    MappingTorus torus = mapping_torus(2);
    LieElement z32 = zeta(torus, 3, 2);
    bool found = false;
    for (const auto& [w, coeff] : z32.words())
        if (w == std::vector<uint32_t>{1, 3}) found = !is_zero(coeff);
    CHECK(found);
}

TEST_CASE("scaling weights match (c+1)(k-1) and the generator weights") {
    for (int c = 1; c <= 3; ++c) {
        LieCheckReport rep = verify_scaling_weights(6, c);
        CHECK(rep.ok);
    }
    MappingTorus torus = mapping_torus(3);
    CHECK(*torus.alpha(2).scaling_weight() == 3);     // L^{j+1} at j = 2
    CHECK(*torus.beta(3).scaling_weight() == 4);
    CHECK(*zeta(torus, 2, 3).scaling_weight() == 4);  // beta_c: c + 1
    CHECK(*zeta(torus, 3, 3).scaling_weight() == 8);  // 2(c+1)
    // inhomogeneous elements report a census instead of a single weight
    LieElement mixed = torus.alpha(1) + torus.alpha(2);
    CHECK_FALSE(mixed.scaling_weight().has_value());
    CHECK(mixed.scale_weight_census().size() == 2);
}

TEST_CASE("zeta out-of-range parameters are rejected") {
    MappingTorus torus = mapping_torus(2);
    CHECK_THROWS_AS(zeta(torus, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(zeta(torus, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(zeta(torus, 3, 3), std::invalid_argument);
}
