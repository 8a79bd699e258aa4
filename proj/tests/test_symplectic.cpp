#include <catch2/catch_amalgamated.hpp>

#include "cartan/parse.hpp"
#include "cartan/sampling.hpp"
#include "cartan/verify.hpp"

using namespace cartan;

TEST_CASE("generators preserve the symplectic form") {
    std::uint32_t p = 5;
    GroupTag tag(Family::SP, 2, p);
    RationalFn c = parse_coeff("2 + t^2", p);
    for (const RationalMat& m :
         {sp_block_elem(2, p, 0, 1, c), sp_sym_upper(2, p, 0, 0, c), sp_sym_upper(2, p, 0, 1, c),
          sp_sym_lower(2, p, 1, 1, c), sp_pair_swap(2, p, 0, 1), sp_flip(2, p, 0),
          sp_unit_diag(2, p, {parse_coeff("1+t", p), parse_coeff("3", p)})}) {
        REQUIRE(is_member(m, tag, Ring::R).ok);
        REQUIRE(m.transpose() * symplectic_form(2, p) * m == symplectic_form(2, p));
    }
    REQUIRE(sp_flip(2, p, 1) * sp_flip_inv(2, p, 1) == identity_rational(4, p));
}

TEST_CASE("symplectic groups need an odd characteristic") {
    REQUIRE_THROWS_AS(GroupTag(Family::SP, 2, 2), DomainError);
}

TEST_CASE("symplectic reduction recovers planted weights") {
    Rng rng(101);
    for (int i = 0; i < 60; ++i) {
        std::uint32_t p = std::vector<std::uint32_t>{3, 5}[rng.below(2)];
        GroupTag tag(Family::SP, 2, p);
        Cocharacter lam = random_dominant(rng, tag, 3);
        RationalMat h1 = random_sp_r(rng, 2, p, 2, 6);
        RationalMat h2 = random_sp_r(rng, 2, p, 2, 6);
        RationalMat g = h1 * lam.realize() * h2;

        CartanDecomposition dec = sp_decompose(g, tag);
        REQUIRE(dec.lambda.d == lam.d);
        REQUIRE(reconstruct(dec) == g);
        REQUIRE(is_member(dec.h1, tag, Ring::R).ok);
        REQUIRE(is_member(dec.h2, tag, Ring::R).ok);
        REQUIRE(verify_decomposition(g, dec, tag).ok());
        REQUIRE(sp_divisor_check(g, tag) == lam.d);
    }
}

TEST_CASE("rank three symplectic reduction") {
    Rng rng(55);
    std::uint32_t p = 3;
    GroupTag tag(Family::SP, 3, p);
    for (int i = 0; i < 15; ++i) {
        Cocharacter lam = random_dominant(rng, tag, 2);
        RationalMat g = random_sp_r(rng, 3, p, 1, 5) * lam.realize() * random_sp_r(rng, 3, p, 1, 5);
        CartanDecomposition dec = sp_decompose(g, tag);
        REQUIRE(dec.lambda.d == lam.d);
        REQUIRE(verify_decomposition(g, dec, tag).ok());
    }
}

TEST_CASE("symplectic weights pair off against the ambient invariant") {
    Rng rng(202);
    std::uint32_t p = 5;
    GroupTag tag(Family::SP, 2, p);
    for (int i = 0; i < 30; ++i) {
        RationalMat g = random_sp_k(rng, tag, 2, 2, 5);
        std::vector<long long> d = sp_divisor_check(g, tag);
        std::vector<long long> full = divisor_invariant(g);
        for (std::size_t k = 0; k < 2; ++k) {
            REQUIRE(full[k] == d[k]);
            REQUIRE(full[4 - 1 - k] == -d[k]);
        }
    }
}

TEST_CASE("symplectic reduction rejects non symplectic input") {
    std::uint32_t p = 3;
    GroupTag tag(Family::SP, 1, p);
    REQUIRE_THROWS_AS(sp_decompose(parse_matrix("1, 0; 0, 2", p), tag), DomainError);
    REQUIRE_THROWS_AS(sp_divisor_check(parse_matrix("t, 0; 0, t", p), tag), DomainError);
}

TEST_CASE("the general reduction refuses symplectic tags") {
    std::uint32_t p = 3;
    GroupTag tag(Family::SP, 1, p);
    RationalMat g = parse_matrix("t, 0; 0, (1)/(t)", p);
    REQUIRE_THROWS_AS(snf_decompose(g, tag), DomainError);
    REQUIRE(sp_decompose(g, tag).lambda.d == std::vector<long long>{1});
}

TEST_CASE("dominant normalization by signed moves") {
    std::uint32_t p = 5;
    GroupTag sp(Family::SP, 2, p);
    Cocharacter lam(sp, {-1, 3});
    DominantNormalization dn = dominant_normalize(lam);
    REQUIRE(dn.lambda.d == std::vector<long long>{3, 1});
    REQUIRE(dn.lambda.is_dominant());
    REQUIRE(is_member(dn.w1, sp, Ring::R).ok);
    REQUIRE(is_member(dn.w2, sp, Ring::R).ok);
    REQUIRE(lam.realize() == dn.w1 * dn.lambda.realize() * dn.w2);

    GroupTag sl(Family::SL, 3, p);
    Cocharacter mu(sl, {-2, 3, -1});
    DominantNormalization dm = dominant_normalize(mu);
    REQUIRE(dm.lambda.d == std::vector<long long>{3, -1, -2});
    REQUIRE(det(dm.w1) == RationalFn::one(p));
    REQUIRE(mu.realize() == dm.w1 * dm.lambda.realize() * dm.w2);
}
