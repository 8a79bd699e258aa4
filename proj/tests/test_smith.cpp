#include <catch2/catch_amalgamated.hpp>

#include "cartan/parse.hpp"
#include "cartan/sampling.hpp"
#include "cartan/smith.hpp"
#include "cartan/verify.hpp"

using namespace cartan;

// frozen by hand from the minor valuations: 1x1 minors reach valuation 0,
// the determinant is -t with valuation 1, so the elementary divisors are
// t^1 >= t^0
TEST_CASE("pinned reduction of a rank one perturbation") {
    std::uint32_t p = 5;
    GroupTag tag(Family::GL, 2, p);
    RationalMat g = parse_matrix("1, 1; t, 0", p);
    CartanDecomposition dec = snf_decompose(g, tag);
    REQUIRE(dec.lambda.d == std::vector<long long>{1, 0});
    REQUIRE(reconstruct(dec) == g);
    REQUIRE(verify_decomposition(g, dec, tag).ok());
    REQUIRE(divisor_invariant(g) == std::vector<long long>{1, 0});
}

// minors: best 1x1 valuation 0 (the off-diagonal 1), determinant t^2, so
// d = (2, 0); the naive diagonal reading (1, 1) would be wrong
TEST_CASE("pinned reduction of a jordan style block") {
    std::uint32_t p = 2;
    GroupTag tag(Family::GL, 2, p);
    RationalMat g = parse_matrix("t, 1; 0, t", p);
    CartanDecomposition dec = snf_decompose(g, tag);
    REQUIRE(dec.lambda.d == std::vector<long long>{2, 0});
    REQUIRE(divisor_invariant(g) == std::vector<long long>{2, 0});
    REQUIRE(verify_decomposition(g, dec, tag).ok());
}

TEST_CASE("diagonal inputs with units come back sorted") {
    std::uint32_t p = 3;
    GroupTag tag(Family::GL, 3, p);
    RationalMat g = parse_matrix("2t, 0, 0; 0, t^-2, 0; 0, 0, (1+t)", p);
    CartanDecomposition dec = snf_decompose(g, tag);
    REQUIRE(dec.lambda.d == std::vector<long long>{1, 0, -2});
    REQUIRE(verify_decomposition(g, dec, tag).ok());
}

TEST_CASE("reduction refuses singular matrices") {
    std::uint32_t p = 5;
    GroupTag tag(Family::GL, 2, p);
    REQUIRE_THROWS_AS(snf_decompose(parse_matrix("1, 1; 1, 1", p), tag), DomainError);
    REQUIRE_THROWS_AS(divisor_invariant(parse_matrix("t, t; t, t", p)), DomainError);
}

TEST_CASE("special linear reduction keeps both factors unimodular") {
    std::uint32_t p = 3;
    GroupTag tag(Family::SL, 2, p);
    RationalMat g = parse_matrix("t, 0; 0, (1)/(t)", p);
    CartanDecomposition dec = snf_decompose(g, tag);
    REQUIRE(dec.lambda.d == std::vector<long long>{1, -1});
    REQUIRE(det(dec.h1) == RationalFn::one(p));
    REQUIRE(det(dec.h2) == RationalFn::one(p));
    REQUIRE(verify_decomposition(g, dec, tag).ok());
    REQUIRE_THROWS_AS(snf_decompose(parse_matrix("t, 0; 0, t", p), tag), DomainError);

    Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        RationalMat s = random_sl_k(rng, 3, p, 3);
        GroupTag t3(Family::SL, 3, p);
        CartanDecomposition d3 = snf_decompose(s, t3);
        REQUIRE(d3.lambda.sum() == 0);
        REQUIRE(det(d3.h1) == RationalFn::one(p));
        REQUIRE(verify_decomposition(s, d3, t3).ok());
    }
}

TEST_CASE("computed weights agree with the minor valuation oracle") {
    Rng rng(7);
    for (int i = 0; i < 150; ++i) {
        std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng.below(3)];
        std::size_t n = 2 + rng.below(3);
        GroupTag tag(Family::GL, static_cast<std::uint32_t>(n), p);
        RationalMat g = random_gl_k(rng, n, p, 3);
        CartanDecomposition dec = snf_decompose(g, tag);
        REQUIRE(dec.lambda.d == divisor_invariant(g));
        REQUIRE(verify_decomposition(g, dec, tag).ok());
    }
}

TEST_CASE("weights are constant on double cosets") {
    Rng rng(13);
    for (int i = 0; i < 80; ++i) {
        std::uint32_t p = std::vector<std::uint32_t>{2, 5}[rng.below(2)];
        std::size_t n = 2 + rng.below(2);
        RationalMat g = random_gl_k(rng, n, p, 3);
        RationalMat a = random_gl_r(rng, n, p, 2, 6), b = random_gl_r(rng, n, p, 2, 6);
        REQUIRE(divisor_invariant(a * g * b) == divisor_invariant(g));
        REQUIRE(double_coset_equal(a * g * b, g, GroupTag(Family::GL, static_cast<std::uint32_t>(n), p)));
    }
    // and distinct weights are told apart
    std::uint32_t p = 5;
    REQUIRE(!double_coset_equal(parse_matrix("t, 0; 0, 1", p), parse_matrix("t^2, 0; 0, 1", p),
                                GroupTag(Family::GL, 2, p)));
}

TEST_CASE("truncated reduction matches the exact one at sufficient precision") {
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        std::uint32_t p = std::vector<std::uint32_t>{2, 3}[rng.below(2)];
        GroupTag tag(Family::GL, 3, p);
        RationalMat g = random_gl_k(rng, 3, p, 2);
        CartanDecomposition exact = snf_decompose(g, tag);

        long long spread = exact.lambda.d.front() - exact.lambda.d.back();
        long long N = 2 * spread + 8;
        SeriesMat ghat = expand_mat(g, N);
        CartanDecompositionHat hat = snf_decompose(ghat, tag);
        REQUIRE(hat.lambda.d == exact.lambda.d);
        REQUIRE(verify_decomposition(ghat, hat, tag).ok());
    }
}

TEST_CASE("an uncertifiable window raises a precision error with a demand") {
    std::uint32_t p = 2;
    GroupTag tag(Family::GL, 2, p);
    SeriesMat blind(2, TruncatedSeries::zero_at(p, 1));
    try {
        snf_decompose(blind, tag);
        FAIL("expected a precision error");
    } catch (const PrecisionError& e) {
        REQUIRE(e.required >= 1);
    }

    // a pivot candidate below a flagged zero's precision is also refused
    SeriesMat half(2, TruncatedSeries::zero_at(p, 1));
    half.at(0, 0) = expand(parse_coeff("t^3", p), 6);
    half.at(1, 1) = expand(parse_coeff("1", p), 6);
    REQUIRE_THROWS_AS(snf_decompose(half, tag), PrecisionError);
}

TEST_CASE("torus entries must stay resolvable") {
    std::uint32_t p = 3;
    GroupTag tag(Family::GL, 2, p);
    REQUIRE_THROWS_AS(normalize_torus_element({RationalFn::zero(p), RationalFn::one(p)}, tag),
                      DomainError);
    std::vector<TruncatedSeries> diag{TruncatedSeries::zero_at(p, 4),
                                      expand(RationalFn::one(p), 4)};
    REQUIRE_THROWS_AS(normalize_torus_element(diag, tag), PrecisionError);
}
