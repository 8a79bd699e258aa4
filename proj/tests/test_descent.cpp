#include <catch2/catch_amalgamated.hpp>

#include "cartan/descent.hpp"
#include "cartan/parse.hpp"
#include "cartan/sampling.hpp"
#include "cartan/verify.hpp"

using namespace cartan;

TEST_CASE("parabolic data sorts weights and groups blocks") {
    std::uint32_t p = 5;
    Cocharacter lam(GroupTag(Family::GL, 4, p), {0, 2, 0, -1});
    ParabolicData pd = ParabolicData::build(lam);
    REQUIRE(pd.sorted == std::vector<std::size_t>{1, 0, 2, 3});
    REQUIRE(pd.blocks.size() == 3);
    REQUIRE(pd.weight_spread() == 3);
    REQUIRE(pd.in_negative_unipotent(0, 1));  // weight 0 < weight 2
    REQUIRE(!pd.in_negative_unipotent(1, 0));
    REQUIRE(!pd.in_negative_unipotent(0, 2)); // equal weights sit in the parabolic
}

TEST_CASE("residues in the open cell factor with identity weyl part") {
    std::uint32_t p = 5;
    Cocharacter lam(GroupTag(Family::GL, 2, p), {1, 0});
    ParabolicData pd = ParabolicData::build(lam);

    FpMat a = residue_mat(parse_matrix("1, 0; 1, 1", p));
    BruhatResidue br = bruhat_residue(a, pd);
    REQUIRE(br.w == identity_rational(2, p));
    REQUIRE(br.pbar == residue_mat(identity_rational(2, p)));
    REQUIRE(br.ubar == a);

    FpMat b = residue_mat(parse_matrix("0, 1; 1, 0", p));
    BruhatResidue flip = bruhat_residue(b, pd);
    REQUIRE(residue_mat(flip.w) == b);
    REQUIRE(flip.ubar == residue_mat(identity_rational(2, p)));
}

TEST_CASE("random residues factor with correct support") {
    Rng rng(303);
    for (int i = 0; i < 120; ++i) {
        std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng.below(3)];
        std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(3));
        GroupTag tag(Family::GL, n, p);
        std::vector<long long> d(n);
        for (auto& x : d) x = rng.range(-2, 2);
        std::sort(d.begin(), d.end(), std::greater<>());
        Cocharacter lam(tag, d);
        ParabolicData pd = ParabolicData::build(lam);

        FpMat hbar = residue_mat(random_gl_r(rng, n, p, 0, 8));
        BruhatResidue br = bruhat_residue(hbar, pd);
        REQUIRE(br.pbar * br.ubar * residue_mat(br.w) == hbar);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (pd.in_negative_unipotent(r, c)) REQUIRE(br.pbar.at(r, c).is_zero());
                if (r != c && !pd.in_negative_unipotent(r, c)) REQUIRE(br.ubar.at(r, c).is_zero());
            }
    }
}

TEST_CASE("big cell lift reproduces the truncated matrix") {
    Rng rng(404);
    std::uint32_t p = 3;
    GroupTag tag(Family::GL, 3, p);
    Cocharacter lam(tag, {1, 0, -1});
    ParabolicData pd = ParabolicData::build(lam);
    for (int i = 0; i < 25; ++i) {
        SeriesMat h = expand_mat(random_gl_r(rng, 3, p, 2, 6), 9);
        BruhatResidue br = bruhat_residue(residue_mat(h), pd);
        BigCellLift lift = big_cell_lift(h, br.w, pd);
        REQUIRE(agrees_mat(mul_series_exact(lift.phat * lift.uhat, br.w), h));
    }
}

TEST_CASE("unipotent truncation splits off a high order remainder") {
    std::uint32_t p = 5;
    GroupTag tag(Family::GL, 2, p);
    Cocharacter lam(tag, {1, -1});
    ParabolicData pd = ParabolicData::build(lam);

    SeriesMat u = identity_series(2, p, 10);
    u.at(1, 0) = expand(parse_coeff("2t + t^4 + 3t^7", p), 10);
    UnipotentSplit split = truncate_unipotent(u, 3, pd);
    REQUIRE(split.u.at(1, 0) == parse_coeff("2t", p));
    REQUIRE(*split.vhat.at(1, 0).val() >= 3);

    SeriesMat shallow = identity_series(2, p, 2);
    REQUIRE_THROWS_AS(truncate_unipotent(shallow, 3, pd), PrecisionError);
}

TEST_CASE("descent returns exact factors from a truncated decomposition") {
    Rng rng(505);
    for (int i = 0; i < 40; ++i) {
        std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[rng.below(3)];
        GroupTag tag(Family::GL, 3, p);
        std::vector<long long> d(3);
        for (auto& x : d) x = rng.range(-2, 2);
        std::sort(d.begin(), d.end(), std::greater<>());
        Cocharacter lam(tag, d);
        RationalMat g = random_gl_r(rng, 3, p, 2, 6) * lam.realize() * random_gl_r(rng, 3, p, 2, 6);

        CartanDecompositionHat hat = snf_decompose(expand_mat(g, 16), tag);
        REQUIRE(hat.lambda.d == d);
        CartanDecomposition dec = descend_decomposition(g, hat, tag);
        REQUIRE(dec.lambda.d == d);
        REQUIRE(reconstruct(dec) == g);
        REQUIRE(verify_decomposition(g, dec, tag).ok());

        // running it again gives the identical answer
        CartanDecomposition again =
            descend_decomposition(g, snf_decompose(expand_mat(g, 16), tag), tag);
        REQUIRE(render_matrix(again.h1) == render_matrix(dec.h1));
        REQUIRE(render_matrix(again.h2) == render_matrix(dec.h2));
    }
}

TEST_CASE("descent in the special linear group keeps determinant one") {
    Rng rng(606);
    std::uint32_t p = 3;
    GroupTag tag(Family::SL, 2, p);
    for (int i = 0; i < 25; ++i) {
        long long k = rng.range(0, 2);
        Cocharacter lam(tag, {k, -k});
        RationalMat g = random_sl_r(rng, 2, p, 2, 6) * lam.realize() * random_sl_r(rng, 2, p, 2, 6);
        CartanDecompositionHat hat = snf_decompose(expand_mat(g, 14), tag);
        CartanDecomposition dec = descend_decomposition(g, hat, tag);
        REQUIRE(reconstruct(dec) == g);
        REQUIRE(det(dec.h1) == RationalFn::one(p));
        REQUIRE(det(dec.h2) == RationalFn::one(p));
        REQUIRE(verify_decomposition(g, dec, tag).ok());
    }
}

TEST_CASE("descent with central weights shortcuts to an exact division") {
    std::uint32_t p = 5;
    GroupTag tag(Family::GL, 2, p);
    RationalMat g = parse_matrix("t, t^2; 0, t", p); // t * unipotent
    CartanDecompositionHat hat = snf_decompose(expand_mat(g, 8), tag);
    REQUIRE(hat.lambda.d == std::vector<long long>{1, 1});
    CartanDecomposition dec = descend_decomposition(g, hat, tag);
    REQUIRE(dec.h2 == identity_rational(2, p));
    REQUIRE(reconstruct(dec) == g);
}

TEST_CASE("descent rejects factors that are too shallow to truncate") {
    std::uint32_t p = 3;
    GroupTag tag(Family::GL, 2, p);
    // spread 2 needs n0 = 3 digits of the unipotent part; clamp the factors to 2
    RationalMat g = parse_matrix("1, 0; t^2, 1", p) * parse_matrix("t, 0; 0, (1)/(t)", p);
    CartanDecompositionHat hat = snf_decompose(expand_mat(g, 16), tag);
    hat.h1 = clamp_mat(hat.h1, 2);
    hat.h2 = clamp_mat(hat.h2, 2);
    REQUIRE_THROWS_AS(descend_decomposition(g, hat, tag), PrecisionError);
}
