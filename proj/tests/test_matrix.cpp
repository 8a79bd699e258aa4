#include <catch2/catch_amalgamated.hpp>

#include "cartan/parse.hpp"
#include "cartan/sampling.hpp"

using namespace cartan;

TEST_CASE("matrix text round trips") {
    std::uint32_t p = 5;
    RationalMat m = parse_matrix("1, 1+t; t^-1, (1+t)/(1-t)", p);
    REQUIRE(m.size() == 2);
    REQUIRE(parse_matrix(render_matrix(m), p) == m);
    REQUIRE_THROWS_AS(parse_matrix("1, 2; 3", p), ParseError);
    REQUIRE_THROWS_AS(parse_matrix("1, 2, 3; 4, 5, 6", p), ParseError);
}

TEST_CASE("exact inverse and determinant") {
    std::uint32_t p = 5;
    RationalMat m = parse_matrix("t^-1, 0; 1, t", p);
    REQUIRE(det(m) == RationalFn::one(p));
    REQUIRE(m * inverse(m) == identity_rational(2, p));

    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        RationalMat a = random_gl_k(rng, 3, p, 2), b = random_gl_k(rng, 3, p, 2);
        REQUIRE(det(a * b) == det(a) * det(b));
        REQUIRE(inverse(a) * a == identity_rational(3, p));
        REQUIRE(a.transpose().transpose() == a);
    }
    REQUIRE(det(parse_matrix("1, 1; 1, 1", p)).is_zero());
    REQUIRE_THROWS_AS(inverse(parse_matrix("1, 1; 1, 1", p)), DomainError);
}

TEST_CASE("series matrices track precision through inversion") {
    std::uint32_t p = 3;
    RationalMat m = parse_matrix("1+t, t; t^2, 2", p);
    SeriesMat mh = expand_mat(m, 7);
    SeriesMat inv = inverse(mh);
    SeriesMat prod = mh * inv;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            REQUIRE(prod.at(i, j).agrees_with_exact(i == j ? RationalFn::one(p)
                                                           : RationalFn::zero(p)));
    REQUIRE(agrees_mat(inv, expand_mat(inverse(m), min_prec(inv))));

    // an all-zero window cannot be eliminated
    SeriesMat zeros(2, TruncatedSeries::zero_at(p, 2));
    REQUIRE_THROWS_AS(inverse(zeros), PrecisionError);
    REQUIRE_THROWS_AS(det(zeros), PrecisionError);
}

TEST_CASE("residue extraction demands integrality") {
    std::uint32_t p = 5;
    REQUIRE(residue_mat(parse_matrix("1+t, 2; 0, 1/(1+t)", p)) ==
            residue_mat(parse_matrix("1, 2; 0, 1", p)));
    REQUIRE_THROWS_AS(residue_mat(parse_matrix("1/t, 0; 0, 1", p)), DomainError);
}

TEST_CASE("mixed exact and truncated products keep full precision") {
    std::uint32_t p = 5;
    RationalMat e = parse_matrix("t^-2, 1; 0, 3", p);
    SeriesMat s = expand_mat(parse_matrix("1, t; t, 1+t^3", p), 6);
    SeriesMat left = mul_exact_series(e, s);
    SeriesMat right = mul_series_exact(s, e);
    // the exact factor is expanded far enough that only s's precision binds
    REQUIRE(agrees_mat(left, expand_mat(e * parse_matrix("1, t; t, 1+t^3", p), min_prec(left))));
    REQUIRE(agrees_mat(right, expand_mat(parse_matrix("1, t; t, 1+t^3", p) * e, min_prec(right))));
    REQUIRE(min_prec(left) <= 6 - 2); // t^-2 row costs two orders
}

TEST_CASE("membership reports carry witnesses") {
    std::uint32_t p = 5;
    GroupTag gl(Family::GL, 2, p);
    REQUIRE(is_member(parse_matrix("1, t; 0, 2", p), gl, Ring::R).ok);

    MembershipReport bad = is_member(parse_matrix("1/t, 0; 0, 1", p), gl, Ring::R);
    REQUIRE(!bad.ok);
    REQUIRE(bad.row == 0);
    REQUIRE(bad.col == 0);
    REQUIRE(bad.reason.find("negative valuation") != std::string::npos);

    MembershipReport notunit = is_member(parse_matrix("t, 0; 0, 1", p), gl, Ring::R);
    REQUIRE(!notunit.ok);
    REQUIRE(notunit.reason.find("determinant") != std::string::npos);

    GroupTag sl(Family::SL, 2, p);
    REQUIRE(is_member(parse_matrix("2, 0; 0, 3", p), sl, Ring::R).ok); // det 6 = 1 mod 5
    REQUIRE(!is_member(parse_matrix("2, 0; 0, 1", p), sl, Ring::R).ok);

    GroupTag sp(Family::SP, 1, p);
    REQUIRE(is_member(parse_matrix("1, t; 0, 1", p), sp, Ring::R).ok);
    MembershipReport notsp = is_member(parse_matrix("1, 0; 0, 2", p), sp, Ring::R);
    REQUIRE(!notsp.ok);
    REQUIRE(notsp.reason.find("symplectic") != std::string::npos);
}

TEST_CASE("membership over the completion is precision qualified") {
    std::uint32_t p = 3;
    GroupTag gl(Family::GL, 2, p);
    SeriesMat good = expand_mat(parse_matrix("1, t; t, 1", p), 5);
    REQUIRE(is_member(good, gl, Ring::Rhat).ok);

    SeriesMat shifted = good;
    shifted.at(0, 0) = shifted.at(0, 0).shifted(-1);
    REQUIRE(!is_member(shifted, gl, Ring::Rhat).ok);

    // determinant that is zero at the window precision cannot be certified
    SeriesMat degenerate = expand_mat(parse_matrix("t, t; t, t", p), 2);
    REQUIRE(!is_member(degenerate, gl, Ring::Rhat).ok);
}
