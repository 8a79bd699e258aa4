#pragma once

#include <cstdint>
#include <string>

#include "cartan/matrix.hpp"

namespace cartan {

enum class Family { GL, SL, SP };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::GL: return "gl";
        case Family::SL: return "sl";
        case Family::SP: return "sp";
    }
    return "?";
}

/// Which split group we are working in. For SP, `n` is the number of
/// hyperbolic pairs, so matrices are 2n x 2n; p must be odd.
struct GroupTag {
    Family family;
    std::uint32_t n;
    std::uint32_t p;

    GroupTag(Family family, std::uint32_t n, std::uint32_t p) : family(family), n(n), p(p) {
        if (n == 0) throw DomainError("group rank must be positive");
        if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
        if (family == Family::SP && p == 2)
            throw DomainError("symplectic groups need odd characteristic");
    }

    std::size_t mat_size() const { return family == Family::SP ? 2 * std::size_t(n) : n; }
    std::string name() const { return family_name(family) + "_" + std::to_string(mat_size()); }
};

/// Gram matrix of the standard symplectic form, [[0, I], [-I, 0]] in n x n blocks.
inline RationalMat symplectic_form(std::uint32_t n, std::uint32_t p) {
    RationalMat j(2 * std::size_t(n), RationalFn::zero(p));
    for (std::size_t i = 0; i < n; ++i) {
        j.at(i, n + i) = RationalFn::one(p);
        j.at(n + i, i) = -RationalFn::one(p);
    }
    return j;
}

enum class Ring { K, R, Rhat };

/// Membership check result with a human-readable witness for failures.
struct MembershipReport {
    bool ok = true;
    std::string reason;
    long long row = -1, col = -1;

    explicit operator bool() const { return ok; }
    static MembershipReport pass() { return {}; }
    static MembershipReport fail(std::string why, long long i = -1, long long j = -1) {
        return {false, std::move(why), i, j};
    }
};

/// Exact membership: g in G(K) needs invertibility (det = 1 for SL, form
/// preservation for SP); g in G(R) additionally needs integral entries and
/// det a unit of R.
inline MembershipReport is_member(const RationalMat& g, const GroupTag& tag, Ring ring) {
    if (ring == Ring::Rhat) throw DomainError("exact matrices are checked over K or R");
    if (g.size() != tag.mat_size())
        return MembershipReport::fail("size " + std::to_string(g.size()) + " does not match " + tag.name());

    if (ring == Ring::R)
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                if (!g.at(i, j).is_integral())
                    return MembershipReport::fail(
                        "entry has negative valuation " + std::to_string(*g.at(i, j).val()),
                        static_cast<long long>(i), static_cast<long long>(j));

    RationalFn d = det(g);
    if (d.is_zero()) return MembershipReport::fail("matrix is singular");
    switch (tag.family) {
        case Family::GL:
            if (ring == Ring::R && !d.is_ring_unit())
                return MembershipReport::fail("determinant has valuation " + std::to_string(*d.val()) +
                                              ", not a unit");
            break;
        case Family::SL:
            if (!(d == RationalFn::one(tag.p)))
                return MembershipReport::fail("determinant is " + d.str() + ", not 1");
            break;
        case Family::SP: {
            RationalMat j = symplectic_form(tag.n, tag.p);
            RationalMat gram = g.transpose() * j * g;
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t jj = 0; jj < g.size(); ++jj)
                    if (gram.at(i, jj) != j.at(i, jj))
                        return MembershipReport::fail("symplectic form not preserved",
                                                      static_cast<long long>(i),
                                                      static_cast<long long>(jj));
            // form preservation forces det = 1; integrality already ensures det is a unit
            break;
        }
    }
    return MembershipReport::pass();
}

/// Truncated membership over Rhat: integral entries, and the group condition
/// holds as far as the carried precision can see. Unresolvable determinants
/// are reported as failures, never guessed.
inline MembershipReport is_member(const SeriesMat& g, const GroupTag& tag, Ring ring) {
    if (ring == Ring::K) throw DomainError("truncated matrices are checked over Rhat");
    if (g.size() != tag.mat_size())
        return MembershipReport::fail("size " + std::to_string(g.size()) + " does not match " + tag.name());

    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            const auto& e = g.at(i, j);
            if (!e.is_zero_at_prec() && *e.val() < 0)
                return MembershipReport::fail(
                    "entry has negative valuation " + std::to_string(*e.val()),
                    static_cast<long long>(i), static_cast<long long>(j));
            if (e.is_zero_at_prec() && e.prec() < 0)
                return MembershipReport::fail("entry only known to negative precision, integrality unresolved",
                                              static_cast<long long>(i), static_cast<long long>(j));
        }

    TruncatedSeries d = TruncatedSeries::zero_at(tag.p, 0);
    try {
        d = det(g);
    } catch (const PrecisionError& e) {
        return MembershipReport::fail(std::string("determinant unresolved: ") + e.what());
    }
    switch (tag.family) {
        case Family::SL:
            if (!d.agrees_with_exact(RationalFn::one(tag.p)))
                return MembershipReport::fail("determinant is " + d.str() + ", not 1");
            break;
        case Family::GL:
            if (d.is_zero_at_prec())
                return MembershipReport::fail("determinant is zero at precision " + std::to_string(d.prec()));
            if (*d.val() != 0)
                return MembershipReport::fail("determinant has valuation " + std::to_string(*d.val()) +
                                              ", not a unit");
            break;
        case Family::SP: {
            SeriesMat jt = expand_mat(symplectic_form(tag.n, tag.p), max_prec(g) + 1);
            SeriesMat gram = g.transpose() * jt * g;
            RationalMat j = symplectic_form(tag.n, tag.p);
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t jj = 0; jj < g.size(); ++jj)
                    if (!gram.at(i, jj).agrees_with_exact(j.at(i, jj)))
                        return MembershipReport::fail("symplectic form not preserved to precision",
                                                      static_cast<long long>(i),
                                                      static_cast<long long>(jj));
            if (d.is_zero_at_prec())
                return MembershipReport::fail("determinant is zero at precision " + std::to_string(d.prec()));
            if (*d.val() != 0)
                return MembershipReport::fail("determinant has valuation " + std::to_string(*d.val()) +
                                              ", not a unit");
            break;
        }
    }
    return MembershipReport::pass();
}

} // namespace cartan
