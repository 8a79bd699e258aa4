#pragma once

#include "cartan/symplectic.hpp"

namespace cartan {

struct VerifyClause {
    std::string name;
    bool ok;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyClause> clauses;

    bool ok() const {
        for (const auto& c : clauses)
            if (!c.ok) return false;
        return true;
    }
    explicit operator bool() const { return ok(); }
};

namespace detail {

inline std::string weight_list(const std::vector<long long>& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(d[i]);
    }
    return s;
}

inline VerifyClause check_dominance(const Cocharacter& lambda) {
    if (lambda.is_dominant()) return {"dominance", true, "weights " + weight_list(lambda.d)};
    std::string why = "weights " + weight_list(lambda.d) + " violate ";
    switch (lambda.group.family) {
        case Family::GL: why += "the weakly decreasing order"; break;
        case Family::SL:
            why += lambda.sum() != 0 ? std::string("the zero-sum constraint")
                                     : std::string("the weakly decreasing order");
            break;
        case Family::SP:
            why += "the decreasing nonnegative order";
            break;
    }
    return {"dominance", false, why};
}

} // namespace detail

/// Full check of an exact decomposition: g must reconstruct exactly, both
/// factors must lie in G(R), and the weights must be dominant. Every clause
/// is evaluated; failures carry a witness.
inline VerifyReport verify_decomposition(const RationalMat& g, const CartanDecomposition& dec,
                                         const GroupTag& tag) {
    VerifyReport rep;
    if (g.size() != tag.mat_size() || dec.h1.size() != g.size() || dec.h2.size() != g.size())
        throw DomainError("matrix size does not match group");
    if (dec.lambda.group.n != tag.n) throw DomainError("cocharacter length does not match group");

    RationalMat back = reconstruct(dec);
    bool same = back == g;
    std::string det_s = "h1 * t^lambda * h2 reproduces g";
    if (!same) {
        auto witness = [&]() -> std::string {
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = 0; j < g.size(); ++j)
                    if (!(back.at(i, j) == g.at(i, j)))
                        return "entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") reconstructs to " + back.at(i, j).str() + ", expected " +
                               g.at(i, j).str();
            return "mismatch";
        };
        det_s = witness();
    }
    rep.clauses.push_back({"reconstruction", same, det_s});

    MembershipReport m1 = is_member(dec.h1, tag, Ring::R);
    rep.clauses.push_back({"h1-membership", m1.ok, m1.ok ? "h1 lies in G(R)" : m1.reason});
    MembershipReport m2 = is_member(dec.h2, tag, Ring::R);
    rep.clauses.push_back({"h2-membership", m2.ok, m2.ok ? "h2 lies in G(R)" : m2.reason});
    rep.clauses.push_back(detail::check_dominance(dec.lambda));
    return rep;
}

/// Precision-qualified check of a decomposition over the completed ring: the
/// product must agree with g up to the joint precision, memberships hold to
/// precision, dominance is exact.
inline VerifyReport verify_decomposition(const SeriesMat& g, const CartanDecompositionHat& dec,
                                         const GroupTag& tag) {
    VerifyReport rep;
    if (g.size() != tag.mat_size() || dec.h1.size() != g.size() || dec.h2.size() != g.size())
        throw DomainError("matrix size does not match group");
    if (dec.lambda.group.n != tag.n) throw DomainError("cocharacter length does not match group");

    SeriesMat back = reconstruct(dec);
    bool same = true;
    std::string det_s;
    for (std::size_t i = 0; i < g.size() && same; ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (!back.at(i, j).agrees_with(g.at(i, j))) {
                same = false;
                det_s = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") reconstructs to " + back.at(i, j).str() + ", expected " +
                        g.at(i, j).str();
                break;
            }
    if (same) {
        long long horizon = min_prec(g);
        for (std::size_t i = 0; i < back.size() * back.size(); ++i)
            horizon = std::min(horizon, back.at(i / back.size(), i % back.size()).prec());
        det_s = "product agrees with g below t^" + std::to_string(horizon);
    }
    rep.clauses.push_back({"reconstruction", same, det_s});

    MembershipReport m1 = is_member(dec.h1, tag, Ring::Rhat);
    rep.clauses.push_back({"h1-membership", m1.ok, m1.ok ? "h1 lies in G(Rhat) to precision" : m1.reason});
    MembershipReport m2 = is_member(dec.h2, tag, Ring::Rhat);
    rep.clauses.push_back({"h2-membership", m2.ok, m2.ok ? "h2 lies in G(Rhat) to precision" : m2.reason});
    rep.clauses.push_back(detail::check_dominance(dec.lambda));
    return rep;
}

} // namespace cartan
