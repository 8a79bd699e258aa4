#pragma once

#include <json.hpp>

#include "cartan/parse.hpp"
#include "cartan/verify.hpp"

namespace cartan {

inline nlohmann::json matrix_to_json(const RationalMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json matrix_to_json(const SeriesMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RationalMat matrix_from_json(const nlohmann::json& j, std::uint32_t p) {
    if (!j.is_array() || j.empty()) throw DomainError("matrix field must be a nonempty array");
    std::vector<std::vector<RationalFn>> rows;
    for (const auto& jr : j) {
        if (!jr.is_array() || jr.size() != j.size())
            throw DomainError("matrix field must be square");
        std::vector<RationalFn> row;
        for (const auto& cell : jr) row.push_back(parse_coeff(cell.get<std::string>(), p));
        rows.push_back(std::move(row));
    }
    return RationalMat::from_rows(rows);
}

inline std::string family_to_string(Family f) { return family_name(f); }

inline Family family_from_string(const std::string& s) {
    if (s == "gl") return Family::GL;
    if (s == "sl") return Family::SL;
    if (s == "sp") return Family::SP;
    throw DomainError("unknown group family '" + s + "' (expected gl, sl, or sp)");
}

inline nlohmann::json decomposition_to_json(const GroupTag& tag, const RationalMat& g,
                                            const CartanDecomposition& dec) {
    return nlohmann::json{{"group", family_to_string(tag.family)}, {"n", tag.n},
                          {"p", tag.p},       {"g", matrix_to_json(g)},
                          {"h1", matrix_to_json(dec.h1)}, {"lambda", dec.lambda.d},
                          {"h2", matrix_to_json(dec.h2)}};
}

/// Truncated decompositions serialize their common precision; every matrix is
/// clamped to it so a round trip reproduces the object exactly.
inline nlohmann::json decomposition_to_json(const GroupTag& tag, const SeriesMat& g,
                                            const CartanDecompositionHat& dec) {
    long long P = std::min({min_prec(g), min_prec(dec.h1), min_prec(dec.h2)});
    return nlohmann::json{{"group", family_to_string(tag.family)},
                          {"n", tag.n},
                          {"p", tag.p},
                          {"precision", P},
                          {"g", matrix_to_json(clamp_mat(g, P))},
                          {"h1", matrix_to_json(clamp_mat(dec.h1, P))},
                          {"lambda", dec.lambda.d},
                          {"h2", matrix_to_json(clamp_mat(dec.h2, P))}};
}

/// A decomposition with its input matrix, as read back from JSON. When
/// `precision` is present the textual matrices describe truncated series and
/// should be expanded at that precision before verification.
struct DecompositionBundle {
    GroupTag tag;
    std::optional<long long> precision;
    RationalMat g, h1, h2;
    Cocharacter lambda;
};

inline DecompositionBundle bundle_from_json(const nlohmann::json& j) {
    GroupTag tag(family_from_string(j.at("group").get<std::string>()),
                 j.at("n").get<std::uint32_t>(), j.at("p").get<std::uint32_t>());
    std::optional<long long> prec;
    if (j.contains("precision")) prec = j.at("precision").get<long long>();
    RationalMat g = matrix_from_json(j.at("g"), tag.p);
    RationalMat h1 = matrix_from_json(j.at("h1"), tag.p);
    RationalMat h2 = matrix_from_json(j.at("h2"), tag.p);
    Cocharacter lambda(tag, j.at("lambda").get<std::vector<long long>>());
    if (g.size() != tag.mat_size()) throw DomainError("matrix size does not match group");
    return {tag, prec, std::move(g), std::move(h1), std::move(h2), std::move(lambda)};
}

inline VerifyReport verify_bundle(const DecompositionBundle& b) {
    if (b.precision) {
        long long P = *b.precision;
        if (P < 1) throw DomainError("precision must be at least 1");
        CartanDecompositionHat dec{expand_mat(b.h1, P), b.lambda, expand_mat(b.h2, P)};
        return verify_decomposition(expand_mat(b.g, P), dec, b.tag);
    }
    CartanDecomposition dec{b.h1, b.lambda, b.h2};
    return verify_decomposition(b.g, dec, b.tag);
}

} // namespace cartan
