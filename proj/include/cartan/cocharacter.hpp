#pragma once

#include <numeric>
#include <vector>

#include "cartan/group.hpp"

namespace cartan {

/// Integral cocharacter of the standard maximal torus, stored by its weight
/// vector d (length n, one weight per hyperbolic pair for SP).
///
/// realize() evaluates at the uniformizer t:
///   GL/SL: diag(t^{d_1}, ..., t^{d_n})
///   SP:    diag(t^{d_1}, ..., t^{d_n}, t^{-d_1}, ..., t^{-d_n})
struct Cocharacter {
    GroupTag group;
    std::vector<long long> d;

    Cocharacter(GroupTag group, std::vector<long long> weights)
        : group(group), d(std::move(weights)) {
        if (d.size() != group.n) throw DomainError("cocharacter length does not match group rank");
    }

    long long sum() const { return std::accumulate(d.begin(), d.end(), 0ll); }

    /// dominance for the standard choices: weakly decreasing, plus sum zero
    /// for SL and nonnegativity for SP
    bool is_dominant() const {
        for (std::size_t i = 1; i < d.size(); ++i)
            if (d[i - 1] < d[i]) return false;
        if (group.family == Family::SL && sum() != 0) return false;
        if (group.family == Family::SP && d.back() < 0) return false;
        return true;
    }

    /// exponents on the full matrix diagonal, size mat_size()
    std::vector<long long> realized_weights() const {
        if (group.family != Family::SP) return d;
        std::vector<long long> w = d;
        for (long long x : d) w.push_back(-x);
        return w;
    }

    RationalMat realize() const {
        auto w = realized_weights();
        RationalMat m(w.size(), RationalFn::zero(group.p));
        for (std::size_t i = 0; i < w.size(); ++i)
            m.at(i, i) = RationalFn::t_power(w[i], group.p);
        return m;
    }

    bool operator==(const Cocharacter& o) const {
        return group.family == o.group.family && group.n == o.group.n && group.p == o.group.p && d == o.d;
    }
};

struct DominantNormalization {
    Cocharacter lambda;
    RationalMat w1, w2; // realize(original) = w1 * realize(lambda) * w2, both in G(R)
};

namespace detail {

/// stable descending argsort
inline std::vector<std::size_t> argsort_desc(const std::vector<long long>& d) {
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
    return idx;
}

/// signed transposition with determinant 1: e_i -> -e_j, e_j -> e_i
inline RationalMat signed_swap(std::size_t n, std::uint32_t p, std::size_t i, std::size_t j) {
    RationalMat s = identity_rational(n, p);
    s.at(i, i) = RationalFn::zero(p);
    s.at(j, j) = RationalFn::zero(p);
    s.at(j, i) = -RationalFn::one(p);
    s.at(i, j) = RationalFn::one(p);
    return s;
}

/// symplectic Weyl flip in the (i, n+i) plane: e_i -> e_{n+i}, e_{n+i} -> -e_i
inline RationalMat sp_flip(std::uint32_t n, std::uint32_t p, std::size_t i) {
    RationalMat f = identity_rational(2 * std::size_t(n), p);
    f.at(i, i) = RationalFn::zero(p);
    f.at(n + i, n + i) = RationalFn::zero(p);
    f.at(n + i, i) = RationalFn::one(p);
    f.at(i, n + i) = -RationalFn::one(p);
    return f;
}

} // namespace detail

/// Sort the weights into dominant position, returning torus-normalizer
/// conjugators over R. GL uses plain permutation matrices; SL uses signed
/// transpositions to stay inside SL; SP uses hyperbolic-pair permutations
/// and sign flips, all preserving the form.
inline DominantNormalization dominant_normalize(const Cocharacter& lam) {
    const GroupTag& tag = lam.group;
    std::uint32_t p = tag.p;
    std::size_t n = tag.n;
    std::size_t sz = tag.mat_size();
    RationalMat w1 = identity_rational(sz, p);
    RationalMat w2 = identity_rational(sz, p);

    if (tag.family == Family::GL) {
        auto idx = detail::argsort_desc(lam.d);
        std::vector<long long> sorted(n);
        RationalMat perm(sz, RationalFn::zero(p));
        for (std::size_t i = 0; i < n; ++i) {
            sorted[i] = lam.d[idx[i]];
            perm.at(idx[i], i) = RationalFn::one(p);
        }
        return {Cocharacter(tag, std::move(sorted)), perm, perm.transpose()};
    }

    if (tag.family == Family::SL) {
        // selection sort by signed swaps keeps the determinant 1 throughout
        std::vector<long long> cur = lam.d;
        auto idx = detail::argsort_desc(cur);
        std::vector<long long> target(n);
        for (std::size_t i = 0; i < n; ++i) target[i] = cur[idx[i]];
        for (std::size_t i = 0; i < n; ++i) {
            if (cur[i] == target[i]) continue;
            std::size_t j = i + 1;
            while (j < n && cur[j] != target[i]) ++j;
            if (j == n) throw DomainError("internal: sort target not found");
            std::swap(cur[i], cur[j]);
            RationalMat s = detail::signed_swap(sz, p, i, j);
            w1 = w1 * s;
            w2 = inverse(s) * w2;
        }
        return {Cocharacter(tag, std::move(cur)), w1, w2};
    }

    // SP: flip negative weights positive, then sort pairs
    std::vector<long long> cur = lam.d;
    for (std::size_t i = 0; i < n; ++i) {
        if (cur[i] >= 0) continue;
        cur[i] = -cur[i];
        RationalMat f = detail::sp_flip(tag.n, p, i);
        w1 = w1 * f;
        w2 = inverse(f) * w2;
    }
    auto idx = detail::argsort_desc(cur);
    std::vector<long long> sorted(n);
    RationalMat block(sz, RationalFn::zero(p));
    for (std::size_t i = 0; i < n; ++i) {
        sorted[i] = cur[idx[i]];
        block.at(idx[i], i) = RationalFn::one(p);
        block.at(n + idx[i], n + i) = RationalFn::one(p);
    }
    w1 = w1 * block;
    w2 = block.transpose() * w2;
    return {Cocharacter(tag, std::move(sorted)), w1, w2};
}

template <class M>
struct Decomposition {
    M h1;
    Cocharacter lambda;
    M h2;
};

using CartanDecomposition = Decomposition<RationalMat>;
using CartanDecompositionHat = Decomposition<SeriesMat>;

inline RationalMat reconstruct(const CartanDecomposition& dec) {
    return dec.h1 * dec.lambda.realize() * dec.h2;
}

inline SeriesMat reconstruct(const CartanDecompositionHat& dec) {
    return mul_series_exact(dec.h1, dec.lambda.realize()) * dec.h2;
}

} // namespace cartan
