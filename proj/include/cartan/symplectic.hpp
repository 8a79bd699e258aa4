#pragma once

#include "cartan/smith.hpp"

namespace cartan {

/// Generators of Sp_2n(R) used by the reduction and by samplers. All are
/// 2n x 2n over F_p(t) and preserve [[0, I], [-I, 0]] exactly.

/// blockdiag(A, A^{-T}) with A = I + c E_{ij}, i != j (GL part of the Levi)
inline RationalMat sp_block_elem(std::uint32_t n, std::uint32_t p, std::size_t i, std::size_t j,
                                 const RationalFn& c) {
    if (i == j) throw DomainError("sp_block_elem needs i != j");
    RationalMat m = identity_rational(2 * std::size_t(n), p);
    m.at(i, j) = c;
    m.at(n + j, n + i) = -c;
    return m;
}

/// [[I, S], [0, I]] with S = c(E_{ij} + E_{ji}) for i != j, S = c E_{ii} otherwise
inline RationalMat sp_sym_upper(std::uint32_t n, std::uint32_t p, std::size_t i, std::size_t j,
                                const RationalFn& c) {
    RationalMat m = identity_rational(2 * std::size_t(n), p);
    m.at(i, n + j) = c;
    if (i != j) m.at(j, n + i) = c;
    return m;
}

/// [[I, 0], [S, I]] with the same symmetric S
inline RationalMat sp_sym_lower(std::uint32_t n, std::uint32_t p, std::size_t i, std::size_t j,
                                const RationalFn& c) {
    RationalMat m = identity_rational(2 * std::size_t(n), p);
    m.at(n + i, j) = c;
    if (i != j) m.at(n + j, i) = c;
    return m;
}

/// hyperbolic pair transposition: blockdiag(P, P) for P the (i j) swap
inline RationalMat sp_pair_swap(std::uint32_t n, std::uint32_t p, std::size_t i, std::size_t j) {
    RationalMat m = identity_rational(2 * std::size_t(n), p);
    using std::swap;
    for (std::size_t r = 0; r < 2 * std::size_t(n); ++r) {
        swap(m.at(r, i), m.at(r, j));
        swap(m.at(r, n + i), m.at(r, n + j));
    }
    return m;
}

/// e_i -> e_{n+i}, e_{n+i} -> -e_i (Weyl flip of one pair)
inline RationalMat sp_flip(std::uint32_t n, std::uint32_t p, std::size_t i) {
    return detail::sp_flip(n, p, i);
}
inline RationalMat sp_flip_inv(std::uint32_t n, std::uint32_t p, std::size_t i) {
    return inverse(detail::sp_flip(n, p, i));
}

/// blockdiag(diag(u), diag(u)^{-1}) for units u of R
inline RationalMat sp_unit_diag(std::uint32_t n, std::uint32_t p,
                                const std::vector<RationalFn>& units) {
    if (units.size() != n) throw DomainError("unit vector length mismatch");
    RationalMat m = identity_rational(2 * std::size_t(n), p);
    for (std::size_t i = 0; i < n; ++i) {
        if (!units[i].is_ring_unit()) throw DomainError("non-unit in torus unit part");
        m.at(i, i) = units[i];
        m.at(n + i, n + i) = units[i].inverse();
    }
    return m;
}

namespace detail {

inline void sp_form_check(const RationalMat& m, std::uint32_t n, std::uint32_t p,
                          const char* what) {
    RationalMat j = symplectic_form(n, p);
    RationalMat gram = m.transpose() * j * m;
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m.size(); ++c)
            if (gram.at(r, c) != j.at(r, c))
                throw DomainError(std::string(what) + ": symplectic form not preserved at (" +
                                  std::to_string(r) + "," + std::to_string(c) + ")");
}

} // namespace detail

/// Cartan decomposition in Sp_2n over the t-adic valuation ring.
///
/// Reduction works one hyperbolic pair at a time: pick the entry of minimal
/// valuation in the live block (preferring the top-left n x n corner, pulling
/// cross-block pivots over by pair flips), move it to (k, k), and clear its
/// row and column with symplectic generators only. The symplectic identities
/// then force row and column n+k into e_{n+k} * pivot^{-1} on their own; this
/// is asserted, as is form preservation of both accumulated factors after
/// every pivot. Pivot valuations increase and are <= 0, so the exponents read
/// off dominantly without extra sorting; a final round of flips orients every
/// pair to the nonnegative side.
inline CartanDecomposition sp_decompose(const RationalMat& g, const GroupTag& tag) {
    if (tag.family != Family::SP) throw DomainError("sp_decompose needs an SP group tag");
    const std::uint32_t n = tag.n, p = tag.p;
    const std::size_t sz = tag.mat_size();
    if (g.size() != sz) throw DomainError("matrix size does not match group");
    {
        RationalMat j = symplectic_form(n, p);
        RationalMat gram = g.transpose() * j * g;
        for (std::size_t r = 0; r < sz; ++r)
            for (std::size_t c = 0; c < sz; ++c)
                if (gram.at(r, c) != j.at(r, c))
                    throw DomainError("input is not symplectic: form mismatch at (" +
                                      std::to_string(r) + "," + std::to_string(c) + ")");
    }

    RationalMat a = g;
    RationalMat h1 = identity_rational(sz, p);
    RationalMat h2 = identity_rational(sz, p);

    auto left = [&](const RationalMat& e, const RationalMat& einv) {
        a = e * a;
        h1 = h1 * einv;
    };
    auto right = [&](const RationalMat& f, const RationalMat& finv) {
        a = a * f;
        h2 = finv * h2;
    };

    std::vector<std::size_t> live; // indices of unfinished pairs and their duals
    for (std::size_t k = 0; k < n; ++k) {
        live.clear();
        for (std::size_t i = k; i < n; ++i) live.push_back(i);
        for (std::size_t i = k; i < n; ++i) live.push_back(n + i);

        std::optional<long long> best;
        for (std::size_t i : live)
            for (std::size_t j : live) {
                auto v = a.at(i, j).val();
                if (v && (!best || *v < *best)) best = v;
            }
        if (!best) throw DomainError("internal: live block of a symplectic matrix is zero");
        std::size_t pi = sz, pj = sz;
        for (std::size_t i : live) { // prefer a top-left pivot at the minimal valuation
            for (std::size_t j : live) {
                auto v = a.at(i, j).val();
                if (!v || *v != *best) continue;
                bool tl = i < n && j < n;
                bool have_tl = pi != sz && pi < n && pj < n;
                if (pi == sz || (tl && !have_tl)) { pi = i; pj = j; }
            }
        }

        if (pi >= n) { // flip the pivot row up into the top block
            std::size_t idx = pi - n;
            left(sp_flip_inv(n, p, idx), sp_flip(n, p, idx));
            pi = idx;
        }
        if (pj >= n) { // flip the pivot column left
            std::size_t idx = pj - n;
            right(sp_flip(n, p, idx), sp_flip_inv(n, p, idx));
            pj = idx;
        }
        if (pi != k) left(sp_pair_swap(n, p, pi, k), sp_pair_swap(n, p, pi, k));
        if (pj != k) right(sp_pair_swap(n, p, pj, k), sp_pair_swap(n, p, pj, k));

        const RationalFn pivot = a.at(k, k);
        // clear column k below the pivot: top rows by Levi generators (their
        // bottom-block compensation only touches row n+k), bottom rows by
        // lower symmetric generators
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a.at(i, k).is_zero()) continue;
            RationalFn c = a.at(i, k) / pivot;
            // row_i -= c row_k needs A = I - c E_{ik}
            left(sp_block_elem(n, p, i, k, -c), sp_block_elem(n, p, i, k, c));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a.at(n + i, k).is_zero()) continue;
            RationalFn c = a.at(n + i, k) / pivot;
            left(sp_sym_lower(n, p, i, k, -c), sp_sym_lower(n, p, i, k, c));
        }
        if (!a.at(n + k, k).is_zero()) {
            RationalFn c = a.at(n + k, k) / pivot;
            left(sp_sym_lower(n, p, k, k, -c), sp_sym_lower(n, p, k, k, c));
        }
        // clear row k right of the pivot
        for (std::size_t j = k + 1; j < n; ++j) {
            if (a.at(k, j).is_zero()) continue;
            RationalFn c = a.at(k, j) / pivot;
            right(sp_block_elem(n, p, k, j, -c), sp_block_elem(n, p, k, j, c));
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (a.at(k, n + j).is_zero()) continue;
            RationalFn c = a.at(k, n + j) / pivot;
            right(sp_sym_upper(n, p, k, j, -c), sp_sym_upper(n, p, k, j, c));
        }
        if (!a.at(k, n + k).is_zero()) {
            RationalFn c = a.at(k, n + k) / pivot;
            right(sp_sym_upper(n, p, k, k, -c), sp_sym_upper(n, p, k, k, c));
        }

        // the symplectic identities force the dual row and column
        for (std::size_t m = 0; m < sz; ++m) {
            if (m == n + k) continue;
            if (!a.at(n + k, m).is_zero() || !a.at(m, n + k).is_zero())
                throw DomainError("internal: dual row/column of pair " + std::to_string(k) +
                                  " did not clear");
        }
        if (!(a.at(n + k, n + k) == pivot.inverse()))
            throw DomainError("internal: dual diagonal entry is not the pivot inverse");
        detail::sp_form_check(h1, n, p, "internal: h1 after pivot");
        detail::sp_form_check(h2, n, p, "internal: h2 after pivot");
    }

    // orient every pair to the nonnegative exponent side
    for (std::size_t k = 0; k < n; ++k) {
        auto v = a.at(k, k).val();
        if (*v < 0) {
            left(sp_flip(n, p, k), sp_flip_inv(n, p, k));
            right(sp_flip_inv(n, p, k), sp_flip(n, p, k));
        }
    }

    std::vector<RationalFn> diag;
    for (std::size_t i = 0; i < sz; ++i) diag.push_back(a.at(i, i));
    TorusNormalization tn = normalize_torus_element(diag, tag);
    h1 = h1 * sp_unit_diag(n, p, std::vector<RationalFn>(tn.units.begin(), tn.units.begin() + n));

    if (!tn.lambda.is_dominant())
        throw DomainError("internal: symplectic exponents came out non-dominant");
    detail::sp_form_check(h1, n, p, "internal: h1 final");
    detail::sp_form_check(h2, n, p, "internal: h2 final");
    if (!(h1 * tn.lambda.realize() * h2 == g))
        throw DomainError("internal: symplectic reconstruction failed");
    return {std::move(h1), tn.lambda, std::move(h2)};
}

/// Cross-check of the symplectic exponents against the group-free invariant:
/// the GL_2n divisor invariant of a symplectic matrix must be (d, -reverse(d)).
/// Returns the positive half d; a non-self-dual invariant is a pairing failure.
inline std::vector<long long> sp_divisor_check(const RationalMat& g, const GroupTag& tag) {
    if (tag.family != Family::SP) throw DomainError("sp_divisor_check needs an SP group tag");
    if (g.size() != tag.mat_size()) throw DomainError("matrix size does not match group");
    std::vector<long long> full = divisor_invariant(g);
    const std::size_t n = tag.n;
    for (std::size_t i = 0; i < n; ++i)
        if (full[i] != -full[2 * n - 1 - i])
            throw DomainError("pairing failure: divisor invariant of a symplectic matrix is not "
                              "self-dual");
    return std::vector<long long>(full.begin(), full.begin() + static_cast<long long>(n));
}

} // namespace cartan
