#pragma once

#include <map>
#include <type_traits>
#include <vector>

#include "cartan/cocharacter.hpp"

namespace cartan {

namespace detail {

template <class T>
inline void swap_rows(Mat<T>& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.size(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
template <class T>
inline void swap_cols(Mat<T>& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.size(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

inline RationalFn divide(const RationalFn& a, const RationalFn& pivot) { return a / pivot; }
inline TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& pivot) {
    return a * pivot.inverse();
}

/// Two-sided elimination to diagonal form with valuation-minimal pivoting.
/// Maintains g = h1 * a * h2 throughout; every elimination factor is a/pivot
/// with val >= 0, so h1 and h2 stay in GL(R). Pivot valuations come out
/// weakly increasing. Ties break to the smallest (row, col).
///
/// Truncated inputs additionally require every zero-at-precision entry of the
/// live block to be known past the pivot valuation; otherwise the entry could
/// hide a smaller valuation and the invariant would be unsound.
template <class T>
std::vector<T> snf_core(Mat<T>& a, Mat<T>& h1, Mat<T>& h2) {
    constexpr bool truncated = std::is_same_v<T, TruncatedSeries>;
    const std::size_t n = a.size();
    std::vector<T> diag;
    diag.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::optional<long long> best;
        std::size_t pi = k, pj = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                auto v = a.at(i, j).val();
                if (v && (!best || *v < *best)) { best = v; pi = i; pj = j; }
            }
        if (!best) {
            if constexpr (truncated)
                throw PrecisionError("no pivot: live block is zero at its precision",
                                     a.at(k, k).prec() + 1);
            else
                throw DomainError("matrix is singular");
        }
        if constexpr (truncated) {
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j) {
                    const auto& e = a.at(i, j);
                    if (e.is_zero_at_prec() && e.prec() <= *best)
                        throw PrecisionError(
                            "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") zero at precision " + std::to_string(e.prec()) +
                                " cannot be separated from the pivot valuation " +
                                std::to_string(*best),
                            *best + 1);
                }
        }
        if (pi != k) { swap_rows(a, k, pi); swap_cols(h1, k, pi); }
        if (pj != k) { swap_cols(a, k, pj); swap_rows(h2, k, pj); }
        const T pivot = a.at(k, k);

        for (std::size_t i = k + 1; i < n; ++i) { // clear column k below the pivot
            if constexpr (!truncated) {
                if (a.at(i, k).is_zero()) continue;
            }
            T f = divide(a.at(i, k), pivot);
            for (std::size_t j = k; j < n; ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
            for (std::size_t r = 0; r < n; ++r) // h1 <- h1 * (I + f E_{ik})
                h1.at(r, k) = h1.at(r, k) + f * h1.at(r, i);
        }
        for (std::size_t j = k + 1; j < n; ++j) { // clear row k right of the pivot
            if constexpr (!truncated) {
                if (a.at(k, j).is_zero()) continue;
            }
            T f = divide(a.at(k, j), pivot);
            if constexpr (truncated) {
                for (std::size_t i = k; i < n; ++i)
                    a.at(i, j) = a.at(i, j) - f * a.at(i, k);
            } else {
                a.at(k, j) = a.at(k, j) - f * a.at(k, k); // rows below k hold exact zeros
            }
            for (std::size_t c = 0; c < n; ++c) // h2 <- (I + f E_{kj}) * h2
                h2.at(k, c) = h2.at(k, c) + f * h2.at(j, c);
        }
        diag.push_back(a.at(k, k));
    }
    return diag;
}

} // namespace detail

struct TorusNormalization {
    std::vector<RationalFn> units;
    Cocharacter lambda;
};
struct TorusNormalizationHat {
    std::vector<TruncatedSeries> units;
    Cocharacter lambda;
};

/// Factor a torus element into units of R times a cocharacter value:
/// x_i = u_i * t^{d_i}. Validates the family constraints (SL: product 1;
/// SP: the input is the full diagonal and the second block is inverse-dual).
inline TorusNormalization normalize_torus_element(const std::vector<RationalFn>& x,
                                                  const GroupTag& tag) {
    if (x.size() != tag.mat_size()) throw DomainError("torus element has wrong length");
    std::vector<long long> d;
    std::vector<RationalFn> units;
    for (const auto& xi : x) {
        auto v = xi.val();
        if (!v) throw DomainError("torus element has a zero entry");
        d.push_back(*v);
        units.push_back(xi * RationalFn::t_power(-*v, tag.p));
    }
    if (tag.family == Family::SL) {
        RationalFn prod = RationalFn::one(tag.p);
        for (const auto& xi : x) prod = prod * xi;
        if (!(prod == RationalFn::one(tag.p)))
            throw DomainError("SL torus element must have determinant 1");
    }
    if (tag.family == Family::SP) {
        for (std::size_t i = 0; i < tag.n; ++i)
            if (!(x[tag.n + i] * x[i] == RationalFn::one(tag.p)))
                throw DomainError("symplectic torus element must satisfy x_{n+i} = 1/x_i");
        d.resize(tag.n);
    }
    return {std::move(units), Cocharacter(tag, std::move(d))};
}

inline TorusNormalizationHat normalize_torus_element(const std::vector<TruncatedSeries>& x,
                                                     const GroupTag& tag) {
    if (x.size() != tag.mat_size()) throw DomainError("torus element has wrong length");
    std::vector<long long> d;
    std::vector<TruncatedSeries> units;
    for (const auto& xi : x) {
        auto v = xi.val();
        if (!v)
            throw PrecisionError("torus entry is zero at precision " + std::to_string(xi.prec()),
                                 xi.prec() + 1);
        d.push_back(*v);
        units.push_back(xi.shifted(-*v));
    }
    if (tag.family == Family::SL) {
        TruncatedSeries prod = x[0];
        for (std::size_t i = 1; i < x.size(); ++i) prod = prod * x[i];
        if (!prod.agrees_with_exact(RationalFn::one(tag.p)))
            throw DomainError("SL torus element must have determinant 1");
    }
    if (tag.family == Family::SP) {
        for (std::size_t i = 0; i < tag.n; ++i)
            if (!(x[tag.n + i] * x[i]).agrees_with_exact(RationalFn::one(tag.p)))
                throw DomainError("symplectic torus element must satisfy x_{n+i} = 1/x_i");
        d.resize(tag.n);
    }
    return {std::move(units), Cocharacter(tag, std::move(d))};
}

/// Cartan decomposition g = h1 * lambda(t) * h2 for GL_n and SL_n over the
/// t-adic valuation ring, by Smith-style elimination.
inline CartanDecomposition snf_decompose(const RationalMat& g, const GroupTag& tag) {
    if (tag.family == Family::SP) throw DomainError("symplectic matrices use sp_decompose");
    if (g.size() != tag.mat_size()) throw DomainError("matrix size does not match group");
    const std::uint32_t p = tag.p;
    if (tag.family == Family::SL) {
        RationalFn dg = det(g);
        if (!(dg == RationalFn::one(p)))
            throw DomainError("SL decomposition requires determinant exactly 1, got " + dg.str());
    }

    RationalMat a = g;
    RationalMat h1 = identity_rational(g.size(), p);
    RationalMat h2 = identity_rational(g.size(), p);
    std::vector<RationalFn> diag = detail::snf_core(a, h1, h2);

    GroupTag unit_tag(Family::GL, tag.n, p); // units are absorbed without family constraints
    TorusNormalization tn = normalize_torus_element(diag, unit_tag);
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t r = 0; r < g.size(); ++r)
            h1.at(r, k) = h1.at(r, k) * tn.units[k];

    DominantNormalization dn = dominant_normalize(Cocharacter(tag, tn.lambda.d));
    h1 = h1 * dn.w1;
    h2 = dn.w2 * h2;

    if (tag.family == Family::SL) {
        if (dn.lambda.sum() != 0) throw DomainError("internal: SL weights do not sum to zero");
        RationalFn u = det(h1); // unit; rescale to put both factors in SL(R)
        RationalFn uinv = u.inverse();
        for (std::size_t r = 0; r < g.size(); ++r) h1.at(r, 0) = h1.at(r, 0) * uinv;
        for (std::size_t c = 0; c < g.size(); ++c) h2.at(0, c) = h2.at(0, c) * u;
    }
    return {std::move(h1), dn.lambda, std::move(h2)};
}

/// Truncated variant over the completed ring.
inline CartanDecompositionHat snf_decompose(const SeriesMat& g, const GroupTag& tag) {
    if (tag.family == Family::SP) throw DomainError("symplectic matrices use sp_decompose");
    if (g.size() != tag.mat_size()) throw DomainError("matrix size does not match group");
    const std::uint32_t p = tag.p;
    if (tag.family == Family::SL) {
        TruncatedSeries dg = det(g);
        if (!dg.agrees_with_exact(RationalFn::one(p)))
            throw DomainError("SL decomposition requires determinant 1 to precision, got " + dg.str());
    }

    long long work = max_prec(g) + 1;
    SeriesMat a = g;
    SeriesMat h1 = identity_series(g.size(), p, work);
    SeriesMat h2 = identity_series(g.size(), p, work);
    std::vector<TruncatedSeries> diag = detail::snf_core(a, h1, h2);

    GroupTag unit_tag(Family::GL, tag.n, p);
    TorusNormalizationHat tn = normalize_torus_element(diag, unit_tag);
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t r = 0; r < g.size(); ++r)
            h1.at(r, k) = h1.at(r, k) * tn.units[k];

    DominantNormalization dn = dominant_normalize(Cocharacter(tag, tn.lambda.d));
    h1 = mul_series_exact(h1, dn.w1);
    h2 = mul_exact_series(dn.w2, h2);

    if (tag.family == Family::SL) {
        if (dn.lambda.sum() != 0) throw DomainError("internal: SL weights do not sum to zero");
        TruncatedSeries u = det(h1);
        TruncatedSeries uinv = u.inverse();
        for (std::size_t r = 0; r < g.size(); ++r) h1.at(r, 0) = h1.at(r, 0) * uinv;
        for (std::size_t c = 0; c < g.size(); ++c) h2.at(0, c) = h2.at(0, c) * u;
    }
    return {std::move(h1), dn.lambda, std::move(h2)};
}

/// Independent route to the same invariant: the k-th partial sum of the
/// (ascending) elementary divisors is the minimal valuation over all k x k
/// minors. Minors are built by Laplace expansion over index subsets and share
/// nothing with the elimination above. Returns the dominant (descending) form.
inline std::vector<long long> divisor_invariant(const RationalMat& g) {
    const std::size_t n = g.size();
    if (n == 0) throw DomainError("empty matrix");
    const std::uint32_t p = g.at(0, 0).p();
    // minors[(rows, cols)] keyed by bitmask pair, built size by size
    std::map<std::pair<std::uint32_t, std::uint32_t>, RationalFn> prev, cur;
    prev.insert({{0u, 0u}, RationalFn::one(p)});
    std::vector<long long> msums;
    for (std::size_t k = 1; k <= n; ++k) {
        cur.clear();
        std::optional<long long> mk;
        // enumerate row and column masks of popcount k
        std::vector<std::uint32_t> masks;
        for (std::uint32_t m = 0; m < (1u << n); ++m)
            if (static_cast<std::size_t>(__builtin_popcount(m)) == k) masks.push_back(m);
        for (std::uint32_t rows : masks)
            for (std::uint32_t cols : masks) {
                // expand along the highest row in `rows`
                std::uint32_t i = 31 - static_cast<std::uint32_t>(__builtin_clz(rows));
                std::uint32_t rrest = rows & ~(1u << i);
                RationalFn acc = RationalFn::zero(p);
                std::size_t jpos = 0; // position of j within cols; i sits at position k-1
                for (std::uint32_t j = 0; j < n; ++j) {
                    if (!(cols & (1u << j))) continue;
                    std::uint32_t crest = cols & ~(1u << j);
                    const RationalFn& e = g.at(i, j);
                    if (!e.is_zero()) {
                        RationalFn term = e * prev.at({rrest, crest});
                        int s = ((k - 1 + jpos) % 2 == 0) ? 1 : -1;
                        acc = s > 0 ? acc + term : acc - term;
                    }
                    ++jpos;
                }
                cur.insert({{rows, cols}, acc});
                auto v = acc.val();
                if (v && (!mk || *v < *mk)) mk = v;
            }
        if (!mk) throw DomainError("matrix is singular");
        msums.push_back(*mk);
        prev.swap(cur);
    }
    std::vector<long long> d(n);
    for (std::size_t k = 0; k < n; ++k) {
        long long e = msums[k] - (k ? msums[k - 1] : 0);
        d[n - 1 - k] = e;
    }
    for (std::size_t i = 1; i < n; ++i)
        if (d[i - 1] < d[i]) throw DomainError("internal: minor valuations not convex");
    return d;
}

/// g and g2 lie in the same G(R) double coset iff their divisor invariants
/// agree (for SP, matching GL invariants pair the weights identically).
inline bool double_coset_equal(const RationalMat& g, const RationalMat& g2, const GroupTag& tag) {
    if (g.size() != tag.mat_size() || g2.size() != tag.mat_size())
        throw DomainError("matrix size does not match group");
    return divisor_invariant(g) == divisor_invariant(g2);
}

} // namespace cartan
