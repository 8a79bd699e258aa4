#pragma once

#include <functional>

#include "cartan/symplectic.hpp"

namespace cartan {

/// Deterministic splitmix generator. Fixed across platforms so sampled test
/// cases and CLI --seed runs are reproducible bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        s_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, n), n > 0; rejection keeps it unbiased
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t s_;
};

inline Fp random_fp(Rng& rng, std::uint32_t p) {
    return Fp::from_int(static_cast<long long>(rng.below(p)), p);
}

inline Poly random_poly(Rng& rng, std::uint32_t p, std::size_t max_deg) {
    std::vector<std::uint32_t> c(max_deg + 1);
    for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(p));
    return Poly(p, std::move(c));
}

inline Poly random_nonzero_poly(Rng& rng, std::uint32_t p, std::size_t max_deg) {
    for (;;) {
        Poly q = random_poly(rng, p, max_deg);
        if (!q.is_zero()) return q;
    }
}

/// unit of R: nonzero constant term
inline Poly random_unit_poly(Rng& rng, std::uint32_t p, std::size_t max_deg) {
    std::vector<std::uint32_t> c(max_deg + 1);
    c[0] = 1 + static_cast<std::uint32_t>(rng.below(p - 1));
    for (std::size_t i = 1; i <= max_deg; ++i) c[i] = static_cast<std::uint32_t>(rng.below(p));
    return Poly(p, std::move(c));
}

inline RationalFn random_coeff(Rng& rng, std::uint32_t p, std::size_t max_deg) {
    return RationalFn(random_poly(rng, p, max_deg), random_nonzero_poly(rng, p, max_deg));
}

/// Invertible matrix over K with numerator and denominator degrees bounded by
/// max_deg; resamples until the determinant is nonzero.
inline RationalMat random_gl_k(Rng& rng, std::size_t n, std::uint32_t p, std::size_t max_deg) {
    for (;;) {
        RationalMat g(n, RationalFn::zero(p));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g.at(i, j) = random_coeff(rng, p, max_deg);
        if (!det(g).is_zero()) return g;
    }
}

/// Determinant-one matrix over K: a GL sample with one column rescaled.
inline RationalMat random_sl_k(Rng& rng, std::size_t n, std::uint32_t p, std::size_t max_deg) {
    RationalMat g = random_gl_k(rng, n, p, max_deg);
    RationalFn dinv = det(g).inverse();
    for (std::size_t i = 0; i < n; ++i) g.at(i, 0) = g.at(i, 0) * dinv;
    return g;
}

/// Element of GL_n(R) as a bounded product of elementary, permutation, and
/// unit-diagonal moves; always integral with unit determinant.
inline RationalMat random_gl_r(Rng& rng, std::size_t n, std::uint32_t p, std::size_t max_deg,
                               std::size_t moves) {
    RationalMat g = identity_rational(n, p);
    for (std::size_t m = 0; m < moves; ++m) {
        switch (n == 1 ? 2 : rng.below(3)) {
            case 0: { // g *= E_ij(c)
                std::size_t i = rng.below(n), j = rng.below(n);
                if (i == j) j = (j + 1) % n;
                RationalMat e = identity_rational(n, p);
                e.at(i, j) = RationalFn::from_poly(random_poly(rng, p, max_deg));
                g = g * e;
                break;
            }
            case 1: { // g *= row swap with sign, stays unimodular
                std::size_t i = rng.below(n), j = rng.below(n);
                if (i == j) j = (j + 1) % n;
                g = g * detail::signed_swap(n, p, i, j);
                break;
            }
            default: { // g *= diag(units)
                RationalMat u = identity_rational(n, p);
                for (std::size_t i = 0; i < n; ++i)
                    u.at(i, i) = RationalFn::from_poly(random_unit_poly(rng, p, max_deg));
                g = g * u;
                break;
            }
        }
    }
    return g;
}

/// Element of SL_n(R): elementary moves only, so the determinant stays 1.
inline RationalMat random_sl_r(Rng& rng, std::size_t n, std::uint32_t p, std::size_t max_deg,
                               std::size_t moves) {
    RationalMat g = identity_rational(n, p);
    if (n == 1) return g;
    for (std::size_t m = 0; m < moves; ++m) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) j = (j + 1) % n;
        RationalMat e = identity_rational(n, p);
        e.at(i, j) = RationalFn::from_poly(random_poly(rng, p, max_deg));
        g = rng.below(2) ? g * e : g * detail::signed_swap(n, p, i, j) * e;
    }
    return g;
}

/// Element of Sp_2n(R) as a bounded product of the symplectic generators.
inline RationalMat random_sp_r(Rng& rng, std::size_t n, std::uint32_t p, std::size_t max_deg,
                               std::size_t moves) {
    RationalMat g = identity_rational(2 * n, p);
    for (std::size_t m = 0; m < moves; ++m) {
        switch (rng.below(6)) {
            case 0: {
                std::size_t i = rng.below(n), k = rng.below(n);
                if (n > 1 && i == k) k = (k + 1) % n;
                if (i == k) break; // n == 1 has no off-diagonal block move
                g = g * sp_block_elem(n, p, i, k, RationalFn::from_poly(random_poly(rng, p, max_deg)));
                break;
            }
            case 1: {
                std::size_t i = rng.below(n), k = rng.below(n);
                g = g * sp_sym_upper(n, p, i, k, RationalFn::from_poly(random_poly(rng, p, max_deg)));
                break;
            }
            case 2: {
                std::size_t i = rng.below(n), k = rng.below(n);
                g = g * sp_sym_lower(n, p, i, k, RationalFn::from_poly(random_poly(rng, p, max_deg)));
                break;
            }
            case 3: {
                if (n < 2) break;
                std::size_t i = rng.below(n), j = rng.below(n);
                if (i == j) j = (j + 1) % n;
                g = g * sp_pair_swap(n, p, i, j);
                break;
            }
            case 4:
                g = g * sp_flip(n, p, rng.below(n));
                break;
            default: {
                std::vector<RationalFn> units;
                for (std::size_t i = 0; i < n; ++i)
                    units.push_back(RationalFn::from_poly(random_unit_poly(rng, p, max_deg)));
                g = g * sp_unit_diag(n, p, units);
                break;
            }
        }
    }
    return g;
}

/// Dominant weight vector for the family, entries bounded by `bound`.
inline Cocharacter random_dominant(Rng& rng, const GroupTag& tag, long long bound) {
    std::vector<long long> d(tag.n);
    for (;;) {
        long long floor = tag.family == Family::SP ? 0 : -bound;
        for (auto& x : d) x = rng.range(floor, bound);
        std::sort(d.begin(), d.end(), std::greater<>());
        if (tag.family == Family::SL) {
            long long s = 0;
            for (std::size_t i = 0; i + 1 < d.size(); ++i) s += d[i];
            d.back() = -s;
            std::sort(d.begin(), d.end(), std::greater<>());
            long long total = 0;
            for (long long x : d) total += x;
            if (total != 0) continue; // cannot happen, defensive
        }
        Cocharacter lam(tag, d);
        if (lam.is_dominant()) return lam;
    }
}

/// Symplectic element of Sp_2n(K) with a known decomposition shape: a product
/// h1 * t^lambda * h2 around a random dominant cocharacter.
inline RationalMat random_sp_k(Rng& rng, const GroupTag& tag, long long weight_bound,
                               std::size_t max_deg, std::size_t moves) {
    Cocharacter lam = random_dominant(rng, tag, weight_bound);
    RationalMat h1 = random_sp_r(rng, tag.n, tag.p, max_deg, moves);
    RationalMat h2 = random_sp_r(rng, tag.n, tag.p, max_deg, moves);
    return h1 * lam.realize() * h2;
}

} // namespace cartan
