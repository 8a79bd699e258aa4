#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "cartan/series.hpp"

namespace cartan {

/// Dense square matrix over a coefficient type T (Fp, RationalFn, TruncatedSeries).
template <class T>
class Mat {
public:
    Mat() : n_(0) {}
    Mat(std::size_t n, const T& fill) : n_(n), e_(n * n, fill) {}

    static Mat from_rows(const std::vector<std::vector<T>>& rows) {
        Mat m;
        m.n_ = rows.size();
        m.e_.reserve(m.n_ * m.n_);
        for (const auto& r : rows) {
            if (r.size() != m.n_) throw DomainError("matrix is not square");
            for (const auto& x : r) m.e_.push_back(x);
        }
        return m;
    }

    std::size_t size() const { return n_; }
    T& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    Mat operator*(const Mat& o) const {
        if (n_ != o.n_) throw DomainError("matrix size mismatch");
        Mat r;
        r.n_ = n_;
        r.e_.reserve(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                T acc = at(i, 0) * o.at(0, j);
                for (std::size_t k = 1; k < n_; ++k)
                    acc = acc + at(i, k) * o.at(k, j);
                r.e_.push_back(acc);
            }
        return r;
    }

    Mat transpose() const {
        Mat r = *this;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                std::swap(r.at(i, j), r.at(j, i));
        return r;
    }

    bool operator==(const Mat& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    std::size_t n_;
    std::vector<T> e_;
};

using RationalMat = Mat<RationalFn>;
using SeriesMat = Mat<TruncatedSeries>;
using FpMat = Mat<Fp>;

inline RationalMat identity_rational(std::size_t n, std::uint32_t p) {
    RationalMat m(n, RationalFn::zero(p));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RationalFn::one(p);
    return m;
}
inline SeriesMat identity_series(std::size_t n, std::uint32_t p, long long prec) {
    SeriesMat m(n, TruncatedSeries::zero_at(p, prec));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = TruncatedSeries::one_at(p, prec);
    return m;
}
inline FpMat identity_fp(std::size_t n, std::uint32_t p) {
    FpMat m(n, Fp::zero(p));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fp::one(p);
    return m;
}

inline SeriesMat expand_mat(const RationalMat& m, long long N) {
    SeriesMat r(m.size(), TruncatedSeries::zero_at(m.size() ? m.at(0, 0).p() : 2, N));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            r.at(i, j) = expand(m.at(i, j), N);
    return r;
}

inline SeriesMat clamp_mat(const SeriesMat& m, long long P) {
    SeriesMat r = m;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            r.at(i, j) = r.at(i, j).clamped(P);
    return r;
}

/// reduction mod t; every entry must be integral
inline FpMat residue_mat(const RationalMat& m) {
    if (m.size() == 0) throw DomainError("empty matrix");
    FpMat r(m.size(), Fp::zero(m.at(0, 0).p()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            r.at(i, j) = m.at(i, j).at_zero();
    return r;
}

inline FpMat residue_mat(const SeriesMat& m) {
    if (m.size() == 0) throw DomainError("empty matrix");
    FpMat r(m.size(), Fp::zero(m.at(0, 0).p()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            const auto& e = m.at(i, j);
            if (e.prec() < 1)
                throw PrecisionError("residue needs absolute precision >= 1", 1);
            if (!e.is_zero_at_prec() && *e.val() < 0)
                throw DomainError("residue of a non-integral series entry");
            r.at(i, j) = e.coeff_at(0);
        }
    return r;
}

inline long long max_prec(const SeriesMat& m) {
    long long r = m.at(0, 0).prec();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            r = std::max(r, m.at(i, j).prec());
    return r;
}

inline long long min_prec(const SeriesMat& m) {
    long long r = m.at(0, 0).prec();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            r = std::min(r, m.at(i, j).prec());
    return r;
}

/// Mixed product: truncated series times exact rational. The exact factor is
/// expanded far enough that it never limits the result precision.
inline TruncatedSeries mul_exact(const TruncatedSeries& s, const RationalFn& r) {
    if (r.is_zero()) return TruncatedSeries::zero_at(s.p(), s.prec());
    long long Nr = *r.val() + s.prec() - s.val_floor() + 1;
    return s * expand(r, Nr);
}

/// hat * exact; exact zero entries contribute nothing (and no uncertainty)
inline SeriesMat mul_series_exact(const SeriesMat& a, const RationalMat& b) {
    if (a.size() != b.size()) throw DomainError("matrix size mismatch");
    std::size_t n = a.size();
    SeriesMat r(n, TruncatedSeries::zero_at(a.at(0, 0).p(), 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool seeded = false;
            TruncatedSeries acc = TruncatedSeries::zero_at(a.at(0, 0).p(), 0);
            for (std::size_t k = 0; k < n; ++k) {
                if (b.at(k, j).is_zero()) continue;
                TruncatedSeries term = mul_exact(a.at(i, k), b.at(k, j));
                acc = seeded ? acc + term : term;
                seeded = true;
            }
            if (!seeded) throw DomainError("exact factor has a zero column");
            r.at(i, j) = acc;
        }
    return r;
}

/// exact * hat
inline SeriesMat mul_exact_series(const RationalMat& b, const SeriesMat& a) {
    if (a.size() != b.size()) throw DomainError("matrix size mismatch");
    std::size_t n = a.size();
    SeriesMat r(n, TruncatedSeries::zero_at(a.at(0, 0).p(), 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool seeded = false;
            TruncatedSeries acc = TruncatedSeries::zero_at(a.at(0, 0).p(), 0);
            for (std::size_t k = 0; k < n; ++k) {
                if (b.at(i, k).is_zero()) continue;
                TruncatedSeries term = mul_exact(a.at(k, j), b.at(i, k));
                acc = seeded ? acc + term : term;
                seeded = true;
            }
            if (!seeded) throw DomainError("exact factor has a zero row");
            r.at(i, j) = acc;
        }
    return r;
}

inline bool agrees_mat(const SeriesMat& a, const SeriesMat& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!a.at(i, j).agrees_with(b.at(i, j))) return false;
    return true;
}

inline bool agrees_mat_exact(const SeriesMat& a, const RationalMat& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!a.at(i, j).agrees_with_exact(b.at(i, j))) return false;
    return true;
}

/// Determinant by elimination with full valuation-minimal pivoting.
inline RationalFn det(RationalMat a) {
    std::size_t n = a.size();
    if (n == 0) throw DomainError("empty matrix");
    std::uint32_t p = a.at(0, 0).p();
    RationalFn result = RationalFn::one(p);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = k, pj = k;
        std::optional<long long> best;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                auto v = a.at(i, j).val();
                if (v && (!best || *v < *best)) { best = v; pi = i; pj = j; }
            }
        if (!best) return RationalFn::zero(p);
        if (pi != k) { for (std::size_t j = k; j < n; ++j) std::swap(a.at(k, j), a.at(pi, j)); negate = !negate; }
        if (pj != k) { for (std::size_t i = k; i < n; ++i) std::swap(a.at(i, k), a.at(i, pj)); negate = !negate; }
        const RationalFn pivot = a.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a.at(i, k).is_zero()) continue;
            RationalFn f = a.at(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
        }
        result = result * pivot;
    }
    return negate ? -result : result;
}

inline Fp det(FpMat a) {
    std::size_t n = a.size();
    if (n == 0) throw DomainError("empty matrix");
    std::uint32_t p = a.at(0, 0).p();
    Fp result = Fp::one(p);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = k;
        while (pi < n && a.at(pi, k).is_zero()) ++pi;
        if (pi == n) return Fp::zero(p);
        if (pi != k) { for (std::size_t j = k; j < n; ++j) std::swap(a.at(k, j), a.at(pi, j)); negate = !negate; }
        const Fp pivot = a.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a.at(i, k).is_zero()) continue;
            Fp f = a.at(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
        }
        result = result * pivot;
    }
    return negate ? -result : result;
}

/// Determinant of a truncated matrix. Pivots take the minimal exactly-known
/// valuation; if a submatrix has no resolvable entry the determinant cannot be
/// separated from zero and a PrecisionError is raised.
inline TruncatedSeries det(SeriesMat a) {
    std::size_t n = a.size();
    if (n == 0) throw DomainError("empty matrix");
    std::uint32_t p = a.at(0, 0).p();
    // seed precision high enough that only the pivots bound the result
    long long spread = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long long v = a.at(i, j).val_floor();
            spread = std::max(spread, v < 0 ? -v : v);
        }
    TruncatedSeries result =
        TruncatedSeries::one_at(p, max_prec(a) + static_cast<long long>(n + 1) * (spread + 1));
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = k, pj = k;
        std::optional<long long> best;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                auto v = a.at(i, j).val();
                if (v && (!best || *v < *best)) { best = v; pi = i; pj = j; }
            }
        if (!best) {
            long long pr = a.at(k, k).prec();
            throw PrecisionError("determinant unresolved: remaining block is zero at precision " +
                                     std::to_string(pr),
                                 pr + 1);
        }
        if (pi != k) { for (std::size_t j = k; j < n; ++j) std::swap(a.at(k, j), a.at(pi, j)); negate = !negate; }
        if (pj != k) { for (std::size_t i = k; i < n; ++i) std::swap(a.at(i, k), a.at(i, pj)); negate = !negate; }
        const TruncatedSeries pivot = a.at(k, k);
        TruncatedSeries pinv = pivot.inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            TruncatedSeries f = a.at(i, k) * pinv;
            for (std::size_t j = k; j < n; ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
        }
        result = result * pivot;
    }
    return negate ? -result : result;
}

/// Gauss-Jordan inverse, valuation-minimal pivot within each column.
inline RationalMat inverse(const RationalMat& m) {
    std::size_t n = m.size();
    if (n == 0) throw DomainError("empty matrix");
    std::uint32_t p = m.at(0, 0).p();
    RationalMat a = m;
    RationalMat inv = identity_rational(n, p);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = n;
        std::optional<long long> best;
        for (std::size_t i = k; i < n; ++i) {
            auto v = a.at(i, k).val();
            if (v && (!best || *v < *best)) { best = v; pi = i; }
        }
        if (pi == n) throw DomainError("matrix is singular");
        if (pi != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(k, j), a.at(pi, j));
                std::swap(inv.at(k, j), inv.at(pi, j));
            }
        RationalFn pinv = a.at(k, k).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a.at(k, j) = a.at(k, j) * pinv;
            inv.at(k, j) = inv.at(k, j) * pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a.at(i, k).is_zero()) continue;
            RationalFn f = a.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(k, j);
            }
        }
    }
    return inv;
}

inline FpMat inverse(const FpMat& m) {
    std::size_t n = m.size();
    if (n == 0) throw DomainError("empty matrix");
    std::uint32_t p = m.at(0, 0).p();
    FpMat a = m;
    FpMat inv = identity_fp(n, p);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = k;
        while (pi < n && a.at(pi, k).is_zero()) ++pi;
        if (pi == n) throw DomainError("matrix is singular");
        if (pi != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(k, j), a.at(pi, j));
                std::swap(inv.at(k, j), inv.at(pi, j));
            }
        Fp pinv = a.at(k, k).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a.at(k, j) = a.at(k, j) * pinv;
            inv.at(k, j) = inv.at(k, j) * pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a.at(i, k).is_zero()) continue;
            Fp f = a.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(k, j);
            }
        }
    }
    return inv;
}

inline SeriesMat inverse(const SeriesMat& m) {
    std::size_t n = m.size();
    if (n == 0) throw DomainError("empty matrix");
    std::uint32_t p = m.at(0, 0).p();
    SeriesMat a = m;
    SeriesMat inv = identity_series(n, p, max_prec(m));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = n;
        std::optional<long long> best;
        for (std::size_t i = k; i < n; ++i) {
            auto v = a.at(i, k).val();
            if (v && (!best || *v < *best)) { best = v; pi = i; }
        }
        if (pi == n)
            throw PrecisionError("inverse unresolved: column " + std::to_string(k) +
                                     " is zero at its precision",
                                 a.at(k, k).prec() + 1);
        if (pi != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(k, j), a.at(pi, j));
                std::swap(inv.at(k, j), inv.at(pi, j));
            }
        TruncatedSeries pinv = a.at(k, k).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a.at(k, j) = a.at(k, j) * pinv;
            inv.at(k, j) = inv.at(k, j) * pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            TruncatedSeries f = a.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(k, j);
            }
        }
    }
    return inv;
}

} // namespace cartan
