#pragma once

#include "cartan/symplectic.hpp"

namespace cartan {

/// Combinatorics of the parabolic pair attached to a cocharacter: realized
/// diagonal weights, a stable descending sort of the indices, and the blocks
/// of equal weight in sorted order. P+ holds positions with weight(i) >=
/// weight(j) (block upper in sorted coordinates); the opposite unipotent U-
/// holds weight(i) < weight(j), where conjugation by the realized cocharacter
/// scales an entry by t^{weight(i) - weight(j)} with negative exponent.
struct ParabolicData {
    Cocharacter lambda;
    std::vector<long long> weights;               // realized, one per matrix row
    std::vector<std::size_t> sorted;              // sorted[r] = original index at sorted slot r
    std::vector<std::pair<std::size_t, std::size_t>> blocks; // [begin, end) runs in sorted coords

    static ParabolicData build(const Cocharacter& lambda) {
        ParabolicData pd{lambda, lambda.realized_weights(), {}, {}};
        pd.sorted = detail::argsort_desc(pd.weights);
        std::size_t b = 0;
        for (std::size_t r = 1; r <= pd.sorted.size(); ++r) {
            if (r == pd.sorted.size() || pd.weights[pd.sorted[r]] != pd.weights[pd.sorted[b]]) {
                pd.blocks.push_back({b, r});
                b = r;
            }
        }
        return pd;
    }

    std::size_t dim() const { return weights.size(); }
    bool in_negative_unipotent(std::size_t i, std::size_t j) const {
        return weights[i] < weights[j];
    }
    long long weight_spread() const {
        long long lo = weights[0], hi = weights[0];
        for (long long w : weights) { lo = std::min(lo, w); hi = std::max(hi, w); }
        return hi - lo;
    }
};

namespace detail {

inline FpMat perm_mat_fp(const std::vector<std::size_t>& sigma, std::uint32_t p) {
    FpMat m(sigma.size(), Fp::zero(p));
    for (std::size_t r = 0; r < sigma.size(); ++r) m.at(r, sigma[r]) = Fp::one(p);
    return m;
}
inline RationalMat perm_mat_rational(const std::vector<std::size_t>& sigma, std::uint32_t p) {
    RationalMat m(sigma.size(), RationalFn::zero(p));
    for (std::size_t r = 0; r < sigma.size(); ++r) m.at(r, sigma[r]) = RationalFn::one(p);
    return m;
}

/// Rectangular helper for the block solves; Mat stays square.
template <class T>
struct Rect {
    std::size_t rows = 0, cols = 0;
    std::vector<T> e;
    T& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

template <class T, class M>
Rect<T> take_block(const M& m, std::pair<std::size_t, std::size_t> ri,
                   std::pair<std::size_t, std::size_t> ci) {
    Rect<T> r;
    r.rows = ri.second - ri.first;
    r.cols = ci.second - ci.first;
    r.e.reserve(r.rows * r.cols);
    for (std::size_t i = ri.first; i < ri.second; ++i)
        for (std::size_t j = ci.first; j < ci.second; ++j)
            r.e.push_back(m.at(i, j));
    return r;
}

template <class T>
Rect<T> rect_mul(const Rect<T>& a, const Rect<T>& b) {
    Rect<T> r;
    r.rows = a.rows;
    r.cols = b.cols;
    for (std::size_t i = 0; i < r.rows; ++i)
        for (std::size_t j = 0; j < r.cols; ++j) {
            T acc = a.at(i, 0) * b.at(0, j);
            for (std::size_t k = 1; k < a.cols; ++k)
                acc = acc + a.at(i, k) * b.at(k, j);
            r.e.push_back(acc);
        }
    return r;
}

template <class T>
void rect_sub_inplace(Rect<T>& a, const Rect<T>& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i) a.e[i] = a.e[i] - b.e[i];
}

template <class T>
Mat<T> rect_to_mat(const Rect<T>& r) {
    std::vector<std::vector<T>> rows;
    for (std::size_t i = 0; i < r.rows; ++i) {
        std::vector<T> row;
        for (std::size_t j = 0; j < r.cols; ++j) row.push_back(r.at(i, j));
        rows.push_back(std::move(row));
    }
    return Mat<T>::from_rows(rows);
}

template <class T>
Rect<T> mat_to_rect(const Mat<T>& m) {
    Rect<T> r;
    r.rows = r.cols = m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r.e.push_back(m.at(i, j));
    return r;
}

/// Factor m = P * U in sorted coordinates: P block upper (parabolic), U block
/// lower unipotent. Back-substitution over block columns right to left; each
/// diagonal block of P must be invertible, which is exactly membership of m
/// in the open cell.
template <class T>
void block_pu_factor(const Mat<T>& m, const std::vector<std::pair<std::size_t, std::size_t>>& blocks,
                     Mat<T>& P, Mat<T>& U, const T& one, const T& zero) {
    const std::size_t nb = blocks.size();
    const std::size_t n = m.size();
    P = Mat<T>(n, zero);
    U = Mat<T>(n, zero);
    for (std::size_t i = 0; i < n; ++i) U.at(i, i) = one;

    auto put = [&](Mat<T>& dst, std::size_t bi, std::size_t bj, const Rect<T>& r) {
        for (std::size_t i = 0; i < r.rows; ++i)
            for (std::size_t j = 0; j < r.cols; ++j)
                dst.at(blocks[bi].first + i, blocks[bj].first + j) = r.at(i, j);
    };
    std::vector<Mat<T>> diag_inv(nb, Mat<T>());

    for (std::size_t Jp = nb; Jp-- > 0;) {
        for (std::size_t Ip = nb; Ip-- > 0;) {
            Rect<T> acc = take_block<T>(m, blocks[Ip], blocks[Jp]);
            if (Ip > Jp) {
                // U_IJ = P_II^{-1} (M_IJ - sum_{L>I} P_IL U_LJ)
                for (std::size_t L = Ip + 1; L < nb; ++L)
                    rect_sub_inplace(acc, rect_mul(take_block<T>(P, blocks[Ip], blocks[L]),
                                                   take_block<T>(U, blocks[L], blocks[Jp])));
                Rect<T> u = rect_mul(mat_to_rect(diag_inv[Ip]), acc);
                put(U, Ip, Jp, u);
            } else {
                // P_IJ = M_IJ - sum_{L>J} P_IL U_LJ
                for (std::size_t L = Jp + 1; L < nb; ++L)
                    rect_sub_inplace(acc, rect_mul(take_block<T>(P, blocks[Ip], blocks[L]),
                                                   take_block<T>(U, blocks[L], blocks[Jp])));
                put(P, Ip, Jp, acc);
                if (Ip == Jp) {
                    try {
                        diag_inv[Ip] = inverse(rect_to_mat(acc));
                    } catch (const DomainError&) {
                        throw DomainError("reduction is not in the open cell for this "
                                          "representative (diagonal block " +
                                          std::to_string(Ip) + " is singular)");
                    }
                }
            }
        }
    }
}

} // namespace detail

struct BruhatResidue {
    FpMat pbar;
    RationalMat w; // monomial matrix with entries 0, 1, -1; exact over R
    FpMat ubar;
};

/// Factor an invertible residue as hbar = pbar * ubar * w with pbar in the
/// parabolic, ubar in the opposite unipotent, and w a permutation-type coset
/// representative.
///
/// w is found bottom-up: for each row from the last upward, take the LARGEST
/// unused column index that keeps the trailing rows-by-chosen-columns block
/// invertible. Residues already in the open cell therefore get w = identity.
/// For SL one entry of w is negated (the one in its first column) whenever the
/// permutation is odd, keeping the representative in SL(R).
inline BruhatResidue bruhat_residue(const FpMat& hbar, const ParabolicData& pd) {
    const std::size_t n = hbar.size();
    if (n != pd.dim()) throw DomainError("residue size does not match parabolic data");
    const std::uint32_t p = hbar.at(0, 0).p();
    if (det(hbar).is_zero()) throw DomainError("residue matrix is singular");

    FpMat hs = detail::perm_mat_fp(pd.sorted, p) * hbar *
               detail::perm_mat_fp(pd.sorted, p).transpose();

    // greedy column choice, bottom row first
    std::vector<std::size_t> chosen(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t r = n; r-- > 0;) {
        bool found = false;
        for (std::size_t c = n; c-- > 0;) {
            if (used[c]) continue;
            // candidate trailing block: rows r..n-1, columns {c} + already chosen
            std::vector<std::size_t> cols;
            cols.push_back(c);
            for (std::size_t rr = r + 1; rr < n; ++rr) cols.push_back(chosen[rr]);
            std::sort(cols.begin(), cols.end());
            FpMat sub(n - r, Fp::zero(p));
            for (std::size_t i = 0; i < n - r; ++i)
                for (std::size_t j = 0; j < n - r; ++j)
                    sub.at(i, j) = hs.at(r + i, cols[j]);
            if (!det(sub).is_zero()) {
                chosen[r] = c;
                used[c] = true;
                found = true;
                break;
            }
        }
        if (!found) throw DomainError("internal: rank profile selection failed");
    }

    // m = hs * Pi, with Pi e_k = e_{chosen[k]}
    RationalMat pi(n, RationalFn::zero(p));
    for (std::size_t k = 0; k < n; ++k) pi.at(chosen[k], k) = RationalFn::one(p);
    RationalMat w_sorted = pi.transpose(); // w = Pi^{-1}

    if (pd.lambda.group.family == Family::SL) {
        // parity of the permutation
        std::vector<std::size_t> perm = chosen;
        bool odd = false;
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            if (seen[i]) continue;
            std::size_t len = 0, j = i;
            while (!seen[j]) { seen[j] = true; j = perm[j]; ++len; }
            if (len % 2 == 0) odd = !odd;
        }
        if (odd) {
            for (std::size_t r = 0; r < n; ++r)
                if (!w_sorted.at(r, 0).is_zero()) w_sorted.at(r, 0) = -w_sorted.at(r, 0);
        }
    }

    FpMat m = hs * inverse(residue_mat(w_sorted));
    FpMat pbar_s(n, Fp::zero(p)), ubar_s(n, Fp::zero(p));
    detail::block_pu_factor(m, pd.blocks, pbar_s, ubar_s, Fp::one(p), Fp::zero(p));

    // back to original coordinates
    FpMat ps = detail::perm_mat_fp(pd.sorted, p);
    RationalMat pr = detail::perm_mat_rational(pd.sorted, p);
    BruhatResidue out{ps.transpose() * pbar_s * ps, pr.transpose() * w_sorted * pr,
                      ps.transpose() * ubar_s * ps};

    // structural checks: support patterns and exact refactorization
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (pd.in_negative_unipotent(i, j) && !out.pbar.at(i, j).is_zero())
                throw DomainError("internal: parabolic factor leaks below the parabolic");
            if (i != j && !pd.in_negative_unipotent(i, j) && !out.ubar.at(i, j).is_zero())
                throw DomainError("internal: unipotent factor leaks outside U-");
        }
    if (!(out.pbar * out.ubar * residue_mat(out.w) == hbar))
        throw DomainError("internal: residue factorization does not multiply back");
    return out;
}

struct BigCellLift {
    SeriesMat phat;
    SeriesMat uhat;
};

/// Lift the residue factorization over the completed ring: hhat * w^{-1} =
/// phat * uhat with phat in P+(Rhat) and uhat in U-(Rhat). Diagonal blocks
/// are invertible to precision because their residues are; elimination there
/// costs no precision.
inline BigCellLift big_cell_lift(const SeriesMat& hhat, const RationalMat& w,
                                 const ParabolicData& pd) {
    const std::size_t n = hhat.size();
    if (n != pd.dim() || w.size() != n) throw DomainError("size mismatch in big cell lift");
    const std::uint32_t p = hhat.at(0, 0).p();

    SeriesMat m = mul_series_exact(hhat, inverse(w));
    RationalMat pr = detail::perm_mat_rational(pd.sorted, p);
    SeriesMat ms = mul_exact_series(pr, mul_series_exact(m, pr.transpose()));

    long long work = max_prec(ms);
    SeriesMat phat_s(n, TruncatedSeries::zero_at(p, work));
    SeriesMat uhat_s(n, TruncatedSeries::zero_at(p, work));
    detail::block_pu_factor(ms, pd.blocks, phat_s, uhat_s, TruncatedSeries::one_at(p, work),
                            TruncatedSeries::zero_at(p, work));

    BigCellLift out{mul_exact_series(pr.transpose(), mul_series_exact(phat_s, pr)),
                    mul_exact_series(pr.transpose(), mul_series_exact(uhat_s, pr))};
    if (!agrees_mat(out.phat * out.uhat, m))
        throw DomainError("internal: big cell lift does not multiply back to precision");
    return out;
}

struct UnipotentSplit {
    RationalMat u;  // entrywise truncation, degrees < n0, exactly unipotent in U-
    SeriesMat vhat; // uhat * u^{-1}, congruent to 1 mod t^n0
};

/// Split uhat = vhat * u with u the entrywise polynomial truncation below
/// t^n0 and vhat = 1 + O(t^n0) still in U-.
inline UnipotentSplit truncate_unipotent(const SeriesMat& uhat, long long n0,
                                         const ParabolicData& pd) {
    const std::size_t n = uhat.size();
    if (n != pd.dim()) throw DomainError("size mismatch in unipotent truncation");
    const std::uint32_t p = uhat.at(0, 0).p();
    if (n0 < 1) throw DomainError("truncation order must be positive");

    RationalMat u = identity_rational(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const TruncatedSeries& e = uhat.at(i, j);
            if (i == j) {
                if (!e.agrees_with_exact(RationalFn::one(p)))
                    throw DomainError("unipotent factor does not have unit diagonal");
                continue;
            }
            if (!pd.in_negative_unipotent(i, j)) {
                if (!e.agrees_with_exact(RationalFn::zero(p)))
                    throw DomainError("unipotent factor has support outside U-");
                continue;
            }
            if (e.prec() < n0)
                throw PrecisionError("truncation to t^" + std::to_string(n0) +
                                         " needs more precision than entry (" +
                                         std::to_string(i) + "," + std::to_string(j) + ") carries",
                                     n0);
            if (!e.is_zero_at_prec() && *e.val() < 0)
                throw DomainError("unipotent factor entry has negative valuation");
            std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(n0), 0);
            for (long long k = 0; k < n0; ++k) coeffs[static_cast<std::size_t>(k)] = e.coeff_at(k).value();
            u.at(i, j) = RationalFn::from_poly(Poly(p, std::move(coeffs)));
        }

    SeriesMat vhat = mul_series_exact(uhat, inverse(u));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const TruncatedSeries& e = vhat.at(i, j);
            long long guard = std::min(n0, e.prec());
            for (long long k = e.val_floor() < 0 ? e.val_floor() : 0; k < guard; ++k) {
                Fp want = (i == j && k == 0) ? Fp::one(p) : Fp::zero(p);
                if (!(e.coeff_at(k) == want))
                    throw DomainError("internal: residual factor is not 1 mod t^" +
                                      std::to_string(n0));
            }
            if (i != j && !pd.in_negative_unipotent(i, j) &&
                !e.agrees_with_exact(RationalFn::zero(p)))
                throw DomainError("internal: residual factor leaks outside U-");
        }
    return {std::move(u), std::move(vhat)};
}

/// Descend a decomposition over the completed ring to one over R itself:
/// replace h2hat by the exact u * w assembled from its residue cell data and
/// a truncation of the unipotent part, then solve for h1 exactly. The
/// replacement changes h2 only by a factor congruent to 1 mod t^n0, and
/// conjugating that factor by the realized cocharacter keeps it integral,
/// which is asserted; integrality of the exact h1 certifies the result.
inline CartanDecomposition descend_decomposition(const RationalMat& g,
                                                 const CartanDecompositionHat& approx,
                                                 const GroupTag& tag) {
    if (g.size() != tag.mat_size()) throw DomainError("matrix size does not match group");
    const std::uint32_t p = tag.p;
    const Cocharacter& lambda = approx.lambda;
    if (!lambda.is_dominant()) throw DomainError("approximate decomposition has non-dominant weights");

    ParabolicData pd = ParabolicData::build(lambda);
    RationalMat dmat = lambda.realize();

    if (pd.weight_spread() == 0) { // central cocharacter: h2 = 1 works outright
        RationalMat h1 = g * inverse(dmat);
        MembershipReport rep = is_member(h1, tag, Ring::R);
        if (!rep)
            throw DomainError("descent failed for central weights: " + rep.reason);
        return {std::move(h1), lambda, identity_rational(g.size(), p)};
    }

    BruhatResidue br = bruhat_residue(residue_mat(approx.h2), pd);
    BigCellLift lift = big_cell_lift(approx.h2, br.w, pd);
    long long n0 = pd.weight_spread() + 1;
    UnipotentSplit split = truncate_unipotent(lift.uhat, n0, pd);

    // threshold check: conjugating vhat by the cocharacter must stay integral
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            TruncatedSeries moved =
                split.vhat.at(i, j).shifted(pd.weights[i] - pd.weights[j]);
            if (!moved.is_zero_at_prec() && *moved.val() < 0)
                throw DomainError("internal: truncation threshold left a non-integral conjugate");
            if (moved.is_zero_at_prec() && moved.prec() < 0)
                throw PrecisionError("conjugate integrality cannot be certified at this precision",
                                     n0 + pd.weight_spread());
        }

    RationalMat h2 = split.u * br.w;
    RationalMat h1 = g * inverse(h2) * inverse(dmat);

    MembershipReport r2 = is_member(h2, tag, Ring::R);
    if (!r2) throw DomainError("descended h2 is not in the integral group: " + r2.reason);
    MembershipReport r1 = is_member(h1, tag, Ring::R);
    if (!r1)
        throw DomainError("descended h1 is not in the integral group (" + r1.reason +
                          "); the approximate decomposition may be wrong or too imprecise");
    if (!(h1 * dmat * h2 == g)) throw DomainError("internal: descent reconstruction failed");
    return {std::move(h1), lambda, std::move(h2)};
}

} // namespace cartan
