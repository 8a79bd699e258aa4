#pragma once

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "cartan/sampling.hpp"
#include "cartan/smith.hpp"

namespace cartan {

struct CensusRow {
    std::vector<long long> d; // dominant weights of the seed coset
    std::size_t states;       // distinct truncated states first reached from this seed
};

struct CensusResult {
    std::vector<CensusRow> rows;
    std::size_t total_states = 0;
    std::size_t false_merges = 0; // truncated state reached from two different seeds
    std::size_t false_splits = 0; // state whose computed weights differ from its seed
    std::size_t unresolved = 0;   // classification ran out of precision
};

namespace detail {

/// weakly decreasing vectors with entries in [lo, hi], filtered per family
inline void enumerate_dominant(const GroupTag& tag, long long lo, long long hi,
                               std::vector<long long>& cur, std::vector<std::vector<long long>>& out) {
    if (cur.size() == tag.n) {
        Cocharacter lam(tag, cur);
        if (lam.is_dominant() && (tag.family != Family::SL || lam.sum() == 0)) out.push_back(cur);
        return;
    }
    long long cap = cur.empty() ? hi : cur.back();
    for (long long v = cap; v >= lo; --v) {
        cur.push_back(v);
        enumerate_dominant(tag, lo, hi, cur, out);
        cur.pop_back();
    }
}

struct CensusMove {
    RationalMat g;
    bool left;
};

/// Generators of G(R) that can change a window [-vmax, N): t-power payloads
/// up to t^{N+vmax-1}.
inline std::vector<CensusMove> census_moves(const GroupTag& tag, long long N, long long vmax) {
    const std::uint32_t p = tag.p;
    const std::size_t n = tag.n;
    const long long kmax = N + vmax;
    std::vector<CensusMove> moves;

    auto both = [&](const RationalMat& m) {
        moves.push_back({m, true});
        moves.push_back({m, false});
    };
    auto payloads = [&](long long kfrom) {
        std::vector<RationalFn> cs;
        for (long long k = kfrom; k < kmax; ++k)
            for (std::uint32_t c = 1; c < p; ++c)
                cs.push_back(RationalFn::constant(Fp(c, p)) * RationalFn::t_power(k, p));
        return cs;
    };

    switch (tag.family) {
        case Family::GL:
        case Family::SL: {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    for (const RationalFn& c : payloads(0)) {
                        RationalMat e = identity_rational(n, p);
                        e.at(i, j) = c;
                        both(e);
                    }
                }
            if (tag.family == Family::GL) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::uint32_t c = 2; c < p; ++c) {
                        RationalMat u = identity_rational(n, p);
                        u.at(i, i) = RationalFn::from_int(c, p);
                        both(u);
                    }
                    for (const RationalFn& c : payloads(1)) {
                        RationalMat u = identity_rational(n, p);
                        u.at(i, i) = RationalFn::one(p) + c;
                        both(u);
                    }
                }
            }
            break;
        }
        case Family::SP: {
            for (const RationalFn& c : payloads(0)) {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < n; ++k) {
                        if (i != k) both(sp_block_elem(n, p, i, k, c));
                        if (i <= k) {
                            both(sp_sym_upper(n, p, i, k, c));
                            both(sp_sym_lower(n, p, i, k, c));
                        }
                    }
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) both(sp_pair_swap(n, p, i, j));
                both(sp_flip(n, p, i));
                std::vector<RationalFn> units(n, RationalFn::one(p));
                for (std::uint32_t c = 2; c < p; ++c) {
                    units[i] = RationalFn::from_int(c, p);
                    both(sp_unit_diag(n, p, units));
                }
                for (const RationalFn& c : payloads(1)) {
                    units[i] = RationalFn::one(p) + c;
                    both(sp_unit_diag(n, p, units));
                }
            }
            break;
        }
    }
    return moves;
}

/// canonical byte key of a state: coefficients on [-vmax, N), little endian
inline std::string census_key(const SeriesMat& m, long long N, long long vmax) {
    std::string key;
    key.reserve(m.size() * m.size() * static_cast<std::size_t>(N + vmax) * 4);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            for (long long e = -vmax; e < N; ++e) {
                std::uint32_t v = m.at(i, j).coeff_at(e).value();
                for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
            }
    return key;
}

/// weights recovered by the truncated decomposition, folded for sp
inline std::vector<long long> census_classify(const SeriesMat& state, const GroupTag& tag) {
    if (tag.family != Family::SP) return snf_decompose(state, tag).lambda.d;
    GroupTag ambient(Family::GL, 2 * tag.n, tag.p);
    std::vector<long long> full = snf_decompose(state, ambient).lambda.d;
    for (std::size_t i = 0; i < tag.n; ++i)
        if (full[i] != -full[2 * tag.n - 1 - i])
            return full; // unpaired weights: report as-is, caller counts the split
    return std::vector<long long>(full.begin(), full.begin() + tag.n);
}

} // namespace detail

/// Exhaustive walk of the double cosets with weights bounded by vmax, carried
/// out on matrix windows [-vmax, N): each dominant seed t^lambda is pushed
/// through left and right multiplication by integral generators, every state
/// reached is classified by the truncated decomposition, and the walk records
/// states that two seeds share (false merge) or that classify away from their
/// own seed (false split). Both counts are zero exactly when the window is
/// faithful to the exact theory at these parameters.
inline CensusResult census(const GroupTag& tag, long long N, long long vmax,
                           std::size_t budget = 10'000'000) {
    if (N < 1) throw DomainError("census needs precision at least 1");
    if (vmax < 0) throw DomainError("census needs a nonnegative weight bound");
    const std::uint32_t p = tag.p;
    const std::size_t m = tag.mat_size();

    // size of GL_m(R/t^N) as the scale of one orbit side
    long double est = 1.0L;
    for (std::size_t i = 0; i < m; ++i)
        est *= powl(static_cast<long double>(p), static_cast<long double>(m)) -
               powl(static_cast<long double>(p), static_cast<long double>(i));
    est *= powl(static_cast<long double>(p), static_cast<long double>(m * m) * (N - 1));
    if (est > static_cast<long double>(budget)) {
        char approx[32];
        std::snprintf(approx, sizeof approx, "%.3Lg", est);
        throw DomainError("census state space is too large at p=" + std::to_string(p) +
                          ", n=" + std::to_string(tag.n) + ", precision " + std::to_string(N) +
                          ": about " + approx + " truncated group elements exceed the budget of " +
                          std::to_string(budget));
    }

    std::vector<std::vector<long long>> seeds;
    std::vector<long long> cur;
    detail::enumerate_dominant(tag, -vmax, vmax, cur, seeds);
    std::vector<detail::CensusMove> moves = detail::census_moves(tag, N, vmax);

    CensusResult res;
    std::unordered_map<std::string, std::size_t> owner; // key -> seed index
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        Cocharacter lam(tag, seeds[s]);
        SeriesMat seed = clamp_mat(expand_mat(lam.realize(), N), N);
        std::vector<SeriesMat> queue;
        std::size_t claimed = 0;

        auto visit = [&](const SeriesMat& state) {
            std::string key = detail::census_key(state, N, vmax);
            auto it = owner.find(key);
            if (it != owner.end()) {
                if (it->second != s) ++res.false_merges;
                return;
            }
            owner.insert({std::move(key), s});
            ++claimed;
            try {
                if (detail::census_classify(state, tag) != seeds[s]) ++res.false_splits;
            } catch (const PrecisionError&) {
                ++res.unresolved;
            }
            queue.push_back(state);
        };

        visit(seed);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            SeriesMat state = queue[head];
            if (owner.size() > budget)
                throw DomainError("census exceeded its state budget of " + std::to_string(budget));
            for (const detail::CensusMove& mv : moves) {
                SeriesMat next = mv.left ? mul_exact_series(mv.g, state)
                                         : mul_series_exact(state, mv.g);
                visit(clamp_mat(next, N));
            }
        }
        res.rows.push_back({seeds[s], claimed});
        res.total_states += claimed;
    }
    return res;
}

} // namespace cartan
