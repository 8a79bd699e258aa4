// Acceptance gate: eight desk-scale property suites, one verdict line each.
// Sample counts, time limits, and tolerances are pinned in the code below;
// every arithmetic comparison is exact.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "cartan/cartan.hpp"

using namespace cartan;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int k, const std::string& what, bool ok) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", k, what.c_str());
    std::fflush(stdout);
}

constexpr std::uint64_t kCorpusSeed = 1001;
constexpr std::size_t kPerPair = 1000;
const std::vector<std::uint32_t> kPrimes{2, 3, 5};
const std::vector<std::size_t> kRanks{2, 3, 4};

struct CorpusEntry {
    std::uint32_t p;
    std::size_t n;
    RationalMat g;
    std::vector<long long> lambda; // from the reduction, criterion 1
};

std::vector<CorpusEntry>& corpus_cache() {
    static std::vector<CorpusEntry> c;
    return c;
}

void build_corpus_with_reduction(bool also_verify, std::size_t& failures) {
    auto& cache = corpus_cache();
    cache.clear();
    Rng rng(kCorpusSeed);
    for (std::size_t n : kRanks)
        for (std::uint32_t p : kPrimes) {
            GroupTag tag(Family::GL, static_cast<std::uint32_t>(n), p);
            for (std::size_t i = 0; i < kPerPair; ++i) {
                RationalMat g = random_gl_k(rng, n, p, 4);
                CartanDecomposition dec = snf_decompose(g, tag);
                if (also_verify && !verify_decomposition(g, dec, tag).ok()) ++failures;
                cache.push_back({p, n, std::move(g), dec.lambda.d});
            }
        }
}

} // namespace

TEST_CASE("round trip decomposition over the rational function field") {
    std::size_t failures = 0;
    auto t0 = Clock::now();
    build_corpus_with_reduction(true, failures);
    double dt = seconds_since(t0);

    bool ok = failures == 0 && dt < 60.0;
    report(1, "9000 exact reductions verify (" + std::to_string(failures) + " failures, " +
                  std::to_string(dt).substr(0, 5) + " s, limit 60)", ok);
    REQUIRE(failures == 0);
    REQUIRE(dt < 60.0);
}

TEST_CASE("reduction weights equal the minor valuation oracle") {
    std::size_t failures = 0;
    if (corpus_cache().empty()) build_corpus_with_reduction(false, failures);
    std::size_t mismatches = 0;
    for (const CorpusEntry& e : corpus_cache())
        if (divisor_invariant(e.g) != e.lambda) ++mismatches;

    bool ok = mismatches == 0 && !corpus_cache().empty();
    report(2, "oracle agreement on the same 9000 matrices (" + std::to_string(mismatches) +
                  " mismatches)", ok);
    REQUIRE(ok);
}

TEST_CASE("weights are invariant under integral translations") {
    Rng rng(3003);
    std::size_t bad = 0;
    const std::size_t trials = 500;
    for (std::size_t i = 0; i < trials; ++i) {
        std::uint32_t p = kPrimes[rng.below(kPrimes.size())];
        std::size_t n = kRanks[rng.below(kRanks.size())];
        RationalMat g = random_gl_k(rng, n, p, 4);
        RationalMat h = random_gl_r(rng, n, p, 2, 6);
        RationalMat hp = random_gl_r(rng, n, p, 2, 6);
        if (divisor_invariant(h * g * hp) != divisor_invariant(g)) ++bad;
    }
    report(3, "500 double coset translations preserve the invariant (" + std::to_string(bad) +
                  " violations)", bad == 0);
    REQUIRE(bad == 0);
}

TEST_CASE("symplectic reduction recovers planted cocharacters") {
    Rng rng(4004);
    std::size_t bad = 0;
    const std::size_t trials = 300;
    auto t0 = Clock::now();
    for (std::size_t i = 0; i < trials; ++i) {
        std::uint32_t p = i % 2 ? 3 : 5;
        GroupTag tag(Family::SP, 2, p);
        Cocharacter lam = random_dominant(rng, tag, 3);
        RationalMat g = random_sp_r(rng, 2, p, 2, 6) * lam.realize() * random_sp_r(rng, 2, p, 2, 6);
        CartanDecomposition dec = sp_decompose(g, tag);
        bool good = dec.lambda.d == lam.d && verify_decomposition(g, dec, tag).ok() &&
                    sp_divisor_check(g, tag) == lam.d;
        if (!good) ++bad;
    }
    double dt = seconds_since(t0);
    bool ok = bad == 0 && dt < 60.0;
    report(4, "300 planted sp_4 reductions recovered (" + std::to_string(bad) + " failures, " +
                  std::to_string(dt).substr(0, 5) + " s, limit 60)", ok);
    REQUIRE(bad == 0);
    REQUIRE(dt < 60.0);
}

TEST_CASE("descent through precision sixteen is exact") {
    Rng rng(5005);
    std::size_t bad = 0;
    const std::size_t trials = 200;
    const long long N = 16;
    for (std::size_t i = 0; i < trials; ++i) {
        std::uint32_t p = kPrimes[i % kPrimes.size()];
        GroupTag tag(Family::GL, 3, p);
        std::vector<long long> d(3);
        for (auto& x : d) x = rng.range(-2, 2);
        std::sort(d.begin(), d.end(), std::greater<>());
        RationalMat g = random_gl_r(rng, 3, p, 2, 6) * Cocharacter(tag, d).realize() *
                        random_gl_r(rng, 3, p, 2, 6);
        try {
            CartanDecompositionHat hat = snf_decompose(expand_mat(g, N), tag);
            CartanDecomposition dec = descend_decomposition(g, hat, tag);
            // descend_decomposition already asserts the conjugate integrality
            // threshold; reaching this point means it held
            bool good = dec.lambda.d == d && reconstruct(dec) == g &&
                        is_member(dec.h1, tag, Ring::R).ok && is_member(dec.h2, tag, Ring::R).ok;
            if (!good) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    report(5, "200 descents at precision 16 reconstruct exactly (" + std::to_string(bad) +
                  " failures)", bad == 0);
    REQUIRE(bad == 0);
}

TEST_CASE("truncated census finds no false merges or splits") {
    GroupTag tag(Family::GL, 2, 2);
    auto t0 = Clock::now();
    CensusResult res = census(tag, 3, 1, 10'000'000);
    double dt = seconds_since(t0);
    bool ok = res.false_merges == 0 && res.false_splits == 0 && res.unresolved == 0 &&
              res.total_states > 0 && dt < 120.0;
    report(6, "census at n=2, p=2, precision 3: " + std::to_string(res.total_states) +
                  " states, " + std::to_string(res.false_merges) + " merges, " +
                  std::to_string(res.false_splits) + " splits, " +
                  std::to_string(dt).substr(0, 5) + " s (limit 120)", ok);
    REQUIRE(res.false_merges == 0);
    REQUIRE(res.false_splits == 0);
    REQUIRE(res.unresolved == 0);
    REQUIRE(dt < 120.0);
}

TEST_CASE("coefficient tower obeys its laws at scale") {
    Rng rng(7007);
    const std::size_t trials = 10'000;
    std::size_t bad_val = 0, bad_hom = 0, bad_prec = 0, bad_round = 0;

    for (std::size_t i = 0; i < trials; ++i) {
        std::uint32_t p = kPrimes[rng.below(kPrimes.size())];
        RationalFn a = random_coeff(rng, p, 4), b = random_coeff(rng, p, 4);

        // valuation additivity, and subadditivity for sums
        if (!a.is_zero() && !b.is_zero()) {
            if (*(a * b).val() != *a.val() + *b.val()) ++bad_val;
            RationalFn s = a + b;
            if (!s.is_zero() && *s.val() < std::min(*a.val(), *b.val())) ++bad_val;
            if (a.is_integral() != (*a.val() >= 0)) ++bad_val;
        }

        // expansion commutes with ring operations
        long long N = 5 + static_cast<long long>(rng.below(6));
        TruncatedSeries ea = expand(a, N), eb = expand(b, N);
        if (!(ea + eb).agrees_with(expand(a + b, N))) ++bad_hom;
        if (!(ea * eb).agrees_with(expand(a * b, N))) ++bad_hom;

        // precision propagation formulas
        if ((ea + eb).prec() != N || (ea - eb).prec() != N) ++bad_prec;
        if ((ea * eb).prec() != std::min(ea.val_floor() + N, eb.val_floor() + N)) ++bad_prec;
        if (!a.is_zero()) {
            long long v = *a.val();
            if (ea.inverse().prec() != N - 2 * v) ++bad_prec;
            if (ea.shifted(3).prec() != N + 3 || ea.shifted(-2).prec() != N - 2) ++bad_prec;
        }

        // parse and render are mutually inverse
        if (parse_coeff(a.str(), p) != a) ++bad_round;
        if (parse_coeff(b.str(), p) != b) ++bad_round;
    }

    bool ok = bad_val == 0 && bad_hom == 0 && bad_prec == 0 && bad_round == 0;
    report(7, "10000 checks each: valuation " + std::to_string(bad_val) + ", expansion " +
                  std::to_string(bad_hom) + ", precision " + std::to_string(bad_prec) +
                  ", round trip " + std::to_string(bad_round) + " failures", ok);
    REQUIRE(ok);
}

TEST_CASE("verification detects every tamper class") {
    Rng rng(8008);
    const std::size_t per_class = 100;
    std::size_t missed_membership = 0, missed_reconstruction = 0, missed_dominance = 0;

    for (std::size_t i = 0; i < per_class; ++i) {
        std::uint32_t p = kPrimes[rng.below(kPrimes.size())];
        std::size_t n = 2 + rng.below(2);
        GroupTag tag(Family::GL, static_cast<std::uint32_t>(n), p);
        RationalMat g = random_gl_k(rng, n, p, 3);
        CartanDecomposition dec = snf_decompose(g, tag);

        // membership: slide a t across the factors; diagonal matrices commute
        // with t^lambda, so the product is unchanged while both factors pick
        // up non unit determinants and leave GL(R)
        CartanDecomposition m = dec;
        RationalMat shift = identity_rational(n, p);
        shift.at(0, 0) = RationalFn::t_power(-1, p);
        RationalMat unshift = identity_rational(n, p);
        unshift.at(0, 0) = RationalFn::t_power(1, p);
        m.h1 = m.h1 * shift;
        m.h2 = unshift * m.h2;
        VerifyReport rm = verify_decomposition(g, m, tag);
        bool membership_flagged = !rm.clauses[1].ok && !rm.clauses[2].ok;
        if (!(reconstruct(m) == g) || !rm.clauses[0].ok || !membership_flagged || rm.ok())
            ++missed_membership;

        // reconstruction: perturb one entry of the input; adding 1 always
        // changes the entry, so only the reconstruction clause may fail
        std::size_t r = rng.below(n), c = rng.below(n);
        RationalMat g2 = g;
        g2.at(r, c) = g2.at(r, c) + RationalFn::one(p);
        VerifyReport rr = verify_decomposition(g2, dec, tag);
        if (rr.clauses[0].ok || !rr.clauses[1].ok || !rr.clauses[2].ok || rr.ok())
            ++missed_reconstruction;

        // dominance: disorder the weight vector (reverse it, or dent the
        // first entry when it is constant)
        CartanDecomposition dd = dec;
        if (dd.lambda.d.front() == dd.lambda.d.back()) dd.lambda.d.front() -= 1;
        else std::reverse(dd.lambda.d.begin(), dd.lambda.d.end());
        VerifyReport rd = verify_decomposition(g, dd, tag);
        if (rd.clauses[3].ok || rd.ok()) ++missed_dominance;
    }

    bool ok = missed_membership == 0 && missed_reconstruction == 0 && missed_dominance == 0;
    report(8, "tamper detection: membership " + std::to_string(per_class - missed_membership) +
                  "/100, reconstruction " +
                  std::to_string(per_class - missed_reconstruction) + "/100, dominance " +
                  std::to_string(per_class - missed_dominance) + "/100", ok);
    REQUIRE(ok);
}
