// Decompose one matrix three ways: exactly over the local ring, truncated
// over the completion, and exactly again by descending through the
// completion. Prints every factor and the verification verdicts.

#include <iostream>

#include "cartan/cartan.hpp"

using namespace cartan;

int main() {
    const std::uint32_t p = 5;
    GroupTag tag(Family::GL, 2, p);

    RationalMat g = parse_matrix("1, 1; t, 0", p);
    std::cout << "g = " << render_matrix(g) << "  over F_" << p << "(t)\n\n";

    // exact reduction over the local ring
    CartanDecomposition dec = snf_decompose(g, tag);
    std::cout << "h1     = " << render_matrix(dec.h1) << "\n";
    std::cout << "lambda =";
    for (long long d : dec.lambda.d) std::cout << " " << d;
    std::cout << "\nh2     = " << render_matrix(dec.h2) << "\n";

    VerifyReport rep = verify_decomposition(g, dec, tag);
    std::cout << "exact verification: " << (rep.ok() ? "pass" : "fail") << "\n\n";

    // the same reduction at finite precision
    SeriesMat ghat = expand_mat(g, 8);
    CartanDecompositionHat hat = snf_decompose(ghat, tag);
    std::cout << "truncated at t^8, lambda =";
    for (long long d : hat.lambda.d) std::cout << " " << d;
    std::cout << ", verification: " << (verify_decomposition(ghat, hat, tag).ok() ? "pass" : "fail")
              << "\n";

    // descend the truncated factorization back to an exact one
    CartanDecomposition down = descend_decomposition(g, hat, tag);
    std::cout << "descended h2 = " << render_matrix(down.h2) << "\n";
    std::cout << "descent verification: "
              << (verify_decomposition(g, down, tag).ok() ? "pass" : "fail") << "\n";

    // the minors oracle agrees
    std::vector<long long> d = divisor_invariant(g);
    std::cout << "minor valuations give lambda =";
    for (long long x : d) std::cout << " " << x;
    std::cout << "\n";
    return 0;
}
