#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cartan/census.hpp"
#include "cartan/descent.hpp"
#include "cartan/json_io.hpp"

namespace cartan {

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--input", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// dominant weights straight from the minors oracle, in the family's shape
inline Cocharacter oracle_weights(const RationalMat& g, const GroupTag& tag) {
    if (tag.family == Family::SP) return Cocharacter(tag, sp_divisor_check(g, tag));
    std::vector<long long> d = divisor_invariant(g);
    if (tag.family == Family::SL) {
        long long s = 0;
        for (long long x : d) s += x;
        if (s != 0) throw DomainError("matrix is not in sl: determinant has valuation " +
                                      std::to_string(s));
    }
    return Cocharacter(tag, d);
}

/// Truncated decomposition used as descent input. For sp the matrix is
/// decomposed in the ambient general linear group and the diagonal is
/// reordered into symplectic shape; the factors are then integral but not
/// symplectic, which descent tolerates and re-checks at the end.
inline CartanDecompositionHat hat_decomposition_for(const RationalMat& g, const GroupTag& tag,
                                                    long long N) {
    SeriesMat ghat = expand_mat(g, N);
    if (tag.family != Family::SP) return snf_decompose(ghat, tag);

    GroupTag ambient(Family::GL, static_cast<std::uint32_t>(tag.mat_size()), tag.p);
    CartanDecompositionHat amb = snf_decompose(ghat, ambient);
    const std::size_t m = tag.mat_size();
    for (std::size_t i = 0; i < tag.n; ++i)
        if (amb.lambda.d[i] != -amb.lambda.d[m - 1 - i])
            throw DomainError("weights do not pair up; the matrix is not symplectic");
    Cocharacter lam(tag, std::vector<long long>(amb.lambda.d.begin(),
                                                amb.lambda.d.begin() + tag.n));

    std::vector<long long> w = lam.realized_weights();
    std::vector<std::size_t> sigma = detail::argsort_desc(w);
    RationalMat perm(m, RationalFn::zero(tag.p));
    for (std::size_t i = 0; i < m; ++i) perm.at(i, sigma[i]) = RationalFn::one(tag.p);
    // diag(sorted) = perm * diag(w) * perm^T, so g = (h1 perm) diag(w) (perm^T h2)
    return {mul_series_exact(amb.h1, perm), lam, mul_exact_series(perm.transpose(), amb.h2)};
}

inline long long default_descent_precision(const Cocharacter& lam) {
    std::vector<long long> w = lam.realized_weights();
    long long lo = w[0], hi = w[0], amax = 0;
    for (long long x : w) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        amax = std::max(amax, x < 0 ? -x : x);
    }
    return 2 * (hi - lo + 1) + amax + 4;
}

inline void print_report(const VerifyReport& rep, bool as_json, std::ostream& out) {
    if (as_json) {
        nlohmann::json clauses = nlohmann::json::array();
        for (const auto& c : rep.clauses)
            clauses.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        out << nlohmann::json{{"ok", rep.ok()}, {"clauses", clauses}}.dump(2) << "\n";
        return;
    }
    for (const auto& c : rep.clauses)
        out << (c.ok ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
    out << "verdict: " << (rep.ok() ? "pass" : "fail") << "\n";
}

} // namespace detail

/// Command line front end. Returns 0 on success, 1 when the computation or
/// verification reports a failure, 2 on command line misuse.
inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"Cartan decompositions over F_p(t): g = h1 * t^lambda * h2"};
    app.require_subcommand(1);

    std::string group = "gl", input = "-";
    std::uint32_t p = 0, n = 0;
    long long precision = 0, vmax = 1;
    std::size_t budget = 10'000'000;
    std::uint64_t seed = 0;
    long long random_deg = -1;
    bool as_json = false;

    auto add_group_opts = [&](CLI::App* cmd, bool need_matrix) {
        cmd->add_option("--group", group, "group family: gl, sl, or sp")
            ->check(CLI::IsMember({"gl", "sl", "sp"}));
        cmd->add_option("--p", p, "field characteristic (prime)")->required();
        cmd->add_option("--n", n, "group rank")->required();
        if (need_matrix)
            cmd->add_option("--input", input,
                            "matrix file, '-' for stdin (rows 'a, b; c, d')");
        cmd->add_flag("--json", as_json, "emit JSON");
    };

    CLI::App* dec_cmd = app.add_subcommand("decompose", "factor g as h1 * t^lambda * h2");
    add_group_opts(dec_cmd, true);
    dec_cmd->add_option("--precision", precision,
                        "work in the completion, truncating at t^N");
    dec_cmd->add_option("--random", random_deg,
                        "ignore --input, sample g with entry degrees up to this");
    dec_cmd->add_option("--seed", seed, "seed for --random");

    CLI::App* ver_cmd = app.add_subcommand("verify", "check a decomposition bundle");
    ver_cmd->add_option("--input", input, "JSON bundle, '-' for stdin");
    ver_cmd->add_flag("--json", as_json, "emit JSON");

    CLI::App* des_cmd = app.add_subcommand("descend",
                                           "exact decomposition through the completion");
    add_group_opts(des_cmd, true);
    des_cmd->add_option("--precision", precision,
                        "truncation used for the intermediate decomposition");

    CLI::App* ora_cmd = app.add_subcommand("oracle", "dominant weights from minor valuations");
    add_group_opts(ora_cmd, true);

    CLI::App* cen_cmd = app.add_subcommand("census", "walk truncated double cosets");
    add_group_opts(cen_cmd, false);
    cen_cmd->add_option("--precision", precision, "window upper bound t^N")->required();
    cen_cmd->add_option("--vmax", vmax, "weight bound for the seed cosets");
    cen_cmd->add_option("--budget", budget, "largest admissible state count");

    try {
        std::reverse(args.begin(), args.end()); // the vector overload wants them reversed
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        GroupTag tag(family_from_string(group), n == 0 ? 1 : n, p == 0 ? 2 : p);

        if (dec_cmd->parsed()) {
            RationalMat g = identity_rational(tag.mat_size(), tag.p);
            if (random_deg >= 0) {
                Rng rng(seed);
                switch (tag.family) {
                    case Family::GL:
                        g = random_gl_k(rng, tag.mat_size(), tag.p,
                                        static_cast<std::size_t>(random_deg));
                        break;
                    case Family::SL:
                        g = random_sl_k(rng, tag.mat_size(), tag.p,
                                        static_cast<std::size_t>(random_deg));
                        break;
                    case Family::SP:
                        g = random_sp_k(rng, tag, 3, static_cast<std::size_t>(random_deg), 8);
                        break;
                }
            } else {
                g = parse_matrix(detail::read_input(input, in), tag.p);
                if (g.size() != tag.mat_size())
                    throw DomainError("matrix has size " + std::to_string(g.size()) +
                                      ", expected " + std::to_string(tag.mat_size()));
            }
            if (dec_cmd->count("--precision")) {
                if (precision < 1) throw DomainError("precision must be at least 1");
                if (tag.family == Family::SP)
                    throw DomainError("truncated symplectic reduction is not provided; "
                                      "use exact mode or descend");
                SeriesMat ghat = expand_mat(g, precision);
                CartanDecompositionHat dec = snf_decompose(ghat, tag);
                out << decomposition_to_json(tag, ghat, dec).dump(2) << "\n";
            } else {
                CartanDecomposition dec = tag.family == Family::SP ? sp_decompose(g, tag)
                                                                   : snf_decompose(g, tag);
                out << decomposition_to_json(tag, g, dec).dump(2) << "\n";
            }
            return 0;
        }

        if (ver_cmd->parsed()) {
            nlohmann::json j = nlohmann::json::parse(detail::read_input(input, in));
            VerifyReport rep = verify_bundle(bundle_from_json(j));
            detail::print_report(rep, as_json, out);
            return rep.ok() ? 0 : 1;
        }

        if (des_cmd->parsed()) {
            RationalMat g = parse_matrix(detail::read_input(input, in), tag.p);
            if (g.size() != tag.mat_size())
                throw DomainError("matrix has size " + std::to_string(g.size()) + ", expected " +
                                  std::to_string(tag.mat_size()));
            Cocharacter lam = detail::oracle_weights(g, tag);
            long long N = des_cmd->count("--precision") ? precision
                                                        : detail::default_descent_precision(lam);
            if (N < 1) throw DomainError("precision must be at least 1");
            CartanDecompositionHat hat = detail::hat_decomposition_for(g, tag, N);
            CartanDecomposition dec = descend_decomposition(g, hat, tag);
            out << decomposition_to_json(tag, g, dec).dump(2) << "\n";
            return 0;
        }

        if (ora_cmd->parsed()) {
            RationalMat g = parse_matrix(detail::read_input(input, in), tag.p);
            if (g.size() != tag.mat_size())
                throw DomainError("matrix has size " + std::to_string(g.size()) + ", expected " +
                                  std::to_string(tag.mat_size()));
            Cocharacter lam = detail::oracle_weights(g, tag);
            if (as_json) {
                out << nlohmann::json{{"lambda", lam.d}}.dump(2) << "\n";
            } else {
                out << "lambda:";
                for (long long x : lam.d) out << " " << x;
                out << "\n";
            }
            return 0;
        }

        // census
        CensusResult res = census(tag, precision, vmax, budget);
        if (as_json) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : res.rows)
                rows.push_back({{"lambda", r.d}, {"states", r.states}});
            out << nlohmann::json{{"rows", rows},
                                  {"total_states", res.total_states},
                                  {"false_merges", res.false_merges},
                                  {"false_splits", res.false_splits},
                                  {"unresolved", res.unresolved}}
                       .dump(2)
                << "\n";
        } else {
            out << "lambda\tstates\n";
            for (const auto& r : res.rows) {
                for (std::size_t i = 0; i < r.d.size(); ++i)
                    out << (i ? " " : "") << r.d[i];
                out << "\t" << r.states << "\n";
            }
            out << "# total_states " << res.total_states << "\n";
            out << "# false_merges " << res.false_merges << "\n";
            out << "# false_splits " << res.false_splits << "\n";
            out << "# unresolved " << res.unresolved << "\n";
        }
        return res.false_merges == 0 && res.false_splits == 0 && res.unresolved == 0 ? 0 : 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const PrecisionError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const CLI::Error& e) { // unreadable --input and friends
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cartan
