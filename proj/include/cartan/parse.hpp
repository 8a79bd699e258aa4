#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/matrix.hpp"

namespace cartan {

/// Recursive-descent parser for coefficient expressions over F_p(t):
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor ('*'? factor)*
///   factor := atom ('^' ['-'] int)?
///   atom   := primary ('/' primary)*
///   primary:= int | 't' | '(' expr ')'
///
/// Integers are reduced mod p. All arithmetic is exact in F_p(t), so
/// "t/t" parses to 1 and "1/(1-t)" stays an honest rational function.
class CoeffParser {
public:
    CoeffParser(std::string_view text, std::uint32_t p, std::size_t offset = 0)
        : s_(text), p_(p), off_(offset) {
        if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    }

    RationalFn parse() {
        RationalFn v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    RationalFn expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { ++pos_; neg = true; }
        RationalFn v = term();
        if (neg) v = -v;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') { ++pos_; v = v + term(); }
            else if (c == '-') { ++pos_; v = v - term(); }
            else return v;
        }
    }

    RationalFn term() {
        RationalFn v = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') { ++pos_; v = v * factor(); }
            else if (c == '(' || c == 't' || (c >= '0' && c <= '9')) v = v * factor();
            else return v;
        }
    }

    RationalFn factor() {
        RationalFn v = atom();
        skip_ws();
        if (peek() == '^') {
            std::size_t caret = pos_;
            ++pos_;
            skip_ws();
            bool neg = false;
            if (peek() == '-') { ++pos_; neg = true; }
            skip_ws();
            if (!(peek() >= '0' && peek() <= '9')) fail("expected integer exponent");
            long long e = static_cast<long long>(integer());
            if (neg) e = -e;
            if (v.is_zero() && e <= 0)
                throw ParseError("zero raised to a non-positive power", off_ + caret);
            v = v.pow(e);
        }
        return v;
    }

    RationalFn atom() {
        RationalFn v = primary();
        for (;;) {
            skip_ws();
            if (peek() != '/') return v;
            std::size_t slash = pos_;
            ++pos_;
            RationalFn d = primary();
            if (d.is_zero()) throw ParseError("division by zero", off_ + slash);
            v = v / d;
        }
    }

    RationalFn primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalFn v = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (c == 't') {
            ++pos_;
            return RationalFn::t_power(1, p_);
        }
        if (c >= '0' && c <= '9')
            return RationalFn::constant(Fp(integer() % p_, p_));
        fail("expected integer, 't', or '('");
        return RationalFn::zero(p_); // unreachable
    }

    std::uint64_t integer() {
        std::uint64_t v = 0;
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
            if (v > (1ull << 62)) throw ParseError("integer literal too large", off_ + start);
            ++pos_;
        }
        return v;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, off_ + pos_); }

    std::string_view s_;
    std::uint32_t p_;
    std::size_t off_;
    std::size_t pos_ = 0;
};

inline RationalFn parse_coeff(std::string_view text, std::uint32_t p) {
    return CoeffParser(text, p).parse();
}

/// Matrix text: rows separated by ';', entries by ','. The coefficient grammar
/// contains neither separator, so a flat split is unambiguous.
inline RationalMat parse_matrix(std::string_view text, std::uint32_t p) {
    std::vector<std::vector<RationalFn>> rows;
    std::size_t row_start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i != text.size() && text[i] != ';') continue;
        std::string_view row = text.substr(row_start, i - row_start);
        std::vector<RationalFn> entries;
        std::size_t cell_start = 0;
        for (std::size_t j = 0; j <= row.size(); ++j) {
            if (j != row.size() && row[j] != ',') continue;
            std::string_view cell = row.substr(cell_start, j - cell_start);
            entries.push_back(CoeffParser(cell, p, row_start + cell_start).parse());
            cell_start = j + 1;
        }
        rows.push_back(std::move(entries));
        row_start = i + 1;
    }
    if (rows.empty()) throw ParseError("empty matrix", 0);
    for (const auto& r : rows)
        if (r.size() != rows.size())
            throw ParseError("matrix is not square: " + std::to_string(rows.size()) +
                                 " rows, a row of " + std::to_string(r.size()) + " entries",
                             0);
    return RationalMat::from_rows(rows);
}

inline std::string render_matrix(const RationalMat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ", ";
            out += m.at(i, j).str();
        }
    }
    return out;
}

inline std::string render_matrix(const SeriesMat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out += ", ";
            out += m.at(i, j).str();
        }
    }
    return out;
}

} // namespace cartan
