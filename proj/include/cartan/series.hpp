#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/rational.hpp"

namespace cartan {

/// Truncated t-adic series over F_p: coefficients known exactly for exponents
/// val() <= e < prec(), nothing known at prec() and beyond.
///
/// Two states:
///   - nonzero: coeffs nonempty, leading coefficient nonzero, valuation exact;
///   - zero at precision: coeffs empty and val() == prec(). The element is
///     indistinguishable from 0 at the carried precision; its valuation is
///     unknown and operations must not guess it.
///
/// Precision propagation:
///   add/sub:  prec = min(Na, Nb)
///   mul:      prec = min(va + Nb, vb + Na)   (va = prec for a zero element)
///   inverse:  requires exact valuation v; prec = N - 2v
class TruncatedSeries {
public:
    static TruncatedSeries zero_at(std::uint32_t p, long long prec) {
        TruncatedSeries s;
        s.p_ = p; s.val_ = prec; s.prec_ = prec;
        return s;
    }

    static TruncatedSeries from_coeffs(std::uint32_t p, long long val, long long prec,
                                       std::vector<std::uint32_t> coeffs) {
        if (static_cast<long long>(coeffs.size()) != prec - val)
            throw DomainError("series coefficient count does not match precision window");
        TruncatedSeries s;
        s.p_ = p; s.val_ = val; s.prec_ = prec; s.c_ = std::move(coeffs);
        for (auto& x : s.c_) x %= p;
        s.normalize();
        return s;
    }

    static TruncatedSeries constant_at(Fp c, long long prec) {
        if (prec <= 0 || c.is_zero()) return zero_at(c.p(), prec);
        std::vector<std::uint32_t> v(static_cast<std::size_t>(prec), 0);
        v[0] = c.value();
        return from_coeffs(c.p(), 0, prec, std::move(v));
    }
    static TruncatedSeries one_at(std::uint32_t p, long long prec) { return constant_at(Fp::one(p), prec); }

    std::uint32_t p() const { return p_; }
    long long prec() const { return prec_; }
    bool is_zero_at_prec() const { return c_.empty(); }

    /// exact valuation, or nullopt when the element is zero at its precision
    std::optional<long long> val() const {
        if (is_zero_at_prec()) return std::nullopt;
        return val_;
    }
    /// valuation lower bound (equals val() for nonzero elements, prec for flagged zeros)
    long long val_floor() const { return val_; }

    Fp coeff_at(long long e) const {
        if (e >= prec_) throw PrecisionError("coefficient beyond known precision", e + 1);
        if (e < val_) return Fp::zero(p_);
        return Fp(c_[static_cast<std::size_t>(e - val_)], p_);
    }

    TruncatedSeries operator+(const TruncatedSeries& o) const {
        check(o);
        long long P = std::min(prec_, o.prec_);
        long long lo = std::min(val_, o.val_);
        if (lo >= P) return zero_at(p_, P);
        std::vector<std::uint32_t> r(static_cast<std::size_t>(P - lo), 0);
        accumulate(r, lo, *this, 1);
        accumulate(r, lo, o, 1);
        return from_coeffs(p_, lo, P, std::move(r));
    }
    TruncatedSeries operator-(const TruncatedSeries& o) const {
        check(o);
        long long P = std::min(prec_, o.prec_);
        long long lo = std::min(val_, o.val_);
        if (lo >= P) return zero_at(p_, P);
        std::vector<std::uint32_t> r(static_cast<std::size_t>(P - lo), 0);
        accumulate(r, lo, *this, 1);
        accumulate(r, lo, o, -1);
        return from_coeffs(p_, lo, P, std::move(r));
    }
    TruncatedSeries operator-() const {
        TruncatedSeries s = *this;
        for (auto& x : s.c_) x = (p_ - x) % p_;
        return s;
    }

    TruncatedSeries operator*(const TruncatedSeries& o) const {
        check(o);
        long long P = std::min(val_ + o.prec_, o.val_ + prec_);
        long long lo = val_ + o.val_;
        if (c_.empty() || o.c_.empty() || lo >= P) return zero_at(p_, P);
        std::vector<std::uint32_t> r(static_cast<std::size_t>(P - lo), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            long long base = static_cast<long long>(i);
            if (base >= P - lo) break;
            std::size_t jmax = std::min(o.c_.size(), static_cast<std::size_t>(P - lo - base));
            for (std::size_t j = 0; j < jmax; ++j)
                r[static_cast<std::size_t>(base) + j] =
                    static_cast<std::uint32_t>((r[static_cast<std::size_t>(base) + j] +
                                                (std::uint64_t)c_[i] * o.c_[j]) % p_);
        }
        return from_coeffs(p_, lo, P, std::move(r));
    }

    TruncatedSeries operator*(Fp s) const {
        check_p(s.p());
        if (s.is_zero()) return zero_at(p_, prec_);
        TruncatedSeries r = *this;
        for (auto& x : r.c_)
            x = static_cast<std::uint32_t>((std::uint64_t)x * s.value() % p_);
        return r;
    }

    /// Inverse of an element whose valuation is exactly known.
    /// For val v and precision N the result carries precision N - 2v.
    TruncatedSeries inverse() const {
        if (is_zero_at_prec())
            throw PrecisionError("inverse of a series that is zero at precision " +
                                     std::to_string(prec_),
                                 prec_ + 1);
        long long L = prec_ - val_; // known unit-part length
        std::vector<std::uint32_t> s(static_cast<std::size_t>(L), 0);
        Fp c0inv = Fp(c_[0], p_).inverse();
        s[0] = c0inv.value();
        for (long long k = 1; k < L; ++k) {
            std::uint64_t acc = 0;
            for (long long j = 1; j <= k; ++j)
                acc = (acc + (std::uint64_t)c_[static_cast<std::size_t>(j)] *
                                 s[static_cast<std::size_t>(k - j)]) % p_;
            s[static_cast<std::size_t>(k)] =
                static_cast<std::uint32_t>((std::uint64_t)c0inv.value() * ((p_ - acc) % p_) % p_);
        }
        return from_coeffs(p_, -val_, prec_ - 2 * val_, std::move(s));
    }

    /// multiply by the exact monomial t^k
    TruncatedSeries shifted(long long k) const {
        TruncatedSeries s = *this;
        s.val_ += k;
        s.prec_ += k;
        return s;
    }

    /// lower the absolute precision to P (never raises it)
    TruncatedSeries clamped(long long P) const {
        if (P >= prec_) return *this;
        if (val_ >= P) return zero_at(p_, P);
        TruncatedSeries s = *this;
        s.prec_ = P;
        s.c_.resize(static_cast<std::size_t>(P - val_));
        s.normalize();
        return s;
    }

    /// agreement on every exponent below both precisions
    bool agrees_with(const TruncatedSeries& o) const {
        check(o);
        long long P = std::min(prec_, o.prec_);
        for (long long e = std::min(val_, o.val_); e < P; ++e)
            if (!(coeff_at(e) == o.coeff_at(e))) return false;
        return true;
    }

    /// agreement with an exact rational on every known exponent
    bool agrees_with_exact(const RationalFn& x) const;

    /// structural equality (same window, same coefficients)
    bool operator==(const TruncatedSeries& o) const {
        return p_ == o.p_ && val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_;
    }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    /// Laurent polynomial of the known coefficients; precision is carried out of band
    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            long long e = val_ + static_cast<long long>(i);
            if (!out.empty()) out += " + ";
            if (e == 0) { out += std::to_string(c_[i]); continue; }
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += "t";
            if (e != 1) out += "^" + std::to_string(e);
        }
        return out;
    }

private:
    TruncatedSeries() : p_(0), val_(0), prec_(0) {}

    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead == c_.size()) { c_.clear(); val_ = prec_; return; }
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long long>(lead));
            val_ += static_cast<long long>(lead);
        }
    }

    static void accumulate(std::vector<std::uint32_t>& r, long long lo,
                           const TruncatedSeries& s, int sign) {
        for (std::size_t i = 0; i < s.c_.size(); ++i) {
            long long idx = s.val_ - lo + static_cast<long long>(i);
            if (idx >= static_cast<long long>(r.size())) break;
            auto& slot = r[static_cast<std::size_t>(idx)];
            slot = sign > 0 ? (slot + s.c_[i]) % s.p_ : (slot + s.p_ - s.c_[i]) % s.p_;
        }
    }

    void check(const TruncatedSeries& o) const { check_p(o.p_); }
    void check_p(std::uint32_t q) const {
        if (p_ != q) throw DomainError("mixed characteristics in series arithmetic");
    }

    std::uint32_t p_;
    long long val_;
    long long prec_;
    std::vector<std::uint32_t> c_;
};

/// Expansion of an exact rational function to absolute precision N.
/// Zero and elements with valuation >= N come back flagged zero at N.
inline TruncatedSeries expand(const RationalFn& x, long long N) {
    std::uint32_t p = x.p();
    if (x.is_zero()) return TruncatedSeries::zero_at(p, N);
    long long v = *x.val();
    if (v >= N) return TruncatedSeries::zero_at(p, N);
    // peel t powers so both parts are units at t = 0, then long-divide
    Poly n0 = x.num().divrem(Poly::t_power(static_cast<std::size_t>(x.num().ord()), p)).first;
    Poly d0 = x.den().divrem(Poly::t_power(static_cast<std::size_t>(x.den().ord()), p)).first;
    long long L = N - v;
    std::vector<std::uint32_t> s(static_cast<std::size_t>(L), 0);
    Fp dinv = d0.at_zero().inverse();
    for (long long k = 0; k < L; ++k) {
        std::uint64_t acc = n0.coeff(static_cast<std::size_t>(k)).value();
        for (long long j = 1; j <= k; ++j) {
            std::uint64_t dj = d0.coeff(static_cast<std::size_t>(j)).value();
            if (dj == 0) continue;
            acc = (acc + (std::uint64_t)p * p - dj * s[static_cast<std::size_t>(k - j)] % p) % p;
        }
        s[static_cast<std::size_t>(k)] =
            static_cast<std::uint32_t>(acc % p * dinv.value() % p);
    }
    return TruncatedSeries::from_coeffs(p, v, N, std::move(s));
}

inline bool TruncatedSeries::agrees_with_exact(const RationalFn& x) const {
    return agrees_with(expand(x, prec_));
}

} // namespace cartan
