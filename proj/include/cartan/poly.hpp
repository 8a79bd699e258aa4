#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cartan/fp.hpp"

namespace cartan {

/// Polynomial over F_p in the uniformizer t, dense coefficients.
/// Invariant: coefficient vector is trimmed (empty, or back() != 0).
class Poly {
public:
    explicit Poly(std::uint32_t p) : p_(p) {}
    Poly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static Poly zero(std::uint32_t p) { return Poly(p); }
    static Poly one(std::uint32_t p) { return Poly(p, {1}); }
    static Poly constant(Fp c) { return Poly(c.p(), {c.value()}); }
    static Poly t_power(std::size_t k, std::uint32_t p) {
        std::vector<std::uint32_t> c(k + 1, 0);
        c[k] = 1 % p;
        return Poly(p, std::move(c));
    }

    std::uint32_t p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    /// degree of the zero polynomial is -1
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }

    /// trailing degree; only defined for nonzero polynomials
    long long ord() const {
        if (is_zero()) throw DomainError("ord of zero polynomial");
        std::size_t k = 0;
        while (c_[k] == 0) ++k;
        return static_cast<long long>(k);
    }

    Fp coeff(std::size_t k) const {
        return k < c_.size() ? Fp(c_[k], p_) : Fp::zero(p_);
    }
    Fp leading() const {
        if (is_zero()) throw DomainError("leading coefficient of zero polynomial");
        return Fp(c_.back(), p_);
    }
    Fp at_zero() const { return coeff(0); }

    Poly operator+(const Poly& o) const {
        check(o);
        std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t k = 0; k < r.size(); ++k)
            r[k] = (coeff_raw(k) + o.coeff_raw(k)) % p_;
        return Poly(p_, std::move(r));
    }
    Poly operator-(const Poly& o) const {
        check(o);
        std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t k = 0; k < r.size(); ++k)
            r[k] = (coeff_raw(k) + p_ - o.coeff_raw(k)) % p_;
        return Poly(p_, std::move(r));
    }
    Poly operator-() const {
        std::vector<std::uint32_t> r(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] = (p_ - c_[k]) % p_;
        return Poly(p_, std::move(r));
    }
    Poly operator*(const Poly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(p_);
        std::vector<std::uint32_t> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = static_cast<std::uint32_t>((r[i + j] + (std::uint64_t)c_[i] * o.c_[j]) % p_);
        }
        return Poly(p_, std::move(r));
    }
    Poly operator*(Fp s) const {
        std::vector<std::uint32_t> r(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k)
            r[k] = static_cast<std::uint32_t>((std::uint64_t)c_[k] * s.value() % p_);
        return Poly(p_, std::move(r));
    }

    /// multiply by t^k
    Poly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<std::uint32_t> r(c_.size() + k, 0);
        std::copy(c_.begin(), c_.end(), r.begin() + static_cast<long long>(k));
        return Poly(p_, std::move(r));
    }

    /// Euclidean division; remainder degree < divisor degree.
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        check(d);
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        Poly rem = *this;
        Poly quo = zero(p_);
        Fp dinv = d.leading().inverse();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
            Fp f = rem.leading() * dinv;
            quo = quo + Poly::constant(f).shifted(shift);
            rem = rem - (d * f).shifted(shift);
        }
        return {quo, rem};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inverse();
    }

    bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// human and parser friendly form, ascending powers: "1 + 2*t + t^3"
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) { out += std::to_string(c_[k]); continue; }
            if (c_[k] != 1) out += std::to_string(c_[k]) + "*";
            out += "t";
            if (k != 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    std::uint32_t coeff_raw(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
    void check(const Poly& o) const {
        if (p_ != o.p_) throw DomainError("mixed characteristics in polynomial arithmetic");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> c_;
};

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

} // namespace cartan
