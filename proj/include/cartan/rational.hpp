#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cartan/poly.hpp"

namespace cartan {

/// Element of F_p(t), kept in canonical form: denominator monic, gcd(num, den) = 1,
/// zero stored as 0/1. Equality of canonical forms is equality in the field.
///
/// The valuation is t-adic: val(num) - val(den). An element lies in the local ring
/// R = F_p[t] localized at (t) iff its valuation is >= 0, iff the reduced
/// denominator does not vanish at t = 0.
class RationalFn {
public:
    explicit RationalFn(std::uint32_t p) : num_(Poly::zero(p)), den_(Poly::one(p)) {}
    RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.p() != den_.p()) throw DomainError("mixed characteristics in rational function");
        reduce();
    }

    static RationalFn zero(std::uint32_t p) { return RationalFn(p); }
    static RationalFn one(std::uint32_t p) { return RationalFn(Poly::one(p), Poly::one(p)); }
    static RationalFn constant(Fp c) { return RationalFn(Poly::constant(c), Poly::one(c.p())); }
    static RationalFn from_int(long long v, std::uint32_t p) { return constant(Fp::from_int(v, p)); }
    static RationalFn from_poly(Poly n) {
        auto p = n.p();
        return RationalFn(std::move(n), Poly::one(p));
    }
    /// t^k for k of either sign
    static RationalFn t_power(long long k, std::uint32_t p) {
        if (k >= 0) return RationalFn(Poly::t_power(static_cast<std::size_t>(k), p), Poly::one(p));
        return RationalFn(Poly::one(p), Poly::t_power(static_cast<std::size_t>(-k), p));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    std::uint32_t p() const { return num_.p(); }

    bool is_zero() const { return num_.is_zero(); }

    /// t-adic valuation; nullopt plays the role of +infinity (the zero element)
    std::optional<long long> val() const {
        if (is_zero()) return std::nullopt;
        return num_.ord() - den_.ord();
    }

    /// member of the valuation ring R (denominator a unit at t = 0 after reduction)
    bool is_integral() const { return is_zero() || !den_.at_zero().is_zero(); }
    /// unit of R: valuation exactly zero
    bool is_ring_unit() const { auto v = val(); return v && *v == 0; }

    /// value at t = 0; requires integrality
    Fp at_zero() const {
        if (!is_integral()) throw DomainError("residue of a non-integral element");
        if (is_zero()) return Fp::zero(p());
        return num_.at_zero() / den_.at_zero();
    }

    RationalFn operator+(const RationalFn& o) const {
        return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFn operator-(const RationalFn& o) const {
        return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalFn operator*(const RationalFn& o) const {
        return RationalFn(num_ * o.num_, den_ * o.den_);
    }
    RationalFn operator-() const { return RationalFn(-num_, den_); }
    RationalFn inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        return RationalFn(den_, num_);
    }
    RationalFn operator/(const RationalFn& o) const {
        if (o.is_zero()) throw DomainError("division by zero");
        return RationalFn(num_ * o.den_, den_ * o.num_);
    }

    RationalFn pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        RationalFn acc = one(p()), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }

    /// Canonical text form, re-parseable: numerator and denominator are each
    /// parenthesized whenever the denominator is nontrivial, e.g. "(1 + t^2)/(t^2)".
    std::string str() const {
        if (den_ == Poly::one(p())) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void reduce() {
        if (den_.is_zero()) throw DomainError("zero denominator");
        if (num_.is_zero()) { den_ = Poly::one(p()); return; }
        // strip the common power of t first; torus entries make monomial
        // denominators the common case and this skips the gcd entirely
        long long strip = std::min(num_.ord(), den_.ord());
        if (strip > 0) {
            num_ = num_.divrem(Poly::t_power(static_cast<std::size_t>(strip), p())).first;
            den_ = den_.divrem(Poly::t_power(static_cast<std::size_t>(strip), p())).first;
        }
        if (num_.degree() > 0 && den_.degree() > 0) {
            Poly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_.divrem(g).first;
                den_ = den_.divrem(g).first;
            }
        }
        // canonical scale: trailing (lowest-degree) coefficient of the denominator is 1
        Fp tc = den_.coeff(static_cast<std::size_t>(den_.ord()));
        if (!(tc == Fp::one(p()))) {
            Fp inv = tc.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_, den_;
};

} // namespace cartan
