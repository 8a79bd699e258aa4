#pragma once

#include <cstdint>
#include <string>

#include "cartan/error.hpp"

namespace cartan {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Element of the prime field F_p, p carried at runtime.
/// Arithmetic between elements of different characteristic is a programming
/// error and throws DomainError.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t value, std::uint32_t p) : v_(static_cast<std::uint32_t>(value % p)), p_(p) {}

    static Fp zero(std::uint32_t p) { return Fp(0, p); }
    static Fp one(std::uint32_t p) { return Fp(1, p); }
    static Fp from_int(long long value, std::uint32_t p) {
        long long r = value % static_cast<long long>(p);
        if (r < 0) r += p;
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t p() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { check(o); return Fp((std::uint64_t)v_ + o.v_, p_); }
    Fp operator-(const Fp& o) const { check(o); return Fp((std::uint64_t)v_ + p_ - o.v_, p_); }
    Fp operator*(const Fp& o) const { check(o); return Fp((std::uint64_t)v_ * o.v_, p_); }
    Fp operator-() const { return Fp((std::uint64_t)p_ - v_, p_); }

    Fp inverse() const {
        if (v_ == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
        // extended Euclid on (v, p)
        long long t0 = 0, t1 = 1, r0 = p_, r1 = v_;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long t2 = t0 - q * t1; t0 = t1; t1 = t2;
            long long r2 = r0 - q * r1; r0 = r1; r1 = r2;
        }
        long long inv = t0 % p_;
        if (inv < 0) inv += p_;
        return Fp(static_cast<std::uint64_t>(inv), p_);
    }

    Fp operator/(const Fp& o) const { return *this * o.inverse(); }

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw DomainError("mixed characteristics " + std::to_string(p_) + " and " + std::to_string(o.p_));
    }
    std::uint32_t v_;
    std::uint32_t p_;
};

} // namespace cartan
