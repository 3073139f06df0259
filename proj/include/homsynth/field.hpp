#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "homsynth/errors.hpp"
#include "homsynth/variable.hpp"

namespace homsynth {

/// Exact rational arithmetic.
struct RationalField {
    using value_type = Rational;
    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type from_rational(const Rational& r) { return r; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
};

/// Integers modulo the Mersenne prime 2^61 - 1.
struct PrimeField {
    using value_type = std::uint64_t;
    static constexpr std::uint64_t modulus = (std::uint64_t{1} << 61) - 1;

    static value_type zero() { return 0; }
    static value_type one() { return 1; }

    static value_type reduce(unsigned __int128 x) {
        std::uint64_t lo = static_cast<std::uint64_t>(x & modulus);
        std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
        std::uint64_t r = lo + hi;
        while (r >= modulus) r -= modulus;
        return r;
    }

    static value_type add(value_type a, value_type b) {
        std::uint64_t r = a + b;
        return r >= modulus ? r - modulus : r;
    }
    static value_type sub(value_type a, value_type b) { return a >= b ? a - b : a + modulus - b; }
    static value_type mul(value_type a, value_type b) { return reduce(static_cast<unsigned __int128>(a) * b); }

    static value_type pow(value_type a, std::uint64_t e) {
        value_type r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    static value_type inverse(value_type a) {
        if (a == 0) throw EvaluationError("division by zero modulo 2^61-1");
        return pow(a, modulus - 2);
    }

    static value_type from_integer(const BigInt& z) {
        BigInt m = z % BigInt(modulus);
        if (m < 0) m += modulus;
        return static_cast<std::uint64_t>(m);
    }

    static value_type from_rational(const Rational& r) {
        return mul(from_integer(numerator(r)), inverse(from_integer(denominator(r))));
    }

    /// Uniform element drawn by rejection sampling.
    template <class Rng>
    static value_type sample(Rng& rng) {
        for (;;) {
            std::uint64_t x = rng() >> 3;
            if (x < modulus) return x;
        }
    }
};

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t b, int e) {
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    return r > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                         : static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// splitmix64 finalizer, used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace homsynth
