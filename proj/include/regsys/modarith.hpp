#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace regsys {

// Scalar arithmetic on canonical residues in [0, m). Products go through
// 128-bit intermediates so any 64-bit modulus is safe.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t m) {
    return a == 0 ? 0 : m - a;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Extended gcd on signed 128-bit to dodge overflow; returns gcd(a, b) and a
// Bezout coefficient x with a*x == gcd (mod b).
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    using i128 = __int128;
    i128 r0 = static_cast<i128>(m), r1 = static_cast<i128>(a % m);
    i128 x0 = 0, x1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 r2 = r0 - q * r1;
        i128 x2 = x0 - q * x1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
    }
    if (r0 != 1)
        throw std::invalid_argument("inv_mod: " + std::to_string(a) +
                                    " is not a unit modulo " + std::to_string(m));
    i128 x = x0 % static_cast<i128>(m);
    if (x < 0) x += static_cast<i128>(m);
    return static_cast<std::uint64_t>(x);
}

} // namespace regsys
