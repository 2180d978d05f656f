#pragma once

#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <numeric>

namespace mmpmboot {

// Scalar arithmetic modulo q. Values are kept as canonical representatives in
// [0, q); q may be any modulus below 2^63 (products go through 128-bit
// intermediates).

inline uint64_t mod_add(uint64_t a, uint64_t b, uint64_t q) {
    assert(a < q && b < q);
    uint64_t s = a + b;
    return s >= q ? s - q : s;
}

inline uint64_t mod_sub(uint64_t a, uint64_t b, uint64_t q) {
    assert(a < q && b < q);
    return a >= b ? a - b : a + q - b;
}

inline uint64_t mod_neg(uint64_t a, uint64_t q) {
    assert(a < q);
    return a == 0 ? 0 : q - a;
}

inline uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t q) {
    assert(a < q && b < q);
    return (uint64_t)((unsigned __int128)a * b % q);
}

inline uint64_t mod_pow(uint64_t a, uint64_t e, uint64_t q) {
    uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mod_mul(r, a, q);
        a = mod_mul(a, a, q);
        e >>= 1;
    }
    return r;
}

inline bool is_power_of_two(uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

// number of bits needed to write x, i.e. ceil(log2(x + 1))
inline uint32_t bit_length(uint64_t x) {
    uint32_t b = 0;
    while (x) { ++b; x >>= 1; }
    return b;
}

inline uint32_t ceil_log2(uint64_t x) {
    assert(x >= 1);
    return x == 1 ? 0 : bit_length(x - 1);
}

// smallest l with B^l >= Q (digit count of a base-B gadget covering Z_Q)
inline uint32_t gadget_levels(uint64_t Q, uint64_t B) {
    assert(B >= 2);
    uint32_t l = 0;
    unsigned __int128 p = 1;
    while (p < Q) { p *= B; ++l; }
    return l;
}

// round(num / den) with ties rounded upward; num is a full 128-bit value
inline uint64_t round_div(unsigned __int128 num, uint64_t den) {
    assert(den > 0);
    return (uint64_t)((2 * num + den) / (2 * (unsigned __int128)den));
}

// signed representative of x mod q, in [-q/2, q/2] (q/2 maps to +q/2)
inline int64_t centered(uint64_t x, uint64_t q) {
    assert(x < q);
    return x > q / 2 ? (int64_t)x - (int64_t)q : (int64_t)x;
}

// deterministic Miller-Rabin, exact for all 64-bit inputs
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    uint32_t r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = mod_pow(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (uint32_t i = 0; i + 1 < r; ++i) {
            x = mod_mul(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace mmpmboot
