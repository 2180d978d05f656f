#pragma once

#include "modmath.hpp"
#include "rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mmpmboot {

// LWE over Z_q with ternary secrets. Phase convention: phase(a, b) = b - <a, s>;
// a fresh encryption of m carries phase m*floor(q/t) + e.

struct LweSecret {
    std::vector<int8_t> s; // entries in {-1, 0, 1}

    size_t dim() const { return s.size(); }
    uint64_t norm2() const {
        uint64_t n2 = 0;
        for (int8_t x : s) n2 += (uint64_t)(x * x);
        return n2;
    }
};

inline LweSecret sample_lwe_secret(size_t n, Rng& rng) { return LweSecret{sample_ternary(n, rng)}; }

struct LweCiphertext {
    std::vector<uint64_t> a;
    uint64_t b = 0;
    uint64_t q = 0;
    uint64_t t = 0; // plaintext modulus this ciphertext encodes against

    size_t dim() const { return a.size(); }
    bool operator==(const LweCiphertext&) const = default;
};

// signed secret coefficient as an element of Z_q
inline uint64_t lift_signed(int8_t x, uint64_t q) { return x >= 0 ? (uint64_t)x : q - (uint64_t)(-x); }

inline LweCiphertext lwe_trivial(uint64_t m, size_t n, uint64_t q, uint64_t t) {
    if (m >= t) throw std::invalid_argument("lwe_trivial: message out of range");
    LweCiphertext ct{std::vector<uint64_t>(n, 0), 0, q, t};
    ct.b = mod_mul(m % q, (q / t) % q, q);
    return ct;
}

inline LweCiphertext lwe_encrypt(uint64_t m, const LweSecret& s, uint64_t q, uint64_t t, double sigma, Rng& rng) {
    if (m >= t) throw std::invalid_argument("lwe_encrypt: message out of range");
    if (q < 2 * t) throw std::invalid_argument("lwe_encrypt: q must be at least 2t");
    LweCiphertext ct{std::vector<uint64_t>(s.dim()), 0, q, t};
    uint64_t acc = mod_mul(m, q / t, q);
    DiscreteGaussian noise(sigma);
    int64_t e = noise(rng);
    acc = e >= 0 ? mod_add(acc, (uint64_t)e % q, q) : mod_sub(acc, (uint64_t)(-e) % q, q);
    for (size_t i = 0; i < ct.a.size(); ++i) {
        ct.a[i] = rng.below(q);
        acc = mod_add(acc, mod_mul(ct.a[i], lift_signed(s.s[i], q), q), q);
    }
    ct.b = acc;
    return ct;
}

inline uint64_t lwe_phase(const LweCiphertext& ct, const LweSecret& s) {
    if (s.dim() != ct.dim()) throw std::invalid_argument("lwe_phase: dimension mismatch");
    uint64_t acc = ct.b;
    for (size_t i = 0; i < ct.a.size(); ++i)
        acc = mod_sub(acc, mod_mul(ct.a[i], lift_signed(s.s[i], ct.q), ct.q), ct.q);
    return acc;
}

// nearest-multiple decoding: round(phase * t / q) mod t, ties upward
inline uint64_t lwe_decrypt(const LweCiphertext& ct, const LweSecret& s) {
    uint64_t ph = lwe_phase(ct, s);
    return round_div((unsigned __int128)ph * ct.t, ct.q) % ct.t;
}

inline void check_compatible(const LweCiphertext& x, const LweCiphertext& y) {
    if (x.q != y.q || x.dim() != y.dim() || x.t != y.t) throw std::invalid_argument("lwe: ciphertext mismatch");
}

inline LweCiphertext lwe_add(const LweCiphertext& x, const LweCiphertext& y) {
    check_compatible(x, y);
    LweCiphertext out = x;
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = mod_add(out.a[i], y.a[i], x.q);
    out.b = mod_add(out.b, y.b, x.q);
    return out;
}

inline LweCiphertext lwe_sub(const LweCiphertext& x, const LweCiphertext& y) {
    check_compatible(x, y);
    LweCiphertext out = x;
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = mod_sub(out.a[i], y.a[i], x.q);
    out.b = mod_sub(out.b, y.b, x.q);
    return out;
}

// signed error of a ciphertext that should encrypt m (noise measurement only)
inline int64_t lwe_error(const LweCiphertext& ct, const LweSecret& s, uint64_t m) {
    uint64_t expected = mod_mul(m % ct.q, ct.q / ct.t, ct.q);
    return centered(mod_sub(lwe_phase(ct, s), expected, ct.q), ct.q);
}

// unsigned base-B digits, least significant first: x = sum digits[i] * B^i
inline std::vector<uint64_t> gadget_decompose(uint64_t x, uint64_t B, uint32_t levels) {
    std::vector<uint64_t> digits(levels);
    for (uint32_t i = 0; i < levels; ++i) {
        digits[i] = x % B;
        x /= B;
    }
    if (x != 0) throw std::invalid_argument("gadget_decompose: value not covered by B^levels");
    return digits;
}

} // namespace mmpmboot
