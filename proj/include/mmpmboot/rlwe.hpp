#pragma once

#include "lwe.hpp"
#include "ring.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mmpmboot {

// RLWE over Z_Q[x]/(x^N+1) with ternary secret z. Phase convention mirrors the
// LWE side: phase(a, b) = b - a*z; an encryption of m in R_t' carries phase
// m*floor(Q/t') + e.

struct RingSecret {
    std::vector<int8_t> z; // ternary coefficients

    size_t dim() const { return z.size(); }
    uint64_t norm2() const {
        uint64_t n2 = 0;
        for (int8_t x : z) n2 += (uint64_t)(x * x);
        return n2;
    }
    RingElement as_ring(uint64_t Q) const {
        RingElement e(z.size(), Q);
        for (size_t i = 0; i < z.size(); ++i) e.c[i] = lift_signed(z[i], Q);
        return e;
    }
};

inline RingSecret sample_ring_secret(size_t n, Rng& rng) { return RingSecret{sample_ternary(n, rng)}; }

struct RlweCiphertext {
    RingElement a;
    RingElement b;
    uint64_t t = 0; // plaintext modulus this ciphertext encodes against

    size_t dim() const { return a.dim(); }
    uint64_t modulus() const { return a.q; }
    bool operator==(const RlweCiphertext&) const = default;
};

inline RlweCiphertext rlwe_trivial(const RingElement& m, uint64_t Q, uint64_t t) {
    RlweCiphertext ct{RingElement(m.dim(), Q), RingElement(m.dim(), Q), t};
    uint64_t delta = Q / t;
    for (size_t i = 0; i < m.dim(); ++i) {
        if (m.c[i] >= t) throw std::invalid_argument("rlwe_trivial: coefficient out of range");
        ct.b.c[i] = mod_mul(m.c[i], delta % Q, Q);
    }
    return ct;
}

inline RingElement sample_uniform_ring(size_t n, uint64_t Q, Rng& rng) {
    RingElement a(n, Q);
    for (auto& x : a.c) x = rng.below(Q);
    return a;
}

inline RingElement sample_gaussian_ring(size_t n, uint64_t Q, const DiscreteGaussian& noise, Rng& rng) {
    RingElement e(n, Q);
    for (auto& x : e.c) {
        int64_t v = noise(rng);
        x = v >= 0 ? (uint64_t)v % Q : mod_neg((uint64_t)(-v) % Q, Q);
    }
    return e;
}

// m has coefficients in [0, t'); scaling by floor(Q/t') happens here
inline RlweCiphertext rlwe_encrypt(const RingElement& m, const RingSecret& z, uint64_t Q, uint64_t t, double sigma,
                                   Rng& rng) {
    if (z.dim() != m.dim()) throw std::invalid_argument("rlwe_encrypt: dimension mismatch");
    RlweCiphertext ct = rlwe_trivial(m, Q, t);
    ct.a = sample_uniform_ring(m.dim(), Q, rng);
    DiscreteGaussian noise(sigma);
    RingElement e = sample_gaussian_ring(m.dim(), Q, noise, rng);
    ct.b = ring_add(ring_add(negacyclic_mul(ct.a, z.as_ring(Q)), e), ct.b);
    return ct;
}

inline RingElement rlwe_phase(const RlweCiphertext& ct, const RingSecret& z) {
    if (z.dim() != ct.dim()) throw std::invalid_argument("rlwe_phase: dimension mismatch");
    return ring_sub(ct.b, negacyclic_mul(ct.a, z.as_ring(ct.modulus())));
}

inline RingElement rlwe_decrypt(const RlweCiphertext& ct, const RingSecret& z) {
    RingElement ph = rlwe_phase(ct, z);
    RingElement out(ct.dim(), ct.t);
    for (size_t i = 0; i < ph.dim(); ++i)
        out.c[i] = round_div((unsigned __int128)ph.c[i] * ct.t, ct.modulus()) % ct.t;
    return out;
}

inline RlweCiphertext rlwe_add(const RlweCiphertext& x, const RlweCiphertext& y) {
    return RlweCiphertext{ring_add(x.a, y.a), ring_add(x.b, y.b), x.t};
}

inline RlweCiphertext rlwe_sub(const RlweCiphertext& x, const RlweCiphertext& y) {
    return RlweCiphertext{ring_sub(x.a, y.a), ring_sub(x.b, y.b), x.t};
}

// per-coefficient base-B digits of a ring element, least significant first
inline std::vector<RingElement> gadget_decompose_ring(const RingElement& v, uint64_t B, uint32_t levels) {
    std::vector<RingElement> digits(levels, RingElement(v.dim(), v.q));
    for (size_t i = 0; i < v.dim(); ++i) {
        uint64_t x = v.c[i];
        for (uint32_t l = 0; l < levels; ++l) {
            digits[l].c[i] = x % B;
            x /= B;
        }
        if (x != 0) throw std::invalid_argument("gadget_decompose_ring: value not covered");
    }
    return digits;
}

// RGSW ciphertext: 2*levels RLWE rows; the top block carries m*B^i on the
// a-component, the bottom block on the b-component.
struct RgswCiphertext {
    std::vector<RlweCiphertext> rows;
    uint64_t B = 0;
    uint32_t levels = 0;

    size_t dim() const { return rows.at(0).dim(); }
    uint64_t modulus() const { return rows.at(0).modulus(); }
    bool operator==(const RgswCiphertext&) const = default;
};

inline RlweCiphertext rlwe_encrypt_zero(size_t n, const RingSecret& z, uint64_t Q, double sigma, Rng& rng) {
    RlweCiphertext ct{sample_uniform_ring(n, Q, rng), RingElement(n, Q), Q};
    DiscreteGaussian noise(sigma);
    RingElement e = sample_gaussian_ring(n, Q, noise, rng);
    ct.b = ring_add(negacyclic_mul(ct.a, z.as_ring(Q)), e);
    ct.t = Q;
    return ct;
}

// m is a ring element over Z_Q, in practice 0, 1 or a signed monomial
inline RgswCiphertext rgsw_encrypt(const RingElement& m, const RingSecret& z, uint64_t B, uint32_t levels,
                                   double sigma, Rng& rng) {
    if (z.dim() != m.dim()) throw std::invalid_argument("rgsw_encrypt: dimension mismatch");
    uint64_t Q = m.q;
    RgswCiphertext c{{}, B, levels};
    c.rows.reserve(2 * (size_t)levels);
    DiscreteGaussian noise(sigma);
    uint64_t power = 1 % Q;
    std::vector<uint64_t> powers(levels);
    for (uint32_t l = 0; l < levels; ++l) {
        powers[l] = power;
        power = mod_mul(power, B % Q, Q);
    }
    for (uint32_t half = 0; half < 2; ++half)
        for (uint32_t l = 0; l < levels; ++l) {
            RlweCiphertext row{sample_uniform_ring(m.dim(), Q, rng), RingElement(m.dim(), Q), Q};
            RingElement e = sample_gaussian_ring(m.dim(), Q, noise, rng);
            row.b = ring_add(negacyclic_mul(row.a, z.as_ring(Q)), e);
            RingElement g = ring_scalar_mul(m, powers[l]);
            if (half == 0)
                row.a = ring_add(row.a, g);
            else
                row.b = ring_add(row.b, g);
            c.rows.push_back(std::move(row));
        }
    return c;
}

inline RgswCiphertext rgsw_trivial(const RingElement& m, uint64_t B, uint32_t levels) {
    uint64_t Q = m.q;
    RgswCiphertext c{{}, B, levels};
    c.rows.assign(2 * (size_t)levels, RlweCiphertext{RingElement(m.dim(), Q), RingElement(m.dim(), Q), Q});
    uint64_t power = 1 % Q;
    for (uint32_t l = 0; l < levels; ++l) {
        RingElement g = ring_scalar_mul(m, power);
        c.rows[l].a = g;
        c.rows[levels + l].b = g;
        power = mod_mul(power, B % Q, Q);
    }
    return c;
}

// external product (a, b) x C: decompose both components and take the digit
// row vector through the 2*levels x 2 matrix; exactly 4*levels ring
// multiplications
inline RlweCiphertext rlwe_rgsw_mul(const RlweCiphertext& ct, const RgswCiphertext& c) {
    if (ct.dim() != c.dim() || ct.modulus() != c.modulus())
        throw std::invalid_argument("rlwe_rgsw_mul: parameter mismatch");
    std::vector<RingElement> da = gadget_decompose_ring(ct.a, c.B, c.levels);
    std::vector<RingElement> db = gadget_decompose_ring(ct.b, c.B, c.levels);
    RlweCiphertext out{RingElement(ct.dim(), ct.modulus()), RingElement(ct.dim(), ct.modulus()), ct.t};
    for (uint32_t l = 0; l < c.levels; ++l) {
        out.a = ring_add(out.a, negacyclic_mul(da[l], c.rows[l].a));
        out.b = ring_add(out.b, negacyclic_mul(da[l], c.rows[l].b));
    }
    for (uint32_t l = 0; l < c.levels; ++l) {
        out.a = ring_add(out.a, negacyclic_mul(db[l], c.rows[c.levels + l].a));
        out.b = ring_add(out.b, negacyclic_mul(db[l], c.rows[c.levels + l].b));
    }
    return out;
}

// RGSW x RGSW: every row of the left operand through the right operand
inline RgswCiphertext rgsw_rgsw_mul(const RgswCiphertext& x, const RgswCiphertext& y) {
    RgswCiphertext out{{}, y.B, y.levels};
    out.rows.reserve(x.rows.size());
    for (const auto& row : x.rows) out.rows.push_back(rlwe_rgsw_mul(row, y));
    return out;
}

} // namespace mmpmboot
