#pragma once

#include "lwe.hpp"
#include "rlwe.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mmpmboot {

// rescale every component by q_new/q_old with round-half-up; the plaintext
// scaling survives because floor(q/t) rescales to floor(q_new/t) up to the
// rounding error absorbed by the noise
inline LweCiphertext modulus_switch(const LweCiphertext& ct, uint64_t q_new) {
    if (q_new < 2) throw std::invalid_argument("modulus_switch: bad target modulus");
    LweCiphertext out{std::vector<uint64_t>(ct.dim()), 0, q_new, ct.t};
    for (size_t i = 0; i < ct.a.size(); ++i)
        out.a[i] = round_div((unsigned __int128)ct.a[i] * q_new, ct.q) % q_new;
    out.b = round_div((unsigned __int128)ct.b * q_new, ct.q) % q_new;
    return out;
}

// constant-term extraction: the RLWE pair (a, b) becomes an LWE ciphertext of
// dimension N under the coefficient vector of z, via (a_0, -a_{N-1}, ...,
// -a_1, b_0)
inline LweCiphertext sample_extract(const RlweCiphertext& ct) {
    size_t n = ct.dim();
    uint64_t Q = ct.modulus();
    LweCiphertext out{std::vector<uint64_t>(n), 0, Q, ct.t};
    out.a[0] = ct.a.c[0];
    for (size_t i = 1; i < n; ++i) out.a[i] = mod_neg(ct.a.c[n - i], Q);
    out.b = ct.b.c[0];
    return out;
}

// the coefficient vector of a ring secret, viewed as an LWE secret
inline LweSecret ring_secret_coefficients(const RingSecret& z) { return LweSecret{z.z}; }

// Key-switching keys from z (dimension N) to s (dimension n): for every source
// index i, digit level j and digit value k, an encryption of z_i * B_ks^j * k.
struct KskSet {
    std::vector<LweCiphertext> entries; // [i][j][k] flattened
    uint32_t src_dim = 0;
    uint32_t levels = 0;
    uint64_t base = 0;

    const LweCiphertext& at(uint32_t i, uint32_t j, uint64_t k) const {
        return entries[((size_t)i * levels + j) * base + k];
    }
};

inline KskSet gen_ksk(const RingSecret& z, const LweSecret& s, uint64_t Q, uint64_t B_ks, uint32_t levels,
                      double sigma, Rng& rng) {
    KskSet ksk;
    ksk.src_dim = (uint32_t)z.dim();
    ksk.levels = levels;
    ksk.base = B_ks;
    ksk.entries.reserve((size_t)ksk.src_dim * levels * B_ks);
    DiscreteGaussian noise(sigma);
    for (uint32_t i = 0; i < ksk.src_dim; ++i) {
        uint64_t zi = lift_signed(z.z[i], Q);
        uint64_t power = 1 % Q;
        for (uint32_t j = 0; j < levels; ++j) {
            uint64_t zij = mod_mul(zi, power, Q);
            for (uint64_t k = 0; k < B_ks; ++k) {
                // raw-phase encryption of z_i * B^j * k (no plaintext scaling)
                LweCiphertext ct{std::vector<uint64_t>(s.dim()), 0, Q, Q};
                uint64_t acc = mod_mul(zij, k % Q, Q);
                int64_t e = noise(rng);
                acc = e >= 0 ? mod_add(acc, (uint64_t)e % Q, Q) : mod_sub(acc, (uint64_t)(-e) % Q, Q);
                for (size_t u = 0; u < ct.a.size(); ++u) {
                    ct.a[u] = rng.below(Q);
                    acc = mod_add(acc, mod_mul(ct.a[u], lift_signed(s.s[u], Q), Q), Q);
                }
                ct.b = acc;
                ksk.entries.push_back(std::move(ct));
            }
            power = mod_mul(power, B_ks % Q, Q);
        }
    }
    return ksk;
}

// (0^n, b) minus the key entries selected by the base-B digits of each a_i;
// phases agree up to one key error per (i, j) pair
inline LweCiphertext key_switch(const LweCiphertext& ct, const KskSet& ksk) {
    if (ct.dim() != ksk.src_dim) throw std::invalid_argument("key_switch: source dimension mismatch");
    size_t n_out = ksk.entries.at(0).dim();
    LweCiphertext out{std::vector<uint64_t>(n_out, 0), ct.b, ct.q, ct.t};
    for (uint32_t i = 0; i < ksk.src_dim; ++i) {
        std::vector<uint64_t> digits = gadget_decompose(ct.a[i], ksk.base, ksk.levels);
        for (uint32_t j = 0; j < ksk.levels; ++j) {
            const LweCiphertext& entry = ksk.at(i, j, digits[j]);
            for (size_t u = 0; u < n_out; ++u) out.a[u] = mod_sub(out.a[u], entry.a[u], ct.q);
            out.b = mod_sub(out.b, entry.b, ct.q);
        }
    }
    return out;
}

} // namespace mmpmboot
