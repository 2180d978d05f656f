#pragma once

#include "lwe.hpp"
#include "mmpm.hpp"
#include "params.hpp"
#include "rlwe.hpp"
#include "switching.hpp"

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <vector>

namespace mmpmboot {

// A plaintext lookup table f: Z_{t_in} -> Z_{t_out}. Nega-cyclic tables
// (f(x + t_in/2) = -f(x)) can be bootstrapped in one round; arbitrary tables
// go through the two-round path.
struct LookUpTable {
    uint64_t t_in = 0;
    uint64_t t_out = 0;
    std::vector<uint64_t> table;

    bool nega_cyclic() const {
        uint64_t half = t_in / 2;
        for (uint64_t i = 0; i < t_in; ++i)
            if (table[(i + half) % t_in] != (t_out - table[i]) % t_out) return false;
        return true;
    }

    void validate() const {
        if (t_in < 2 || t_in % 2 != 0) throw std::invalid_argument("lut: t_in must be even and >= 2");
        if (table.size() != t_in) throw std::invalid_argument("lut: table must have t_in entries");
        for (uint64_t v : table)
            if (v >= t_out) throw std::invalid_argument("lut: value out of range");
    }
};

// Extension of a nega-cyclic f on Z_t to the rotation index group Z_{2Nr}:
// every cell within half a plateau of m*floor(2Nr/t) holds f(m), boundary
// cells (2|e| equal to the plateau width) go to the lower plateau, and the
// second half is re-imposed as the negation of the first.
inline std::vector<uint64_t> negacyclic_extend(const LookUpTable& f, uint64_t q_prime) {
    f.validate();
    if (!f.nega_cyclic()) throw std::domain_error("negacyclic_extend: table is not nega-cyclic");
    if (q_prime < 2 * f.t_in || q_prime % 2 != 0)
        throw std::invalid_argument("negacyclic_extend: target domain too small");
    uint64_t delta = q_prime / f.t_in;
    uint64_t half = q_prime / 2;
    std::vector<uint64_t> out(q_prime);
    for (uint64_t u = 0; u < half; ++u) {
        uint64_t m = (2 * u + delta - 1) / (2 * delta); // nearest plateau, ties to the lower
        out[u] = f.table[m % f.t_in];
    }
    for (uint64_t u = 0; u < half; ++u) out[u + half] = (f.t_out - out[u]) % f.t_out;
    return out;
}

// accumulator: r RLWE ciphertexts sharing one modulus and plaintext modulus
struct RlweVector {
    std::vector<RlweCiphertext> entries;

    size_t size() const { return entries.size(); }
    bool operator==(const RlweVector&) const = default;
};

inline RlweVector rlwe_vector_trivial(const TestVector& v, uint64_t Q) {
    RlweVector acc;
    acc.entries.reserve(v.entries.size());
    for (const auto& entry : v.entries) acc.entries.push_back(rlwe_trivial(entry, Q, v.t_out));
    return acc;
}

inline RlweVector rlwe_vector_add(const RlweVector& x, const RlweVector& y) {
    RlweVector out;
    out.entries.reserve(x.size());
    for (size_t i = 0; i < x.size(); ++i) out.entries.push_back(rlwe_add(x.entries[i], y.entries[i]));
    return out;
}

inline RlweVector rlwe_vector_sub(const RlweVector& x, const RlweVector& y) {
    RlweVector out;
    out.entries.reserve(x.size());
    for (size_t i = 0; i < x.size(); ++i) out.entries.push_back(rlwe_sub(x.entries[i], y.entries[i]));
    return out;
}

// apply a monomial permutation matrix to the accumulator: entries permute and
// both ciphertext components rotate; no ring multiplications
inline RlweVector apply_mmpm_to_rlwe_vector(const Mmpm& x, const RlweVector& v) {
    if (v.size() != x.r) throw std::invalid_argument("apply_mmpm: accumulator length mismatch");
    std::vector<uint32_t> inv(x.r);
    for (uint32_t j = 0; j < x.r; ++j) inv[x.perm[j]] = j;
    RlweVector out;
    out.entries.resize(x.r);
    for (uint32_t i = 0; i < x.r; ++i) {
        const RlweCiphertext& src = v.entries[inv[i]];
        out.entries[i] = RlweCiphertext{mul_by_monomial(src.a, x.exps[i]), mul_by_monomial(src.b, x.exps[i]), src.t};
    }
    return out;
}

// entrywise external product of the accumulator with one RGSW ciphertext
inline RlweVector rlwe_vector_rgsw_mul(const RlweVector& v, const RgswCiphertext& c) {
    RlweVector out;
    out.entries.reserve(v.size());
    for (const auto& entry : v.entries) out.entries.push_back(rlwe_rgsw_mul(entry, c));
    return out;
}

// bootstrapping keys: per LWE secret coefficient, RGSW encryptions of the
// indicators s_k = 1 and s_k = -1
struct BootstrappingKeys {
    std::vector<RgswCiphertext> plus;
    std::vector<RgswCiphertext> minus;

    size_t count() const { return plus.size(); }
};

inline BootstrappingKeys gen_bootstrapping_keys(const LweSecret& s, const RingSecret& z, uint64_t Q, uint64_t B,
                                                uint32_t levels, double sigma, Rng& rng) {
    BootstrappingKeys bk;
    bk.plus.reserve(s.dim());
    bk.minus.reserve(s.dim());
    for (size_t k = 0; k < s.dim(); ++k) {
        RingElement mp(z.dim(), Q), mm(z.dim(), Q);
        mp.c[0] = s.s[k] == 1 ? 1 : 0;
        mm.c[0] = s.s[k] == -1 ? 1 : 0;
        bk.plus.push_back(rgsw_encrypt(mp, z, B, levels, sigma, rng));
        bk.minus.push_back(rgsw_encrypt(mm, z, B, levels, sigma, rng));
    }
    return bk;
}

// acc <- acc + (X(-a_k) acc - acc) x c_plus + (X(a_k) acc - acc) x c_minus,
// where X(c) is the canonical matrix image of c; exactly 2r external products
inline RlweVector cmux_rlwe_vector(const RgswCiphertext& c_plus, const RgswCiphertext& c_minus, uint64_t a_k,
                                   const RlweVector& acc, uint32_t r, uint32_t N) {
    uint64_t q_prime = 2ull * N * r;
    a_k %= q_prime;
    RlweVector rot_plus = apply_mmpm_to_rlwe_vector(phi(r, N, (q_prime - a_k) % q_prime), acc);
    RlweVector rot_minus = apply_mmpm_to_rlwe_vector(phi(r, N, a_k), acc);
    RlweVector d_plus = rlwe_vector_sub(rot_plus, acc);
    RlweVector d_minus = rlwe_vector_sub(rot_minus, acc);
    RlweVector out = rlwe_vector_add(acc, rlwe_vector_rgsw_mul(d_plus, c_plus));
    return rlwe_vector_add(out, rlwe_vector_rgsw_mul(d_minus, c_minus));
}

// phase accumulation over the r-entry accumulator: starts from the rotated
// trivial test vector and folds every LWE coefficient through a CMux; the
// decrypted accumulator equals X(phase(ct)) applied to the scaled test vector
inline RlweVector blind_rotate_mmpm(const LweCiphertext& ct, const TestVector& v, const BootstrappingKeys& bk,
                                    uint64_t Q) {
    uint32_t r = v.r, N = v.N;
    if (ct.q != 2ull * N * r) throw std::invalid_argument("blind_rotate_mmpm: input modulus must be 2Nr");
    if (bk.count() != ct.dim()) throw std::invalid_argument("blind_rotate_mmpm: key count mismatch");
    RlweVector acc = rlwe_vector_trivial(v, Q);
    acc = apply_mmpm_to_rlwe_vector(phi(r, N, ct.b), acc);
    for (size_t k = 0; k < ct.dim(); ++k) acc = cmux_rlwe_vector(bk.plus[k], bk.minus[k], ct.a[k], acc, r, N);
    return acc;
}

// single-ring baseline at dimension N' = N*r: the same CMux ladder with plain
// monomial rotations; kept structurally parallel so that r = 1 runs are
// bit-identical to the vector path
inline RlweCiphertext blind_rotate_tfhe(const LweCiphertext& ct, const TestVector& v, const BootstrappingKeys& bk,
                                        uint64_t Q) {
    if (v.r != 1) throw std::invalid_argument("blind_rotate_tfhe: test vector must have a single entry");
    uint32_t big_n = v.N;
    if (ct.q != 2ull * big_n) throw std::invalid_argument("blind_rotate_tfhe: input modulus must be 2N");
    if (bk.count() != ct.dim()) throw std::invalid_argument("blind_rotate_tfhe: key count mismatch");
    RlweCiphertext acc = rlwe_trivial(v.entries[0], Q, v.t_out);
    acc = RlweCiphertext{mul_by_monomial(acc.a, ct.b), mul_by_monomial(acc.b, ct.b), acc.t};
    uint64_t q_prime = 2ull * big_n;
    for (size_t k = 0; k < ct.dim(); ++k) {
        uint64_t a_k = ct.a[k] % q_prime;
        RlweCiphertext rot_plus{mul_by_monomial(acc.a, q_prime - a_k), mul_by_monomial(acc.b, q_prime - a_k), acc.t};
        RlweCiphertext rot_minus{mul_by_monomial(acc.a, a_k), mul_by_monomial(acc.b, a_k), acc.t};
        RlweCiphertext d_plus = rlwe_sub(rot_plus, acc);
        RlweCiphertext d_minus = rlwe_sub(rot_minus, acc);
        acc = rlwe_add(acc, rlwe_rgsw_mul(d_plus, bk.plus[k]));
        acc = rlwe_add(acc, rlwe_rgsw_mul(d_minus, bk.minus[k]));
    }
    return acc;
}

// everything needed to bootstrap: the two secrets and the evaluation keys
struct KeySet {
    ParameterSet params;
    LweSecret s;
    RingSecret z;
    BootstrappingKeys bk;
    KskSet ksk;
};

inline KeySet generate_keyset(const ParameterSet& p, Rng& rng) {
    p.validate();
    KeySet ks;
    ks.params = p;
    ks.s = sample_lwe_secret(p.n, rng);
    ks.z = sample_ring_secret(p.ring_dim(), rng);
    ks.bk = gen_bootstrapping_keys(ks.s, ks.z, p.Q, p.B, p.levels(), p.sigma_boot, rng);
    ks.ksk = gen_ksk(ks.z, ks.s, p.Q, p.B_ks, p.ks_levels(), p.sigma_ks, rng);
    return ks;
}

namespace detail {
inline LweCiphertext finish_bootstrap(const RlweCiphertext& acc_entry, const KeySet& keys, uint64_t q_out) {
    LweCiphertext wide = sample_extract(acc_entry);
    LweCiphertext switched = key_switch(wide, keys.ksk);
    return modulus_switch(switched, q_out);
}
} // namespace detail

// One-round bootstrap for nega-cyclic f: switch to 2Nr, accumulate, extract
// the constant term of the first entry, switch keys back to s and return to
// modulus q. Output encrypts f(m) against plaintext modulus f.t_out.
inline LweCiphertext boot_mmpm(const LweCiphertext& ct, const LookUpTable& f, const KeySet& keys) {
    const ParameterSet& p = keys.params;
    f.validate();
    if (!f.nega_cyclic()) throw std::domain_error("boot_mmpm: table is not nega-cyclic");
    if (ct.t != f.t_in) throw std::invalid_argument("boot_mmpm: ciphertext plaintext modulus mismatch");
    if (ct.dim() != p.n || ct.q != p.q) throw std::invalid_argument("boot_mmpm: ciphertext parameter mismatch");
    if (p.scheme == Scheme::mmpm && p.r != choose_r(p.q, p.N).r)
        std::cerr << "warning: r = " << p.r << " differs from the ceil(q/2N) policy\n";
    LweCiphertext narrow = modulus_switch(ct, p.q_prime());
    std::vector<uint64_t> f_ext = negacyclic_extend(f, p.q_prime());
    if (p.scheme == Scheme::tfhe) {
        TestVector v = build_test_vector(f_ext, 1, p.ring_dim(), f.t_out);
        RlweCiphertext acc = blind_rotate_tfhe(narrow, v, keys.bk, p.Q);
        return detail::finish_bootstrap(acc, keys, p.q);
    }
    TestVector v = build_test_vector(f_ext, p.r, p.N, f.t_out);
    RlweVector acc = blind_rotate_mmpm(narrow, v, keys.bk, p.Q);
    return detail::finish_bootstrap(acc.entries[0], keys, p.q);
}

// the nega-cyclic selector on Z_{2t}: -t/2 on the lower half, +t/2 on the
// upper; together with the t/2 offset it reads off the top bit
inline LookUpTable msb_selector(uint64_t t) {
    LookUpTable f{2 * t, 2 * t, std::vector<uint64_t>(2 * t)};
    for (uint64_t v = 0; v < 2 * t; ++v) f.table[v] = v < t ? 2 * t - t / 2 : t / 2;
    return f;
}

// nega-cyclic extension of an arbitrary table from [0, t) to [-t, t)
inline LookUpTable extend_table_nega_cyclic(const LookUpTable& f) {
    LookUpTable g{2 * f.t_in, f.t_out, std::vector<uint64_t>(2 * f.t_in)};
    for (uint64_t v = 0; v < f.t_in; ++v) {
        g.table[v] = f.table[v];
        g.table[v + f.t_in] = (f.t_out - f.table[v]) % f.t_out;
    }
    return g;
}

// Two-round bootstrap for arbitrary f: Z_t -> Z_{t_out}. The input must be
// encoded against plaintext modulus 2t. Round one reads the top bit with the
// nega-cyclic selector; subtracting it (plus the t/2 offset) homomorphically
// pins the plaintext into [0, t), where round two evaluates the nega-cyclic
// extension of f.
inline LweCiphertext boot_general(const LweCiphertext& ct, const LookUpTable& f, const KeySet& keys) {
    f.validate();
    uint64_t t = f.t_in;
    if (ct.t != 2 * t) throw std::invalid_argument("boot_general: input must be encoded against modulus 2t");
    LookUpTable mp = msb_selector(t);
    LweCiphertext round1 = boot_mmpm(ct, mp, keys);
    LweCiphertext shifted = lwe_sub(lwe_sub(ct, round1), lwe_trivial(t / 2, ct.dim(), ct.q, 2 * t));
    LookUpTable g = extend_table_nega_cyclic(f);
    return boot_mmpm(shifted, g, keys);
}

} // namespace mmpmboot
