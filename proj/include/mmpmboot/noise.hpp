#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mmpmboot {

// Subgaussian variance proxies for every pipeline step. These are bounds, not
// estimates: digit magnitudes enter at their maximum B. The scalar type is a
// template parameter so callers can evaluate in exact rational arithmetic;
// runtime code uses double.

template <class S>
S var_external_product(S beta2, S sigma2, uint64_t ring_dim, uint64_t levels, uint64_t base) {
    return S(2) * S(ring_dim) * S(levels) * S(base) * S(base) * sigma2 + beta2;
}

template <class S>
S var_cmux(S beta2, S sigma2, uint64_t ring_dim, uint64_t levels, uint64_t base) {
    return beta2 + S(4) * S(ring_dim) * S(levels) * S(base) * S(base) * sigma2;
}

template <class S>
S var_modswitch(S beta2, uint64_t q_old, uint64_t q_new, S s_norm2) {
    S ratio = S(q_new) / S(q_old);
    return ratio * ratio * beta2 + (s_norm2 + S(1)) / S(12);
}

// full pipeline: n accumulator updates at modulus Q, key switch, then the
// final switch to q; the rounding term of the initial switch to 2Nr is not
// included here and is tracked by var_modswitch on the input side
template <class S>
S var_bootstrap_output(uint64_t n, uint64_t ring_dim, uint64_t levels, uint64_t base, uint64_t ks_levels,
                       uint64_t q, uint64_t Q, S sigma_boot2, S sigma_ks2, S s_norm2) {
    S ratio = S(q) / S(Q);
    S blind = S(4) * S(n) * S(ring_dim) * S(levels) * S(base) * S(base) * sigma_boot2;
    S ks = S(ring_dim) * S(ks_levels) * sigma_ks2;
    return blind * ratio * ratio + ks * ratio * ratio + (s_norm2 + S(1)) / S(12);
}

struct NoiseBudget {
    double proxy = 0.0; // variance proxy of the accumulated error
    uint64_t q = 0;
    uint64_t t = 0;
    double H = 6.0; // heuristic tail factor: |error| <= H * sqrt(proxy)

    double bound() const { return H * std::sqrt(proxy); }
    // decodable when the heuristic error bound stays inside half a plateau
    bool decryptable() const { return bound() < (double)(q / t) / 2.0; }
};

struct RDecomposition {
    uint32_t r = 0;
    uint64_t q_prime = 0; // 2*N*r
};

// smallest r with 2Nr >= q, so the switch to 2Nr never loses plaintext range
inline RDecomposition choose_r(uint64_t q, uint64_t N) {
    if (q == 0 || N == 0) throw std::invalid_argument("choose_r: bad arguments");
    uint64_t r = (q + 2 * N - 1) / (2 * N);
    return RDecomposition{(uint32_t)r, 2 * N * r};
}

// decodability of the input after its switch to 2Nr: requires the tail bound
// at modulus q to leave room, then N^2 r^2 above the rounding mass
inline bool check_decryptable_bound(uint64_t N, uint64_t r, uint64_t q, uint64_t t, double H, double beta2,
                                    double s_norm2) {
    double margin = 1.0 / (H * H * (double)t * (double)t) - 4.0 * beta2 / ((double)q * (double)q);
    if (margin <= 0.0) return false;
    double lhs = (double)N * (double)N * (double)r * (double)r;
    double rhs = ((s_norm2 + 1.0) / 12.0) / margin;
    return lhs > rhs;
}

} // namespace mmpmboot
