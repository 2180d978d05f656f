#pragma once

#include "modmath.hpp"
#include "noise.hpp"
#include "ring.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmpmboot {

// Scheme selector: the vector accumulator works over dimension N with an r-entry
// accumulator; the baseline works over one big ring of dimension N*r.
enum class Scheme { mmpm, tfhe };

struct ParameterSet {
    std::string name;
    Scheme scheme = Scheme::mmpm;

    uint32_t n = 0;  // LWE dimension
    uint64_t q = 0;  // LWE modulus
    uint64_t t = 0;  // plaintext modulus of bootstrap inputs

    uint32_t N = 0;  // base ring dimension
    uint32_t r = 0;  // accumulator length (mmpm) / ring expansion factor (tfhe)
    uint64_t Q = 0;  // accumulator modulus

    uint64_t B = 0;    // gadget base of the bootstrapping keys
    uint64_t B_ks = 0; // digit base of the key-switching keys

    double sigma_enc = 0.0;  // fresh LWE encryption width
    double sigma_boot = 0.0; // bootstrapping-key noise width
    double sigma_ks = 0.0;   // key-switching-key noise width
    double H = 6.0;          // heuristic tail factor

    uint32_t ring_dim() const { return scheme == Scheme::tfhe ? N * r : N; }
    uint64_t q_prime() const { return 2ull * N * r; }
    uint32_t levels() const { return gadget_levels(Q, B); }
    uint32_t ks_levels() const { return gadget_levels(Q, B_ks); }
    double expected_s_norm2() const { return 2.0 * n / 3.0; }

    void validate() const {
        if (n == 0 || N == 0 || r == 0) throw std::invalid_argument(name + ": dimensions must be positive");
        if (!is_power_of_two(N)) throw std::invalid_argument(name + ": N must be a power of two");
        if (scheme == Scheme::tfhe && !is_power_of_two((uint64_t)N * r))
            throw std::invalid_argument(name + ": N*r must be a power of two for the single-ring scheme");
        if (t < 2 || t % 2 != 0) throw std::invalid_argument(name + ": t must be even and >= 2");
        if (q < 2 * t) throw std::invalid_argument(name + ": q must be at least 2t");
        if (q > q_prime()) throw std::invalid_argument(name + ": q must not exceed 2Nr");
        if (B < 2 || B_ks < 2) throw std::invalid_argument(name + ": gadget bases must be >= 2");
        if (!NttTables::friendly(ring_dim(), Q))
            throw std::invalid_argument(name + ": Q must be prime with Q = 1 mod 2*ring_dim");
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (scheme == Scheme::mmpm && r != choose_r(q, N).r)
            w.push_back(name + ": r differs from ceil(q/2N) = " + std::to_string(choose_r(q, N).r));
        if (!check_decryptable_bound(N, r, q, t, H, sigma_enc * sigma_enc, expected_s_norm2()))
            w.push_back(name + ": input decodability bound fails for fresh encryptions");
        return w;
    }
};

// 27-bit prime, 1 mod 2048: supports negacyclic transforms for ring dimensions
// up to 1024 and is covered by three base-2^9 digits
inline constexpr uint64_t kDeskModulus = 134215681;
// 54-bit prime, 1 mod 2^20: the workstation-scale accumulator modulus
inline constexpr uint64_t kPaperModulus = 18014398492704769;

inline ParameterSet desk_preset(const std::string& name, uint32_t r, uint64_t t, Scheme scheme, double sigma_enc) {
    ParameterSet p;
    p.name = name;
    p.scheme = scheme;
    p.n = 16;
    p.N = 64;
    p.r = r;
    p.q = 2ull * p.N * r;
    p.t = t;
    p.Q = kDeskModulus;
    p.B = 512;
    p.B_ks = 25;
    p.sigma_enc = sigma_enc;
    p.sigma_boot = 3.2;
    p.sigma_ks = 3.2;
    return p;
}

inline ParameterSet paper_preset(const std::string& name, uint32_t n, uint32_t log_t, Scheme scheme) {
    ParameterSet p;
    p.name = name;
    p.scheme = scheme;
    p.n = n;
    p.N = 2048;
    p.r = 1u << (log_t - 5);
    p.q = 1ull << (log_t + 7);
    p.t = 1ull << log_t;
    p.Q = kPaperModulus;
    p.B = 1ull << 15;
    p.B_ks = 25;
    p.sigma_enc = 3.2;
    p.sigma_boot = 3.2;
    p.sigma_ks = 3.2;
    return p;
}

inline std::vector<ParameterSet> all_presets() {
    std::vector<ParameterSet> v;
    v.push_back(desk_preset("desk-small", 4, 8, Scheme::mmpm, 2.0));
    v.push_back(desk_preset("desk-small-tfhe", 4, 8, Scheme::tfhe, 2.0));
    for (uint32_t r : {1u, 2u, 4u}) {
        std::string base = "desk-r" + std::to_string(r);
        v.push_back(desk_preset(base, r, 4, Scheme::mmpm, 2.0));
        v.push_back(desk_preset(base + "-tfhe", r, 4, Scheme::tfhe, 2.0));
    }
    for (uint32_t lt = 5; lt <= 11; ++lt) {
        std::string base = "paper-t" + std::to_string(lt);
        v.push_back(paper_preset(base, 512, lt, Scheme::mmpm));
        v.push_back(paper_preset(base + "-tfhe", 512, lt, Scheme::tfhe));
    }
    for (uint32_t lt = 5; lt <= 15; ++lt) {
        std::string base = "paper2-t" + std::to_string(lt);
        v.push_back(paper_preset(base, 1024, lt, Scheme::mmpm));
        if (lt <= 11) v.push_back(paper_preset(base + "-tfhe", 1024, lt, Scheme::tfhe));
    }
    return v;
}

inline ParameterSet find_preset(const std::string& name) {
    for (auto& p : all_presets())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset: " + name);
}

} // namespace mmpmboot
