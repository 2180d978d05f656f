#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace mmpmboot {

// All randomness flows through an explicitly passed engine, so every run is
// reproducible under a fixed seed. Sampling avoids std::*_distribution, whose
// output is implementation-defined; mt19937_64 itself is pinned by the
// standard.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // unbiased uniform draw from [0, bound) via rejection
    uint64_t below(uint64_t bound) {
        assert(bound > 0);
        if (is_pow2(bound)) return eng_() & (bound - 1);
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            uint64_t v = eng_();
            if (v < limit) return v % bound;
        }
    }

    // uniform double in [0, 1) with 53 random bits
    double unit() { return (double)(eng_() >> 11) * 0x1.0p-53; }

    // derived generator with an independent stream, for per-trial seeding
    Rng fork(uint64_t salt) const { return Rng(splitmix(seed_ + 0x9E3779B97F4A7C15ull * (salt + 1))); }

    uint64_t seed() const { return seed_; }

private:
    static bool is_pow2(uint64_t x) { return (x & (x - 1)) == 0; }
    static uint64_t splitmix(uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    uint64_t seed_;
    std::mt19937_64 eng_;
};

// Centered discrete Gaussian with width sigma, sampled by inversion from a
// cumulative table covering +-10 sigma (mass beyond is < 2^-70).
class DiscreteGaussian {
public:
    explicit DiscreteGaussian(double sigma) : sigma_(sigma) {
        assert(sigma >= 0.0);
        tail_ = sigma == 0.0 ? 0 : (int64_t)std::ceil(10.0 * sigma);
        if (tail_ == 0) return;
        std::vector<double> w(2 * tail_ + 1);
        double inv2s2 = 1.0 / (2.0 * sigma * sigma);
        double total = 0.0;
        for (int64_t k = -tail_; k <= tail_; ++k) {
            w[(size_t)(k + tail_)] = std::exp(-(double)k * (double)k * inv2s2);
            total += w[(size_t)(k + tail_)];
        }
        cum_.resize(w.size());
        double acc = 0.0;
        for (size_t i = 0; i < w.size(); ++i) {
            acc += w[i] / total;
            cum_[i] = acc;
        }
        cum_.back() = 1.0;
    }

    int64_t operator()(Rng& rng) const {
        if (tail_ == 0) return 0;
        double u = rng.unit();
        size_t idx = (size_t)(std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
        return (int64_t)idx - tail_;
    }

    double sigma() const { return sigma_; }

private:
    double sigma_;
    int64_t tail_ = 0;
    std::vector<double> cum_;
};

// uniform ternary vector with entries in {-1, 0, 1}
inline std::vector<int8_t> sample_ternary(size_t n, Rng& rng) {
    std::vector<int8_t> v(n);
    for (auto& x : v) x = (int8_t)((int64_t)rng.below(3) - 1);
    return v;
}

} // namespace mmpmboot
