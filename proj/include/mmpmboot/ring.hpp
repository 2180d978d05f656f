#pragma once

#include "modmath.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace mmpmboot {

// Elements of Z_q[x]/(x^N + 1), N a power of two. Coefficients are canonical
// representatives in [0, q); the wrap x^N = -1 is applied eagerly everywhere.

namespace detail {
// Counts full ring multiplications (calls to negacyclic_mul); monomial
// rotations and additions are free. Used by the operation-count checks.
inline std::atomic<uint64_t> ring_mult_counter{0};
} // namespace detail

inline uint64_t ring_mult_count() { return detail::ring_mult_counter.load(std::memory_order_relaxed); }
inline void reset_ring_mult_count() { detail::ring_mult_counter.store(0, std::memory_order_relaxed); }

struct RingElement {
    uint64_t q = 0;
    std::vector<uint64_t> c; // coefficient i of x^i, in [0, q)

    RingElement() = default;
    RingElement(size_t n, uint64_t q_) : q(q_), c(n, 0) {
        if (!is_power_of_two(n)) throw std::invalid_argument("ring dimension must be a power of two");
        if (q_ < 2) throw std::invalid_argument("ring modulus must be >= 2");
    }

    size_t dim() const { return c.size(); }
    bool operator==(const RingElement&) const = default;
};

inline void check_same_ring(const RingElement& a, const RingElement& b) {
    if (a.q != b.q || a.dim() != b.dim()) throw std::invalid_argument("ring element mismatch (N or q)");
}

inline RingElement ring_add(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    RingElement out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = mod_add(out.c[i], b.c[i], a.q);
    return out;
}

inline RingElement ring_sub(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    RingElement out = a;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = mod_sub(out.c[i], b.c[i], a.q);
    return out;
}

inline RingElement ring_neg(const RingElement& a) {
    RingElement out = a;
    for (auto& x : out.c) x = mod_neg(x, a.q);
    return out;
}

inline RingElement ring_scalar_mul(const RingElement& a, uint64_t k) {
    RingElement out = a;
    k %= a.q;
    for (auto& x : out.c) x = mod_mul(x, k, a.q);
    return out;
}

// a * x^k with k taken mod 2N; multiplication by a monomial is a signed
// rotation of the coefficient vector, no ring multiplication is consumed
inline RingElement mul_by_monomial(const RingElement& a, uint64_t k) {
    size_t n = a.dim();
    k %= 2 * n;
    RingElement out((size_t)n, a.q);
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        size_t j = i + (size_t)k;
        bool flip = (j / n) & 1;
        j %= n;
        out.c[j] = flip ? mod_sub(out.c[j], a.c[i], a.q) : mod_add(out.c[j], a.c[i], a.q);
    }
    return out;
}

// Negacyclic number-theoretic transform for q prime with q = 1 (mod 2N).
// Tables are built once per (N, q) and shared read-only afterwards.
class NttTables {
public:
    // nullptr when q does not support a 2N-th root of unity
    static const NttTables* get(size_t n, uint64_t q) {
        static std::map<std::pair<size_t, uint64_t>, std::unique_ptr<NttTables>> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(n, q);
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::unique_ptr<NttTables> t;
            if (friendly(n, q)) t.reset(new NttTables(n, q));
            it = cache.emplace(key, std::move(t)).first;
        }
        return it->second.get();
    }

    static bool friendly(size_t n, uint64_t q) {
        return is_power_of_two(n) && q < (1ull << 62) && (q - 1) % (2 * n) == 0 && is_prime_u64(q);
    }

    void forward(std::vector<uint64_t>& a) const {
        size_t t = n_;
        for (size_t m = 1; m < n_; m <<= 1) {
            t >>= 1;
            for (size_t i = 0; i < m; ++i) {
                size_t j1 = 2 * i * t;
                uint64_t s = psi_rev_[m + i];
                for (size_t j = j1; j < j1 + t; ++j) {
                    uint64_t u = a[j];
                    uint64_t v = mod_mul(a[j + t], s, q_);
                    a[j] = mod_add(u, v, q_);
                    a[j + t] = mod_sub(u, v, q_);
                }
            }
        }
    }

    void inverse(std::vector<uint64_t>& a) const {
        size_t t = 1;
        for (size_t m = n_; m > 1; m >>= 1) {
            size_t j1 = 0;
            size_t h = m >> 1;
            for (size_t i = 0; i < h; ++i) {
                uint64_t s = psi_inv_rev_[h + i];
                for (size_t j = j1; j < j1 + t; ++j) {
                    uint64_t u = a[j];
                    uint64_t v = a[j + t];
                    a[j] = mod_add(u, v, q_);
                    a[j + t] = mod_mul(mod_sub(u, v, q_), s, q_);
                }
                j1 += 2 * t;
            }
            t <<= 1;
        }
        for (auto& x : a) x = mod_mul(x, n_inv_, q_);
    }

    size_t dim() const { return n_; }
    uint64_t modulus() const { return q_; }

private:
    NttTables(size_t n, uint64_t q) : n_(n), q_(q) {
        // psi = primitive 2N-th root of unity: g^((q-1)/2N) for the first
        // quadratic non-residue g; since 2N is a power of two, psi^N = -1
        // certifies the order exactly
        uint64_t psi = 0;
        for (uint64_t g = 2; g < q; ++g) {
            if (mod_pow(g, (q - 1) / 2, q) == q - 1) {
                psi = mod_pow(g, (q - 1) / (2 * (uint64_t)n), q);
                break;
            }
        }
        assert(psi != 0 && mod_pow(psi, n, q) == q - 1);
        uint64_t psi_inv = mod_pow(psi, q - 2, q);
        n_inv_ = mod_pow((uint64_t)n, q - 2, q);
        uint32_t lg = ceil_log2((uint64_t)n);
        psi_rev_.resize(n);
        psi_inv_rev_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            size_t rev = 0;
            for (uint32_t b = 0; b < lg; ++b)
                if (i & ((size_t)1 << b)) rev |= (size_t)1 << (lg - 1 - b);
            psi_rev_[i] = mod_pow(psi, rev, q);
            psi_inv_rev_[i] = mod_pow(psi_inv, rev, q);
        }
    }

    size_t n_;
    uint64_t q_;
    uint64_t n_inv_;
    std::vector<uint64_t> psi_rev_, psi_inv_rev_;
};

// evaluation-domain representation (throws when q is not NTT-friendly)
inline std::vector<uint64_t> ntt_forward(const RingElement& a) {
    const NttTables* t = NttTables::get(a.dim(), a.q);
    if (!t) throw std::invalid_argument("modulus does not admit a 2N-th root of unity");
    std::vector<uint64_t> v = a.c;
    t->forward(v);
    return v;
}

inline RingElement ntt_inverse(size_t n, uint64_t q, std::vector<uint64_t> v) {
    const NttTables* t = NttTables::get(n, q);
    if (!t) throw std::invalid_argument("modulus does not admit a 2N-th root of unity");
    if (v.size() != n) throw std::invalid_argument("transform size mismatch");
    t->inverse(v);
    RingElement out(n, q);
    out.c = std::move(v);
    return out;
}

namespace detail {
inline RingElement schoolbook_impl(const RingElement& a, const RingElement& b) {
    size_t n = a.dim();
    RingElement out(n, a.q);
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) {
            if (b.c[j] == 0) continue;
            uint64_t p = mod_mul(a.c[i], b.c[j], a.q);
            size_t k = i + j;
            if (k < n)
                out.c[k] = mod_add(out.c[k], p, a.q);
            else
                out.c[k - n] = mod_sub(out.c[k - n], p, a.q); // x^N = -1
        }
    }
    return out;
}
} // namespace detail

// O(N^2) reference path, also the fallback when q is not NTT-friendly
inline RingElement negacyclic_mul_schoolbook(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    detail::ring_mult_counter.fetch_add(1, std::memory_order_relaxed);
    return detail::schoolbook_impl(a, b);
}

inline RingElement negacyclic_mul(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    detail::ring_mult_counter.fetch_add(1, std::memory_order_relaxed);
    const NttTables* t = NttTables::get(a.dim(), a.q);
    if (!t) return detail::schoolbook_impl(a, b);
    std::vector<uint64_t> u = a.c, v = b.c;
    t->forward(u);
    t->forward(v);
    for (size_t i = 0; i < u.size(); ++i) u[i] = mod_mul(u[i], v[i], a.q);
    t->inverse(u);
    RingElement out(a.dim(), a.q);
    out.c = std::move(u);
    return out;
}

} // namespace mmpmboot
