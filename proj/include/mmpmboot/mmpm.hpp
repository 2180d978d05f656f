#pragma once

#include "ring.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmpmboot {

// Monic monomial permutation matrices acting on (Z_q[x]/(x^N+1))^r: invertible
// r x r matrices with exactly one monomial x^u per row and column, exponents
// mod 2N (x^N = -1, so signs ride in the exponent). Stored sparsely as a
// permutation plus a row-indexed exponent vector:
//   entry (i, j) = x^{exps[i]}  iff  i = perm[j].
struct Mmpm {
    uint32_t r = 0;
    uint32_t N = 0;
    std::vector<uint32_t> perm; // column j's nonzero sits in row perm[j]
    std::vector<uint32_t> exps; // exps[i] in [0, 2N), indexed by row i

    bool operator==(const Mmpm&) const = default;
};

// x^exp * e_basis, the vectors the group acts on
struct Mmiv {
    uint32_t exp;   // in [0, 2N)
    uint32_t basis; // in [0, r)
    bool operator==(const Mmiv&) const = default;
};

inline Mmpm mmpm_make(uint32_t r, uint32_t N, std::vector<uint32_t> perm, std::vector<uint32_t> exps) {
    if (r == 0 || N == 0) throw std::invalid_argument("mmpm: r and N must be positive");
    if (perm.size() != r || exps.size() != r) throw std::invalid_argument("mmpm: size mismatch");
    std::vector<char> hit(r, 0);
    for (uint32_t p : perm) {
        if (p >= r || hit[p]) throw std::invalid_argument("mmpm: perm is not a bijection");
        hit[p] = 1;
    }
    for (uint32_t u : exps)
        if (u >= 2 * N) throw std::invalid_argument("mmpm: exponent out of range");
    return Mmpm{r, N, std::move(perm), std::move(exps)};
}

inline Mmpm mmpm_identity(uint32_t r, uint32_t N) {
    Mmpm m{r, N, std::vector<uint32_t>(r), std::vector<uint32_t>(r, 0)};
    for (uint32_t j = 0; j < r; ++j) m.perm[j] = j;
    return m;
}

// canonical generator image of c in Z_{2Nr}: the single-cycle shift whose
// r-th power is x * I; for c = a*r + b the matrix has x^{a+1} on the top-right
// b x b block and x^a on the bottom-left (r-b) x (r-b) block
inline Mmpm phi(uint32_t r, uint32_t N, uint64_t c) {
    uint64_t order = 2ull * N * r;
    c %= order;
    uint32_t a = (uint32_t)(c / r);
    uint32_t b = (uint32_t)(c % r);
    Mmpm m{r, N, std::vector<uint32_t>(r), std::vector<uint32_t>(r)};
    for (uint32_t j = 0; j < r; ++j) m.perm[j] = (j + b) % r;
    for (uint32_t i = 0; i < r; ++i) m.exps[i] = (i < b ? a + 1 : a) % (2 * N);
    return m;
}

inline void check_same_group(const Mmpm& x, const Mmpm& y) {
    if (x.r != y.r || x.N != y.N) throw std::invalid_argument("mmpm: r or N mismatch");
}

inline Mmpm mmpm_mul(const Mmpm& x, const Mmpm& y) {
    check_same_group(x, y);
    uint32_t r = x.r;
    std::vector<uint32_t> inv_x(r);
    for (uint32_t j = 0; j < r; ++j) inv_x[x.perm[j]] = j;
    Mmpm out{r, x.N, std::vector<uint32_t>(r), std::vector<uint32_t>(r)};
    for (uint32_t j = 0; j < r; ++j) out.perm[j] = x.perm[y.perm[j]];
    for (uint32_t i = 0; i < r; ++i) out.exps[i] = (x.exps[i] + y.exps[inv_x[i]]) % (2 * x.N);
    return out;
}

inline Mmiv mmiv_apply(const Mmpm& x, Mmiv v) {
    uint32_t row = x.perm[v.basis];
    return Mmiv{(x.exps[row] + v.exp) % (2 * x.N), row};
}

// generic power by repeated squaring
inline Mmpm mmpm_pow(const Mmpm& x, uint64_t l) {
    Mmpm acc = mmpm_identity(x.r, x.N);
    Mmpm base = x;
    while (l) {
        if (l & 1) acc = mmpm_mul(acc, base);
        base = mmpm_mul(base, base);
        l >>= 1;
    }
    return acc;
}

// cyclic-shift shape: column j's nonzero in row j+1 mod r
inline bool mmpm_is_cyclic_shape(const Mmpm& x) {
    for (uint32_t j = 0; j < x.r; ++j)
        if (x.perm[j] != (j + 1) % x.r) return false;
    return true;
}

// closed-form power for cyclic-shift matrices: row i of A^l carries the sum of
// l consecutive exponents walked backwards from i
inline Mmpm mmpm_pow_cyclic(const Mmpm& x, uint64_t l) {
    if (!mmpm_is_cyclic_shape(x)) throw std::domain_error("mmpm_pow_cyclic: matrix is not a cyclic shift");
    uint32_t r = x.r;
    uint64_t two_n = 2ull * x.N;
    uint64_t total = 0;
    for (uint32_t i = 0; i < r; ++i) total += x.exps[i];
    uint64_t full = (l / r) % two_n;
    uint32_t part = (uint32_t)(l % r);
    Mmpm out{r, x.N, std::vector<uint32_t>(r), std::vector<uint32_t>(r)};
    for (uint32_t j = 0; j < r; ++j) out.perm[j] = (uint32_t)((j + l) % r);
    for (uint32_t i = 0; i < r; ++i) {
        uint64_t s = full * (total % two_n) % two_n;
        for (uint32_t t = 0; t < part; ++t) s += x.exps[(i + r - t % r) % r];
        out.exps[i] = (uint32_t)(s % two_n);
    }
    return out;
}

// Block-diagonal normal form: conjugation by the permutation that lists the
// cycles of perm in order of their smallest element, each cycle walked from
// that element. Every block is a cyclic shift carrying the original row
// exponents along its cycle.
struct NormalFormBlock {
    uint32_t size = 0;
    std::vector<uint32_t> exps; // exps[t] = original exps at the t-th cycle element
    bool operator==(const NormalFormBlock&) const = default;
};

struct NormalForm {
    std::vector<NormalFormBlock> blocks;
    std::vector<uint32_t> psi; // block-local position t -> original index
    bool operator==(const NormalForm&) const = default;
};

inline NormalForm normal_form(const Mmpm& x) {
    NormalForm nf;
    std::vector<char> seen(x.r, 0);
    for (uint32_t s = 0; s < x.r; ++s) {
        if (seen[s]) continue;
        NormalFormBlock blk;
        uint32_t c = s;
        do {
            seen[c] = 1;
            nf.psi.push_back(c);
            blk.exps.push_back(x.exps[c]);
            c = x.perm[c];
        } while (c != s);
        blk.size = (uint32_t)blk.exps.size();
        nf.blocks.push_back(std::move(blk));
    }
    return nf;
}

// multiplicative order of x^v in the 2N-th cyclotomic quotient: 2N / gcd(2N, v)
inline uint64_t monomial_order(uint64_t v, uint32_t N) {
    uint64_t two_n = 2ull * N;
    return two_n / std::gcd(two_n, v % two_n);
}

inline uint64_t block_order(const NormalFormBlock& blk, uint32_t N) {
    uint64_t sum = 0;
    for (uint32_t u : blk.exps) sum += u;
    return (uint64_t)blk.size * monomial_order(sum, N);
}

inline uint64_t order(const Mmpm& x) {
    uint64_t o = 1;
    for (const auto& blk : normal_form(x).blocks) o = std::lcm(o, block_order(blk, x.N));
    return o;
}

// number of orbits of <A> on the 2Nr monomial basis vectors: each block of
// size r_k contributes 2N r_k / order(block)
inline uint64_t orbit_count(const Mmpm& x) {
    uint64_t total = 0;
    for (const auto& blk : normal_form(x).blocks) {
        uint64_t cells = 2ull * x.N * blk.size;
        uint64_t o = block_order(blk, x.N);
        assert(cells % o == 0);
        total += cells / o;
    }
    return total;
}

// transitive on the monomial basis vectors: single cycle and full order 2Nr
inline bool is_transitive(const Mmpm& x) {
    NormalForm nf = normal_form(x);
    return nf.blocks.size() == 1 && block_order(nf.blocks[0], x.N) == 2ull * x.N * x.r;
}

// For transitive A: the Nr vectors A^{k+i} e_0, i in [Nr], folded into the
// N*r-dimensional rational coordinate space (x^e e_b with e >= N folds to a
// negative unit coordinate), have full rank iff they occupy distinct cells.
inline bool linear_independence_check(const Mmpm& x, uint64_t k) {
    if (!is_transitive(x)) throw std::domain_error("linear_independence_check: matrix is not transitive");
    uint64_t nr = (uint64_t)x.N * x.r;
    std::vector<char> cell((size_t)nr, 0);
    Mmiv v{0, 0};
    {
        Mmpm p = mmpm_pow(x, k);
        v = mmiv_apply(p, v);
    }
    for (uint64_t i = 0; i < nr; ++i) {
        size_t idx = (size_t)v.basis * x.N + v.exp % x.N;
        if (cell[idx]) return false;
        cell[idx] = 1;
        v = mmiv_apply(x, v);
    }
    return true;
}

// --- test vectors ----------------------------------------------------------

// r ring entries over Z_{t_out} encoding a nega-cyclic table f' on Z_{2Nr}:
// entry b, coefficient a holds f'(-(a*r+b) mod 2Nr)
struct TestVector {
    uint32_t r = 0;
    uint32_t N = 0;
    uint64_t t_out = 0;
    std::vector<RingElement> entries;
    bool operator==(const TestVector&) const = default;
};

inline void check_nega_cyclic_table(const std::vector<uint64_t>& f, uint64_t modulus, uint64_t half) {
    if (f.size() != 2 * half) throw std::invalid_argument("table length must be twice the half-period");
    for (uint64_t i = 0; i < f.size(); ++i) {
        if (f[i] >= modulus) throw std::invalid_argument("table value out of range");
        if (f[(i + half) % f.size()] != (modulus - f[i]) % modulus)
            throw std::invalid_argument("table is not nega-cyclic");
    }
}

inline TestVector build_test_vector(const std::vector<uint64_t>& f_prime, uint32_t r, uint32_t N, uint64_t t_out) {
    uint64_t q_prime = 2ull * N * r;
    if (f_prime.size() != q_prime) throw std::invalid_argument("build_test_vector: table length must be 2Nr");
    check_nega_cyclic_table(f_prime, t_out, q_prime / 2);
    TestVector v{r, N, t_out, {}};
    v.entries.assign(r, RingElement(N, t_out));
    for (uint32_t b = 0; b < r; ++b)
        for (uint32_t a = 0; a < N; ++a) {
            uint64_t idx = (q_prime - ((uint64_t)a * r + b) % q_prime) % q_prime;
            v.entries[b].c[a] = f_prime[idx];
        }
    return v;
}

// apply A to a vector of ring elements; a permutation of entries plus monomial
// rotations, no ring multiplication is consumed
inline std::vector<RingElement> apply_mmpm_to_ring_vector(const Mmpm& x, const std::vector<RingElement>& v) {
    if (v.size() != x.r) throw std::invalid_argument("apply_mmpm: vector length mismatch");
    std::vector<uint32_t> inv(x.r);
    for (uint32_t j = 0; j < x.r; ++j) inv[x.perm[j]] = j;
    std::vector<RingElement> out(x.r);
    for (uint32_t i = 0; i < x.r; ++i) {
        if (v[inv[i]].dim() != x.N) throw std::invalid_argument("apply_mmpm: ring dimension mismatch");
        out[i] = mul_by_monomial(v[inv[i]], x.exps[i]);
    }
    return out;
}

// constant coefficient of the first entry of phi(m) * v_test equals f'(m);
// returns false and reports the first failing m if the relation breaks
inline bool lookup_property_check(const std::vector<uint64_t>& f_prime, uint32_t r, uint32_t N, uint64_t t_out,
                                  uint64_t* failing_m = nullptr) {
    TestVector v = build_test_vector(f_prime, r, N, t_out);
    uint64_t q_prime = 2ull * N * r;
    for (uint64_t m = 0; m < q_prime; ++m) {
        std::vector<RingElement> w = apply_mmpm_to_ring_vector(phi(r, N, m), v.entries);
        if (w[0].c[0] != f_prime[m]) {
            if (failing_m) *failing_m = m;
            return false;
        }
    }
    return true;
}

// --- text form -------------------------------------------------------------

// "r N; p0 p1 ... p(r-1); u0 u1 ... u(r-1)" with p = column-to-row map and
// u = row exponents
inline Mmpm parse_mmpm(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw std::invalid_argument("mmpm spec: expected three ';'-separated fields");
    auto nums = [](const std::string& s) {
        std::istringstream in(s);
        std::vector<uint64_t> v;
        uint64_t x;
        while (in >> x) v.push_back(x);
        if (!in.eof()) throw std::invalid_argument("mmpm spec: not a number");
        return v;
    };
    std::vector<uint64_t> head = nums(parts[0]);
    if (head.size() != 2) throw std::invalid_argument("mmpm spec: header must be 'r N'");
    uint32_t r = (uint32_t)head[0], N = (uint32_t)head[1];
    std::vector<uint64_t> p = nums(parts[1]), u = nums(parts[2]);
    if (p.size() != r || u.size() != r) throw std::invalid_argument("mmpm spec: field length must be r");
    std::vector<uint32_t> perm(p.begin(), p.end()), exps(u.begin(), u.end());
    return mmpm_make(r, N, std::move(perm), std::move(exps));
}

inline std::string format_mmpm(const Mmpm& x) {
    std::ostringstream out;
    out << x.r << " " << x.N << ";";
    for (uint32_t j = 0; j < x.r; ++j) out << " " << x.perm[j];
    out << ";";
    for (uint32_t i = 0; i < x.r; ++i) out << " " << x.exps[i];
    return out.str();
}

} // namespace mmpmboot
