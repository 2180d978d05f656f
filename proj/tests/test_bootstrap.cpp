#include <catch2/catch_amalgamated.hpp>
#include <mmpmboot/bootstrap.hpp>
#include <mmpmboot/params.hpp>

#include "oracles.hpp"

using namespace mmpmboot;

namespace {

LookUpTable random_nega_cyclic_lut(uint64_t t, Rng& rng) {
    LookUpTable f{t, t, std::vector<uint64_t>(t)};
    for (uint64_t v = 0; v < t / 2; ++v) {
        f.table[v] = rng.below(t);
        f.table[v + t / 2] = (t - f.table[v]) % t;
    }
    return f;
}

} // namespace

TEST_CASE("nega-cyclic extension plateaus around each scaled message", "[lut]") {
    LookUpTable sign{4, 4, {1, 1, 3, 3}};
    REQUIRE(sign.nega_cyclic());
    std::vector<uint64_t> ext = negacyclic_extend(sign, 16);
    REQUIRE(ext == std::vector<uint64_t>{1, 1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3, 1});

    Rng rng(307);
    for (auto [t, q_prime] : {std::pair<uint64_t, uint64_t>{4, 16}, {8, 64}, {8, 512}, {16, 128}}) {
        LookUpTable f = random_nega_cyclic_lut(t, rng);
        std::vector<uint64_t> e = negacyclic_extend(f, q_prime);
        uint64_t delta = q_prime / t;
        CAPTURE(t, q_prime);
        // global form: index u reads the table at round(u / delta), ties down
        for (uint64_t u = 0; u < q_prime; ++u)
            REQUIRE(e[u] == f.table[((2 * u + delta - 1) / (2 * delta)) % t]);
        // every index within half a plateau of m * delta holds f(m)
        for (uint64_t m = 0; m < t; ++m)
            for (int64_t off = -(int64_t)delta / 2 + 1; off <= (int64_t)delta / 2; ++off) {
                uint64_t u = (uint64_t)(((int64_t)(m * delta) + off + (int64_t)q_prime) % (int64_t)q_prime);
                REQUIRE(e[u] == f.table[m]);
            }
        // the extension itself is nega-cyclic on the larger domain
        for (uint64_t u = 0; u < q_prime; ++u)
            REQUIRE(e[(u + q_prime / 2) % q_prime] == (f.t_out - e[u]) % f.t_out);
    }

    LookUpTable not_nc{4, 4, {0, 1, 2, 3}};
    REQUIRE_FALSE(not_nc.nega_cyclic());
    REQUIRE_THROWS_AS(negacyclic_extend(not_nc, 16), std::domain_error);
    REQUIRE_THROWS_AS(negacyclic_extend(sign, 4), std::invalid_argument); // target too small
}

TEST_CASE("table helpers: top-bit selector and trivial nega-cyclic extension", "[lut]") {
    uint64_t t = 8;
    LookUpTable mp = msb_selector(t);
    REQUIRE(mp.t_in == 2 * t);
    REQUIRE(mp.nega_cyclic());
    // subtracting the selector plus t/2 pins any v into [0, t)
    for (uint64_t v = 0; v < 2 * t; ++v) {
        uint64_t pinned = (v + 2 * t - mp.table[v] - t / 2) % (2 * t);
        REQUIRE(pinned == v % t);
    }

    LookUpTable f{t, 16, {3, 1, 4, 1, 5, 9, 2, 6}};
    LookUpTable g = extend_table_nega_cyclic(f);
    REQUIRE(g.t_in == 2 * t);
    REQUIRE(g.t_out == 16);
    REQUIRE(g.nega_cyclic());
    for (uint64_t v = 0; v < t; ++v) REQUIRE(g.table[v] == f.table[v]);
}

TEST_CASE("a CMux rotates the accumulator plaintext by -a*s", "[bootstrap]") {
    Rng rng(311);
    uint32_t r = 4, N = 64;
    uint64_t Q = 134215681, t_out = 8, B = 512, q_prime = 2ull * N * r;
    uint32_t levels = gadget_levels(Q, B);
    RingSecret z = sample_ring_secret(N, rng);

    std::vector<uint64_t> f_prime(q_prime);
    for (uint64_t i = 0; i < q_prime / 2; ++i) {
        f_prime[i] = rng.below(t_out);
        f_prime[i + q_prime / 2] = (t_out - f_prime[i]) % t_out;
    }
    TestVector v = build_test_vector(f_prime, r, N, t_out);

    for (int8_t s : {int8_t(1), int8_t(-1), int8_t(0)}) {
        RingElement mp(N, Q), mm(N, Q);
        mp.c[0] = s == 1 ? 1 : 0;
        mm.c[0] = s == -1 ? 1 : 0;
        RgswCiphertext c_plus = rgsw_encrypt(mp, z, B, levels, 3.2, rng);
        RgswCiphertext c_minus = rgsw_encrypt(mm, z, B, levels, 3.2, rng);
        for (uint64_t a : {uint64_t(0), uint64_t(1), uint64_t(17), uint64_t(311), q_prime - 1}) {
            RlweVector acc = rlwe_vector_trivial(v, Q);
            RlweVector out = cmux_rlwe_vector(c_plus, c_minus, a, acc, r, N);
            // the selected branch rotates by (-a*s) mod q'
            uint64_t shift = s == 1 ? (q_prime - a % q_prime) % q_prime : (s == -1 ? a % q_prime : 0);
            std::vector<RingElement> expect =
                apply_mmpm_to_ring_vector(phi(r, N, shift), v.entries);
            CAPTURE((int)s, a);
            for (uint32_t i = 0; i < r; ++i) {
                RingElement dec = rlwe_decrypt(out.entries[i], z);
                REQUIRE(dec == expect[i]);
            }
        }
    }
}

TEST_CASE("blind rotation accumulates the full phase", "[bootstrap]") {
    ParameterSet p = find_preset("desk-small");
    Rng rng(313);
    KeySet keys = generate_keyset(p, rng);

    std::vector<uint64_t> f_prime(p.q_prime());
    for (uint64_t i = 0; i < p.q_prime() / 2; ++i) {
        f_prime[i] = rng.below(p.t);
        f_prime[i + p.q_prime() / 2] = (p.t - f_prime[i]) % p.t;
    }
    TestVector v = build_test_vector(f_prime, p.r, p.N, p.t);

    for (int rep = 0; rep < 5; ++rep) {
        uint64_t m = rng.below(p.t);
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q_prime(), p.t, p.sigma_enc, rng);
        RlweVector acc = blind_rotate_mmpm(ct, v, keys.bk, p.Q);
        uint64_t phase = lwe_phase(ct, keys.s);
        std::vector<RingElement> expect = apply_mmpm_to_ring_vector(phi(p.r, p.N, phase), v.entries);
        for (uint32_t i = 0; i < p.r; ++i) REQUIRE(rlwe_decrypt(acc.entries[i], keys.z) == expect[i]);
    }
}

TEST_CASE("one-round bootstrap evaluates nega-cyclic tables on every message", "[bootstrap]") {
    ParameterSet p = find_preset("desk-small");
    Rng rng(317);
    KeySet keys = generate_keyset(p, rng);
    LookUpTable f = random_nega_cyclic_lut(p.t, rng);
    for (uint64_t m = 0; m < p.t; ++m) {
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q, p.t, p.sigma_enc, rng);
        LweCiphertext out = boot_mmpm(ct, f, keys);
        CAPTURE(m);
        REQUIRE(out.q == p.q);
        REQUIRE(out.t == f.t_out);
        REQUIRE(lwe_decrypt(out, keys.s) == f.table[m]);
    }
    LookUpTable not_nc{p.t, p.t, std::vector<uint64_t>(p.t)};
    for (uint64_t v = 0; v < p.t; ++v) not_nc.table[v] = v;
    REQUIRE_THROWS_AS(boot_mmpm(lwe_encrypt(0, keys.s, p.q, p.t, 0.0, rng), not_nc, keys), std::domain_error);
}

TEST_CASE("two-round bootstrap evaluates arbitrary tables on every message", "[bootstrap]") {
    ParameterSet p = find_preset("desk-small");
    Rng rng(331);
    KeySet keys = generate_keyset(p, rng);
    LookUpTable f{p.t, p.t, std::vector<uint64_t>(p.t)};
    for (uint64_t v = 0; v < p.t; ++v) f.table[v] = rng.below(p.t);
    REQUIRE_FALSE(f.nega_cyclic());
    for (uint64_t m = 0; m < p.t; ++m) {
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q, 2 * p.t, p.sigma_enc, rng);
        LweCiphertext out = boot_general(ct, f, keys);
        CAPTURE(m);
        REQUIRE(lwe_decrypt(out, keys.s) == f.table[m]);
    }
    // encrypting against t instead of 2t is rejected
    REQUIRE_THROWS_AS(boot_general(lwe_encrypt(0, keys.s, p.q, p.t, 0.0, rng), f, keys), std::invalid_argument);
}

TEST_CASE("the single-ring baseline bootstraps the same tables", "[bootstrap]") {
    ParameterSet p = find_preset("desk-small-tfhe");
    Rng rng(337);
    KeySet keys = generate_keyset(p, rng);
    LookUpTable f = random_nega_cyclic_lut(p.t, rng);
    for (uint64_t m = 0; m < p.t; ++m) {
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q, p.t, p.sigma_enc, rng);
        REQUIRE(lwe_decrypt(boot_mmpm(ct, f, keys), keys.s) == f.table[m]);
    }
}

TEST_CASE("at r = 1 the vector and single-ring rotations are bit-identical", "[bootstrap]") {
    ParameterSet pm = find_preset("desk-r1");
    ParameterSet pt = find_preset("desk-r1-tfhe");
    uint64_t seed = 424242;
    Rng rm(seed), rt(seed);
    KeySet km = generate_keyset(pm, rm);
    KeySet kt = generate_keyset(pt, rt);
    REQUIRE(km.s.s == kt.s.s); // same draw order, same dimensions, same keys
    REQUIRE(km.z.z == kt.z.z);

    std::vector<uint64_t> f_prime(pm.q_prime());
    Rng fr(7);
    for (uint64_t i = 0; i < pm.q_prime() / 2; ++i) {
        f_prime[i] = fr.below(pm.t);
        f_prime[i + pm.q_prime() / 2] = (pm.t - f_prime[i]) % pm.t;
    }
    TestVector v = build_test_vector(f_prime, 1, pm.N, pm.t);

    for (int rep = 0; rep < 10; ++rep) {
        uint64_t m = fr.below(pm.t);
        LweCiphertext ct = lwe_encrypt(m, km.s, pm.q_prime(), pm.t, pm.sigma_enc, fr);
        RlweVector acc_m = blind_rotate_mmpm(ct, v, km.bk, pm.Q);
        RlweCiphertext acc_t = blind_rotate_tfhe(ct, v, kt.bk, pt.Q);
        REQUIRE(acc_m.entries.size() == 1);
        REQUIRE(acc_m.entries[0] == acc_t); // ciphertext-level equality
        REQUIRE(rlwe_decrypt(acc_m.entries[0], km.z) == rlwe_decrypt(acc_t, kt.z));
    }
}

TEST_CASE("blind rotations consume the advertised multiplication counts", "[bootstrap]") {
    ParameterSet pm = find_preset("desk-small");
    ParameterSet pt = find_preset("desk-small-tfhe");
    Rng rng(347);
    KeySet km = generate_keyset(pm, rng);
    KeySet kt = generate_keyset(pt, rng);

    LookUpTable f = random_nega_cyclic_lut(pm.t, rng);
    std::vector<uint64_t> fm = negacyclic_extend(f, pm.q_prime());
    TestVector vm = build_test_vector(fm, pm.r, pm.N, pm.t);
    TestVector vt = build_test_vector(fm, 1, pt.ring_dim(), pt.t);

    LweCiphertext ct = lwe_encrypt(3, km.s, pm.q_prime(), pm.t, pm.sigma_enc, rng);
    reset_ring_mult_count();
    (void)blind_rotate_mmpm(ct, vm, km.bk, pm.Q);
    REQUIRE(ring_mult_count() == 8ull * pm.n * pm.r * pm.levels());

    LweCiphertext ct2 = lwe_encrypt(3, kt.s, pt.q_prime(), pt.t, pt.sigma_enc, rng);
    reset_ring_mult_count();
    (void)blind_rotate_tfhe(ct2, vt, kt.bk, pt.Q);
    REQUIRE(ring_mult_count() == 8ull * pt.n * pt.levels());
}
