// Acceptance suite: eight criteria, each printing one PASS/FAIL line with the
// measured quantities. Every check is deterministic under its fixed seed.

#include <catch2/catch_amalgamated.hpp>
#include <mmpmboot/mmpmboot.hpp>

#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>

using namespace mmpmboot;

namespace {

void report(int k, bool pass, const std::string& detail) {
    std::cout << "criterion " << k << ": " << (pass ? "PASS" : "FAIL") << " - " << detail << std::endl;
}

LookUpTable random_nega_cyclic_lut(uint64_t t, Rng& rng) {
    LookUpTable f{t, t, std::vector<uint64_t>(t)};
    for (uint64_t v = 0; v < t / 2; ++v) {
        f.table[v] = rng.below(t);
        f.table[v + t / 2] = (t - f.table[v]) % t;
    }
    return f;
}

std::vector<uint64_t> random_nega_cyclic_table(uint32_t r, uint32_t N, uint64_t t_out, Rng& rng) {
    uint64_t q_prime = 2ull * N * r;
    std::vector<uint64_t> f(q_prime);
    for (uint64_t i = 0; i < q_prime / 2; ++i) {
        f[i] = rng.below(t_out);
        f[i + q_prime / 2] = (t_out - f[i]) % t_out;
    }
    return f;
}

Mmpm random_mmpm(uint32_t r, uint32_t N, Rng& rng) {
    std::vector<uint32_t> perm(r), exps(r);
    std::iota(perm.begin(), perm.end(), 0u);
    for (uint32_t i = r; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (auto& e : exps) e = (uint32_t)rng.below(2 * N);
    return mmpm_make(r, N, perm, exps);
}

// signed uniform draw on [-w, w]; variance w*(w+1)/3, exactly
int64_t uniform_signed(uint64_t w, Rng& rng) { return (int64_t)rng.below(2 * w + 1) - (int64_t)w; }

} // namespace

TEST_CASE("criterion 1: end-to-end correctness at desk-small") {
    ParameterSet p = find_preset("desk-small");
    Rng rng(1001);
    KeySet keys = generate_keyset(p, rng);

    LookUpTable f = random_nega_cyclic_lut(p.t, rng);
    uint64_t fail_one = 0;
    for (int i = 0; i < 100; ++i) {
        uint64_t m = rng.below(p.t);
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q, p.t, p.sigma_enc, rng);
        if (lwe_decrypt(boot_mmpm(ct, f, keys), keys.s) != f.table[m]) ++fail_one;
    }

    LookUpTable id = lut_identity(p.t);
    uint64_t fail_two = 0;
    for (int i = 0; i < 100; ++i) {
        uint64_t m = rng.below(p.t);
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q, 2 * p.t, p.sigma_enc, rng);
        if (lwe_decrypt(boot_general(ct, id, keys), keys.s) != m) ++fail_two;
    }

    bool pass = fail_one == 0 && fail_two == 0;
    report(1, pass,
           "one-round " + std::to_string(fail_one) + "/100 failures, two-round identity " +
               std::to_string(fail_two) + "/100 failures");
    REQUIRE(pass);
}

TEST_CASE("criterion 2: exhaustive look-up property of rotated test vectors") {
    Rng rng(1002);
    uint64_t checked = 0, failed = 0;
    for (auto [N, r] : {std::pair<uint32_t, uint32_t>{2, 2}, {4, 3}, {4, 4}, {8, 4}}) {
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<uint64_t> f = random_nega_cyclic_table(r, N, 16, rng);
            uint64_t m = 0;
            if (!lookup_property_check(f, r, N, 16, &m)) ++failed;
            checked += 2ull * N * r;
        }
    }
    bool pass = failed == 0;
    report(2, pass,
           std::to_string(checked) + " rotations over 4 geometries x 10 tables, " + std::to_string(failed) +
               " table failures");
    REQUIRE(pass);
}

TEST_CASE("criterion 3: order, orbits, transitivity and normal form vs brute force") {
    Rng rng(1003);
    uint64_t bad_order = 0, bad_orbits = 0, bad_transitive = 0, bad_normal = 0;
    for (int rep = 0; rep < 100; ++rep) {
        uint32_t r = 1 + (uint32_t)rng.below(4);
        uint32_t N = 1u << (1 + rng.below(3));
        Mmpm x = random_mmpm(r, N, rng);
        if (order(x) != oracle::order_brute(x)) ++bad_order;
        uint64_t orbits = orbit_count(x);
        if (orbits != oracle::orbit_count_brute(x)) ++bad_orbits;
        if (is_transitive(x) != (orbits == 1)) ++bad_transitive;
        NormalForm nf = normal_form(x);
        std::vector<std::pair<uint32_t, std::vector<uint32_t>>> blocks;
        for (const auto& blk : nf.blocks) blocks.emplace_back(blk.size, blk.exps);
        oracle::DenseMono conj = oracle::dense_mul(
            oracle::dense_mul(oracle::dense_perm_inverse(nf.psi, N), oracle::dense_from_mmpm(x)),
            oracle::dense_perm(nf.psi, N));
        if (!(conj == oracle::dense_block_diag(blocks, N))) ++bad_normal;
    }
    bool pass = bad_order == 0 && bad_orbits == 0 && bad_transitive == 0 && bad_normal == 0;
    report(3, pass,
           "100 random matrices: " + std::to_string(bad_order) + " order, " + std::to_string(bad_orbits) +
               " orbit, " + std::to_string(bad_transitive) + " transitivity, " + std::to_string(bad_normal) +
               " normal-form mismatches");
    REQUIRE(pass);
}

TEST_CASE("criterion 4: key-size goldens and the exact factor-r comparison") {
    KeySizeReport t1 = key_size_report(find_preset("paper-t5"));
    KeySizeReport t2 = key_size_report(find_preset("paper2-t5"));
    bool goldens = t1.boot_bytes() == 268435456ull && format_bytes(t1.boot_bytes()) == "256.00 MiB" &&
                   t1.ksk_bytes() == 2521497600ull && format_bytes(t1.ksk_bytes()) == "2.35 GiB" &&
                   t2.boot_bytes() == 536870912ull && format_bytes(t2.boot_bytes()) == "512.00 MiB" &&
                   t2.ksk_bytes() == 5038080000ull && format_bytes(t2.ksk_bytes()) == "4.69 GiB";
    bool ratios = true;
    for (std::string base : {"desk-r1", "desk-r2", "desk-r4", "paper-t8"}) {
        ParameterSet pm = find_preset(base);
        KeySizeReport km = key_size_report(pm);
        KeySizeReport kt = key_size_report(find_preset(base + "-tfhe"));
        if (kt.boot_words != km.boot_words * pm.r) ratios = false;
    }
    bool pass = goldens && ratios;
    report(4, pass,
           "boot " + format_bytes(t1.boot_bytes()) + " / ksk " + format_bytes(t1.ksk_bytes()) + " and boot " +
               format_bytes(t2.boot_bytes()) + " / ksk " + format_bytes(t2.ksk_bytes()) +
               (ratios ? ", baseline/vector boot-key ratio = r on all pairs" : ", ratio mismatch"));
    REQUIRE(pass);
}

TEST_CASE("criterion 5: exact ring-multiplication counts per blind rotation") {
    ParameterSet pm = find_preset("desk-small");
    ParameterSet pt = find_preset("desk-small-tfhe");
    Rng rng(1005);
    KeySet km = generate_keyset(pm, rng);
    KeySet kt = generate_keyset(pt, rng);
    LookUpTable f = random_nega_cyclic_lut(pm.t, rng);
    std::vector<uint64_t> fe = negacyclic_extend(f, pm.q_prime());
    TestVector vm = build_test_vector(fe, pm.r, pm.N, pm.t);
    TestVector vt = build_test_vector(fe, 1, pt.ring_dim(), pt.t);

    LweCiphertext cm = lwe_encrypt(2, km.s, pm.q_prime(), pm.t, pm.sigma_enc, rng);
    reset_ring_mult_count();
    (void)blind_rotate_mmpm(cm, vm, km.bk, pm.Q);
    uint64_t got_m = ring_mult_count();
    uint64_t want_m = 8ull * pm.n * pm.r * pm.levels();

    LweCiphertext ctt = lwe_encrypt(2, kt.s, pt.q_prime(), pt.t, pt.sigma_enc, rng);
    reset_ring_mult_count();
    (void)blind_rotate_tfhe(ctt, vt, kt.bk, pt.Q);
    uint64_t got_t = ring_mult_count();
    uint64_t want_t = 8ull * pt.n * pt.levels();

    bool pass = got_m == want_m && got_t == want_t;
    report(5, pass,
           "vector rotation " + std::to_string(got_m) + " (want " + std::to_string(want_m) + "), baseline " +
               std::to_string(got_t) + " (want " + std::to_string(want_t) + ") at ring dimension " +
               std::to_string(pt.ring_dim()));
    REQUIRE(pass);
}

TEST_CASE("criterion 6: noise model conformance") {
    ParameterSet p = find_preset("desk-small");
    Rng rng(1006);
    uint32_t ring = p.ring_dim(), l = p.levels();
    uint64_t Q = p.Q, B = p.B, q_prime = p.q_prime();
    double sb2 = p.sigma_boot * p.sigma_boot;
    RingSecret z = sample_ring_secret(ring, rng);

    // trial input noise: uniform on [-w, w] so the driving variance is exact
    const uint64_t w = 34641; // variance w(w+1)/3 = 4.0001e8, i.e. beta = 2e4
    const double beta2 = (double)w * (w + 1) / 3.0;

    // --- external products -------------------------------------------------
    RingElement one(ring, Q);
    one.c[0] = 1;
    RgswCiphertext g1 = rgsw_encrypt(one, z, B, l, p.sigma_boot, rng);
    double pred_ext = var_external_product<double>(beta2, sb2, ring, l, B);
    double sum_sq = 0;
    uint64_t count = 0;
    for (int trial = 0; trial < 200; ++trial) {
        RlweCiphertext ct{sample_uniform_ring(ring, Q, rng), RingElement(ring, Q), p.t};
        ct.b = negacyclic_mul(ct.a, z.as_ring(Q));
        for (auto& c : ct.b.c) c = (uint64_t)(((int64_t)c + uniform_signed(w, rng) + (int64_t)Q) % (int64_t)Q);
        RingElement err = rlwe_phase(rlwe_rgsw_mul(ct, g1), z);
        for (uint64_t c : err.c) {
            double e = (double)centered(c, Q);
            sum_sq += e * e;
            ++count;
        }
    }
    double emp_ext = sum_sq / (double)count;
    double ratio_ext = std::max(emp_ext / pred_ext, pred_ext / emp_ext);

    // --- CMux gates ---------------------------------------------------------
    std::vector<RgswCiphertext> plus_keys, minus_keys;
    for (int8_t s : {int8_t(-1), int8_t(0), int8_t(1)}) {
        RingElement mp(ring, Q), mm(ring, Q);
        mp.c[0] = s == 1 ? 1 : 0;
        mm.c[0] = s == -1 ? 1 : 0;
        plus_keys.push_back(rgsw_encrypt(mp, z, B, l, p.sigma_boot, rng));
        minus_keys.push_back(rgsw_encrypt(mm, z, B, l, p.sigma_boot, rng));
    }
    double pred_cmux = var_cmux<double>(beta2, sb2, ring, l, B);
    double cmux_bound = p.H * std::sqrt(pred_cmux);
    sum_sq = 0;
    count = 0;
    uint64_t cmux_exceed = 0;
    const int cmux_trials = 10000;
    for (int trial = 0; trial < cmux_trials; ++trial) {
        RlweVector acc;
        for (uint32_t i = 0; i < p.r; ++i) {
            RlweCiphertext ct{sample_uniform_ring(ring, Q, rng), RingElement(ring, Q), p.t};
            ct.b = negacyclic_mul(ct.a, z.as_ring(Q));
            for (auto& c : ct.b.c) c = (uint64_t)(((int64_t)c + uniform_signed(w, rng) + (int64_t)Q) % (int64_t)Q);
            acc.entries.push_back(std::move(ct));
        }
        size_t si = rng.below(3);
        uint64_t a_k = rng.below(q_prime);
        RlweVector out = cmux_rlwe_vector(plus_keys[si], minus_keys[si], a_k, acc, p.r, p.N);
        for (const auto& entry : out.entries) {
            RingElement err = rlwe_phase(entry, z);
            for (uint64_t c : err.c) {
                double e = (double)centered(c, Q);
                sum_sq += e * e;
                if (std::abs(e) > cmux_bound) ++cmux_exceed;
                ++count;
            }
        }
    }
    double emp_cmux = sum_sq / (double)count;
    double ratio_cmux = std::max(emp_cmux / pred_cmux, pred_cmux / emp_cmux);
    double cmux_exceed_frac = (double)cmux_exceed / (double)count;

    // --- modulus switching ---------------------------------------------------
    Rng ms_rng = rng.fork(60601);
    LweSecret s = sample_lwe_secret(p.n, ms_rng);
    const uint64_t wm = 1732051; // beta about 1e6
    double beta2_ms = (double)wm * (wm + 1) / 3.0;
    double pred_ms = var_modswitch<double>(beta2_ms, Q, p.q, (double)s.norm2());
    sum_sq = 0;
    count = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        LweCiphertext ct;
        ct.q = Q;
        ct.t = 2;
        ct.a.resize(p.n);
        uint64_t acc = (uint64_t)((uniform_signed(wm, ms_rng) + (int64_t)Q) % (int64_t)Q);
        for (size_t i = 0; i < p.n; ++i) {
            ct.a[i] = ms_rng.below(Q);
            acc = mod_add(acc, mod_mul(ct.a[i], lift_signed(s.s[i], Q), Q), Q);
        }
        ct.b = acc;
        LweCiphertext out = modulus_switch(ct, p.q);
        double e = (double)centered(lwe_phase(out, s), p.q);
        sum_sq += e * e;
        ++count;
    }
    double emp_ms = sum_sq / (double)count;
    double ratio_ms = std::max(emp_ms / pred_ms, pred_ms / emp_ms);

    // --- full bootstraps ------------------------------------------------------
    Rng boot_rng = rng.fork(60602);
    KeySet keys = generate_keyset(p, boot_rng);
    LookUpTable f = random_nega_cyclic_lut(p.t, boot_rng);
    double pred_boot = var_bootstrap_output<double>(p.n, ring, l, B, p.ks_levels(), p.q, Q, sb2,
                                                    p.sigma_ks * p.sigma_ks, (double)keys.s.norm2());
    double boot_bound = p.H * std::sqrt(pred_boot);
    uint64_t boot_exceed = 0;
    const int boot_trials = 100;
    for (int trial = 0; trial < boot_trials; ++trial) {
        uint64_t m = boot_rng.below(p.t);
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q, p.t, p.sigma_enc, boot_rng);
        LweCiphertext out = boot_mmpm(ct, f, keys);
        if (std::abs((double)lwe_error(out, keys.s, f.table[m])) > boot_bound) ++boot_exceed;
    }
    double boot_exceed_frac = (double)boot_exceed / (double)boot_trials;

    bool pass = ratio_ext <= 3.0 && ratio_cmux <= 3.0 && ratio_ms <= 3.0 && cmux_exceed_frac <= 0.01 &&
                boot_exceed_frac <= 0.01;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "variance ratios ext %.2f, cmux %.2f, modswitch %.2f (all <= 3); tail exceedance cmux %.4f, "
                  "bootstrap %.4f (both <= 0.01)",
                  ratio_ext, ratio_cmux, ratio_ms, cmux_exceed_frac, boot_exceed_frac);
    report(6, pass, buf);
    REQUIRE(pass);
}

TEST_CASE("criterion 7: baseline equivalence across r, bit-identical at r = 1") {
    LookUpTable f{4, 4, {1, 1, 3, 3}};
    uint64_t mismatches = 0, wrong = 0;
    bool bit_identical = true;
    for (uint32_t r : {1u, 2u, 4u}) {
        std::string base = "desk-r" + std::to_string(r);
        ParameterSet pm = find_preset(base);
        ParameterSet pt = find_preset(base + "-tfhe");
        uint64_t seed = 7700 + r;
        Rng rm(seed), rt(seed);
        KeySet km = generate_keyset(pm, rm);
        KeySet kt = generate_keyset(pt, rt);
        Rng msgs(9900 + r);
        for (int trial = 0; trial < 50; ++trial) {
            uint64_t m = msgs.below(pm.t);
            Rng enc = msgs.fork(trial);
            LweCiphertext ct_m = lwe_encrypt(m, km.s, pm.q, pm.t, pm.sigma_enc, enc);
            Rng enc2 = msgs.fork(trial);
            LweCiphertext ct_t = lwe_encrypt(m, kt.s, pt.q, pt.t, pt.sigma_enc, enc2);
            LweCiphertext out_m = boot_mmpm(ct_m, f, km);
            LweCiphertext out_t = boot_mmpm(ct_t, f, kt);
            uint64_t dm = lwe_decrypt(out_m, km.s), dt = lwe_decrypt(out_t, kt.s);
            if (dm != f.table[m] || dt != f.table[m]) ++wrong;
            if (dm != dt) ++mismatches;
            if (r == 1) {
                // same seed, same dimensions: the keys coincide, so the two
                // rotation paths must agree ciphertext for ciphertext
                std::vector<uint64_t> fe = negacyclic_extend(f, pm.q_prime());
                TestVector v = build_test_vector(fe, 1, pm.N, f.t_out);
                LweCiphertext narrow = modulus_switch(ct_m, pm.q_prime());
                RlweVector am = blind_rotate_mmpm(narrow, v, km.bk, pm.Q);
                RlweCiphertext at = blind_rotate_tfhe(narrow, v, kt.bk, pt.Q);
                if (!(am.entries[0] == at)) bit_identical = false;
                if (!(rlwe_decrypt(am.entries[0], km.z) == rlwe_decrypt(at, kt.z))) bit_identical = false;
                if (!(out_m == out_t)) bit_identical = false;
            }
        }
    }
    bool pass = mismatches == 0 && wrong == 0 && bit_identical;
    report(7, pass,
           "150 shared-seed inputs over r in {1,2,4}: " + std::to_string(wrong) + " wrong decryptions, " +
               std::to_string(mismatches) + " scheme mismatches, r=1 accumulators " +
               (bit_identical ? "bit-identical" : "DIFFER"));
    REQUIRE(pass);
}

TEST_CASE("criterion 8: folded generator powers have full rational rank") {
    uint64_t failures = 0;
    for (auto [N, r] : {std::pair<uint32_t, uint32_t>{4, 2}, {8, 3}}) {
        uint64_t nr = (uint64_t)N * r;
        for (uint64_t k : {(uint64_t)0, (uint64_t)1, nr}) {
            std::vector<std::vector<int64_t>> rows;
            for (uint64_t i = 0; i < nr; ++i) {
                Mmiv v = mmiv_apply(phi(r, N, (k + i) % (2 * nr)), Mmiv{0, 0});
                std::vector<int64_t> row(nr, 0);
                row[(size_t)v.basis * N + v.exp % N] = v.exp >= N ? -1 : 1;
                rows.push_back(std::move(row));
            }
            if (oracle::rational_rank(rows) != nr) ++failures;
            if (!linear_independence_check(phi(r, N, 1), k)) ++failures;
        }
    }
    bool pass = failures == 0;
    report(8, pass, "6 geometry/offset combinations, " + std::to_string(failures) + " rank deficiencies");
    REQUIRE(pass);
}
