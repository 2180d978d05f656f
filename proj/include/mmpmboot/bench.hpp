#pragma once

#include "bootstrap.hpp"
#include "noise.hpp"
#include "params.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmpmboot {

// ---------------------------------------------------------------------------
// key-size accounting
//
// Sizes are counted in 64-bit words: the bootstrapping key holds 2n RGSW
// ciphertexts (two per LWE coefficient), each 2*levels RLWE rows of two ring
// elements; the key-switching key holds ring_dim * ks_levels * B_ks LWE
// ciphertexts of n+1 words each. Packed sizes count ceil(log2 Q) bits per
// coefficient instead of a full word.
// ---------------------------------------------------------------------------

struct KeySizeReport {
    uint64_t boot_words = 0;
    uint64_t ksk_words = 0;
    uint32_t modulus_bits = 0;

    uint64_t boot_bytes() const { return boot_words * 8; }
    uint64_t ksk_bytes() const { return ksk_words * 8; }
    uint64_t total_bytes() const { return boot_bytes() + ksk_bytes(); }
    uint64_t boot_bytes_packed() const { return (boot_words * modulus_bits + 7) / 8; }
    uint64_t ksk_bytes_packed() const { return (ksk_words * modulus_bits + 7) / 8; }
};

inline KeySizeReport key_size_report(const ParameterSet& p) {
    KeySizeReport r;
    r.boot_words = 8ull * p.n * p.levels() * p.ring_dim();
    r.ksk_words = static_cast<uint64_t>(p.ring_dim()) * p.ks_levels() * p.B_ks * (p.n + 1);
    r.modulus_bits = bit_length(p.Q);
    return r;
}

inline std::string format_bytes(uint64_t bytes) {
    static const char* units[] = {"B", "KiB", "MiB", "GiB", "TiB"};
    int u = 0;
    double v = static_cast<double>(bytes);
    while (v >= 1024.0 && u < 4) {
        v /= 1024.0;
        ++u;
    }
    if (u == 0) return std::to_string(bytes) + " B";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f %s", v, units[u]);
    return buf;
}

// ---------------------------------------------------------------------------
// lookup-table builders
// ---------------------------------------------------------------------------

inline LookUpTable lut_identity(uint64_t t) {
    LookUpTable f{t, t, std::vector<uint64_t>(t)};
    for (uint64_t v = 0; v < t; ++v) f.table[v] = v;
    return f;
}

// +1 on the lower half, -1 on the upper; nega-cyclic, so it runs in one round
inline LookUpTable lut_sign(uint64_t t) {
    LookUpTable f{t, t, std::vector<uint64_t>(t)};
    for (uint64_t v = 0; v < t; ++v) f.table[v] = v < t / 2 ? 1 : t - 1;
    return f;
}

// Text format: '#' starts a comment; the first data line is "t_in t_out";
// each of the following t_in lines is "v f(v)", each v exactly once.
inline LookUpTable parse_lut(std::istream& is) {
    LookUpTable f;
    std::vector<bool> seen;
    bool have_header = false;
    uint64_t rows = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        uint64_t x, y;
        if (!(ls >> x)) continue; // blank line
        if (!(ls >> y)) throw std::invalid_argument("lut file: expected two integers per line");
        if (!have_header) {
            f.t_in = x;
            f.t_out = y;
            if (f.t_in < 2 || f.t_in % 2 != 0) throw std::invalid_argument("lut file: t_in must be even and >= 2");
            f.table.assign(f.t_in, 0);
            seen.assign(f.t_in, false);
            have_header = true;
            continue;
        }
        if (x >= f.t_in) throw std::invalid_argument("lut file: input value out of range");
        if (seen[x]) throw std::invalid_argument("lut file: duplicate input value");
        seen[x] = true;
        f.table[x] = y;
        ++rows;
    }
    if (!have_header) throw std::invalid_argument("lut file: missing header line");
    if (rows != f.t_in) throw std::invalid_argument("lut file: table is incomplete");
    f.validate();
    return f;
}

inline LookUpTable load_lut(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open lut file: " + path);
    return parse_lut(is);
}

// named function dispatch: "identity", "sign", or "table:<path>"
inline LookUpTable make_function(const std::string& spec, uint64_t t) {
    if (spec == "identity") return lut_identity(t);
    if (spec == "sign") return lut_sign(t);
    if (spec.rfind("table:", 0) == 0) return load_lut(spec.substr(6));
    throw std::invalid_argument("unknown function: " + spec);
}

// plaintext modulus the input ciphertext must carry for this table
inline uint64_t input_plaintext_modulus(const LookUpTable& f) { return f.nega_cyclic() ? f.t_in : 2 * f.t_in; }

// one round when the table is nega-cyclic, two rounds otherwise
inline LweCiphertext bootstrap_lut(const LweCiphertext& ct, const LookUpTable& f, const KeySet& keys) {
    if (f.nega_cyclic()) return boot_mmpm(ct, f, keys);
    return boot_general(ct, f, keys);
}

// ---------------------------------------------------------------------------
// experiment driver
// ---------------------------------------------------------------------------

struct RunReport {
    ParameterSet params;
    std::string function;
    uint64_t trials = 0;
    uint64_t failures = 0;
    uint64_t seed = 0;
    bool one_round = true;
    double mean_abs_error = 0.0;
    double max_abs_error = 0.0;
    double observed_std = 0.0;
    double predicted_std = 0.0;
    double noise_bound = 0.0; // H * predicted_std
    double half_step = 0.0;   // decryption succeeds while |error| < half_step
    uint64_t ring_mults_per_bootstrap = 0;
    KeySizeReport keys;
    double keygen_ms = 0.0;
    double mean_boot_ms = 0.0;
};

inline RunReport run_experiment(const ParameterSet& p, const LookUpTable& f, const std::string& function_name,
                                uint64_t trials, uint64_t seed) {
    p.validate();
    f.validate();
    if (trials == 0) throw std::invalid_argument("run_experiment: need at least one trial");
    using clock = std::chrono::steady_clock;
    auto ms_between = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    RunReport rep;
    rep.params = p;
    rep.function = function_name;
    rep.trials = trials;
    rep.seed = seed;
    rep.one_round = f.nega_cyclic();
    rep.keys = key_size_report(p);

    uint64_t t_enc = input_plaintext_modulus(f);
    Rng rng(seed);
    auto k0 = clock::now();
    KeySet keys = generate_keyset(p, rng);
    rep.keygen_ms = ms_between(k0, clock::now());

    double sum_abs = 0.0, sum_sq = 0.0, boot_ms = 0.0;
    for (uint64_t i = 0; i < trials; ++i) {
        Rng trial = rng.fork(i);
        uint64_t m = trial.below(f.t_in);
        LweCiphertext ct = lwe_encrypt(m, keys.s, p.q, t_enc, p.sigma_enc, trial);
        reset_ring_mult_count();
        auto b0 = clock::now();
        LweCiphertext out = bootstrap_lut(ct, f, keys);
        boot_ms += ms_between(b0, clock::now());
        rep.ring_mults_per_bootstrap = ring_mult_count();
        uint64_t expected = f.table[m];
        if (lwe_decrypt(out, keys.s) != expected) ++rep.failures;
        double err = std::abs(static_cast<double>(lwe_error(out, keys.s, expected)));
        sum_abs += err;
        sum_sq += err * err;
        if (err > rep.max_abs_error) rep.max_abs_error = err;
    }
    rep.mean_abs_error = sum_abs / static_cast<double>(trials);
    rep.observed_std = std::sqrt(sum_sq / static_cast<double>(trials));
    rep.mean_boot_ms = boot_ms / static_cast<double>(trials);
    rep.predicted_std = std::sqrt(var_bootstrap_output<double>(
        p.n, p.ring_dim(), p.levels(), p.B, p.ks_levels(), p.q, p.Q, p.sigma_boot * p.sigma_boot,
        p.sigma_ks * p.sigma_ks, static_cast<double>(keys.s.norm2())));
    rep.noise_bound = p.H * rep.predicted_std;
    rep.half_step = static_cast<double>(p.q) / static_cast<double>(f.t_out) / 2.0;
    return rep;
}

// ---------------------------------------------------------------------------
// report rendering
// ---------------------------------------------------------------------------

inline const char* scheme_name(Scheme s) { return s == Scheme::mmpm ? "mmpm" : "tfhe"; }

inline nlohmann::ordered_json params_to_json(const ParameterSet& p) {
    nlohmann::ordered_json j;
    j["name"] = p.name;
    j["scheme"] = scheme_name(p.scheme);
    j["n"] = p.n;
    j["q"] = p.q;
    j["t"] = p.t;
    j["N"] = p.N;
    j["r"] = p.r;
    j["ring_dim"] = p.ring_dim();
    j["q_prime"] = p.q_prime();
    j["Q"] = p.Q;
    j["B"] = p.B;
    j["levels"] = p.levels();
    j["B_ks"] = p.B_ks;
    j["ks_levels"] = p.ks_levels();
    j["sigma_enc"] = p.sigma_enc;
    j["sigma_boot"] = p.sigma_boot;
    j["sigma_ks"] = p.sigma_ks;
    return j;
}

inline nlohmann::ordered_json key_sizes_to_json(const KeySizeReport& k) {
    nlohmann::ordered_json j;
    j["boot_key_bytes"] = k.boot_bytes();
    j["boot_key"] = format_bytes(k.boot_bytes());
    j["ksk_bytes"] = k.ksk_bytes();
    j["ksk"] = format_bytes(k.ksk_bytes());
    j["total_bytes"] = k.total_bytes();
    j["total"] = format_bytes(k.total_bytes());
    j["modulus_bits"] = k.modulus_bits;
    j["boot_key_bytes_packed"] = k.boot_bytes_packed();
    j["ksk_bytes_packed"] = k.ksk_bytes_packed();
    return j;
}

// Everything except the "timing" object is deterministic for a fixed seed.
inline nlohmann::ordered_json report_to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["params"] = params_to_json(r.params);
    j["function"] = r.function;
    j["one_round"] = r.one_round;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["seed"] = r.seed;
    nlohmann::ordered_json noise;
    noise["mean_abs_error"] = r.mean_abs_error;
    noise["max_abs_error"] = r.max_abs_error;
    noise["observed_std"] = r.observed_std;
    noise["predicted_std"] = r.predicted_std;
    noise["bound"] = r.noise_bound;
    noise["half_step"] = r.half_step;
    j["noise"] = noise;
    j["ring_mults_per_bootstrap"] = r.ring_mults_per_bootstrap;
    j["keys"] = key_sizes_to_json(r.keys);
    nlohmann::ordered_json timing;
    timing["keygen_ms"] = r.keygen_ms;
    timing["mean_boot_ms"] = r.mean_boot_ms;
    j["timing"] = timing;
    return j;
}

inline nlohmann::ordered_json compare_to_json(const RunReport& a, const RunReport& b) {
    nlohmann::ordered_json j;
    j[scheme_name(a.params.scheme)] = report_to_json(a);
    j[scheme_name(b.params.scheme)] = report_to_json(b);
    j["boot_key_ratio"] =
        static_cast<double>(b.keys.boot_bytes()) / static_cast<double>(a.keys.boot_bytes());
    j["ring_mult_ratio"] = static_cast<double>(b.ring_mults_per_bootstrap) /
                           static_cast<double>(a.ring_mults_per_bootstrap);
    return j;
}

// ---------------------------------------------------------------------------
// preset exploration: key sizes across a family of parameter sets
// ---------------------------------------------------------------------------

struct ExploreRow {
    ParameterSet params;
    KeySizeReport keys;
};

inline std::vector<ExploreRow> explore_presets(const std::string& prefix) {
    std::vector<ExploreRow> rows;
    for (const auto& p : all_presets())
        if (prefix.empty() || p.name.rfind(prefix, 0) == 0) rows.push_back({p, key_size_report(p)});
    if (rows.empty()) throw std::invalid_argument("no preset matches prefix: " + prefix);
    return rows;
}

inline std::string explore_csv(const std::vector<ExploreRow>& rows) {
    std::ostringstream os;
    os << "name,scheme,n,t,q,N,r,ring_dim,Q_bits,levels,ks_levels,boot_key_bytes,ksk_bytes,total_bytes\n";
    for (const auto& row : rows) {
        const auto& p = row.params;
        os << p.name << ',' << scheme_name(p.scheme) << ',' << p.n << ',' << p.t << ',' << p.q << ',' << p.N << ','
           << p.r << ',' << p.ring_dim() << ',' << row.keys.modulus_bits << ',' << p.levels() << ',' << p.ks_levels()
           << ',' << row.keys.boot_bytes() << ',' << row.keys.ksk_bytes() << ',' << row.keys.total_bytes() << '\n';
    }
    return os.str();
}

inline nlohmann::ordered_json explore_to_json(const std::vector<ExploreRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["params"] = params_to_json(row.params);
        j["keys"] = key_sizes_to_json(row.keys);
        arr.push_back(j);
    }
    return arr;
}

inline std::string explore_table(const std::vector<ExploreRow>& rows) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %-6s %6s %6s %8s %6s %5s %9s %12s %12s %12s\n", "name", "scheme", "n", "t",
                  "q", "N", "r", "ring_dim", "boot_key", "ksk", "total");
    os << buf;
    for (const auto& row : rows) {
        const auto& p = row.params;
        std::snprintf(buf, sizeof buf, "%-16s %-6s %6u %6llu %8llu %6u %5u %9u %12s %12s %12s\n", p.name.c_str(),
                      scheme_name(p.scheme), p.n, static_cast<unsigned long long>(p.t),
                      static_cast<unsigned long long>(p.q), p.N, p.r, p.ring_dim(),
                      format_bytes(row.keys.boot_bytes()).c_str(), format_bytes(row.keys.ksk_bytes()).c_str(),
                      format_bytes(row.keys.total_bytes()).c_str());
        os << buf;
    }
    return os.str();
}

} // namespace mmpmboot
