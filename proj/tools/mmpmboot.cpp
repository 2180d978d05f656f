// Command-line front end: parameter planning, key generation, bootstrap
// experiments, scheme comparison, and preset exploration.

#include <mmpmboot/mmpmboot.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace mmpmboot;

// apply "key=value,key=value" overrides on top of a preset
void apply_overrides(ParameterSet& p, const std::string& spec) {
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad override (want key=value): " + item);
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "n") p.n = static_cast<uint32_t>(std::stoull(val));
        else if (key == "q") p.q = std::stoull(val);
        else if (key == "t") p.t = std::stoull(val);
        else if (key == "N") p.N = static_cast<uint32_t>(std::stoull(val));
        else if (key == "r") p.r = static_cast<uint32_t>(std::stoull(val));
        else if (key == "Q") p.Q = std::stoull(val);
        else if (key == "B") p.B = std::stoull(val);
        else if (key == "B_ks") p.B_ks = std::stoull(val);
        else if (key == "sigma_enc") p.sigma_enc = std::stod(val);
        else if (key == "sigma_boot") p.sigma_boot = std::stod(val);
        else if (key == "sigma_ks") p.sigma_ks = std::stod(val);
        else if (key == "scheme") {
            if (val == "mmpm") p.scheme = Scheme::mmpm;
            else if (val == "tfhe") p.scheme = Scheme::tfhe;
            else throw std::invalid_argument("bad scheme: " + val);
        } else throw std::invalid_argument("unknown parameter: " + key);
        p.name += "*";
    }
}

ParameterSet resolve_params(const std::string& preset, const std::string& overrides) {
    ParameterSet p = find_preset(preset);
    if (!overrides.empty()) apply_overrides(p, overrides);
    p.validate();
    return p;
}

void print_warnings(const ParameterSet& p) {
    for (const auto& w : p.warnings()) std::cerr << "warning: " << w << "\n";
}

void print_report_text(const RunReport& r) {
    std::cout << "preset            " << r.params.name << " (" << scheme_name(r.params.scheme) << ")\n"
              << "function          " << r.function << (r.one_round ? " [one round]" : " [two rounds]") << "\n"
              << "trials            " << r.trials << " (seed " << r.seed << ")\n"
              << "failures          " << r.failures << "\n"
              << "mean |error|      " << r.mean_abs_error << "\n"
              << "max |error|       " << r.max_abs_error << " (decryption needs < " << r.half_step << ")\n"
              << "observed std      " << r.observed_std << "\n"
              << "predicted std     " << r.predicted_std << "  (bound " << r.noise_bound << ")\n"
              << "ring mults/boot   " << r.ring_mults_per_bootstrap << "\n"
              << "boot key          " << format_bytes(r.keys.boot_bytes()) << "\n"
              << "key-switch key    " << format_bytes(r.keys.ksk_bytes()) << "\n"
              << "keygen            " << r.keygen_ms << " ms\n"
              << "mean boot         " << r.mean_boot_ms << " ms\n";
}

int cmd_plan(const std::string& preset, const std::string& overrides, bool as_json) {
    ParameterSet p = resolve_params(preset, overrides);
    print_warnings(p);
    KeySizeReport k = key_size_report(p);
    if (as_json) {
        nlohmann::ordered_json j;
        j["params"] = params_to_json(p);
        j["keys"] = key_sizes_to_json(k);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    RDecomposition pol = choose_r(p.q, p.N);
    std::cout << "preset            " << p.name << " (" << scheme_name(p.scheme) << ")\n"
              << "lwe               n=" << p.n << " q=" << p.q << " t=" << p.t << "\n"
              << "ring              N=" << p.N << " r=" << p.r << " ring_dim=" << p.ring_dim()
              << " q'=" << p.q_prime() << " Q=" << p.Q << " (" << k.modulus_bits << " bits)\n"
              << "gadget            B=" << p.B << " levels=" << p.levels() << "   key switch: B_ks=" << p.B_ks
              << " levels=" << p.ks_levels() << "\n"
              << "r policy          ceil(q/2N) = " << pol.r << "\n"
              << "boot key          " << format_bytes(k.boot_bytes()) << " (" << k.boot_bytes() << " bytes)\n"
              << "key-switch key    " << format_bytes(k.ksk_bytes()) << " (" << k.ksk_bytes() << " bytes)\n"
              << "total             " << format_bytes(k.total_bytes()) << "\n"
              << "packed (" << k.modulus_bits << "-bit)   boot " << format_bytes(k.boot_bytes_packed()) << ", ksk "
              << format_bytes(k.ksk_bytes_packed()) << "\n";
    return 0;
}

int cmd_keys(const std::string& preset, const std::string& overrides, uint64_t seed, const std::string& out_dir) {
    ParameterSet p = resolve_params(preset, overrides);
    print_warnings(p);
    Rng rng(seed);
    KeySet keys = generate_keyset(p, rng);
    std::filesystem::create_directories(out_dir);
    std::string bk_path = out_dir + "/boot_key.bin", ksk_path = out_dir + "/ksk.bin";
    {
        std::ofstream os(bk_path, std::ios::binary);
        serialize_bootstrapping_keys(os, keys.bk);
    }
    {
        std::ofstream os(ksk_path, std::ios::binary);
        serialize_ksk(os, keys.ksk);
    }
    KeySizeReport k = key_size_report(p);
    std::cout << "wrote " << bk_path << " (" << std::filesystem::file_size(bk_path) << " bytes, payload "
              << k.boot_bytes() << ")\n"
              << "wrote " << ksk_path << " (" << std::filesystem::file_size(ksk_path) << " bytes, payload "
              << k.ksk_bytes() << ")\n";
    return 0;
}

int cmd_run(const std::string& preset, const std::string& overrides, const std::string& function, uint64_t trials,
            uint64_t seed, bool as_json) {
    ParameterSet p = resolve_params(preset, overrides);
    print_warnings(p);
    LookUpTable f = make_function(function, p.t);
    RunReport rep = run_experiment(p, f, function, trials, seed);
    if (as_json) std::cout << report_to_json(rep).dump(2) << "\n";
    else print_report_text(rep);
    return rep.failures == 0 ? 0 : 1;
}

int cmd_compare(const std::string& preset, const std::string& function, uint64_t trials, uint64_t seed,
                bool as_json) {
    ParameterSet pm = find_preset(preset);
    if (pm.scheme != Scheme::mmpm) throw std::invalid_argument("compare wants the vector-scheme preset name");
    ParameterSet pt = find_preset(preset + "-tfhe");
    print_warnings(pm);
    print_warnings(pt);
    LookUpTable f = make_function(function, pm.t);
    RunReport a = run_experiment(pm, f, function, trials, seed);
    RunReport b = run_experiment(pt, f, function, trials, seed);
    if (as_json) {
        std::cout << compare_to_json(a, b).dump(2) << "\n";
    } else {
        print_report_text(a);
        std::cout << "\n";
        print_report_text(b);
        std::cout << "\nboot key ratio (tfhe/mmpm)   "
                  << static_cast<double>(b.keys.boot_bytes()) / static_cast<double>(a.keys.boot_bytes())
                  << "\nring mult ratio (tfhe/mmpm)  "
                  << static_cast<double>(b.ring_mults_per_bootstrap) /
                         static_cast<double>(a.ring_mults_per_bootstrap)
                  << "\n";
    }
    return (a.failures == 0 && b.failures == 0) ? 0 : 1;
}

int cmd_explore(const std::string& prefix, const std::string& csv_path, bool as_json) {
    std::vector<ExploreRow> rows = explore_presets(prefix);
    if (!csv_path.empty()) {
        std::ofstream os(csv_path);
        if (!os) throw std::runtime_error("cannot open " + csv_path);
        os << explore_csv(rows);
        std::cerr << "wrote " << csv_path << "\n";
    }
    if (as_json) std::cout << explore_to_json(rows).dump(2) << "\n";
    else std::cout << explore_table(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"functional bootstrapping with monomial-matrix accumulators"};
    app.require_subcommand(1);

    std::string preset = "desk-small", overrides, function = "sign", out_dir = "keys", prefix, csv_path;
    uint64_t trials = 20, seed = 1;
    bool as_json = false;

    auto add_params = [&](CLI::App* c) {
        c->add_option("--preset", preset, "parameter preset name");
        c->add_option("--params", overrides, "comma-separated key=value overrides");
    };

    CLI::App* plan = app.add_subcommand("plan", "print parameters and key sizes");
    add_params(plan);
    plan->add_flag("--json", as_json, "emit JSON");

    CLI::App* keys = app.add_subcommand("keys", "generate and serialize a key set");
    add_params(keys);
    keys->add_option("--seed", seed, "rng seed");
    keys->add_option("--out", out_dir, "output directory");

    CLI::App* run = app.add_subcommand("run", "bootstrap random messages and report noise");
    add_params(run);
    run->add_option("--function", function, "identity | sign | table:<path>");
    run->add_option("--trials", trials, "number of trials");
    run->add_option("--seed", seed, "rng seed");
    run->add_flag("--json", as_json, "emit JSON");

    CLI::App* cmp = app.add_subcommand("compare", "run both schemes on the same preset family");
    cmp->add_option("--preset", preset, "vector-scheme preset name (pairs with <name>-tfhe)");
    cmp->add_option("--function", function, "identity | sign | table:<path>");
    cmp->add_option("--trials", trials, "number of trials");
    cmp->add_option("--seed", seed, "rng seed");
    cmp->add_flag("--json", as_json, "emit JSON");

    CLI::App* explore = app.add_subcommand("explore", "key sizes across presets");
    explore->add_option("--prefix", prefix, "preset name prefix filter");
    explore->add_option("--csv", csv_path, "write CSV to this path");
    explore->add_flag("--json", as_json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return cmd_plan(preset, overrides, as_json);
        if (keys->parsed()) return cmd_keys(preset, overrides, seed, out_dir);
        if (run->parsed()) return cmd_run(preset, overrides, function, trials, seed, as_json);
        if (cmp->parsed()) return cmd_compare(preset, function, trials, seed, as_json);
        if (explore->parsed()) return cmd_explore(prefix, csv_path, as_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
