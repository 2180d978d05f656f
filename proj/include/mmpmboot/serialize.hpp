#pragma once

#include "bootstrap.hpp"
#include "lwe.hpp"
#include "rlwe.hpp"
#include "switching.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace mmpmboot {

// Binary container format: little-endian u64 words throughout. Every object
// starts with (magic, version, kind) followed by kind-specific dimensions and
// the raw word payload.
namespace ser {

inline constexpr uint64_t kMagic = 0x4d4d504d424f4f54ull; // "MMPMBOOT"
inline constexpr uint64_t kVersion = 1;

enum class Kind : uint64_t { lwe = 1, rlwe = 2, rgsw = 3, ksk = 4, bootkeys = 5 };

inline void put_u64(std::ostream& os, uint64_t x) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(x >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), 8);
}

inline uint64_t get_u64(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    if (!is) throw std::runtime_error("deserialize: truncated stream");
    uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<uint64_t>(buf[i]) << (8 * i);
    return x;
}

inline void put_header(std::ostream& os, Kind kind) {
    put_u64(os, kMagic);
    put_u64(os, kVersion);
    put_u64(os, static_cast<uint64_t>(kind));
}

inline void expect_header(std::istream& is, Kind kind) {
    if (get_u64(is) != kMagic) throw std::runtime_error("deserialize: bad magic");
    if (get_u64(is) != kVersion) throw std::runtime_error("deserialize: unsupported version");
    if (get_u64(is) != static_cast<uint64_t>(kind)) throw std::runtime_error("deserialize: wrong object kind");
}

} // namespace ser

inline void serialize_lwe(std::ostream& os, const LweCiphertext& ct) {
    ser::put_header(os, ser::Kind::lwe);
    ser::put_u64(os, ct.dim());
    ser::put_u64(os, ct.q);
    ser::put_u64(os, ct.t);
    for (uint64_t x : ct.a) ser::put_u64(os, x);
    ser::put_u64(os, ct.b);
}

inline LweCiphertext deserialize_lwe(std::istream& is) {
    ser::expect_header(is, ser::Kind::lwe);
    uint64_t n = ser::get_u64(is);
    LweCiphertext ct;
    ct.q = ser::get_u64(is);
    ct.t = ser::get_u64(is);
    ct.a.resize(n);
    for (uint64_t& x : ct.a) x = ser::get_u64(is);
    ct.b = ser::get_u64(is);
    return ct;
}

namespace ser {

inline void put_ring(std::ostream& os, const RingElement& x) {
    for (uint64_t c : x.c) put_u64(os, c);
}

inline RingElement get_ring(std::istream& is, size_t n, uint64_t q) {
    RingElement x(n, q);
    for (uint64_t& c : x.c) c = get_u64(is);
    return x;
}

inline void put_rlwe_body(std::ostream& os, const RlweCiphertext& ct) {
    put_ring(os, ct.a);
    put_ring(os, ct.b);
}

inline RlweCiphertext get_rlwe_body(std::istream& is, size_t n, uint64_t q, uint64_t t) {
    RlweCiphertext ct;
    ct.a = get_ring(is, n, q);
    ct.b = get_ring(is, n, q);
    ct.t = t;
    return ct;
}

} // namespace ser

inline void serialize_rlwe(std::ostream& os, const RlweCiphertext& ct) {
    ser::put_header(os, ser::Kind::rlwe);
    ser::put_u64(os, ct.dim());
    ser::put_u64(os, ct.modulus());
    ser::put_u64(os, ct.t);
    ser::put_rlwe_body(os, ct);
}

inline RlweCiphertext deserialize_rlwe(std::istream& is) {
    ser::expect_header(is, ser::Kind::rlwe);
    uint64_t n = ser::get_u64(is);
    uint64_t q = ser::get_u64(is);
    uint64_t t = ser::get_u64(is);
    return ser::get_rlwe_body(is, n, q, t);
}

inline void serialize_rgsw(std::ostream& os, const RgswCiphertext& ct) {
    ser::put_header(os, ser::Kind::rgsw);
    ser::put_u64(os, ct.rows[0].dim());
    ser::put_u64(os, ct.rows[0].modulus());
    ser::put_u64(os, ct.B);
    ser::put_u64(os, ct.levels);
    for (const auto& row : ct.rows) ser::put_rlwe_body(os, row);
}

inline RgswCiphertext deserialize_rgsw(std::istream& is) {
    ser::expect_header(is, ser::Kind::rgsw);
    uint64_t n = ser::get_u64(is);
    uint64_t q = ser::get_u64(is);
    RgswCiphertext ct;
    ct.B = ser::get_u64(is);
    ct.levels = static_cast<uint32_t>(ser::get_u64(is));
    ct.rows.reserve(2 * ct.levels);
    for (uint32_t i = 0; i < 2 * ct.levels; ++i) ct.rows.push_back(ser::get_rlwe_body(is, n, q, q));
    return ct;
}

inline void serialize_ksk(std::ostream& os, const KskSet& k) {
    if (k.entries.empty()) throw std::invalid_argument("serialize_ksk: empty key");
    ser::put_header(os, ser::Kind::ksk);
    ser::put_u64(os, k.src_dim);
    ser::put_u64(os, k.entries[0].dim());
    ser::put_u64(os, k.entries[0].q);
    ser::put_u64(os, k.base);
    ser::put_u64(os, k.levels);
    for (const auto& ct : k.entries) {
        for (uint64_t x : ct.a) ser::put_u64(os, x);
        ser::put_u64(os, ct.b);
    }
}

inline KskSet deserialize_ksk(std::istream& is) {
    ser::expect_header(is, ser::Kind::ksk);
    KskSet k;
    k.src_dim = static_cast<uint32_t>(ser::get_u64(is));
    uint64_t dst_dim = ser::get_u64(is);
    uint64_t q = ser::get_u64(is);
    k.base = ser::get_u64(is);
    k.levels = static_cast<uint32_t>(ser::get_u64(is));
    size_t count = static_cast<size_t>(k.src_dim) * k.levels * k.base;
    k.entries.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        LweCiphertext ct;
        ct.q = q;
        ct.t = q;
        ct.a.resize(dst_dim);
        for (uint64_t& x : ct.a) x = ser::get_u64(is);
        ct.b = ser::get_u64(is);
        k.entries.push_back(std::move(ct));
    }
    return k;
}

inline void serialize_bootstrapping_keys(std::ostream& os, const BootstrappingKeys& bk) {
    ser::put_header(os, ser::Kind::bootkeys);
    ser::put_u64(os, bk.count());
    for (const auto& ct : bk.plus) serialize_rgsw(os, ct);
    for (const auto& ct : bk.minus) serialize_rgsw(os, ct);
}

inline BootstrappingKeys deserialize_bootstrapping_keys(std::istream& is) {
    ser::expect_header(is, ser::Kind::bootkeys);
    uint64_t n = ser::get_u64(is);
    BootstrappingKeys bk;
    bk.plus.reserve(n);
    bk.minus.reserve(n);
    for (uint64_t i = 0; i < n; ++i) bk.plus.push_back(deserialize_rgsw(is));
    for (uint64_t i = 0; i < n; ++i) bk.minus.push_back(deserialize_rgsw(is));
    return bk;
}

} // namespace mmpmboot
