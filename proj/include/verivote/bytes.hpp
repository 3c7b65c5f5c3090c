#pragma once

#include <gmpxx.h>
#include <openssl/sha.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace verivote {

using Bytes = std::vector<uint8_t>;

inline Bytes sha256(const Bytes& data) {
    Bytes digest(SHA256_DIGEST_LENGTH);
    SHA256(data.data(), data.size(), digest.data());
    return digest;
}

inline void append_u32be(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

// Length-prefixed field framing: 4-byte big-endian length, then the bytes.
inline void append_field(Bytes& out, const Bytes& field) {
    if (field.size() > 0xffffffffu) throw std::length_error("field too long");
    append_u32be(out, static_cast<uint32_t>(field.size()));
    out.insert(out.end(), field.begin(), field.end());
}

inline void append_field(Bytes& out, const std::string& field) {
    append_field(out, Bytes(field.begin(), field.end()));
}

// Big-endian magnitude; zero encodes as the empty string.
inline Bytes mpz_to_bytes(const mpz_class& x) {
    if (sgn(x) < 0) throw std::invalid_argument("negative magnitude");
    if (x == 0) return {};
    size_t count = 0;
    Bytes out((mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8);
    mpz_export(out.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
    out.resize(count);
    return out;
}

inline mpz_class mpz_from_bytes(const Bytes& b) {
    mpz_class x;
    if (!b.empty()) mpz_import(x.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    return x;
}

// Hex convention: lowercase, big-endian, no leading zeros, zero = "0".
inline std::string to_hex(const mpz_class& x) {
    if (sgn(x) < 0) throw std::invalid_argument("negative big integer");
    char* s = mpz_get_str(nullptr, 16, x.get_mpz_t());
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

inline mpz_class mpz_from_hex(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty hex string");
    mpz_class x;
    if (mpz_set_str(x.get_mpz_t(), s.c_str(), 16) != 0 || sgn(x) < 0)
        throw std::invalid_argument("bad hex string: " + s);
    return x;
}

// Signed decimal for quantities that may be negative (claimed outcome counts).
inline std::string to_dec(const mpz_class& x) { return x.get_str(10); }

inline mpz_class mpz_from_dec(const std::string& s) {
    mpz_class x;
    if (s.empty() || mpz_set_str(x.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad decimal string: " + s);
    return x;
}

inline std::string bytes_to_hex(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * b.size());
    for (uint8_t c : b) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

inline Bytes hex_to_bytes(const std::string& s) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (s.size() % 2 != 0) throw std::invalid_argument("odd hex length");
    Bytes out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2) {
        int hi = nibble(s[i]), lo = nibble(s[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("bad hex byte");
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
}

}  // namespace verivote
