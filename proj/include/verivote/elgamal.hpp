#pragma once

#include <nlohmann/json.hpp>

#include "group.hpp"

namespace verivote {

using ojson = nlohmann::ordered_json;

struct KeyPair {
    GroupParams params;
    GroupElement pk;
    Scalar sk;
};

// Exponential-ElGamal pair: c1 = g^r, c2 = g^m * pk^r.
struct Ciphertext {
    GroupElement c1;
    GroupElement c2;
    bool operator==(const Ciphertext& o) const { return c1 == o.c1 && c2 == o.c2; }
    bool operator!=(const Ciphertext& o) const { return !(*this == o); }
};

inline KeyPair keypair_from_sk(const GroupParams& pp, const mpz_class& sk) {
    Scalar s = scalar_from(pp, sk);
    return KeyPair{pp, pow(pp, pp.g, s), s};
}

inline KeyPair keygen(const GroupParams& pp, Rng& rng) {
    return keypair_from_sk(pp, random_scalar_nonzero(pp, rng).v);
}

inline Ciphertext encrypt_exp(const GroupParams& pp, const GroupElement& pk, const mpz_class& m,
                              const Scalar& r) {
    if (sgn(m) < 0) throw std::invalid_argument("vote exponent must be non-negative");
    GroupElement c1 = pow(pp, pp.g, r);
    GroupElement c2 = mul(pp, pow(pp, pp.g, m), pow(pp, pk, r));
    return Ciphertext{c1, c2};
}

// Recovers g^m without solving the discrete log.
inline GroupElement decrypt_element(const GroupParams& pp, const Scalar& sk, const Ciphertext& ct) {
    return div(pp, ct.c2, pow(pp, ct.c1, sk));
}

// Recovers m itself when m <= bound; nullopt signals an out-of-space
// plaintext (an ill-formed ballot from the tallier's point of view).
inline std::optional<uint64_t> decrypt_exp(const GroupParams& pp, const Scalar& sk,
                                           const Ciphertext& ct, uint64_t bound) {
    return dlog_small(pp, decrypt_element(pp, sk, ct), bound);
}

inline std::optional<uint64_t> decrypt_exp(const KeyPair& kp, const Ciphertext& ct, uint64_t bound) {
    return decrypt_exp(kp.params, kp.sk, ct, bound);
}

inline Ciphertext hom_combine(const GroupParams& pp, const Ciphertext& a, const Ciphertext& b) {
    return Ciphertext{mul(pp, a.c1, b.c1), mul(pp, a.c2, b.c2)};
}

inline Ciphertext identity_ciphertext() { return Ciphertext{GroupElement{1}, GroupElement{1}}; }

// Fresh-randomness re-encryption: multiplies in an encryption of zero.
inline Ciphertext reencrypt(const GroupParams& pp, const GroupElement& pk, const Ciphertext& ct,
                            const Scalar& r2) {
    return hom_combine(pp, ct, encrypt_exp(pp, pk, 0, r2));
}

inline ojson ciphertext_to_json(const Ciphertext& ct) {
    return ojson{{"c1", to_hex(ct.c1.v)}, {"c2", to_hex(ct.c2.v)}};
}

inline Ciphertext ciphertext_from_json(const ojson& j) {
    return Ciphertext{GroupElement{mpz_from_hex(j.at("c1").get<std::string>())},
                      GroupElement{mpz_from_hex(j.at("c2").get<std::string>())}};
}

inline ojson params_to_json(const GroupParams& pp) {
    return ojson{{"level", level_name(pp.level)},
                 {"p", to_hex(pp.p)},
                 {"q", to_hex(pp.q)},
                 {"g", to_hex(pp.g.v)}};
}

inline GroupParams params_from_json(const ojson& j) {
    auto lvl = level_from_name(j.at("level").get<std::string>());
    if (!lvl) throw std::invalid_argument("bad level tag");
    GroupParams pp{mpz_from_hex(j.at("p").get<std::string>()),
                   mpz_from_hex(j.at("q").get<std::string>()),
                   GroupElement{mpz_from_hex(j.at("g").get<std::string>())}, *lvl};
    if (pp.p < 3 || pp.q < 2 || pp.g.v <= 1 || pp.g.v >= pp.p)
        throw std::invalid_argument("bad group parameters");
    if (pow(pp, pp.g, Scalar{pp.q}).v != 1) throw std::invalid_argument("generator order mismatch");
    return pp;
}

}  // namespace verivote
