#pragma once

#include <memory>

#include "sigma.hpp"

namespace verivote {

struct AsymmetricKeys {
    std::string pk_bundle;
    std::string sk_bundle;
    uint64_t message_bound;  // message space is {0, ..., message_bound}
};

// Asymmetric encryption scheme over string-serialized bundles, shaped so an
// election scheme can wrap it without knowing which variant it holds.
class AsymmetricScheme {
public:
    virtual ~AsymmetricScheme() = default;
    virtual std::string name() const = 0;
    virtual AsymmetricKeys generate(Level level, Rng& rng) const = 0;
    // nullopt when the message lies outside the message space.
    virtual std::optional<std::string> encrypt(const std::string& pk_bundle, uint64_t m,
                                               Rng& rng) const = 0;
    // nullopt on ill-formed input, rejected proof, or out-of-space plaintext.
    virtual std::optional<uint64_t> decrypt(const std::string& sk_bundle,
                                            const std::string& ct) const = 0;
};

namespace detail {

inline uint64_t exp_message_bound(const GroupParams& pp) {
    mpz_class cap = pp.q - 1;
    return cap > 65536 ? 65536 : static_cast<uint64_t>(cap.get_ui());
}

inline ojson asym_pk_json(const std::string& name, const GroupParams& pp, const GroupElement& pk,
                          uint64_t mbound) {
    ojson j = params_to_json(pp);
    j["enc"] = name;
    j["pk"] = to_hex(pk.v);
    j["mbound"] = mbound;
    return j;
}

struct ParsedAsymKey {
    GroupParams params;
    GroupElement pk;
    uint64_t mbound;
};

inline ParsedAsymKey parse_asym_pk(const std::string& bundle) {
    ojson j = ojson::parse(bundle);
    ParsedAsymKey out{params_from_json(j), GroupElement{mpz_from_hex(j.at("pk").get<std::string>())},
                      j.at("mbound").get<uint64_t>()};
    if (!is_element(out.params, out.pk)) throw std::invalid_argument("public key not in group");
    return out;
}

}  // namespace detail

// Bare exponential ElGamal. Homomorphic, hence malleable: it fails IND-PA0,
// and Enc2Vote over it fails ballot secrecy.
class PlainElGamal final : public AsymmetricScheme {
public:
    std::string name() const override { return "elgamal-plain"; }

    AsymmetricKeys generate(Level level, Rng& rng) const override {
        GroupParams pp = gen_params(level);
        KeyPair kp = keygen(pp, rng);
        uint64_t mbound = detail::exp_message_bound(pp);
        ojson pk = detail::asym_pk_json(name(), pp, kp.pk, mbound);
        ojson sk = pk;
        sk["sk"] = to_hex(kp.sk.v);
        return AsymmetricKeys{pk.dump(), sk.dump(), mbound};
    }

    std::optional<std::string> encrypt(const std::string& pk_bundle, uint64_t m,
                                       Rng& rng) const override {
        auto key = detail::parse_asym_pk(pk_bundle);
        if (m > key.mbound) return std::nullopt;
        Ciphertext ct = encrypt_exp(key.params, key.pk, m, random_scalar(key.params, rng));
        return ciphertext_to_json(ct).dump();
    }

    std::optional<uint64_t> decrypt(const std::string& sk_bundle,
                                    const std::string& ct_str) const override {
        try {
            ojson j = ojson::parse(sk_bundle);
            GroupParams pp = params_from_json(j);
            Scalar sk{mpz_from_hex(j.at("sk").get<std::string>())};
            uint64_t mbound = j.at("mbound").get<uint64_t>();
            Ciphertext ct = ciphertext_from_json(ojson::parse(ct_str));
            if (!is_element(pp, ct.c1) || !is_element(pp, ct.c2)) return std::nullopt;
            return decrypt_exp(pp, sk, ct, mbound);
        } catch (...) {
            return std::nullopt;
        }
    }
};

// Exponential ElGamal with a proof of knowledge of the encryption randomness,
// strong-Fiat-Shamir bound to (pk, c1, c2). Decryption rejects ciphertexts
// whose proof does not verify, so mauled ciphertexts are not decrypted. The
// non-malleability is heuristic (random-oracle); it is what the secure
// variants in this library build on.
class NmElGamal final : public AsymmetricScheme {
public:
    std::string name() const override { return "elgamal-nm"; }

    AsymmetricKeys generate(Level level, Rng& rng) const override {
        GroupParams pp = gen_params(level);
        KeyPair kp = keygen(pp, rng);
        uint64_t mbound = detail::exp_message_bound(pp);
        ojson pk = detail::asym_pk_json(name(), pp, kp.pk, mbound);
        ojson sk = pk;
        sk["sk"] = to_hex(kp.sk.v);
        return AsymmetricKeys{pk.dump(), sk.dump(), mbound};
    }

    std::optional<std::string> encrypt(const std::string& pk_bundle, uint64_t m,
                                       Rng& rng) const override {
        auto key = detail::parse_asym_pk(pk_bundle);
        if (m > key.mbound) return std::nullopt;
        Scalar r = random_scalar(key.params, rng);
        Ciphertext ct = encrypt_exp(key.params, key.pk, m, r);
        Statement stmt = pok_statement(key.params, key.pk, ct);
        Transcript pok = prove_dlog(key.params, r, ct.c1, FsMode::Strong, stmt, kPokContext, rng);
        ojson j = ciphertext_to_json(ct);
        j["pok"] = transcript_to_json(kTagDlog, pok);
        return j.dump();
    }

    std::optional<uint64_t> decrypt(const std::string& sk_bundle,
                                    const std::string& ct_str) const override {
        try {
            ojson j = ojson::parse(sk_bundle);
            GroupParams pp = params_from_json(j);
            Scalar sk{mpz_from_hex(j.at("sk").get<std::string>())};
            GroupElement pk{mpz_from_hex(j.at("pk").get<std::string>())};
            uint64_t mbound = j.at("mbound").get<uint64_t>();
            ojson cj = ojson::parse(ct_str);
            Ciphertext ct = ciphertext_from_json(cj);
            if (!is_element(pp, ct.c1) || !is_element(pp, ct.c2)) return std::nullopt;
            Transcript pok = transcript_from_json(cj.at("pok"));
            Statement stmt = pok_statement(pp, pk, ct);
            if (!verify_dlog(pp, ct.c1, pok, FsMode::Strong, stmt, kPokContext))
                return std::nullopt;
            return decrypt_exp(pp, sk, ct, mbound);
        } catch (...) {
            return std::nullopt;
        }
    }

private:
    static inline const Bytes kPokContext = {'n', 'm', '-', 'e', 'g', '/', 'p', 'o', 'k'};

    static Statement pok_statement(const GroupParams& pp, const GroupElement& pk,
                                   const Ciphertext& ct) {
        return dlog_statement_bound(pp, ct.c1, {pk.v, ct.c2.v});
    }
};

inline std::shared_ptr<AsymmetricScheme> make_plain_elgamal() {
    return std::make_shared<PlainElGamal>();
}

inline std::shared_ptr<AsymmetricScheme> make_nm_elgamal() {
    return std::make_shared<NmElGamal>();
}

}  // namespace verivote
