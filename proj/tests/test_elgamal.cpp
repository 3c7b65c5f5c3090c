#include <catch_amalgamated.hpp>

#include <set>

#include "verivote/asym.hpp"

using namespace verivote;

namespace {
KeyPair toy_keypair() { return keypair_from_sk(gen_params(Level::Toy), 6); }
}  // namespace

TEST_CASE("worked-example key generation") {
    KeyPair kp = toy_keypair();
    CHECK(kp.pk.v == 8);  // pk = 5^6 mod 23
}

TEST_CASE("keygen draws sk uniformly in [1, q)") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(1);
    std::set<mpz_class> seen;
    for (int i = 0; i < 200; ++i) {
        KeyPair kp = keygen(pp, rng);
        CHECK(kp.sk.v >= 1);
        CHECK(kp.sk.v < pp.q);
        CHECK(kp.pk.v != 1);
        CHECK(kp.pk == pow(pp, pp.g, kp.sk));
        seen.insert(kp.sk.v);
    }
    CHECK(seen.size() == 200);  // no collisions across seeds at this scale
}

TEST_CASE("worked-example encryptions") {
    KeyPair kp = toy_keypair();
    CHECK(encrypt_exp(kp.params, kp.pk, 2, Scalar{3}) == Ciphertext{{10}, {12}});
    CHECK(encrypt_exp(kp.params, kp.pk, 1, Scalar{5}) == Ciphertext{{20}, {11}});
    CHECK(encrypt_exp(kp.params, kp.pk, 0, Scalar{0}) == Ciphertext{{1}, {1}});
}

TEST_CASE("worked-example decryptions") {
    KeyPair kp = toy_keypair();
    CHECK(decrypt_exp(kp, Ciphertext{{10}, {12}}, 3) == 2);
    CHECK(decrypt_exp(kp, Ciphertext{{16}, {17}}, 3) == 3);  // homomorphic sum
    // 7 is not among {g^0..g^3} = {1,5,2,10}, so decryption is out of range
    CHECK_FALSE(decrypt_exp(kp, Ciphertext{{1}, {7}}, 3).has_value());
}

TEST_CASE("homomorphic combination matches the worked example") {
    KeyPair kp = toy_keypair();
    Ciphertext a{{10}, {12}}, b{{20}, {11}};
    CHECK(hom_combine(kp.params, a, b) == Ciphertext{{16}, {17}});
    CHECK(hom_combine(kp.params, a, identity_ciphertext()) == a);
}

TEST_CASE("column sum of encrypted bits decrypts to the bit count") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(2);
    KeyPair kp = keygen(pp, rng);
    // column 2 of the tallying example: E(1) x E(0) x E(0) = E(1)
    Ciphertext col = identity_ciphertext();
    for (uint64_t bit : {1, 0, 0})
        col = hom_combine(pp, col, encrypt_exp(pp, kp.pk, bit, random_scalar(pp, rng)));
    CHECK(decrypt_exp(kp, col, 3) == 1);
}

TEST_CASE("re-encryption preserves the plaintext") {
    KeyPair kp = toy_keypair();
    Ciphertext ct{{10}, {12}};
    CHECK(reencrypt(kp.params, kp.pk, ct, Scalar{0}) == ct);
    // (10*5^7, 12*8^7) mod 23, then decrypt by hand
    Ciphertext re = reencrypt(kp.params, kp.pk, ct, Scalar{7});
    mpz_class c1 = mpz_class(10) * 78125 % 23;   // 5^7 = 78125
    mpz_class c2 = mpz_class(12) * 2097152 % 23; // 8^7 = 2097152
    CHECK(re == Ciphertext{{c1}, {c2}});
    CHECK(decrypt_exp(kp, re, 3) == 2);
    // nonzero re-encryption randomness always changes the ciphertext
    for (unsigned long r = 1; r < 22; ++r)
        CHECK(reencrypt(kp.params, kp.pk, ct, Scalar{mpz_class(r)}) != ct);
}

TEST_CASE("encrypt/decrypt round trip never fails at desk scale") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(3);
    KeyPair kp = keygen(pp, rng);
    for (int i = 0; i < 10000; ++i) {
        uint64_t m = rng.below_u64(101);
        Ciphertext ct = encrypt_exp(pp, kp.pk, m, random_scalar(pp, rng));
        REQUIRE(decrypt_exp(kp, ct, 100) == m);
    }
}

TEST_CASE("homomorphism over random batches") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(4);
    KeyPair kp = keygen(pp, rng);
    for (int trial = 0; trial < 50; ++trial) {
        Ciphertext acc = identity_ciphertext();
        uint64_t sum = 0;
        for (int i = 0; i < 10; ++i) {
            uint64_t m = rng.below_u64(20);
            sum += m;
            acc = hom_combine(pp, acc, encrypt_exp(pp, kp.pk, m, random_scalar(pp, rng)));
        }
        CHECK(decrypt_exp(kp, acc, 200) == sum);
    }
}

TEST_CASE("encryption is probabilistic") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(5);
    KeyPair kp = keygen(pp, rng);
    std::set<std::pair<mpz_class, mpz_class>> seen;
    for (int i = 0; i < 100; ++i) {
        Ciphertext ct = encrypt_exp(pp, kp.pk, 1, random_scalar(pp, rng));
        seen.emplace(ct.c1.v, ct.c2.v);
    }
    CHECK(seen.size() == 100);
}

TEST_CASE("honest encryptions do not collide on c1") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(6);
    KeyPair kp = keygen(pp, rng);
    std::set<mpz_class> c1s;
    for (int i = 0; i < 10000; ++i)
        c1s.insert(encrypt_exp(pp, kp.pk, 0, random_scalar(pp, rng)).c1.v);
    CHECK(c1s.size() == 10000);
}

TEST_CASE("plain scheme round trip and malleability") {
    auto enc = make_plain_elgamal();
    Rng rng = Rng::from_u64(7);
    AsymmetricKeys keys = enc->generate(Level::Test, rng);
    auto ct = enc->encrypt(keys.pk_bundle, 5, rng);
    REQUIRE(ct);
    CHECK(enc->decrypt(keys.sk_bundle, *ct) == 5);
    CHECK_FALSE(enc->encrypt(keys.pk_bundle, keys.message_bound + 1, rng).has_value());

    // the malleation oracle: combine with a fresh encryption of one
    auto key = detail::parse_asym_pk(keys.pk_bundle);
    Ciphertext parsed = ciphertext_from_json(ojson::parse(*ct));
    Ciphertext shifted =
        hom_combine(key.params, parsed, encrypt_exp(key.params, key.pk, 1, random_scalar(key.params, rng)));
    CHECK(enc->decrypt(keys.sk_bundle, ciphertext_to_json(shifted).dump()) == 6);
}

TEST_CASE("proof-carrying scheme rejects mauled ciphertexts") {
    auto enc = make_nm_elgamal();
    Rng rng = Rng::from_u64(8);
    AsymmetricKeys keys = enc->generate(Level::Test, rng);
    auto ct = enc->encrypt(keys.pk_bundle, 5, rng);
    REQUIRE(ct);
    CHECK(enc->decrypt(keys.sk_bundle, *ct) == 5);

    auto key = detail::parse_asym_pk(keys.pk_bundle);
    ojson cj = ojson::parse(*ct);
    Ciphertext parsed = ciphertext_from_json(cj);
    Ciphertext shifted =
        hom_combine(key.params, parsed, encrypt_exp(key.params, key.pk, 1, random_scalar(key.params, rng)));
    ojson mauled = ciphertext_to_json(shifted);
    mauled["pok"] = cj["pok"];  // original proof no longer matches the statement
    CHECK_FALSE(enc->decrypt(keys.sk_bundle, mauled.dump()).has_value());

    ojson stripped = ciphertext_to_json(shifted);
    CHECK_FALSE(enc->decrypt(keys.sk_bundle, stripped.dump()).has_value());
    CHECK_FALSE(enc->decrypt(keys.sk_bundle, "not json").has_value());
}

TEST_CASE("ciphertext serialization round trip") {
    Rng rng = Rng::from_u64(9);
    GroupParams pp = gen_params(Level::Test);
    for (int i = 0; i < 20; ++i) {
        Ciphertext ct{GroupElement{rng.below(pp.p - 1) + 1}, GroupElement{rng.below(pp.p - 1) + 1}};
        CHECK(ciphertext_from_json(ojson::parse(ciphertext_to_json(ct).dump())) == ct);
    }
}
