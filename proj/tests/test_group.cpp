#include <catch_amalgamated.hpp>

#include <set>

#include "verivote/group.hpp"

using namespace verivote;

TEST_CASE("toy parameters are the worked-example constants") {
    GroupParams pp = gen_params(Level::Toy);
    CHECK(pp.p == 23);
    CHECK(pp.q == 22);
    CHECK(pp.g.v == 5);
    // generator order: 5^22 mod 23 = 1
    CHECK(pow(pp, pp.g, Scalar{22}).v == 1);
    CHECK_FALSE(pp.prime_order());
}

TEST_CASE("pow matches the worked example") {
    GroupParams pp = gen_params(Level::Toy);
    CHECK(pow(pp, pp.g, Scalar{6}).v == 8);             // pk = 5^6 mod 23
    CHECK(pow(pp, GroupElement{10}, Scalar{6}).v == 6);  // decryption intermediate
    CHECK(pow(pp, pp.g, Scalar{0}).v == 1);
}

TEST_CASE("modular inverse") {
    GroupParams pp = gen_params(Level::Toy);
    CHECK(inv(pp, GroupElement{6}).v == 4);  // 12 * 6^{-1} = 12 * 4 in the example
    Rng rng = Rng::from_u64(7);
    for (int i = 0; i < 200; ++i) {
        GroupElement x{rng.below(pp.p - 1) + 1};
        CHECK(mul(pp, x, inv(pp, x)).v == 1);
    }
}

TEST_CASE("dlog_small recovers the short-table entries") {
    GroupParams pp = gen_params(Level::Toy);
    CHECK(dlog_small(pp, GroupElement{2}, 10) == 2);   // g^2 = 2
    CHECK(dlog_small(pp, GroupElement{10}, 10) == 3);  // g^3 = 10
    // brute-force table for t in [0,3] is {1,5,2,10}; 7 is not in it
    std::set<mpz_class> table;
    mpz_class acc = 1;
    for (int t = 0; t <= 3; ++t) {
        table.insert(acc);
        acc = acc * 5 % 23;
    }
    CHECK(table.count(7) == 0);
    CHECK_FALSE(dlog_small(pp, GroupElement{7}, 3).has_value());
}

TEST_CASE("dlog_small round-trips exhaustively at toy scale") {
    GroupParams pp = gen_params(Level::Toy);
    for (uint64_t t = 0; t < 22; ++t) {
        GroupElement x = pow(pp, pp.g, Scalar{mpz_class(static_cast<unsigned long>(t))});
        CHECK(dlog_small(pp, x, 21) == t);
    }
}

TEST_CASE("dlog_small round-trips through the giant-step path at test scale") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(11);
    for (int i = 0; i < 50; ++i) {
        uint64_t t = rng.below_u64(1u << 16);
        GroupElement x = pow(pp, pp.g, Scalar{mpz_class(static_cast<unsigned long>(t))});
        CHECK(dlog_small(pp, x, 1u << 16) == t);
    }
    CHECK(dlog_small(pp, GroupElement{pp.g.v}, 0) == std::nullopt);
    CHECK(dlog_small(pp, GroupElement{1}, 0) == 0);
}

TEST_CASE("pinned groups are safe-prime groups with prime order") {
    for (Level level : {Level::Test, Level::Production}) {
        GroupParams pp = gen_params(level);
        CHECK(mpz_probab_prime_p(pp.p.get_mpz_t(), 40) > 0);
        CHECK(mpz_probab_prime_p(pp.q.get_mpz_t(), 40) > 0);
        CHECK(pp.p == 2 * pp.q + 1);
        CHECK(pow(pp, pp.g, Scalar{pp.q}).v == 1);
        CHECK(pp.g.v != 1);
        CHECK(is_element(pp, pp.g));
    }
    CHECK(mpz_sizeinbase(gen_params(Level::Test).p.get_mpz_t(), 2) == 512);
    CHECK(mpz_sizeinbase(gen_params(Level::Production).p.get_mpz_t(), 2) == 2048);
}

TEST_CASE("fresh safe-prime generation") {
    Rng rng = Rng::from_u64(13);
    GroupParams pp = generate_group(96, rng);
    CHECK(mpz_probab_prime_p(pp.p.get_mpz_t(), 40) > 0);
    CHECK(mpz_probab_prime_p(pp.q.get_mpz_t(), 40) > 0);
    CHECK(pp.p == 2 * pp.q + 1);
    CHECK(mpz_sizeinbase(pp.p.get_mpz_t(), 2) == 96);
    CHECK(pow(pp, pp.g, Scalar{pp.q}).v == 1);
}

TEST_CASE("exponent arithmetic composes") {
    GroupParams pp = gen_params(Level::Test);
    Rng rng = Rng::from_u64(17);
    for (int i = 0; i < 1000; ++i) {
        GroupElement base = pow(pp, pp.g, random_scalar(pp, rng));
        Scalar e = random_scalar(pp, rng);
        Scalar f = random_scalar(pp, rng);
        CHECK(pow(pp, pow(pp, base, e), f) == pow(pp, base, scalar_mul(pp, e, f)));
    }
}

TEST_CASE("subgroup membership check") {
    GroupParams pp = gen_params(Level::Test);
    CHECK(is_element(pp, pp.g));
    CHECK(is_element(pp, GroupElement{1}));
    CHECK_FALSE(is_element(pp, GroupElement{0}));
    CHECK_FALSE(is_element(pp, GroupElement{pp.p}));
    // p-1 = -1 has order 2, not in the order-q subgroup of a safe-prime group
    CHECK_FALSE(is_element(pp, GroupElement{pp.p - 1}));
}

TEST_CASE("hash_to_scalar is deterministic and tag-separated") {
    GroupParams pp = gen_params(Level::Test);
    std::vector<Bytes> fields{{1, 2, 3}, {4, 5}};
    Scalar a = hash_to_scalar(pp, 0x01, fields);
    Scalar b = hash_to_scalar(pp, 0x01, fields);
    CHECK(a == b);
    CHECK(hash_to_scalar(pp, 0x02, fields) != a);
    CHECK(hash_to_scalar(pp, 0x01, {{1, 2}, {3, 4, 5}}) != a);  // framing matters
}

TEST_CASE("hex round trip") {
    CHECK(to_hex(mpz_class(0)) == "0");
    CHECK(to_hex(mpz_class(255)) == "ff");
    CHECK(mpz_from_hex("ff") == 255);
    Rng rng = Rng::from_u64(23);
    for (int i = 0; i < 100; ++i) {
        mpz_class x = rng.below(mpz_class(1) << 300);
        CHECK(mpz_from_hex(to_hex(x)) == x);
    }
    CHECK_THROWS(mpz_from_hex("zz"));
    CHECK_THROWS(mpz_from_hex(""));
}

TEST_CASE("rng streams are deterministic, splittable and replayable") {
    Rng a = Rng::from_u64(42);
    Rng b = Rng::from_u64(42);
    mpz_class bound = mpz_class(1) << 128;
    for (int i = 0; i < 20; ++i) CHECK(a.below(bound) == b.below(bound));

    Rng c = Rng::from_u64(42).split("left");
    Rng d = Rng::from_u64(42).split("right");
    CHECK(c.below(bound) != d.below(bound));

    Rng rec = Rng::from_u64(99);
    rec.start_recording();
    std::vector<mpz_class> drawn;
    for (int i = 0; i < 10; ++i) drawn.push_back(rec.below(bound));
    Rng rep = Rng::replay(rec.tape());
    for (int i = 0; i < 10; ++i) CHECK(rep.below(bound) == drawn[i]);
}

TEST_CASE("rng uniformity at small bounds") {
    Rng rng = Rng::from_u64(5);
    std::vector<int> buckets(10, 0);
    for (int i = 0; i < 10000; ++i) ++buckets[rng.below_u64(10)];
    for (int count : buckets) {
        CHECK(count > 800);
        CHECK(count < 1200);
    }
}
