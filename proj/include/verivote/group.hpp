#pragma once

#include <map>
#include <optional>

#include "rng.hpp"

namespace verivote {

enum class Level { Toy, Test, Production };

inline std::string level_name(Level l) {
    switch (l) {
        case Level::Toy: return "toy";
        case Level::Test: return "test";
        case Level::Production: return "production";
    }
    return "?";
}

inline std::optional<Level> level_from_name(const std::string& s) {
    if (s == "toy") return Level::Toy;
    if (s == "test") return Level::Test;
    if (s == "production") return Level::Production;
    return std::nullopt;
}

// Exponent in [0, q).
struct Scalar {
    mpz_class v;
    bool operator==(const Scalar& o) const { return v == o.v; }
    bool operator!=(const Scalar& o) const { return v != o.v; }
};

// Element of the working subgroup, value in [1, p).
struct GroupElement {
    mpz_class v;
    bool operator==(const GroupElement& o) const { return v == o.v; }
    bool operator!=(const GroupElement& o) const { return v != o.v; }
};

// Multiplicative group mod prime p with working subgroup of order q generated
// by g. Toy level is the full group mod 23 (q = 22, composite) for the worked
// numbers; test and production levels use safe primes, so q is prime and
// every scalar except 0 is invertible.
struct GroupParams {
    mpz_class p;
    mpz_class q;
    GroupElement g;
    Level level;

    bool operator==(const GroupParams& o) const {
        return p == o.p && q == o.q && g == o.g;
    }
    bool prime_order() const { return level != Level::Toy; }
};

namespace detail {
// 512-bit safe prime for the test level, fixed so runs are reproducible.
inline const char* kTestP =
    "d0826f042691f1d535f4987ca0a97222f112eb268196163f350c75503b47db3e"
    "7a39921702c7925b715c7654d6c52d6d436ac6d2b1db26ed532754a2037f532b";
// RFC 3526 2048-bit MODP prime (a safe prime); 2 generates the order-q
// subgroup of squares since p = 7 mod 8.
inline const char* kProdP =
    "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
    "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
    "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
    "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05"
    "98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb"
    "9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b"
    "e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718"
    "3995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff";
}  // namespace detail

inline GroupParams gen_params(Level level) {
    switch (level) {
        case Level::Toy:
            return GroupParams{23, 22, GroupElement{5}, level};
        case Level::Test: {
            mpz_class p = mpz_from_hex(detail::kTestP);
            return GroupParams{p, (p - 1) / 2, GroupElement{4}, level};
        }
        case Level::Production: {
            mpz_class p = mpz_from_hex(detail::kProdP);
            return GroupParams{p, (p - 1) / 2, GroupElement{2}, level};
        }
    }
    throw std::invalid_argument("bad level");
}

// Fresh safe-prime group: p = 2q + 1 with p, q prime, g = 4 (a square, hence
// of order q). Fails after max_attempts candidate primes.
inline GroupParams generate_group(unsigned bits, Rng& rng, unsigned max_attempts = 200000) {
    if (bits < 8) throw std::invalid_argument("group too small");
    mpz_class low = mpz_class(1) << (bits - 2);
    for (unsigned i = 0; i < max_attempts; ++i) {
        mpz_class q = low + rng.below(low);
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        mpz_class p = 2 * q + 1;
        if (mpz_sizeinbase(p.get_mpz_t(), 2) != bits) continue;
        if (mpz_probab_prime_p(p.get_mpz_t(), 32) > 0)
            return GroupParams{p, q, GroupElement{4}, Level::Test};
    }
    throw std::runtime_error("safe prime generation failed after bounded retries");
}

inline Scalar scalar_from(const GroupParams& pp, const mpz_class& x) {
    mpz_class r = x % pp.q;
    if (sgn(r) < 0) r += pp.q;
    return Scalar{r};
}

inline Scalar scalar_add(const GroupParams& pp, const Scalar& a, const Scalar& b) {
    return scalar_from(pp, a.v + b.v);
}

inline Scalar scalar_sub(const GroupParams& pp, const Scalar& a, const Scalar& b) {
    return scalar_from(pp, a.v - b.v);
}

inline Scalar scalar_mul(const GroupParams& pp, const Scalar& a, const Scalar& b) {
    return scalar_from(pp, a.v * b.v);
}

inline Scalar scalar_neg(const GroupParams& pp, const Scalar& a) {
    return scalar_from(pp, -a.v);
}

inline std::optional<Scalar> scalar_inv(const GroupParams& pp, const Scalar& a) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.v.get_mpz_t(), pp.q.get_mpz_t()) == 0)
        return std::nullopt;
    return Scalar{r};
}

// Uniform in [0, q).
inline Scalar random_scalar(const GroupParams& pp, Rng& rng) {
    return Scalar{rng.below(pp.q)};
}

// Uniform in [1, q).
inline Scalar random_scalar_nonzero(const GroupParams& pp, Rng& rng) {
    return Scalar{rng.below(pp.q - 1) + 1};
}

inline GroupElement pow(const GroupParams& pp, const GroupElement& base, const Scalar& e) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.v.get_mpz_t(), e.v.get_mpz_t(), pp.p.get_mpz_t());
    return GroupElement{r};
}

inline GroupElement pow(const GroupParams& pp, const GroupElement& base, const mpz_class& e) {
    return pow(pp, base, scalar_from(pp, e));
}

inline GroupElement mul(const GroupParams& pp, const GroupElement& a, const GroupElement& b) {
    return GroupElement{a.v * b.v % pp.p};
}

inline GroupElement inv(const GroupParams& pp, const GroupElement& a) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.v.get_mpz_t(), pp.p.get_mpz_t()) == 0)
        throw std::domain_error("element not invertible");
    return GroupElement{r};
}

// a / b = a * b^{-1} mod p.
inline GroupElement div(const GroupParams& pp, const GroupElement& a, const GroupElement& b) {
    return mul(pp, a, inv(pp, b));
}

// Subgroup membership. For prime q this is the order check x^q = 1; the toy
// group is the full group, so the range check suffices.
inline bool is_element(const GroupParams& pp, const GroupElement& x) {
    if (x.v < 1 || x.v >= pp.p) return false;
    if (!pp.prime_order()) return true;
    return pow(pp, x, Scalar{pp.q}).v == 1;
}

// Smallest t in [0, bound] with g^t = x, if any. Short incremental table for
// small bounds, baby-step/giant-step above.
inline std::optional<uint64_t> dlog_small(const GroupParams& pp, const GroupElement& x,
                                          uint64_t bound) {
    if (x.v < 1 || x.v >= pp.p) return std::nullopt;
    if (bound <= 256) {
        mpz_class acc = 1;
        for (uint64_t t = 0; t <= bound; ++t) {
            if (acc == x.v) return t;
            acc = acc * pp.g.v % pp.p;
        }
        return std::nullopt;
    }
    uint64_t m = 1;
    while (m * m < bound + 1) ++m;
    std::map<mpz_class, uint64_t> baby;
    mpz_class acc = 1;
    for (uint64_t j = 0; j < m; ++j) {
        baby.emplace(acc, j);
        acc = acc * pp.g.v % pp.p;
    }
    GroupElement giant = inv(pp, pow(pp, pp.g, mpz_class(static_cast<unsigned long>(m))));
    mpz_class gamma = x.v;
    for (uint64_t i = 0; i * m <= bound; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) {
            uint64_t t = i * m + it->second;
            if (t <= bound) return t;
        }
        gamma = gamma * giant.v % pp.p;
    }
    return std::nullopt;
}

// Domain-tagged hash to an exponent: SHA-256 over the tag byte followed by
// length-prefixed fields, reduced mod q.
inline Scalar hash_to_scalar(const GroupParams& pp, uint8_t tag, const std::vector<Bytes>& fields) {
    Bytes input;
    input.push_back(tag);
    for (const auto& f : fields) append_field(input, f);
    return scalar_from(pp, mpz_from_bytes(sha256(input)));
}

}  // namespace verivote
