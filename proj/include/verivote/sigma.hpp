#pragma once

#include "elgamal.hpp"

namespace verivote {

// Strong Fiat-Shamir hashes the statement and the commitments; weak hashes
// the commitments only. The weak form is what the vulnerable scheme variants
// use, and what the forgery adversaries exploit.
enum class FsMode { Strong, Weak };

inline std::string fs_name(FsMode m) { return m == FsMode::Strong ? "strong" : "weak"; }

inline std::optional<FsMode> fs_from_name(const std::string& s) {
    if (s == "strong") return FsMode::Strong;
    if (s == "weak") return FsMode::Weak;
    return std::nullopt;
}

constexpr uint8_t kTagDlog = 0x01;
constexpr uint8_t kTagEqDlog = 0x02;
constexpr uint8_t kTagOrEncryption = 0x03;
constexpr uint8_t kTagShuffle = 0x04;
constexpr uint8_t kTagSeedCommit = 0x05;

// What the prover claims, as hash material: a protocol-kind tag plus the
// public values the strong transform binds into the challenge.
struct Statement {
    uint8_t tag = 0;
    std::vector<mpz_class> fields;
};

// Proof-of-knowledge transcripts. Schnorr uses 1 commitment / 1 response,
// Chaum-Pedersen 2/1, and the disjunctive proof 4/2 plus 2 sub-challenges.
struct Transcript {
    std::vector<GroupElement> commitments;
    Scalar challenge;
    std::vector<Scalar> subchallenges;
    std::vector<Scalar> responses;
};

inline ojson transcript_to_json(uint8_t tag, const Transcript& t) {
    ojson j;
    j["kind"] = tag;
    ojson cs = ojson::array(), subs = ojson::array(), zs = ojson::array();
    for (const auto& c : t.commitments) cs.push_back(to_hex(c.v));
    for (const auto& s : t.subchallenges) subs.push_back(to_hex(s.v));
    for (const auto& z : t.responses) zs.push_back(to_hex(z.v));
    j["t"] = cs;
    j["c"] = to_hex(t.challenge.v);
    j["cs"] = subs;
    j["z"] = zs;
    return j;
}

inline Transcript transcript_from_json(const ojson& j) {
    Transcript t;
    for (const auto& c : j.at("t")) t.commitments.push_back(GroupElement{mpz_from_hex(c.get<std::string>())});
    t.challenge = Scalar{mpz_from_hex(j.at("c").get<std::string>())};
    for (const auto& s : j.at("cs")) t.subchallenges.push_back(Scalar{mpz_from_hex(s.get<std::string>())});
    for (const auto& z : j.at("z")) t.responses.push_back(Scalar{mpz_from_hex(z.get<std::string>())});
    return t;
}

// Challenge derivation. The context string separates proof domains; the
// statement participates only under the strong transform.
inline Scalar fs_challenge(const GroupParams& pp, FsMode mode, const Statement& stmt,
                           const std::vector<GroupElement>& commitments, const Bytes& context) {
    std::vector<Bytes> fields;
    fields.push_back(context);
    if (mode == FsMode::Strong)
        for (const auto& f : stmt.fields) fields.push_back(mpz_to_bytes(f));
    for (const auto& c : commitments) fields.push_back(mpz_to_bytes(c.v));
    return hash_to_scalar(pp, stmt.tag, fields);
}

// ---- Schnorr: knowledge of x with pk = g^x -------------------------------

inline Statement dlog_statement(const GroupParams& pp, const GroupElement& pk) {
    return Statement{kTagDlog, {pp.p, pp.q, pp.g.v, pk.v}};
}

// Variant that additionally binds arbitrary public values (e.g. a ciphertext
// whose well-formedness the key proof should pin down).
inline Statement dlog_statement_bound(const GroupParams& pp, const GroupElement& pk,
                                      const std::vector<mpz_class>& extra) {
    Statement s = dlog_statement(pp, pk);
    s.fields.insert(s.fields.end(), extra.begin(), extra.end());
    return s;
}

inline Transcript prove_dlog(const GroupParams& pp, const Scalar& sk, const GroupElement& pk,
                             FsMode mode, const Statement& stmt, const Bytes& context, Rng& rng) {
    Scalar w = random_scalar(pp, rng);
    GroupElement t = pow(pp, pp.g, w);
    Scalar c = fs_challenge(pp, mode, stmt, {t}, context);
    Scalar z = scalar_add(pp, w, scalar_mul(pp, c, sk));
    return Transcript{{t}, c, {}, {z}};
}

inline bool verify_dlog(const GroupParams& pp, const GroupElement& pk, const Transcript& tr,
                        FsMode mode, const Statement& stmt, const Bytes& context) {
    try {
        if (tr.commitments.size() != 1 || tr.responses.size() != 1 || !tr.subchallenges.empty())
            return false;
        if (!is_element(pp, pk) || !is_element(pp, tr.commitments[0])) return false;
        Scalar c = fs_challenge(pp, mode, stmt, tr.commitments, context);
        if (c != tr.challenge) return false;
        GroupElement lhs = pow(pp, pp.g, tr.responses[0]);
        GroupElement rhs = mul(pp, tr.commitments[0], pow(pp, pk, c));
        return lhs == rhs;
    } catch (...) {
        return false;
    }
}

// ---- Chaum-Pedersen: knowledge of w with y1 = b1^w and y2 = b2^w ---------

struct EqDlog {
    GroupElement b1, y1;
    GroupElement b2, y2;
};

inline Statement eq_statement(const GroupParams& pp, const EqDlog& s) {
    return Statement{kTagEqDlog, {pp.p, pp.q, pp.g.v, s.b1.v, s.y1.v, s.b2.v, s.y2.v}};
}

// Decryption claim for ciphertext ct and claimed plaintext element M:
// the decryptor knows sk with pk = g^sk and c2 / M = c1^sk.
inline EqDlog decryption_claim(const GroupParams& pp, const GroupElement& pk, const Ciphertext& ct,
                               const GroupElement& claimed_m) {
    return EqDlog{pp.g, pk, ct.c1, div(pp, ct.c2, claimed_m)};
}

inline Transcript prove_eq(const GroupParams& pp, const EqDlog& s, const Scalar& w, FsMode mode,
                           const Statement& stmt, const Bytes& context, Rng& rng) {
    Scalar u = random_scalar(pp, rng);
    GroupElement t1 = pow(pp, s.b1, u);
    GroupElement t2 = pow(pp, s.b2, u);
    Scalar c = fs_challenge(pp, mode, stmt, {t1, t2}, context);
    Scalar z = scalar_add(pp, u, scalar_mul(pp, c, w));
    return Transcript{{t1, t2}, c, {}, {z}};
}

// The two verification equations alone, with the transcript's own challenge.
// This is what an interactive-style (simulated) transcript satisfies.
inline bool eq_equations_hold(const GroupParams& pp, const EqDlog& s, const Transcript& tr) {
    try {
        if (tr.commitments.size() != 2 || tr.responses.size() != 1) return false;
        const Scalar& c = tr.challenge;
        const Scalar& z = tr.responses[0];
        if (pow(pp, s.b1, z) != mul(pp, tr.commitments[0], pow(pp, s.y1, c))) return false;
        return pow(pp, s.b2, z) == mul(pp, tr.commitments[1], pow(pp, s.y2, c));
    } catch (...) {
        return false;
    }
}

inline bool verify_eq(const GroupParams& pp, const EqDlog& s, const Transcript& tr, FsMode mode,
                      const Statement& stmt, const Bytes& context) {
    try {
        if (tr.commitments.size() != 2 || tr.responses.size() != 1 || !tr.subchallenges.empty())
            return false;
        for (const auto& e : {s.b1, s.y1, s.b2, s.y2})
            if (e.v < 1 || e.v >= pp.p) return false;
        if (!is_element(pp, tr.commitments[0]) || !is_element(pp, tr.commitments[1])) return false;
        if (fs_challenge(pp, mode, stmt, tr.commitments, context) != tr.challenge) return false;
        return eq_equations_hold(pp, s, tr);
    } catch (...) {
        return false;
    }
}

// Honest-verifier simulator: for any statement (true or not) and chosen
// challenge, pick z and solve for the commitments. The result satisfies the
// verification equations by construction but fails the full Fiat-Shamir
// check, because the challenge was not derived from the commitments.
inline Transcript simulate_eq(const GroupParams& pp, const EqDlog& s, const Scalar& challenge,
                              Rng& rng) {
    Scalar z = random_scalar(pp, rng);
    Scalar nc = scalar_neg(pp, challenge);
    GroupElement t1 = mul(pp, pow(pp, s.b1, z), pow(pp, s.y1, nc));
    GroupElement t2 = mul(pp, pow(pp, s.b2, z), pow(pp, s.y2, nc));
    return Transcript{{t1, t2}, challenge, {}, {z}};
}

// ---- Disjunctive proof: ciphertext encrypts 0 or 1 -----------------------

inline Statement or_statement(const GroupParams& pp, const GroupElement& pk, const Ciphertext& ct) {
    return Statement{kTagOrEncryption, {pp.p, pp.q, pp.g.v, pk.v, ct.c1.v, ct.c2.v}};
}

// Branch relation for plaintext bit b: knowledge of r with c1 = g^r and
// c2 / g^b = pk^r.
inline EqDlog or_branch(const GroupParams& pp, const GroupElement& pk, const Ciphertext& ct,
                        unsigned bit) {
    return EqDlog{pp.g, ct.c1, pk, div(pp, ct.c2, pow(pp, pp.g, mpz_class(bit)))};
}

// One real branch (witness r), one simulated branch with a chosen
// sub-challenge; the full challenge splits as c0 + c1 = c mod q.
inline Transcript prove_or(const GroupParams& pp, const GroupElement& pk, const Ciphertext& ct,
                           unsigned bit, const Scalar& r, FsMode mode, const Statement& stmt,
                           const Bytes& context, Rng& rng) {
    unsigned other = 1 - bit;
    Scalar c_sim = random_scalar(pp, rng);
    Scalar z_sim = random_scalar(pp, rng);
    EqDlog sim_rel = or_branch(pp, pk, ct, other);
    Scalar nc = scalar_neg(pp, c_sim);
    GroupElement t1_sim = mul(pp, pow(pp, sim_rel.b1, z_sim), pow(pp, sim_rel.y1, nc));
    GroupElement t2_sim = mul(pp, pow(pp, sim_rel.b2, z_sim), pow(pp, sim_rel.y2, nc));

    Scalar w = random_scalar(pp, rng);
    GroupElement t1_real = pow(pp, pp.g, w);
    GroupElement t2_real = pow(pp, pk, w);

    std::vector<GroupElement> commitments(4);
    commitments[2 * bit] = t1_real;
    commitments[2 * bit + 1] = t2_real;
    commitments[2 * other] = t1_sim;
    commitments[2 * other + 1] = t2_sim;

    Scalar c = fs_challenge(pp, mode, stmt, commitments, context);
    Scalar c_real = scalar_sub(pp, c, c_sim);
    Scalar z_real = scalar_add(pp, w, scalar_mul(pp, c_real, r));

    std::vector<Scalar> subs(2), zs(2);
    subs[bit] = c_real;
    subs[other] = c_sim;
    zs[bit] = z_real;
    zs[other] = z_sim;
    return Transcript{commitments, c, subs, zs};
}

inline bool verify_or(const GroupParams& pp, const GroupElement& pk, const Ciphertext& ct,
                      const Transcript& tr, FsMode mode, const Statement& stmt,
                      const Bytes& context) {
    try {
        if (tr.commitments.size() != 4 || tr.subchallenges.size() != 2 || tr.responses.size() != 2)
            return false;
        if (!is_element(pp, pk)) return false;
        for (const auto& e : {ct.c1, ct.c2})
            if (!is_element(pp, e)) return false;
        for (const auto& t : tr.commitments)
            if (!is_element(pp, t)) return false;
        if (fs_challenge(pp, mode, stmt, tr.commitments, context) != tr.challenge) return false;
        if (scalar_add(pp, tr.subchallenges[0], tr.subchallenges[1]) != scalar_from(pp, tr.challenge.v))
            return false;
        for (unsigned b = 0; b < 2; ++b) {
            EqDlog rel = or_branch(pp, pk, ct, b);
            Transcript branch{{tr.commitments[2 * b], tr.commitments[2 * b + 1]},
                              tr.subchallenges[b],
                              {},
                              {tr.responses[b]}};
            if (!eq_equations_hold(pp, rel, branch)) return false;
        }
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace verivote
