#pragma once

#include "scheme.hpp"

namespace verivote::helios {

// The two variants of interest: weak Fiat-Shamir without weeding (the
// deployed, vulnerable shape) and strong Fiat-Shamir with weeding (the
// hardened shape). The vulnerable one is a first-class test target.
struct Variant {
    FsMode fs;
    bool weeding;
};

inline Variant vulnerable() { return Variant{FsMode::Weak, false}; }
inline Variant hardened() { return Variant{FsMode::Strong, true}; }

inline std::string variant_name(const Variant& v) {
    return fs_name(v.fs) + (v.weeding ? "+weeding" : "");
}

constexpr uint64_t kMaxCandidates = 65536;

inline const Bytes kBallotCtx = {'h', 'e', 'l', 'i', 'o', 's', '/', 'b', 'a', 'l', 'l', 'o', 't'};
inline const Bytes kDecryptCtx = {'h', 'e', 'l', 'i', 'o', 's', '/', 'd', 'e', 'c'};
inline const Bytes kSetupCtx = {'h', 'e', 'l', 'i', 'o', 's', '/', 's', 'e', 't', 'u', 'p'};

// nc-1 ciphertexts (bitstring encoding of the vote) plus nc disjunctive
// proofs; the last proof covers the homomorphic combination of all
// ciphertexts.
struct HeliosBallot {
    uint64_t nc = 0;
    std::vector<Ciphertext> cts;
    std::vector<Transcript> proofs;
};

// Bitstring encoding: position v carries 1 when v < nc; the last candidate is
// the all-zero row.
inline std::vector<unsigned> encode_vote(uint64_t v, uint64_t nc) {
    if (v < 1 || v > nc) throw std::out_of_range("vote out of range");
    std::vector<unsigned> bits(nc - 1, 0);
    if (v < nc) bits[v - 1] = 1;
    return bits;
}

inline ojson ballot_to_json(const HeliosBallot& b) {
    ojson j;
    j["nc"] = b.nc;
    ojson cts = ojson::array(), proofs = ojson::array();
    for (const auto& ct : b.cts) cts.push_back(ciphertext_to_json(ct));
    for (const auto& p : b.proofs) proofs.push_back(transcript_to_json(kTagOrEncryption, p));
    j["cts"] = cts;
    j["proofs"] = proofs;
    return j;
}

inline HeliosBallot ballot_from_json(const ojson& j) {
    HeliosBallot b;
    b.nc = j.at("nc").get<uint64_t>();
    for (const auto& c : j.at("cts")) b.cts.push_back(ciphertext_from_json(c));
    for (const auto& p : j.at("proofs")) b.proofs.push_back(transcript_from_json(p));
    return b;
}

inline Ballot ballot_bytes(const HeliosBallot& b) { return ballot_to_json(b).dump(); }

inline Ciphertext combine_all(const GroupParams& pp, const std::vector<Ciphertext>& cts) {
    Ciphertext acc = identity_ciphertext();
    for (const auto& ct : cts) acc = hom_combine(pp, acc, ct);
    return acc;
}

// Statement for the ballot proof in slot `index` (slots 0..nc-2 cover the
// individual ciphertexts, slot nc-1 the combination). The strong transform
// binds pk, nc, the slot index and every ciphertext of the enclosing ballot;
// this whole-ballot binding is what defeats the permutation maul.
inline Statement ballot_statement(const GroupParams& pp, const GroupElement& pk, uint64_t nc,
                                  uint64_t index, const std::vector<Ciphertext>& all,
                                  const Ciphertext& target) {
    Statement s{kTagOrEncryption, {pp.p, pp.q, pp.g.v, pk.v, mpz_class(nc), mpz_class(index)}};
    for (const auto& ct : all) {
        s.fields.push_back(ct.c1.v);
        s.fields.push_back(ct.c2.v);
    }
    s.fields.push_back(target.c1.v);
    s.fields.push_back(target.c2.v);
    return s;
}

inline Statement decryption_statement(const GroupParams& pp, const EqDlog& claim, uint64_t column) {
    Statement s = eq_statement(pp, claim);
    s.fields.push_back(mpz_class(column));
    return s;
}

// Ballot construction. Draw order is fixed and part of the replay contract:
// one encryption scalar per ciphertext slot first, then three scalars per
// proof, the combination proof last.
inline std::optional<HeliosBallot> vote(const GroupParams& pp, const GroupElement& pk, uint64_t v,
                                        uint64_t nc, const Variant& var, Rng& rng) {
    if (v < 1 || v > nc || nc < 1 || nc > kMaxCandidates) return std::nullopt;
    std::vector<unsigned> bits = encode_vote(v, nc);
    HeliosBallot b;
    b.nc = nc;
    std::vector<Scalar> rs;
    std::vector<Transcript> proofs;
    Scalar total{0};
    for (uint64_t j = 0; j + 1 < nc; ++j) {
        Scalar r = random_scalar(pp, rng);
        b.cts.push_back(encrypt_exp(pp, pk, bits[j], r));
        rs.push_back(r);
        total = scalar_add(pp, total, r);
        proofs.emplace_back();  // placeholder until all ciphertexts exist
    }
    for (uint64_t j = 0; j + 1 < nc; ++j) {
        Statement stmt = ballot_statement(pp, pk, nc, j, b.cts, b.cts[j]);
        proofs[j] = prove_or(pp, pk, b.cts[j], bits[j], rs[j], var.fs, stmt, kBallotCtx, rng);
    }
    Ciphertext comb = combine_all(pp, b.cts);
    unsigned comb_bit = v < nc ? 1 : 0;
    Statement stmt = ballot_statement(pp, pk, nc, nc - 1, b.cts, comb);
    proofs.push_back(prove_or(pp, pk, comb, comb_bit, total, var.fs, stmt, kBallotCtx, rng));
    b.proofs = std::move(proofs);
    return b;
}

inline bool ballot_valid(const GroupParams& pp, const GroupElement& pk, const HeliosBallot& b,
                         uint64_t nc, const Variant& var) {
    try {
        if (b.nc != nc || nc < 1) return false;
        if (b.cts.size() != nc - 1 || b.proofs.size() != nc) return false;
        for (const auto& ct : b.cts)
            if (!is_element(pp, ct.c1) || !is_element(pp, ct.c2)) return false;
        for (uint64_t j = 0; j + 1 < nc; ++j) {
            Statement stmt = ballot_statement(pp, pk, nc, j, b.cts, b.cts[j]);
            if (!verify_or(pp, pk, b.cts[j], b.proofs[j], var.fs, stmt, kBallotCtx)) return false;
        }
        Ciphertext comb = combine_all(pp, b.cts);
        Statement stmt = ballot_statement(pp, pk, nc, nc - 1, b.cts, comb);
        return verify_or(pp, pk, comb, b.proofs[nc - 1], var.fs, stmt, kBallotCtx);
    } catch (...) {
        return false;
    }
}

// Keeps the first occurrence, drops any later ballot that is byte-identical
// or shares an individual ciphertext with an earlier kept one. Returns the
// kept positions, in order.
inline std::vector<size_t> weed(const std::vector<HeliosBallot>& ballots,
                                const std::vector<Ballot>& bytes) {
    std::vector<size_t> kept;
    for (size_t i = 0; i < ballots.size(); ++i) {
        bool related = false;
        for (size_t k : kept) {
            if (bytes[k] == bytes[i]) {
                related = true;
                break;
            }
            for (const auto& a : ballots[k].cts) {
                for (const auto& c : ballots[i].cts) {
                    if (a == c) {
                        related = true;
                        break;
                    }
                }
                if (related) break;
            }
            if (related) break;
        }
        if (!related) kept.push_back(i);
    }
    return kept;
}

struct PublicKey {
    GroupParams params;
    GroupElement pk;
    Transcript key_pok;
    Variant variant;
};

inline ojson pk_to_json(const PublicKey& k) {
    ojson j = params_to_json(k.params);
    j["scheme"] = "helios";
    j["fs"] = fs_name(k.variant.fs);
    j["weeding"] = k.variant.weeding;
    j["pk"] = to_hex(k.pk.v);
    j["pok"] = transcript_to_json(kTagDlog, k.key_pok);
    return j;
}

inline PublicKey pk_from_json(const ojson& j) {
    auto fs = fs_from_name(j.at("fs").get<std::string>());
    if (!fs) throw std::invalid_argument("bad fs tag");
    return PublicKey{params_from_json(j), GroupElement{mpz_from_hex(j.at("pk").get<std::string>())},
                     transcript_from_json(j.at("pok")), Variant{*fs, j.at("weeding").get<bool>()}};
}

struct TallyInternals {
    std::vector<size_t> accepted;  // board positions that survive filtering and weeding
    std::vector<Ciphertext> columns;
    Outcome outcome;
    std::vector<Transcript> column_proofs;
};

inline std::vector<size_t> accepted_set(const GroupParams& pp, const GroupElement& pk,
                                        const BulletinBoard& bb, uint64_t nc, const Variant& var,
                                        std::vector<HeliosBallot>& parsed_out) {
    std::vector<size_t> valid;
    std::vector<HeliosBallot> valid_ballots;
    std::vector<Ballot> valid_bytes;
    for (size_t i = 0; i < bb.entries.size(); ++i) {
        try {
            HeliosBallot b = ballot_from_json(ojson::parse(bb.entries[i]));
            if (!ballot_valid(pp, pk, b, nc, var)) continue;
            valid.push_back(i);
            valid_ballots.push_back(std::move(b));
            valid_bytes.push_back(bb.entries[i]);
        } catch (...) {
            continue;
        }
    }
    std::vector<size_t> result;
    parsed_out.clear();
    if (var.weeding) {
        for (size_t k : weed(valid_ballots, valid_bytes)) {
            result.push_back(valid[k]);
            parsed_out.push_back(valid_ballots[k]);
        }
    } else {
        result = valid;
        parsed_out = std::move(valid_ballots);
    }
    return result;
}

inline TallyInternals tally(const GroupParams& pp, const KeyPair& kp, const BulletinBoard& bb,
                            uint64_t nc, const Variant& var, Rng& rng) {
    TallyInternals t;
    std::vector<HeliosBallot> accepted;
    t.accepted = accepted_set(pp, kp.pk, bb, nc, var, accepted);
    uint64_t k = accepted.size();
    t.outcome = Outcome::zeros(nc);
    mpz_class tail(k);
    for (uint64_t j = 0; j + 1 < nc; ++j) {
        Ciphertext col = identity_ciphertext();
        for (const auto& b : accepted) col = hom_combine(pp, col, b.cts[j]);
        t.columns.push_back(col);
        auto sum = decrypt_exp(pp, kp.sk, col, k);
        if (!sum) throw std::runtime_error("ill-formed board: column sum out of range");
        t.outcome.counts[j] = *sum;
        tail -= *sum;
        GroupElement m = pow(pp, pp.g, mpz_class(*sum));
        EqDlog claim = decryption_claim(pp, kp.pk, col, m);
        Statement stmt = decryption_statement(pp, claim, j);
        t.column_proofs.push_back(prove_eq(pp, claim, kp.sk, var.fs, stmt, kDecryptCtx, rng));
    }
    t.outcome.counts[nc - 1] = tail;
    return t;
}

inline ojson tally_proof_to_json(const TallyInternals& t) {
    ojson j;
    ojson acc = ojson::array(), cols = ojson::array();
    for (size_t i : t.accepted) acc.push_back(i);
    for (const auto& p : t.column_proofs) cols.push_back(transcript_to_json(kTagEqDlog, p));
    j["accepted"] = acc;
    j["cols"] = cols;
    return j;
}

// Deterministic audit: recompute the accepted set and column combinations,
// check every decryption proof against the claimed counts, and check the
// subtraction identity for the last candidate.
inline CheckReport verify_report(const PublicKey& key, const BulletinBoard& bb, uint64_t nc,
                                 const Outcome& outcome, const std::string& proof) {
    CheckReport rep;
    const GroupParams& pp = key.params;
    const Variant& var = key.variant;
    try {
        rep.checks.emplace_back(
            "key-pok", is_element(pp, key.pk) && verify_dlog(pp, key.pk, key.key_pok, var.fs,
                                                             dlog_statement(pp, key.pk), kSetupCtx));
        if (nc < 1 || nc > kMaxCandidates || outcome.counts.size() != nc) {
            rep.checks.emplace_back("outcome-arity", false);
            return rep;
        }
        rep.checks.emplace_back("outcome-arity", true);

        ojson pj = ojson::parse(proof);
        std::vector<size_t> claimed_accepted;
        for (const auto& i : pj.at("accepted")) claimed_accepted.push_back(i.get<size_t>());

        std::vector<HeliosBallot> accepted;
        std::vector<size_t> recomputed = accepted_set(pp, key.pk, bb, nc, var, accepted);
        rep.checks.emplace_back("accepted-set", recomputed == claimed_accepted);
        if (recomputed != claimed_accepted) return rep;

        uint64_t k = accepted.size();
        const ojson& cols = pj.at("cols");
        if (cols.size() != nc - 1) {
            rep.checks.emplace_back("column-proof-arity", false);
            return rep;
        }
        rep.checks.emplace_back("column-proof-arity", true);

        mpz_class tail(k);
        for (uint64_t j = 0; j + 1 < nc; ++j) {
            Ciphertext col = identity_ciphertext();
            for (const auto& b : accepted) col = hom_combine(pp, col, b.cts[j]);
            GroupElement m = pow(pp, pp.g, outcome.counts[j]);
            EqDlog claim = decryption_claim(pp, key.pk, col, m);
            Statement stmt = decryption_statement(pp, claim, j);
            Transcript tr = transcript_from_json(cols[j]);
            rep.checks.emplace_back("decryption-proof-" + std::to_string(j),
                                    verify_eq(pp, claim, tr, var.fs, stmt, kDecryptCtx));
            tail -= outcome.counts[j];
        }
        rep.checks.emplace_back("subtraction-identity", outcome.counts[nc - 1] == tail);
    } catch (...) {
        rep.checks.emplace_back("parse", false);
    }
    return rep;
}

class HeliosScheme final : public ElectionScheme {
public:
    HeliosScheme(Variant var, Level level) : var_(var), level_(level) {}

    std::string name() const override { return "helios"; }
    Variant variant() const { return var_; }

    SetupResult setup(Rng& rng) const override {
        GroupParams pp = gen_params(level_);
        KeyPair kp = keygen(pp, rng);
        Transcript pok =
            prove_dlog(pp, kp.sk, kp.pk, var_.fs, dlog_statement(pp, kp.pk), kSetupCtx, rng);
        PublicKey pub{pp, kp.pk, pok, var_};
        ojson pkj = pk_to_json(pub);
        ojson skj = pkj;
        skj["sk"] = to_hex(kp.sk.v);
        return SetupResult{pkj.dump(), skj.dump(), kMaxBallots, kMaxCandidates};
    }

    std::optional<Ballot> vote(const std::string& pk, uint64_t v, uint64_t nc,
                               Rng& rng) const override {
        try {
            PublicKey key = pk_from_json(ojson::parse(pk));
            auto b = helios::vote(key.params, key.pk, v, nc, var_, rng);
            if (!b) return std::nullopt;
            return ballot_bytes(*b);
        } catch (...) {
            return std::nullopt;
        }
    }

    TallyResult tally(const std::string& sk, const BulletinBoard& bb, uint64_t nc,
                      Rng& rng) const override {
        ojson j = ojson::parse(sk);
        PublicKey key = pk_from_json(j);
        KeyPair kp{key.params, key.pk, Scalar{mpz_from_hex(j.at("sk").get<std::string>())}};
        TallyInternals t = helios::tally(key.params, kp, bb, nc, var_, rng);
        return TallyResult{t.outcome, tally_proof_to_json(t).dump()};
    }

    bool verify(const std::string& pk, const BulletinBoard& bb, uint64_t nc,
                const Outcome& outcome, const std::string& proof) const override {
        try {
            PublicKey key = pk_from_json(ojson::parse(pk));
            key.variant = var_;  // the audited variant is the verifier's choice
            return verify_report(key, bb, nc, outcome, proof).ok();
        } catch (...) {
            return false;
        }
    }

private:
    Variant var_;
    Level level_;
};

inline std::unique_ptr<ElectionScheme> make_scheme(Variant var, Level level) {
    return std::make_unique<HeliosScheme>(var, level);
}

}  // namespace verivote::helios
