#pragma once

#include "scheme.hpp"

namespace verivote::mixnet {

inline const Bytes kPokCtx = {'m', 'i', 'x', 'n', 'e', 't', '/', 'p', 'o', 'k'};
inline const Bytes kMixCtx = {'m', 'i', 'x', 'n', 'e', 't', '/', 's', 'h', 'u', 'f'};
inline const Bytes kDecCtx = {'m', 'i', 'x', 'n', 'e', 't', '/', 'd', 'e', 'c'};
inline const Bytes kSetupCtx = {'m', 'i', 'x', 'n', 'e', 't', '/', 's', 'e', 't', 'u', 'p'};

constexpr uint64_t kMaxCandidates = 65536;
constexpr unsigned kMaxRounds = 256;

// One encrypted vote plus a proof of knowledge of the encryption randomness.
struct MixnetBallot {
    Ciphertext ct;
    Transcript pok;
};

inline Statement pok_statement(const GroupParams& pp, const GroupElement& pk,
                               const Ciphertext& ct) {
    return dlog_statement_bound(pp, ct.c1, {pk.v, ct.c2.v});
}

inline ojson ballot_to_json(const MixnetBallot& b) {
    ojson j = ciphertext_to_json(b.ct);
    j["pok"] = transcript_to_json(kTagDlog, b.pok);
    return j;
}

inline MixnetBallot ballot_from_json(const ojson& j) {
    return MixnetBallot{ciphertext_from_json(j), transcript_from_json(j.at("pok"))};
}

// Draw order (replay contract): encryption scalar, then the proof scalar.
inline std::optional<MixnetBallot> vote(const GroupParams& pp, const GroupElement& pk, uint64_t v,
                                        uint64_t nc, FsMode fs, Rng& rng) {
    if (v < 1 || v > nc || nc > kMaxCandidates) return std::nullopt;
    Scalar r = random_scalar(pp, rng);
    Ciphertext ct = encrypt_exp(pp, pk, v, r);
    Transcript pok = prove_dlog(pp, r, ct.c1, fs, pok_statement(pp, pk, ct), kPokCtx, rng);
    return MixnetBallot{ct, pok};
}

inline bool ballot_valid(const GroupParams& pp, const GroupElement& pk, const MixnetBallot& b,
                         FsMode fs) {
    if (!is_element(pp, b.ct.c1) || !is_element(pp, b.ct.c2)) return false;
    return verify_dlog(pp, b.ct.c1, b.pok, fs, pok_statement(pp, pk, b.ct), kPokCtx);
}

// Cut-and-choose shuffle proof: k independent intermediate shuffles; a
// Fiat-Shamir bit per round selects whether the input-to-intermediate or the
// intermediate-to-output side is opened. Tampering survives only if every
// round's bit lands on the side that still replays, probability 2^-k.
struct MixRound {
    std::vector<Ciphertext> mids;
    std::vector<uint64_t> perm;  // opened side: position j came from perm[j]
    std::vector<Scalar> rand;    // re-encryption randomness of the opened side
};

struct MixProof {
    std::vector<MixRound> rounds;
};

namespace detail {

inline std::vector<uint64_t> random_permutation(size_t n, Rng& rng) {
    std::vector<uint64_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below_u64(i)]);
    return perm;
}

inline bool is_permutation(const std::vector<uint64_t>& perm, size_t n) {
    if (perm.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (uint64_t p : perm) {
        if (p >= n || seen[p]) return false;
        seen[p] = true;
    }
    return true;
}

// Challenge bits over everything: inputs, outputs and every round's
// intermediate list.
inline Bytes challenge_bits(const GroupParams& pp, const GroupElement& pk,
                            const std::vector<Ciphertext>& ins, const std::vector<Ciphertext>& outs,
                            const std::vector<std::vector<Ciphertext>>& mids) {
    Bytes input;
    input.push_back(kTagShuffle);
    append_field(input, kMixCtx);
    for (const auto& x : {pp.p, pp.q, pp.g.v, pk.v}) append_field(input, mpz_to_bytes(x));
    auto add_list = [&](const std::vector<Ciphertext>& cts) {
        for (const auto& ct : cts) {
            append_field(input, mpz_to_bytes(ct.c1.v));
            append_field(input, mpz_to_bytes(ct.c2.v));
        }
    };
    add_list(ins);
    add_list(outs);
    for (const auto& round : mids) add_list(round);
    return sha256(input);
}

inline bool round_bit(const Bytes& digest, unsigned round) {
    return (digest[round / 8] >> (round % 8)) & 1;
}

}  // namespace detail

inline std::pair<std::vector<Ciphertext>, MixProof> mix_and_prove(const GroupParams& pp,
                                                                  const GroupElement& pk,
                                                                  const std::vector<Ciphertext>& ins,
                                                                  unsigned k, Rng& rng) {
    if (ins.empty()) throw std::invalid_argument("nothing to mix");
    if (k < 1 || k > kMaxRounds) throw std::invalid_argument("bad round count");
    size_t n = ins.size();

    std::vector<uint64_t> pi = detail::random_permutation(n, rng);
    std::vector<Scalar> s;
    std::vector<Ciphertext> outs(n);
    for (size_t j = 0; j < n; ++j) {
        s.push_back(random_scalar(pp, rng));
        outs[j] = reencrypt(pp, pk, ins[pi[j]], s[j]);
    }

    std::vector<std::vector<uint64_t>> sigma(k);
    std::vector<std::vector<Scalar>> t(k);
    std::vector<std::vector<Ciphertext>> mids(k);
    for (unsigned r = 0; r < k; ++r) {
        sigma[r] = detail::random_permutation(n, rng);
        mids[r].resize(n);
        for (size_t i = 0; i < n; ++i) {
            t[r].push_back(random_scalar(pp, rng));
            mids[r][i] = reencrypt(pp, pk, ins[sigma[r][i]], t[r][i]);
        }
    }

    Bytes bits = detail::challenge_bits(pp, pk, ins, outs, mids);
    MixProof proof;
    for (unsigned r = 0; r < k; ++r) {
        MixRound round;
        round.mids = mids[r];
        if (!detail::round_bit(bits, r)) {
            round.perm = sigma[r];
            round.rand = t[r];
        } else {
            std::vector<uint64_t> inv_sigma(n);
            for (size_t i = 0; i < n; ++i) inv_sigma[sigma[r][i]] = i;
            round.perm.resize(n);
            round.rand.resize(n);
            for (size_t j = 0; j < n; ++j) {
                uint64_t from = inv_sigma[pi[j]];
                round.perm[j] = from;
                round.rand[j] = scalar_sub(pp, s[j], t[r][from]);
            }
        }
        proof.rounds.push_back(std::move(round));
    }
    return {outs, proof};
}

inline bool verify_mix(const GroupParams& pp, const GroupElement& pk,
                       const std::vector<Ciphertext>& ins, const std::vector<Ciphertext>& outs,
                       const MixProof& proof) {
    try {
        size_t n = ins.size();
        if (n == 0 || outs.size() != n) return false;
        if (proof.rounds.empty() || proof.rounds.size() > kMaxRounds) return false;
        for (const auto& ct : outs)
            if (!is_element(pp, ct.c1) || !is_element(pp, ct.c2)) return false;
        std::vector<std::vector<Ciphertext>> mids;
        for (const auto& round : proof.rounds) {
            if (round.mids.size() != n) return false;
            mids.push_back(round.mids);
        }
        Bytes bits = detail::challenge_bits(pp, pk, ins, outs, mids);
        for (unsigned r = 0; r < proof.rounds.size(); ++r) {
            const MixRound& round = proof.rounds[r];
            if (!detail::is_permutation(round.perm, n) || round.rand.size() != n) return false;
            const std::vector<Ciphertext>& from = detail::round_bit(bits, r) ? round.mids : ins;
            const std::vector<Ciphertext>& to = detail::round_bit(bits, r) ? outs : round.mids;
            for (size_t j = 0; j < n; ++j) {
                if (to[j] != reencrypt(pp, pk, from[round.perm[j]], round.rand[j])) return false;
            }
        }
        return true;
    } catch (...) {
        return false;
    }
}

inline ojson mix_proof_to_json(const MixProof& proof) {
    ojson rounds = ojson::array();
    for (const auto& r : proof.rounds) {
        ojson jr;
        ojson mids = ojson::array(), perm = ojson::array(), rand = ojson::array();
        for (const auto& ct : r.mids) mids.push_back(ciphertext_to_json(ct));
        for (uint64_t p : r.perm) perm.push_back(p);
        for (const auto& s : r.rand) rand.push_back(to_hex(s.v));
        jr["mids"] = mids;
        jr["perm"] = perm;
        jr["rand"] = rand;
        rounds.push_back(jr);
    }
    return ojson{{"rounds", rounds}};
}

inline MixProof mix_proof_from_json(const ojson& j) {
    MixProof proof;
    for (const auto& jr : j.at("rounds")) {
        MixRound r;
        for (const auto& ct : jr.at("mids")) r.mids.push_back(ciphertext_from_json(ct));
        for (const auto& p : jr.at("perm")) r.perm.push_back(p.get<uint64_t>());
        for (const auto& s : jr.at("rand")) r.rand.push_back(Scalar{mpz_from_hex(s.get<std::string>())});
        proof.rounds.push_back(std::move(r));
    }
    return proof;
}

struct PublicKey {
    GroupParams params;
    GroupElement pk;
    Transcript key_pok;
    FsMode fs;
};

inline ojson pk_to_json(const PublicKey& k, unsigned rounds) {
    ojson j = params_to_json(k.params);
    j["scheme"] = "helios-mixnet";
    j["fs"] = fs_name(k.fs);
    j["rounds"] = rounds;
    j["pk"] = to_hex(k.pk.v);
    j["pok"] = transcript_to_json(kTagDlog, k.key_pok);
    return j;
}

inline PublicKey pk_from_json(const ojson& j) {
    auto fs = fs_from_name(j.at("fs").get<std::string>());
    if (!fs) throw std::invalid_argument("bad fs tag");
    return PublicKey{params_from_json(j), GroupElement{mpz_from_hex(j.at("pk").get<std::string>())},
                     transcript_from_json(j.at("pok")), *fs};
}

inline Statement output_statement(const GroupParams& pp, const EqDlog& claim, uint64_t index) {
    Statement s = eq_statement(pp, claim);
    s.fields.push_back(mpz_class(index));
    return s;
}

namespace detail {
inline void accepted_set(const PublicKey& key, const BulletinBoard& bb,
                         std::vector<size_t>& accepted, std::vector<Ciphertext>& ins) {
    accepted.clear();
    ins.clear();
    for (size_t i = 0; i < bb.entries.size(); ++i) {
        try {
            MixnetBallot b = ballot_from_json(ojson::parse(bb.entries[i]));
            if (!ballot_valid(key.params, key.pk, b, key.fs)) continue;
            accepted.push_back(i);
            ins.push_back(b.ct);
        } catch (...) {
            continue;
        }
    }
}
}  // namespace detail

// Deterministic audit: key proof, ballot proofs, shuffle proof, per-output
// decryption proofs, and a recount of the claimed plaintext elements against
// the outcome and the ill-formed list.
inline CheckReport verify_report(const PublicKey& key, const BulletinBoard& bb, uint64_t nc,
                                 const Outcome& outcome, const std::string& proof) {
    CheckReport rep;
    const GroupParams& pp = key.params;
    try {
        rep.checks.emplace_back("key-pok",
                                is_element(pp, key.pk) &&
                                    verify_dlog(pp, key.pk, key.key_pok, key.fs,
                                                dlog_statement(pp, key.pk), kSetupCtx));
        if (nc < 1 || nc > kMaxCandidates || outcome.counts.size() != nc) {
            rep.checks.emplace_back("outcome-arity", false);
            return rep;
        }
        rep.checks.emplace_back("outcome-arity", true);

        ojson pj = ojson::parse(proof);
        std::vector<size_t> claimed_accepted;
        for (const auto& i : pj.at("accepted")) claimed_accepted.push_back(i.get<size_t>());
        std::vector<size_t> accepted;
        std::vector<Ciphertext> ins;
        detail::accepted_set(key, bb, accepted, ins);
        rep.checks.emplace_back("accepted-set", accepted == claimed_accepted);
        if (accepted != claimed_accepted) return rep;

        std::vector<Ciphertext> outs;
        for (const auto& ct : pj.at("outs")) outs.push_back(ciphertext_from_json(ct));
        MixProof mp = mix_proof_from_json(pj.at("mix"));
        bool mix_ok = ins.empty() ? (outs.empty() && mp.rounds.empty())
                                  : verify_mix(pp, key.pk, ins, outs, mp);
        rep.checks.emplace_back("shuffle-proof", mix_ok);
        if (!mix_ok) return rep;

        const ojson& decs = pj.at("decs");
        if (decs.size() != outs.size()) {
            rep.checks.emplace_back("decryption-proof-arity", false);
            return rep;
        }
        rep.checks.emplace_back("decryption-proof-arity", true);

        Outcome recount = Outcome::zeros(nc);
        std::vector<size_t> ill;
        bool dec_ok = true;
        for (size_t j = 0; j < outs.size(); ++j) {
            GroupElement m{mpz_from_hex(decs[j].at("m").get<std::string>())};
            Transcript tr = transcript_from_json(decs[j].at("proof"));
            EqDlog claim = decryption_claim(pp, key.pk, outs[j], m);
            if (!verify_eq(pp, claim, tr, key.fs, output_statement(pp, claim, j), kDecCtx))
                dec_ok = false;
            auto v = dlog_small(pp, m, nc);
            if (v && *v >= 1)
                recount.counts[*v - 1] += 1;
            else
                ill.push_back(j);
        }
        rep.checks.emplace_back("decryption-proofs", dec_ok);

        std::vector<size_t> claimed_ill;
        for (const auto& i : pj.at("illformed")) claimed_ill.push_back(i.get<size_t>());
        rep.checks.emplace_back("recount", recount == outcome && claimed_ill == ill);
    } catch (...) {
        rep.checks.emplace_back("parse", false);
    }
    return rep;
}

// Tally: filter by proof, mix, decrypt each mix output in mixed order.
// Out-of-range plaintexts are reported alongside the outcome as ill-formed
// and excluded from the counts; the input-to-output correspondence is never
// published.
class MixnetScheme final : public ElectionScheme {
public:
    MixnetScheme(FsMode fs, unsigned rounds, Level level)
        : fs_(fs), rounds_(rounds), level_(level) {}

    std::string name() const override { return "helios-mixnet"; }
    FsMode fs() const { return fs_; }
    unsigned rounds() const { return rounds_; }

    SetupResult setup(Rng& rng) const override {
        GroupParams pp = gen_params(level_);
        KeyPair kp = keygen(pp, rng);
        Transcript pok =
            prove_dlog(pp, kp.sk, kp.pk, fs_, dlog_statement(pp, kp.pk), kSetupCtx, rng);
        PublicKey pub{pp, kp.pk, pok, fs_};
        ojson pkj = pk_to_json(pub, rounds_);
        ojson skj = pkj;
        skj["sk"] = to_hex(kp.sk.v);
        uint64_t mc = pp.q - 1 > 65536 ? 65536 : static_cast<uint64_t>(mpz_class(pp.q - 1).get_ui());
        return SetupResult{pkj.dump(), skj.dump(), kMaxBallots, mc};
    }

    std::optional<Ballot> vote(const std::string& pk, uint64_t v, uint64_t nc,
                               Rng& rng) const override {
        try {
            PublicKey key = pk_from_json(ojson::parse(pk));
            auto b = mixnet::vote(key.params, key.pk, v, nc, fs_, rng);
            if (!b) return std::nullopt;
            return ballot_to_json(*b).dump();
        } catch (...) {
            return std::nullopt;
        }
    }

    TallyResult tally(const std::string& sk, const BulletinBoard& bb, uint64_t nc,
                      Rng& rng) const override {
        ojson j = ojson::parse(sk);
        PublicKey key = pk_from_json(j);
        Scalar sks{mpz_from_hex(j.at("sk").get<std::string>())};
        const GroupParams& pp = key.params;

        std::vector<size_t> accepted;
        std::vector<Ciphertext> ins;
        detail::accepted_set(key, bb, accepted, ins);

        ojson proof;
        ojson acc = ojson::array();
        for (size_t i : accepted) acc.push_back(i);
        proof["accepted"] = acc;

        std::vector<Ciphertext> outs;
        MixProof mp;
        if (!ins.empty()) std::tie(outs, mp) = mix_and_prove(pp, key.pk, ins, rounds_, rng);
        ojson outs_json = ojson::array();
        for (const auto& ct : outs) outs_json.push_back(ciphertext_to_json(ct));
        proof["outs"] = outs_json;
        proof["mix"] = mix_proof_to_json(mp);

        Outcome outcome = Outcome::zeros(nc);
        ojson decs = ojson::array(), illformed = ojson::array();
        for (size_t jdx = 0; jdx < outs.size(); ++jdx) {
            GroupElement m = decrypt_element(pp, sks, outs[jdx]);
            EqDlog claim = decryption_claim(pp, key.pk, outs[jdx], m);
            Transcript tr =
                prove_eq(pp, claim, sks, fs_, output_statement(pp, claim, jdx), kDecCtx, rng);
            ojson d;
            d["m"] = to_hex(m.v);
            d["proof"] = transcript_to_json(kTagEqDlog, tr);
            decs.push_back(d);
            auto v = dlog_small(pp, m, nc);
            if (v && *v >= 1)
                outcome.counts[*v - 1] += 1;
            else
                illformed.push_back(jdx);
        }
        proof["decs"] = decs;
        proof["illformed"] = illformed;
        return TallyResult{outcome, proof.dump()};
    }

    bool verify(const std::string& pk, const BulletinBoard& bb, uint64_t nc,
                const Outcome& outcome, const std::string& proof) const override {
        try {
            PublicKey key = pk_from_json(ojson::parse(pk));
            key.fs = fs_;  // the audited mode is the verifier's choice
            return verify_report(key, bb, nc, outcome, proof).ok();
        } catch (...) {
            return false;
        }
    }

private:
    FsMode fs_;
    unsigned rounds_;
    Level level_;
};

inline std::unique_ptr<ElectionScheme> make_scheme(FsMode fs, unsigned rounds, Level level) {
    return std::make_unique<MixnetScheme>(fs, rounds, level);
}

}  // namespace verivote::mixnet
