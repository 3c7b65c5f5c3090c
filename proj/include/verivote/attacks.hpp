#pragma once

#include "games.hpp"
#include "helios.hpp"
#include "mixnet.hpp"

namespace verivote::attacks {

// ---- Ballot malleation (permutation attack on ballot secrecy) ------------

// Permutes the (ciphertext, proof) pairs of a ballot, keeping the final
// combination proof, which survives because the homomorphic combination is
// permutation-invariant. Under weak Fiat-Shamir every proof still verifies
// and a ballot for v becomes a ballot for the permuted candidate.
inline helios::HeliosBallot maul_ballot(const helios::HeliosBallot& b,
                                        const std::vector<size_t>& perm) {
    if (perm.size() != b.cts.size()) throw std::invalid_argument("bad permutation arity");
    helios::HeliosBallot out;
    out.nc = b.nc;
    out.cts.resize(b.cts.size());
    out.proofs.resize(b.proofs.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        out.cts[i] = b.cts[perm[i]];
        out.proofs[i] = b.proofs[perm[i]];
    }
    out.proofs.back() = b.proofs.back();
    return out;
}

// Secrecy adversary from the permutation attack: query the oracle once with
// (1, 2), maul the returned ballot with the swap of candidates 1 and 2, and
// submit only the maul. The board is balanced because the oracle's ballot is
// not on it; the outcome position of the mauled vote reveals the coin.
// The stealth variant keeps both oracle ballots on the board (so no voter
// finds their ballot missing) and reads the coin off the outcome pattern.
inline games::SecrecyFactory make_secrecy_permutation_factory(uint64_t nc, bool stealth) {
    if (nc < 3) throw std::invalid_argument("permutation attack needs nc >= 3");
    return [nc, stealth](Rng&) -> games::SecrecyAdversary {
        games::SecrecyAdversary adv;
        adv.choose_nc = [nc](const std::string&) { return nc; };
        adv.build_board = [nc, stealth](games::VoteOracle& oracle) {
            BulletinBoard bb;
            auto b1 = oracle.query(1, 2);
            if (!b1) return bb;
            helios::HeliosBallot parsed = helios::ballot_from_json(ojson::parse(*b1));
            std::vector<size_t> chi(nc - 1);
            for (size_t i = 0; i < chi.size(); ++i) chi[i] = i;
            std::swap(chi[0], chi[1]);
            Ballot mauled = helios::ballot_bytes(maul_ballot(parsed, chi));
            bb.append(mauled);
            if (stealth) {
                auto b2 = oracle.query(2, 1);
                bb.append(*b1);
                if (b2) bb.append(*b2);
            }
            return bb;
        };
        adv.guess = [nc, stealth](const Outcome& o, const std::string&) {
            if (o.counts.size() != nc) return 1;
            if (!stealth) return o.counts[1] == 1 ? 0 : 1;  // chi(v0) = chi(1) = 2
            // beta = 0 leaves votes {chi(1)=2, 1, 2} on the board
            return (o.counts[0] == 1 && o.counts[1] == 2) ? 0 : 1;
        };
        return adv;
    };
}

// ---- Weak-Fiat-Shamir decryption-proof forgeries ---------------------------

// Square root mod an odd prime (Tonelli-Shanks); nullopt for non-residues.
inline std::optional<mpz_class> sqrt_mod(const mpz_class& a_in, const mpz_class& p) {
    mpz_class a = a_in % p;
    if (sgn(a) < 0) a += p;
    if (a == 0) return mpz_class(0);
    auto powm = [&p](const mpz_class& b, const mpz_class& e) {
        mpz_class r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    if (powm(a, (p - 1) / 2) != 1) return std::nullopt;
    if (p % 4 == 3) return powm(a, (p + 1) / 4);
    mpz_class q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    mpz_class z = 2;
    while (powm(z, (p - 1) / 2) == 1) ++z;
    mpz_class m(s), c = powm(z, q), t = powm(a, q), r = powm(a, (q + 1) / 2);
    while (t != 1) {
        mpz_class t2 = t;
        unsigned i = 0;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        mpz_class b = c;
        for (mpz_class j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

struct ForgedDecryption {
    Ciphertext ct;            // ciphertext with c2 chosen after the hash
    GroupElement claimed;     // g^target
    Transcript proof;
};

// Forged proof that a ciphertext of the forger's own making decrypts to
// g^target, valid under weak Fiat-Shamir only. Commitments t1 = g^w1 and
// t2 = c1^w2 are fixed first; since the weak transform leaves the statement
// out of the hash, c2 := g^(target + r(w1-w2)/c) * pk^r can be chosen after
// the challenge, and both Chaum-Pedersen equations then hold with
// z = w1 + c*sk. Requires prime q and knowledge of sk and r.
inline ForgedDecryption forge_decryption_proof(const GroupParams& pp, const Scalar& sk,
                                               const Scalar& r, const mpz_class& target,
                                               const Bytes& context, Rng& rng) {
    if (!pp.prime_order()) throw std::invalid_argument("forgery needs prime q");
    GroupElement pk = pow(pp, pp.g, sk);
    GroupElement c1 = pow(pp, pp.g, r);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Scalar w1 = random_scalar(pp, rng);
        Scalar w2 = random_scalar(pp, rng);
        GroupElement t1 = pow(pp, pp.g, w1);
        GroupElement t2 = pow(pp, c1, w2);
        Scalar c = fs_challenge(pp, FsMode::Weak, Statement{kTagEqDlog, {}}, {t1, t2}, context);
        auto cinv = scalar_inv(pp, c);
        if (!cinv) continue;
        Scalar z = scalar_add(pp, w1, scalar_mul(pp, c, sk));
        Scalar shift = scalar_mul(pp, r, scalar_mul(pp, scalar_sub(pp, w1, w2), *cinv));
        mpz_class exponent = scalar_add(pp, scalar_from(pp, target), shift).v;
        GroupElement c2 = mul(pp, pow(pp, pp.g, exponent), pow(pp, pk, r));
        return ForgedDecryption{Ciphertext{c1, c2}, pow(pp, pp.g, target),
                                Transcript{{t1, t2}, c, {}, {z}}};
    }
    throw std::runtime_error("forgery retries exhausted");
}

struct ForgedClaim {
    GroupElement claimed;  // some element other than the true plaintext
    Transcript proof;
};

// Same weak-Fiat-Shamir gap, for a ciphertext the forger cannot modify (a
// mix output pinned by the shuffle proof). The claimed plaintext element is
// then hash-determined rather than free: M' = true_element * c1^(-(w1-w2)/c).
// Knowledge of sk alone suffices.
inline ForgedClaim forge_decryption_claim(const GroupParams& pp, const Scalar& sk,
                                          const Ciphertext& ct, const Bytes& context, Rng& rng) {
    if (!pp.prime_order()) throw std::invalid_argument("forgery needs prime q");
    GroupElement truth = decrypt_element(pp, sk, ct);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Scalar w1 = random_scalar(pp, rng);
        Scalar w2 = random_scalar(pp, rng);
        if (w1 == w2) continue;
        GroupElement t1 = pow(pp, pp.g, w1);
        GroupElement t2 = pow(pp, ct.c1, w2);
        Scalar c = fs_challenge(pp, FsMode::Weak, Statement{kTagEqDlog, {}}, {t1, t2}, context);
        auto cinv = scalar_inv(pp, c);
        if (!cinv) continue;
        Scalar z = scalar_add(pp, w1, scalar_mul(pp, c, sk));
        Scalar shift = scalar_mul(pp, scalar_sub(pp, w1, w2), *cinv);
        GroupElement claimed = mul(pp, truth, inv(pp, pow(pp, ct.c1, shift.v)));
        return ForgedClaim{claimed, Transcript{{t1, t2}, c, {}, {z}}};
    }
    throw std::runtime_error("forgery retries exhausted");
}

// ---- Weak-Fiat-Shamir ballot forgery (verified outcome for m > 1) --------

struct ForgedHeliosBallot {
    helios::HeliosBallot ballot;  // nc = 2, single ciphertext encrypting m
    mpz_class m;                  // plaintext exponent, outside {0, 1}
    Scalar r;                     // encryption randomness
};

// Disjunctive-proof forgery: fix the four commitments t1_i = g^(w1_i),
// t2_i = (pk/c1)^(w1_i) * c1^(w2_i), read off the weak challenge c, then
// back-solve the branch-challenge split c_0 + c_1 = c with
// c_i = r(w1_i - w2_i)/(m - i), which is quadratic in the plaintext
// exponent m:  c m^2 - (c + rD0 + rD1) m + rD0 = 0.  A root gives a ballot
// that encrypts m (set c2 = g^m pk^r after the hash) yet passes both
// zero-or-one proofs. With one ciphertext the individual proof and the
// combination proof share statement-free hashes, so a single forged
// transcript fills both slots. Needs only the encryption randomness r.
inline ForgedHeliosBallot forge_helios_ballot(const GroupParams& pp, const GroupElement& pk,
                                              Rng& rng) {
    if (!pp.prime_order()) throw std::invalid_argument("forgery needs prime q");
    for (int attempt = 0; attempt < 256; ++attempt) {
        Scalar r = random_scalar_nonzero(pp, rng);
        GroupElement c1 = pow(pp, pp.g, r);
        GroupElement base = div(pp, pk, c1);  // pk * c1^{-1}
        Scalar w1[2], w2[2];
        GroupElement t[4];
        for (unsigned i = 0; i < 2; ++i) {
            w1[i] = random_scalar(pp, rng);
            w2[i] = random_scalar(pp, rng);
            t[2 * i] = pow(pp, pp.g, w1[i]);
            t[2 * i + 1] = mul(pp, pow(pp, base, w1[i]), pow(pp, c1, w2[i]));
        }
        Scalar c = fs_challenge(pp, FsMode::Weak, Statement{kTagOrEncryption, {}},
                                {t[0], t[1], t[2], t[3]}, helios::kBallotCtx);
        if (c.v == 0) continue;
        Scalar d0 = scalar_mul(pp, r, scalar_sub(pp, w1[0], w2[0]));
        Scalar d1 = scalar_mul(pp, r, scalar_sub(pp, w1[1], w2[1]));
        // c m^2 - (c + d0 + d1) m + d0 = 0
        Scalar b = scalar_neg(pp, scalar_add(pp, c, scalar_add(pp, d0, d1)));
        Scalar disc = scalar_sub(pp, scalar_mul(pp, b, b),
                                 scalar_mul(pp, scalar_from(pp, 4), scalar_mul(pp, c, d0)));
        auto root = sqrt_mod(disc.v, pp.q);
        if (!root) continue;
        auto inv2c = scalar_inv(pp, scalar_mul(pp, scalar_from(pp, 2), c));
        if (!inv2c) continue;
        for (int sign = 0; sign < 2; ++sign) {
            Scalar s = sign ? scalar_neg(pp, Scalar{*root}) : Scalar{*root};
            Scalar m = scalar_mul(pp, scalar_add(pp, scalar_neg(pp, b), s), *inv2c);
            if (m.v == 0 || m.v == 1) continue;
            auto minv = scalar_inv(pp, m);
            auto m1inv = scalar_inv(pp, scalar_sub(pp, m, scalar_from(pp, 1)));
            if (!minv || !m1inv) continue;
            Scalar c0 = scalar_mul(pp, d0, *minv);
            Scalar c1s = scalar_mul(pp, d1, *m1inv);
            if (scalar_add(pp, c0, c1s) != c) continue;
            Scalar z0 = scalar_add(pp, w1[0], scalar_mul(pp, c0, r));
            Scalar z1 = scalar_add(pp, w1[1], scalar_mul(pp, c1s, r));
            GroupElement c2 = mul(pp, pow(pp, pp.g, m.v), pow(pp, pk, r));
            Transcript sigma{{t[0], t[1], t[2], t[3]}, c, {c0, c1s}, {z0, z1}};
            helios::HeliosBallot ballot;
            ballot.nc = 2;
            ballot.cts.push_back(Ciphertext{c1, c2});
            ballot.proofs.push_back(sigma);
            ballot.proofs.push_back(sigma);
            return ForgedHeliosBallot{ballot, m.v, r};
        }
    }
    throw std::runtime_error("ballot forgery retries exhausted");
}

// Soundness adversary for Helios: submits the forged single-ciphertext
// ballot with its own honestly generated keys and honest decryption proofs,
// and claims the (m, 1-m)-shaped outcome the ballot genuinely tallies to.
// No witnesses are disclosed, so the correct outcome is the zero vector.
inline games::SoundnessAdversary make_helios_soundness_forger(Level level,
                                                              helios::Variant target) {
    return [level, target](Rng& rng) -> games::SoundnessClaim {
        GroupParams pp = gen_params(level);
        KeyPair kp = keygen(pp, rng);
        Transcript key_pok = prove_dlog(pp, kp.sk, kp.pk, target.fs, dlog_statement(pp, kp.pk),
                                        helios::kSetupCtx, rng);
        helios::PublicKey pub{pp, kp.pk, key_pok, target};

        ForgedHeliosBallot forged = forge_helios_ballot(pp, kp.pk, rng);

        games::SoundnessClaim claim;
        claim.pk = helios::pk_to_json(pub).dump();
        claim.nc = 2;
        claim.bb.append(helios::ballot_bytes(forged.ballot));
        claim.outcome.counts = {forged.m, 1 - forged.m};

        const Ciphertext& col = forged.ballot.cts[0];
        GroupElement claimed = pow(pp, pp.g, forged.m);
        EqDlog cl = decryption_claim(pp, kp.pk, col, claimed);
        Transcript dec = prove_eq(pp, cl, kp.sk, target.fs,
                                  helios::decryption_statement(pp, cl, 0), helios::kDecryptCtx, rng);
        ojson proof;
        proof["accepted"] = ojson::array({0});
        proof["cols"] = ojson::array({transcript_to_json(kTagEqDlog, dec)});
        claim.proof = proof.dump();
        return claim;
    };
}

// Soundness adversary for Helios Mixnet: honest board and honest mix, but
// one output's decryption proof is forged to an out-of-range element, so the
// claimed outcome is a strict subdistribution while the disclosed witnesses
// pin the full one.
inline games::SoundnessAdversary make_mixnet_soundness_forger(Level level, FsMode fs,
                                                              unsigned rounds) {
    return [level, fs, rounds](Rng& rng) -> games::SoundnessClaim {
        GroupParams pp = gen_params(level);
        KeyPair kp = keygen(pp, rng);
        Transcript key_pok =
            prove_dlog(pp, kp.sk, kp.pk, fs, dlog_statement(pp, kp.pk), mixnet::kSetupCtx, rng);
        mixnet::PublicKey pub{pp, kp.pk, key_pok, fs};

        const uint64_t nc = 3;
        std::vector<uint64_t> votes{1, 2, 3};
        games::SoundnessClaim claim;
        claim.pk = mixnet::pk_to_json(pub, rounds).dump();
        claim.nc = nc;

        std::vector<Ciphertext> ins;
        for (size_t i = 0; i < votes.size(); ++i) {
            Rng rv = rng.split("ballot" + std::to_string(i));
            rv.start_recording();
            auto b = mixnet::vote(pp, kp.pk, votes[i], nc, fs, rv);
            Ballot bytes = mixnet::ballot_to_json(*b).dump();
            claim.bb.append(bytes);
            claim.witnesses.push_back(Witness{bytes, votes[i], rv.tape()});
            ins.push_back(b->ct);
        }

        Rng mix_rng = rng.split("mix");
        auto [outs, mp] = mixnet::mix_and_prove(pp, kp.pk, ins, rounds, mix_rng);

        Outcome outcome = Outcome::zeros(nc);
        ojson decs = ojson::array(), illformed = ojson::array();
        bool victim_done = false;
        Rng dec_rng = rng.split("dec");
        for (size_t j = 0; j < outs.size(); ++j) {
            GroupElement m = decrypt_element(pp, kp.sk, outs[j]);
            auto v = dlog_small(pp, m, nc);
            if (!victim_done && v && *v == nc) {
                // drop this vote from the claim: forge its decryption proof
                ForgedClaim fc = forge_decryption_claim(pp, kp.sk, outs[j], mixnet::kDecCtx, dec_rng);
                while (dlog_small(pp, fc.claimed, nc).value_or(0) >= 1)
                    fc = forge_decryption_claim(pp, kp.sk, outs[j], mixnet::kDecCtx, dec_rng);
                ojson d;
                d["m"] = to_hex(fc.claimed.v);
                d["proof"] = transcript_to_json(kTagEqDlog, fc.proof);
                decs.push_back(d);
                illformed.push_back(j);
                victim_done = true;
                continue;
            }
            EqDlog cl = decryption_claim(pp, kp.pk, outs[j], m);
            Transcript tr =
                prove_eq(pp, cl, kp.sk, fs, mixnet::output_statement(pp, cl, j), mixnet::kDecCtx,
                         dec_rng);
            ojson d;
            d["m"] = to_hex(m.v);
            d["proof"] = transcript_to_json(kTagEqDlog, tr);
            decs.push_back(d);
            if (v && *v >= 1) outcome.counts[*v - 1] += 1;
        }

        ojson proof;
        ojson acc = ojson::array();
        for (size_t i = 0; i < claim.bb.size(); ++i) acc.push_back(i);
        proof["accepted"] = acc;
        ojson outs_json = ojson::array();
        for (const auto& ct : outs) outs_json.push_back(ciphertext_to_json(ct));
        proof["outs"] = outs_json;
        proof["mix"] = mixnet::mix_proof_to_json(mp);
        proof["decs"] = decs;
        proof["illformed"] = illformed;
        claim.proof = proof.dump();
        claim.outcome = outcome;
        return claim;
    };
}

// ---- Ballot copying vs. weeding (the weeding/soundness tension) -----------

// Two honest ballots for the same vote that share one ciphertext: record the
// coins of the first ballot, then replay a fresh ballot's tape with the
// shared encryption scalar spliced in. Both ballots carry valid proofs and
// valid witnesses, so the correct outcome counts two votes; a weeding tally
// drops the second ballot and counts one. Verification accepts the weeded
// tally, which is exactly the soundness breach.
inline games::SoundnessAdversary make_copy_soundness_adversary(Level level,
                                                               helios::Variant variant) {
    return [level, variant](Rng& rng) -> games::SoundnessClaim {
        GroupParams pp = gen_params(level);
        KeyPair kp = keygen(pp, rng);
        Transcript key_pok = prove_dlog(pp, kp.sk, kp.pk, variant.fs, dlog_statement(pp, kp.pk),
                                        helios::kSetupCtx, rng);
        helios::PublicKey pub{pp, kp.pk, key_pok, variant};

        const uint64_t nc = 2, v = 1;
        Rng r1 = rng.split("b1");
        r1.start_recording();
        auto b1 = helios::vote(pp, kp.pk, v, nc, variant, r1);
        std::vector<mpz_class> tape1 = r1.tape();

        Rng r2 = rng.split("b2");
        r2.start_recording();
        helios::vote(pp, kp.pk, v, nc, variant, r2);
        std::vector<mpz_class> tape2 = r2.tape();
        tape2[0] = tape1[0];  // share the slot-0 encryption scalar
        Rng replay = Rng::replay(tape2);
        auto b2 = helios::vote(pp, kp.pk, v, nc, variant, replay);

        games::SoundnessClaim claim;
        claim.pk = helios::pk_to_json(pub).dump();
        claim.nc = nc;
        Ballot bytes1 = helios::ballot_bytes(*b1);
        Ballot bytes2 = helios::ballot_bytes(*b2);
        claim.bb.append(bytes1);
        claim.bb.append(bytes2);
        claim.witnesses.push_back(Witness{bytes1, v, tape1});
        claim.witnesses.push_back(Witness{bytes2, v, tape2});

        Rng tally_rng = rng.split("tally");
        helios::TallyInternals t = helios::tally(pp, kp, claim.bb, nc, variant, tally_rng);
        claim.outcome = t.outcome;
        claim.proof = helios::tally_proof_to_json(t).dump();
        return claim;
    };
}

// ---- Malleation adversaries (homomorphic shift of a challenge ciphertext) --

// IND-CVA: maul the challenge ballot into an encryption of v_beta + 1 and
// read the shifted count off the outcome. Works against Enc2Vote over plain
// ElGamal; against the proof-carrying variant the mauled ciphertext is
// rejected at decryption and the guess degenerates to chance.
inline games::CvaFactory make_cva_malleation_factory() {
    return [](Rng& adv_rng) -> games::CvaAdversary {
        struct State {
            std::string pk;
            Rng rng;
        };
        auto st = std::make_shared<State>(State{{}, adv_rng});
        games::CvaAdversary adv;
        adv.choose = [st](const std::string& pk) {
            st->pk = pk;
            return std::tuple<uint64_t, uint64_t, uint64_t>{1, 2, 3};
        };
        adv.build_board = [st](const Ballot& challenge) {
            BulletinBoard bb;
            auto key = detail::parse_asym_pk(st->pk);
            ojson cj = ojson::parse(challenge);
            Ciphertext ct = ciphertext_from_json(cj);
            Ciphertext shifted = hom_combine(
                key.params, ct,
                encrypt_exp(key.params, key.pk, 1, random_scalar(key.params, st->rng)));
            ojson out = ciphertext_to_json(shifted);
            if (cj.contains("pok")) out["pok"] = cj["pok"];  // stale proof of the old pair
            bb.append(out.dump());
            return bb;
        };
        adv.guess = [](const Outcome& o) {
            return (o.counts.size() >= 2 && o.counts[1] == 1) ? 0 : 1;
        };
        return adv;
    };
}

// IND-PA0: submit the challenge shifted by an encryption of one as the
// parallel query; its decryption reveals m_beta + 1.
inline games::Pa0Factory make_pa0_malleation_factory() {
    return [](Rng& adv_rng) -> games::Pa0Adversary {
        struct State {
            std::string pk;
            Rng rng;
        };
        auto st = std::make_shared<State>(State{{}, adv_rng});
        games::Pa0Adversary adv;
        adv.choose = [st](const std::string& pk, uint64_t) {
            st->pk = pk;
            return std::pair<uint64_t, uint64_t>{0, 1};
        };
        adv.parallel_query = [st](const std::string& challenge) {
            auto key = detail::parse_asym_pk(st->pk);
            ojson cj = ojson::parse(challenge);
            Ciphertext ct = ciphertext_from_json(cj);
            Ciphertext shifted = hom_combine(
                key.params, ct,
                encrypt_exp(key.params, key.pk, 1, random_scalar(key.params, st->rng)));
            ojson out = ciphertext_to_json(shifted);
            if (cj.contains("pok")) out["pok"] = cj["pok"];
            return std::vector<std::string>{out.dump()};
        };
        adv.guess = [st](const std::vector<std::optional<uint64_t>>& plain) {
            if (plain.size() == 1 && plain[0]) return *plain[0] == 1 ? 0 : 1;
            return st->rng.flip() ? 1 : 0;
        };
        return adv;
    };
}

// ---- Baseline guessers -----------------------------------------------------

inline games::SecrecyFactory make_secrecy_guesser() {
    return [](Rng& adv_rng) -> games::SecrecyAdversary {
        auto rng = std::make_shared<Rng>(adv_rng);
        games::SecrecyAdversary adv;
        adv.choose_nc = [](const std::string&) -> uint64_t { return 2; };
        adv.build_board = [](games::VoteOracle&) { return BulletinBoard{}; };
        adv.guess = [rng](const Outcome&, const std::string&) { return rng->flip() ? 1 : 0; };
        return adv;
    };
}

inline games::CvaFactory make_cva_guesser() {
    return [](Rng& adv_rng) -> games::CvaAdversary {
        auto rng = std::make_shared<Rng>(adv_rng);
        games::CvaAdversary adv;
        adv.choose = [](const std::string&) {
            return std::tuple<uint64_t, uint64_t, uint64_t>{1, 2, 2};
        };
        adv.build_board = [](const Ballot&) { return BulletinBoard{}; };
        adv.guess = [rng](const Outcome&) { return rng->flip() ? 1 : 0; };
        return adv;
    };
}

inline games::Pa0Factory make_pa0_guesser() {
    return [](Rng& adv_rng) -> games::Pa0Adversary {
        auto rng = std::make_shared<Rng>(adv_rng);
        games::Pa0Adversary adv;
        adv.choose = [](const std::string&, uint64_t) { return std::pair<uint64_t, uint64_t>{0, 1}; };
        adv.parallel_query = [](const std::string&) { return std::vector<std::string>{}; };
        adv.guess = [rng](const std::vector<std::optional<uint64_t>>&) {
            return rng->flip() ? 1 : 0;
        };
        return adv;
    };
}

// ---- Attack registry -------------------------------------------------------

// Expected success-rate classes, matched against the measured statistics:
// Chance within [0.45, 0.55], AlmostAlways at least 0.99, Always every
// trial, Never no trial.
enum class RateClass { Chance, AlmostAlways, Always, Never };

inline std::string rate_class_name(RateClass c) {
    switch (c) {
        case RateClass::Chance: return "chance";
        case RateClass::AlmostAlways: return ">=0.99";
        case RateClass::Always: return "1.0";
        case RateClass::Never: return "0.0";
    }
    return "?";
}

inline bool rate_matches(RateClass c, const games::TrialStats& s) {
    switch (c) {
        case RateClass::Chance: return s.rate >= 0.45 && s.rate <= 0.55;
        case RateClass::AlmostAlways: return s.rate >= 0.99;
        case RateClass::Always: return s.trials > 0 && s.wins == s.trials;
        case RateClass::Never: return s.wins == 0;
    }
    return false;
}

struct AttackSpec {
    std::string name;
    std::string game;
    std::string target;
    RateClass expected;
    uint64_t default_trials;
    std::function<games::TrialStats(uint64_t trials, Level level, const Rng& master,
                                    std::vector<games::TrialRecord>* records)>
        run;
};

inline const std::vector<AttackSpec>& attack_registry() {
    using games::TrialRecord;
    using games::TrialStats;
    static const std::vector<AttackSpec> specs = [] {
        constexpr unsigned kMixRounds = 40;
        std::vector<AttackSpec> v;

        auto require_prime = [](Level level) {
            if (level == Level::Toy)
                throw std::invalid_argument("attacks need prime-order params (test or production)");
        };

        auto secrecy = [require_prime](helios::Variant var, bool stealth) {
            return [=](uint64_t n, Level level, const Rng& master,
                       std::vector<TrialRecord>* rec) -> TrialStats {
                require_prime(level);
                auto scheme = helios::make_scheme(var, level);
                auto factory = make_secrecy_permutation_factory(3, stealth);
                return games::run_trials(
                    [&](Rng& rng) { return games::play_ballot_secrecy(*scheme, factory, rng); }, n,
                    master, rec);
            };
        };
        v.push_back({"secrecy-permutation-helios-weak", "ballot-secrecy", "helios/weak",
                     RateClass::AlmostAlways, 500, secrecy(helios::vulnerable(), false)});
        v.push_back({"secrecy-permutation-helios-strong", "ballot-secrecy",
                     "helios/strong+weeding", RateClass::Chance, 2000,
                     secrecy(helios::hardened(), false)});
        v.push_back({"secrecy-permutation-stealth-helios-weak", "ballot-secrecy", "helios/weak",
                     RateClass::AlmostAlways, 500, secrecy(helios::vulnerable(), true)});

        auto helios_forge = [require_prime](helios::Variant var) {
            return [=](uint64_t n, Level level, const Rng& master,
                       std::vector<TrialRecord>* rec) -> TrialStats {
                require_prime(level);
                auto scheme = helios::make_scheme(var, level);
                auto adv = make_helios_soundness_forger(level, var);
                return games::run_trials(
                    [&](Rng& rng) { return games::play_soundness(*scheme, adv, rng); }, n, master,
                    rec);
            };
        };
        v.push_back({"soundness-forgery-helios-weak", "soundness", "helios/weak", RateClass::Always,
                     200, helios_forge(helios::vulnerable())});
        v.push_back({"soundness-forgery-helios-strong", "soundness", "helios/strong+weeding",
                     RateClass::Never, 200, helios_forge(helios::hardened())});

        auto mixnet_forge = [require_prime](FsMode fs) {
            return [=](uint64_t n, Level level, const Rng& master,
                       std::vector<TrialRecord>* rec) -> TrialStats {
                require_prime(level);
                auto scheme = mixnet::make_scheme(fs, kMixRounds, level);
                auto adv = make_mixnet_soundness_forger(level, fs, kMixRounds);
                return games::run_trials(
                    [&](Rng& rng) { return games::play_soundness(*scheme, adv, rng); }, n, master,
                    rec);
            };
        };
        v.push_back({"soundness-forgery-mixnet-weak", "soundness", "helios-mixnet/weak",
                     RateClass::Always, 200, mixnet_forge(FsMode::Weak)});
        v.push_back({"soundness-forgery-mixnet-strong", "soundness", "helios-mixnet/strong",
                     RateClass::Never, 200, mixnet_forge(FsMode::Strong)});

        auto copy_attack = [require_prime](helios::Variant var) {
            return [=](uint64_t n, Level level, const Rng& master,
                       std::vector<TrialRecord>* rec) -> TrialStats {
                require_prime(level);
                auto scheme = helios::make_scheme(var, level);
                auto adv = make_copy_soundness_adversary(level, var);
                return games::run_trials(
                    [&](Rng& rng) { return games::play_soundness(*scheme, adv, rng); }, n, master,
                    rec);
            };
        };
        v.push_back({"soundness-copy-helios-weeded", "soundness", "helios/strong+weeding",
                     RateClass::Always, 100, copy_attack(helios::hardened())});
        v.push_back({"soundness-copy-helios-unweeded", "soundness", "helios/weak",
                     RateClass::Never, 100, copy_attack(helios::vulnerable())});

        auto pa0 = [require_prime](bool nm) {
            return [=](uint64_t n, Level level, const Rng& master,
                       std::vector<TrialRecord>* rec) -> TrialStats {
                require_prime(level);
                auto enc = nm ? make_nm_elgamal() : make_plain_elgamal();
                auto factory = make_pa0_malleation_factory();
                return games::run_trials(
                    [&](Rng& rng) { return games::play_ind_pa0(*enc, level, factory, rng); }, n,
                    master, rec);
            };
        };
        v.push_back({"indpa0-malleation-elgamal-plain", "ind-pa0", "elgamal-plain",
                     RateClass::AlmostAlways, 2000, pa0(false)});
        v.push_back({"indpa0-malleation-elgamal-nm", "ind-pa0", "elgamal-nm", RateClass::Chance,
                     2000, pa0(true)});

        auto cva = [require_prime](bool nm) {
            return [=](uint64_t n, Level level, const Rng& master,
                       std::vector<TrialRecord>* rec) -> TrialStats {
                require_prime(level);
                auto scheme = make_enc2vote(nm ? make_nm_elgamal() : make_plain_elgamal(), level);
                auto factory = make_cva_malleation_factory();
                return games::run_trials(
                    [&](Rng& rng) { return games::play_ind_cva(*scheme, factory, rng); }, n, master,
                    rec);
            };
        };
        v.push_back({"indcva-malleation-enc2vote-plain", "ind-cva", "enc2vote/elgamal-plain",
                     RateClass::AlmostAlways, 2000, cva(false)});
        v.push_back({"indcva-malleation-enc2vote-nm", "ind-cva", "enc2vote/elgamal-nm",
                     RateClass::Chance, 2000, cva(true)});

        auto iv = [require_prime](const std::string& which) {
            return [=](uint64_t n, Level level, const Rng& master,
                       std::vector<TrialRecord>* rec) -> TrialStats {
                require_prime(level);
                std::unique_ptr<ElectionScheme> scheme;
                if (which == "helios")
                    scheme = helios::make_scheme(helios::hardened(), level);
                else if (which == "helios-mixnet")
                    scheme = mixnet::make_scheme(FsMode::Strong, kMixRounds, level);
                else
                    scheme = make_enc2vote(make_nm_elgamal(), level);
                games::IvAdversary sampler = [&scheme](Rng& rng) {
                    Rng setup = rng.split("setup");
                    SetupResult su = scheme->setup(setup);
                    uint64_t v = 1 + rng.below_u64(3);
                    uint64_t v2 = 1 + rng.below_u64(3);
                    while (v2 == v) v2 = 1 + rng.below_u64(3);
                    return games::IvChoice{su.pk, 3, v, v2};
                };
                return games::run_trials(
                    [&](Rng& rng) {
                        return games::play_individual_verifiability(*scheme, sampler, rng);
                    },
                    n, master, rec);
            };
        };
        v.push_back({"iv-collision-enc2vote", "individual-verifiability", "enc2vote/elgamal-nm",
                     RateClass::Never, 10000, iv("enc2vote")});
        v.push_back({"iv-collision-helios", "individual-verifiability", "helios/strong+weeding",
                     RateClass::Never, 10000, iv("helios")});
        v.push_back({"iv-collision-helios-mixnet", "individual-verifiability",
                     "helios-mixnet/strong", RateClass::Never, 10000, iv("helios-mixnet")});
        return v;
    }();
    return specs;
}

inline const AttackSpec* find_attack(const std::string& name) {
    for (const auto& spec : attack_registry())
        if (spec.name == name) return &spec;
    return nullptr;
}

}  // namespace verivote::attacks
