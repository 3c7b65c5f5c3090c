#pragma once

#include <algorithm>

#include "asym.hpp"

namespace verivote {

// Ballots travel as their canonical serialized form; equality, board
// deduplication and witness auditing are all byte equality on this form.
using Ballot = std::string;

// Per-candidate counts, index v-1 for candidate v. Counts are big integers:
// honest tallies stay below the board size, but the soundness game must be
// able to represent the absurd counts a forged proof vouches for.
struct Outcome {
    std::vector<mpz_class> counts;

    bool operator==(const Outcome& o) const { return counts == o.counts; }
    bool operator!=(const Outcome& o) const { return counts != o.counts; }

    static Outcome zeros(uint64_t nc) {
        Outcome v;
        v.counts.assign(nc, mpz_class(0));
        return v;
    }
    mpz_class total() const {
        mpz_class t = 0;
        for (const auto& c : counts) t += c;
        return t;
    }
};

inline ojson outcome_to_json(const Outcome& o) {
    ojson a = ojson::array();
    for (const auto& c : o.counts) a.push_back(to_dec(c));
    return a;
}

inline Outcome outcome_from_json(const ojson& j) {
    Outcome o;
    for (const auto& c : j) o.counts.push_back(mpz_from_dec(c.get<std::string>()));
    return o;
}

// Insertion-ordered, duplicate-free collection of ballots.
struct BulletinBoard {
    std::vector<Ballot> entries;

    bool contains(const Ballot& b) const {
        return std::find(entries.begin(), entries.end(), b) != entries.end();
    }
    // False when the ballot is already present (byte-identical).
    bool append(const Ballot& b) {
        if (contains(b)) return false;
        entries.push_back(b);
        return true;
    }
    size_t size() const { return entries.size(); }
};

// Challenger bookkeeping for the ballot-secrecy game: (ballot, v0, v1) per
// oracle call.
struct LedgerEntry {
    Ballot ballot;
    uint64_t v0;
    uint64_t v1;
};
using VoteLedger = std::vector<LedgerEntry>;

// Board is balanced when, for every candidate, as many board ballots carry it
// on the left of a ledger entry as on the right.
inline bool balanced(const BulletinBoard& bb, uint64_t nc, const VoteLedger& ledger) {
    for (uint64_t v = 1; v <= nc; ++v) {
        size_t left = 0, right = 0;
        for (const auto& b : bb.entries) {
            bool l = false, r = false;
            for (const auto& e : ledger) {
                if (e.ballot != b) continue;
                if (e.v0 == v) l = true;
                if (e.v1 == v) r = true;
            }
            left += l;
            right += r;
        }
        if (left != right) return false;
    }
    return true;
}

struct SetupResult {
    std::string pk;  // public bundle: key material plus public parameters
    std::string sk;  // tallier bundle
    uint64_t mb;     // maximum number of ballots
    uint64_t mc;     // maximum number of candidates
};

// Itemized audit outcome: one named check per verification obligation.
struct CheckReport {
    std::vector<std::pair<std::string, bool>> checks;
    bool ok() const {
        for (const auto& [name, pass] : checks)
            if (!pass) return false;
        return !checks.empty();
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& [name, pass] : checks)
            if (!pass) out.push_back(name);
        return out;
    }
};

struct TallyResult {
    Outcome outcome;
    std::string proof;
};

constexpr uint64_t kMaxBallots = uint64_t(1) << 20;

// The four-algorithm interface. Vote draws all randomness from the supplied
// stream, so replaying a recorded tape reproduces a ballot bit-exactly;
// verify is deterministic and never throws.
class ElectionScheme {
public:
    virtual ~ElectionScheme() = default;
    virtual std::string name() const = 0;
    virtual SetupResult setup(Rng& rng) const = 0;
    virtual std::optional<Ballot> vote(const std::string& pk, uint64_t v, uint64_t nc,
                                       Rng& rng) const = 0;
    virtual TallyResult tally(const std::string& sk, const BulletinBoard& bb, uint64_t nc,
                              Rng& rng) const = 0;
    virtual bool verify(const std::string& pk, const BulletinBoard& bb, uint64_t nc,
                        const Outcome& outcome, const std::string& proof) const = 0;
};

// A claimed (vote, coins) opening of a board ballot.
struct Witness {
    Ballot ballot;
    uint64_t v;
    std::vector<mpz_class> coins;
};

// The correct-outcome function, computable by witness replay: a board ballot
// counts for candidate v exactly when a disclosed (v, coins) reproduces it.
// nullopt flags a lying witness (claimed opening does not replay), which the
// games treat as an adversary loss. Unwitnessed ballots contribute nothing.
inline std::optional<Outcome> correct_outcome(const ElectionScheme& scheme, const std::string& pk,
                                              uint64_t nc, const BulletinBoard& bb,
                                              const std::vector<Witness>& witnesses) {
    Outcome out = Outcome::zeros(nc);
    for (const auto& b : bb.entries) {
        const Witness* w = nullptr;
        for (const auto& cand : witnesses) {
            if (cand.ballot == b) {
                w = &cand;
                break;
            }
        }
        if (!w) continue;
        Rng replay = Rng::replay(w->coins);
        auto rebuilt = scheme.vote(pk, w->v, nc, replay);
        if (!rebuilt || *rebuilt != b) return std::nullopt;
        if (w->v >= 1 && w->v <= nc) out.counts[w->v - 1] += 1;
    }
    return out;
}

struct ElectionRun {
    SetupResult setup;
    BulletinBoard bb;
    Outcome outcome;
    std::string proof;
    bool verified;
};

// Full honest run: setup, one ballot per vote, tally, verify.
inline ElectionRun run_election(const ElectionScheme& scheme, const std::vector<uint64_t>& votes,
                                uint64_t nc, Rng& rng) {
    ElectionRun run;
    Rng rs = rng.split("setup");
    run.setup = scheme.setup(rs);
    if (votes.size() > run.setup.mb || nc > run.setup.mc)
        throw std::invalid_argument("election size out of range");
    for (size_t i = 0; i < votes.size(); ++i) {
        Rng rv = rng.split("vote" + std::to_string(i));
        auto b = scheme.vote(run.setup.pk, votes[i], nc, rv);
        if (!b) throw std::runtime_error("honest vote rejected");
        run.bb.append(*b);
    }
    Rng rt = rng.split("tally");
    TallyResult t = scheme.tally(run.setup.sk, run.bb, nc, rt);
    run.outcome = t.outcome;
    run.proof = t.proof;
    run.verified = scheme.verify(run.setup.pk, run.bb, nc, run.outcome, run.proof);
    return run;
}

// Enc2Vote: ballots are bare encryptions of the candidate index, tallying
// decrypts each board entry and counts the in-range plaintexts, the tallying
// proof is a constant symbol and verification always accepts.
class Enc2Vote final : public ElectionScheme {
public:
    Enc2Vote(std::shared_ptr<AsymmetricScheme> enc, Level level)
        : enc_(std::move(enc)), level_(level) {}

    std::string name() const override { return "enc2vote[" + enc_->name() + "]"; }

    SetupResult setup(Rng& rng) const override {
        AsymmetricKeys keys = enc_->generate(level_, rng);
        return SetupResult{keys.pk_bundle, keys.sk_bundle, kMaxBallots, keys.message_bound};
    }

    std::optional<Ballot> vote(const std::string& pk, uint64_t v, uint64_t nc,
                               Rng& rng) const override {
        try {
            auto key = detail::parse_asym_pk(pk);
            if (v < 1 || v > nc || nc > key.mbound) return std::nullopt;
            return enc_->encrypt(pk, v, rng);
        } catch (...) {
            return std::nullopt;
        }
    }

    TallyResult tally(const std::string& sk, const BulletinBoard& bb, uint64_t nc,
                      Rng&) const override {
        Outcome out = Outcome::zeros(nc);
        for (const auto& b : bb.entries) {
            auto m = enc_->decrypt(sk, b);
            if (m && *m >= 1 && *m <= nc) out.counts[*m - 1] += 1;
        }
        return TallyResult{out, kEpsilon};
    }

    bool verify(const std::string&, const BulletinBoard&, uint64_t, const Outcome&,
                const std::string&) const override {
        return true;
    }

private:
    static constexpr const char* kEpsilon = "epsilon";
    std::shared_ptr<AsymmetricScheme> enc_;
    Level level_;
};

inline std::unique_ptr<ElectionScheme> make_enc2vote(std::shared_ptr<AsymmetricScheme> enc,
                                                     Level level) {
    return std::make_unique<Enc2Vote>(std::move(enc), level);
}

}  // namespace verivote
