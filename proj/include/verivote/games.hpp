#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "scheme.hpp"

namespace verivote::games {

// One game execution. The detail object records every conjunct of the game's
// return line, so the won flag is reproducible as their conjunction.
struct GameResult {
    bool won = false;
    ojson detail;

    static GameResult from_conjuncts(std::initializer_list<std::pair<const char*, bool>> cs) {
        GameResult r;
        r.won = true;
        r.detail = ojson::object();
        for (const auto& [name, ok] : cs) {
            r.detail[name] = ok;
            r.won = r.won && ok;
        }
        return r;
    }

    static GameResult loss(const std::string& reason) {
        GameResult r;
        r.won = false;
        r.detail = ojson::object();
        r.detail[reason] = false;
        return r;
    }
};

struct TrialStats {
    uint64_t trials = 0;
    uint64_t wins = 0;
    double rate = 0.0;
    double lo = 0.0;  // Wilson 95% interval
    double hi = 0.0;
};

inline TrialStats wilson(uint64_t wins, uint64_t trials) {
    TrialStats s;
    s.trials = trials;
    s.wins = wins;
    if (trials == 0) return s;
    double n = static_cast<double>(trials);
    double p = static_cast<double>(wins) / n;
    s.rate = p;
    const double z = 1.959963984540054;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    s.lo = center - half;
    s.hi = center + half;
    return s;
}

struct TrialRecord {
    uint64_t index = 0;
    bool won = false;
    std::string detail;
};

// n independent runs on split randomness streams. Trials are independent, so
// they run on a small thread pool; per-trial streams make the outcome
// schedule-invariant.
inline TrialStats run_trials(const std::function<GameResult(Rng&)>& game, uint64_t n,
                             const Rng& master, std::vector<TrialRecord>* records = nullptr,
                             unsigned threads = 0) {
    if (n == 0) return TrialStats{};
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads > n) threads = static_cast<unsigned>(n);

    std::vector<GameResult> results(n);
    std::atomic<uint64_t> next{0};
    auto worker = [&]() {
        for (uint64_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            Rng trial = master.split(i);
            try {
                results[i] = game(trial);
            } catch (...) {
                results[i] = GameResult::loss("harness-exception");
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    uint64_t wins = 0;
    for (const auto& r : results) wins += r.won;
    if (records) {
        records->clear();
        for (uint64_t i = 0; i < n; ++i)
            records->push_back(TrialRecord{i, results[i].won, results[i].detail.dump()});
    }
    return wilson(wins, n);
}

inline void write_records_jsonl(std::ostream& out, const std::string& game,
                                const std::string& scheme, const std::string& variant,
                                const std::string& seed, const std::vector<TrialRecord>& records) {
    for (const auto& r : records) {
        ojson line{{"game", game},     {"scheme", scheme}, {"variant", variant}, {"seed", seed},
                   {"trial", r.index}, {"won", r.won},     {"detail", ojson::parse(r.detail)}};
        out << line.dump() << "\n";
    }
}

// ---- Ballot secrecy (the coin-guessing game with a vote oracle) ----------

// Capability handed to the adversary: each query casts a ballot for the
// beta-selected vote and records (ballot, v0, v1) in the challenger's ledger.
// The adversary cannot forge ledger entries.
class VoteOracle {
public:
    VoteOracle(const ElectionScheme& scheme, std::string pk, uint64_t nc, int beta,
               VoteLedger& ledger, Rng& rng)
        : scheme_(scheme), pk_(std::move(pk)), nc_(nc), beta_(beta), ledger_(ledger), rng_(rng) {}

    std::optional<Ballot> query(uint64_t v0, uint64_t v1) {
        if (v0 < 1 || v0 > nc_ || v1 < 1 || v1 > nc_) return std::nullopt;
        auto b = scheme_.vote(pk_, beta_ ? v1 : v0, nc_, rng_);
        if (b) ledger_.push_back(LedgerEntry{*b, v0, v1});
        return b;
    }

    uint64_t nc() const { return nc_; }

private:
    const ElectionScheme& scheme_;
    std::string pk_;
    uint64_t nc_;
    int beta_;
    VoteLedger& ledger_;
    Rng& rng_;
};

struct SecrecyAdversary {
    std::function<uint64_t(const std::string& pk)> choose_nc;
    std::function<BulletinBoard(VoteOracle&)> build_board;
    std::function<int(const Outcome&, const std::string& proof)> guess;
};
using SecrecyFactory = std::function<SecrecyAdversary(Rng&)>;

// Literal mode follows the definition line by line (the full board is
// tallied, the guess sees outcome and proof, and the balanced condition
// applies). Simplified mode is the proof-reduction variant: the guess sees
// the outcome only and the board must avoid oracle ballots entirely.
enum class SecrecyMode { Literal, Simplified };

inline GameResult play_ballot_secrecy(const ElectionScheme& scheme, const SecrecyFactory& factory,
                                      Rng& rng, SecrecyMode mode = SecrecyMode::Literal) {
    try {
        Rng adv_rng = rng.split("adv");
        Rng setup_rng = rng.split("setup");
        Rng oracle_rng = rng.split("oracle");
        Rng tally_rng = rng.split("tally");
        SecrecyAdversary adv = factory(adv_rng);

        SetupResult su = scheme.setup(setup_rng);
        uint64_t nc = adv.choose_nc(su.pk);
        int beta = rng.split("beta").flip();
        VoteLedger ledger;
        VoteOracle oracle(scheme, su.pk, nc, beta, ledger, oracle_rng);
        BulletinBoard bb = adv.build_board(oracle);
        if (nc < 1) return GameResult::loss("nc-range");
        TallyResult t = scheme.tally(su.sk, bb, nc, tally_rng);
        int g = adv.guess(t.outcome, mode == SecrecyMode::Literal ? t.proof : std::string{});

        bool side_cond;
        const char* side_name;
        if (mode == SecrecyMode::Literal) {
            side_cond = balanced(bb, nc, ledger);
            side_name = "balanced";
        } else {
            side_cond = true;
            for (const auto& e : ledger) side_cond = side_cond && !bb.contains(e.ballot);
            side_name = "oracle-ballots-absent";
        }
        return GameResult::from_conjuncts({{"guess-correct", g == beta},
                                           {side_name, side_cond},
                                           {"nc-range", nc >= 1 && nc <= su.mc},
                                           {"board-size", bb.size() <= su.mb}});
    } catch (...) {
        return GameResult::loss("adversary-error");
    }
}

// ---- IND-CVA (single challenge ballot, adversarial board) ----------------

struct CvaAdversary {
    std::function<std::tuple<uint64_t, uint64_t, uint64_t>(const std::string& pk)> choose;
    std::function<BulletinBoard(const Ballot& challenge)> build_board;
    std::function<int(const Outcome&)> guess;
};
using CvaFactory = std::function<CvaAdversary(Rng&)>;

inline GameResult play_ind_cva(const ElectionScheme& scheme, const CvaFactory& factory, Rng& rng) {
    try {
        Rng adv_rng = rng.split("adv");
        CvaAdversary adv = factory(adv_rng);
        Rng setup_rng = rng.split("setup");
        SetupResult su = scheme.setup(setup_rng);
        auto [v0, v1, nc] = adv.choose(su.pk);
        int beta = rng.split("beta").flip();
        Rng vote_rng = rng.split("vote");
        auto b = scheme.vote(su.pk, beta ? v1 : v0, nc, vote_rng);
        if (!b) return GameResult::loss("challenge-vote-rejected");
        BulletinBoard bb = adv.build_board(*b);
        Rng tally_rng = rng.split("tally");
        TallyResult t = scheme.tally(su.sk, bb, nc, tally_rng);
        int g = adv.guess(t.outcome);
        return GameResult::from_conjuncts(
            {{"guess-correct", g == beta},
             {"challenge-absent", !bb.contains(*b)},
             {"vote-range", v0 >= 1 && v1 >= 1 && v0 <= nc && v1 <= nc && nc <= su.mc},
             {"board-size", bb.size() <= su.mb}});
    } catch (...) {
        return GameResult::loss("adversary-error");
    }
}

// ---- IND-PA0 (one parallel decryption query) ------------------------------

struct Pa0Adversary {
    std::function<std::pair<uint64_t, uint64_t>(const std::string& pk, uint64_t mbound)> choose;
    std::function<std::vector<std::string>(const std::string& challenge)> parallel_query;
    std::function<int(const std::vector<std::optional<uint64_t>>&)> guess;
};
using Pa0Factory = std::function<Pa0Adversary(Rng&)>;

inline GameResult play_ind_pa0(const AsymmetricScheme& enc, Level level, const Pa0Factory& factory,
                               Rng& rng) {
    try {
        Rng adv_rng = rng.split("adv");
        Pa0Adversary adv = factory(adv_rng);
        Rng gen_rng = rng.split("gen");
        AsymmetricKeys keys = enc.generate(level, gen_rng);
        auto [m0, m1] = adv.choose(keys.pk_bundle, keys.message_bound);
        int beta = rng.split("beta").flip();
        Rng enc_rng = rng.split("enc");
        auto c = enc.encrypt(keys.pk_bundle, beta ? m1 : m0, enc_rng);
        if (!c) return GameResult::loss("challenge-encrypt-rejected");
        std::vector<std::string> queries = adv.parallel_query(*c);
        std::vector<std::optional<uint64_t>> plain;
        bool excludes_challenge = true;
        for (const auto& q : queries) {
            excludes_challenge = excludes_challenge && q != *c;
            plain.push_back(enc.decrypt(keys.sk_bundle, q));
        }
        int g = adv.guess(plain);
        return GameResult::from_conjuncts(
            {{"guess-correct", g == beta},
             {"challenge-excluded", excludes_challenge},
             {"messages-in-space", m0 <= keys.message_bound && m1 <= keys.message_bound}});
    } catch (...) {
        return GameResult::loss("adversary-error");
    }
}

// ---- Soundness (forge a verifying but incorrect outcome) ------------------

struct SoundnessClaim {
    std::string pk;
    BulletinBoard bb;
    uint64_t nc = 0;
    Outcome outcome;
    std::string proof;
    std::vector<Witness> witnesses;
};
using SoundnessAdversary = std::function<SoundnessClaim(Rng&)>;

inline GameResult play_soundness(const ElectionScheme& scheme, const SoundnessAdversary& adv,
                                 Rng& rng) {
    try {
        Rng adv_rng = rng.split("adv");
        SoundnessClaim claim = adv(adv_rng);
        bool accepted = scheme.verify(claim.pk, claim.bb, claim.nc, claim.outcome, claim.proof);
        auto correct = correct_outcome(scheme, claim.pk, claim.nc, claim.bb, claim.witnesses);
        if (!correct) return GameResult::loss("witness-mismatch");
        return GameResult::from_conjuncts(
            {{"verify-accepts", accepted}, {"outcome-differs", claim.outcome != *correct}});
    } catch (...) {
        return GameResult::loss("adversary-error");
    }
}

// ---- Completeness (make an honest tally fail verification) ----------------

using CompletenessAdversary =
    std::function<std::pair<BulletinBoard, uint64_t>(const std::string& pk, Rng&)>;

inline GameResult play_completeness(const ElectionScheme& scheme, const CompletenessAdversary& adv,
                                    Rng& rng) {
    try {
        Rng setup_rng = rng.split("setup");
        SetupResult su = scheme.setup(setup_rng);
        Rng adv_rng = rng.split("adv");
        auto [bb, nc] = adv(su.pk, adv_rng);
        if (nc < 1) return GameResult::loss("nc-range");
        bool accepted = false;
        try {
            Rng tally_rng = rng.split("tally");
            TallyResult t = scheme.tally(su.sk, bb, nc, tally_rng);
            accepted = scheme.verify(su.pk, bb, nc, t.outcome, t.proof);
        } catch (...) {
            accepted = false;  // a tally that aborts certainly produced nothing verifiable
        }
        return GameResult::from_conjuncts({{"verify-rejects", !accepted},
                                           {"board-size", bb.size() <= su.mb},
                                           {"nc-range", nc <= su.mc}});
    } catch (...) {
        return GameResult::loss("adversary-error");
    }
}

// ---- Individual verifiability (make two honest ballots collide) -----------

struct IvChoice {
    std::string pk;
    uint64_t nc = 0;
    uint64_t v = 0;
    uint64_t v2 = 0;
};
using IvAdversary = std::function<IvChoice(Rng&)>;

inline GameResult play_individual_verifiability(const ElectionScheme& scheme,
                                                const IvAdversary& adv, Rng& rng) {
    try {
        Rng adv_rng = rng.split("adv");
        IvChoice ch = adv(adv_rng);
        Rng r1 = rng.split("vote1");
        Rng r2 = rng.split("vote2");
        auto b1 = scheme.vote(ch.pk, ch.v, ch.nc, r1);
        auto b2 = scheme.vote(ch.pk, ch.v2, ch.nc, r2);
        bool collide = b1 && b2 && *b1 == *b2;
        GameResult r;
        r.won = collide;
        r.detail = ojson{{"collision", collide}};
        return r;
    } catch (...) {
        return GameResult::loss("adversary-error");
    }
}

// Injectivity check: distinct votes never produce equal ballots, under shared
// or independent coins. Returns false on any collision.
inline bool check_injectivity(const ElectionScheme& scheme, const IvAdversary& sampler,
                              uint64_t trials, const Rng& master, bool shared_coins) {
    for (uint64_t i = 0; i < trials; ++i) {
        Rng rng = master.split(i);
        Rng adv_rng = rng.split("adv");
        IvChoice ch = sampler(adv_rng);
        if (ch.v == ch.v2) continue;
        std::optional<Ballot> b1, b2;
        if (shared_coins) {
            Rng rec = rng.split("coins");
            rec.start_recording();
            b1 = scheme.vote(ch.pk, ch.v, ch.nc, rec);
            Rng replay = Rng::replay(rec.tape());
            b2 = scheme.vote(ch.pk, ch.v2, ch.nc, replay);
        } else {
            Rng r1 = rng.split("vote1");
            Rng r2 = rng.split("vote2");
            b1 = scheme.vote(ch.pk, ch.v, ch.nc, r1);
            b2 = scheme.vote(ch.pk, ch.v2, ch.nc, r2);
        }
        if (b1 && b2 && *b1 == *b2) return false;
    }
    return true;
}

}  // namespace verivote::games
