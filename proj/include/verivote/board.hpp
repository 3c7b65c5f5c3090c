#pragma once

#include <filesystem>
#include <fstream>

#include "registry.hpp"

namespace verivote {

// Path-backed append-only ballot log: one serialized ballot per line,
// byte-duplicates rejected, read-back order equals append order.
class BoardStore {
public:
    explicit BoardStore(std::filesystem::path path) : path_(std::move(path)) {}

    std::vector<Ballot> read_all() const {
        std::vector<Ballot> out;
        std::ifstream in(path_);
        if (!in) return out;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) out.push_back(line);
        return out;
    }

    // Index of the persisted ballot, or nullopt when an identical ballot is
    // already stored.
    std::optional<size_t> append(const Ballot& b) {
        if (b.find('\n') != std::string::npos) throw std::invalid_argument("ballot has newline");
        std::vector<Ballot> existing = read_all();
        for (const auto& e : existing)
            if (e == b) return std::nullopt;
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("cannot open board store: " + path_.string());
        out << b << "\n";
        out.flush();
        if (!out) throw std::runtime_error("board store write failed: " + path_.string());
        return existing.size();
    }

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string seed_commitment(const Bytes& seed) {
    Bytes input;
    input.push_back(kTagSeedCommit);
    append_field(input, seed);
    return bytes_to_hex(sha256(input));
}

// Self-contained election record: header with public material, the board,
// and the claimed result. Re-verifiable offline with no secret input.
struct TranscriptFile {
    std::string scheme;
    std::string variant;
    std::string level;
    uint64_t nc = 0;
    std::string pk;
    std::string seed_commit;
    std::vector<Ballot> board;
    bool has_result = false;
    Outcome outcome;
    std::string proof;

    ojson to_json() const {
        ojson j;
        j["header"] = ojson{{"scheme", scheme}, {"variant", variant},          {"level", level},
                            {"nc", nc},        {"pk", ojson::parse(pk)},      {"seed_commitment", seed_commit}};
        ojson b = ojson::array();
        for (const auto& e : board) b.push_back(ojson::parse(e));
        j["board"] = b;
        if (has_result)
            j["result"] = ojson{{"outcome", outcome_to_json(outcome)}, {"proof", ojson::parse(proof)}};
        return j;
    }

    static TranscriptFile from_json(const ojson& j) {
        TranscriptFile tf;
        const ojson& h = j.at("header");
        tf.scheme = h.at("scheme").get<std::string>();
        tf.variant = h.at("variant").get<std::string>();
        tf.level = h.at("level").get<std::string>();
        tf.nc = h.at("nc").get<uint64_t>();
        tf.pk = h.at("pk").dump();
        tf.seed_commit = h.at("seed_commitment").get<std::string>();
        for (const auto& b : j.at("board")) tf.board.push_back(b.dump());
        if (j.contains("result")) {
            tf.has_result = true;
            tf.outcome = outcome_from_json(j.at("result").at("outcome"));
            tf.proof = j.at("result").at("proof").dump();
        }
        return tf;
    }

    void save(const std::filesystem::path& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write transcript: " + path.string());
        out << to_json().dump(2) << "\n";
    }

    // Throws std::runtime_error carrying the parser's byte offset on
    // malformed input.
    static TranscriptFile load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read transcript: " + path.string());
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        try {
            return from_json(ojson::parse(text));
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error("transcript parse error at byte " + std::to_string(e.byte) +
                                     ": " + e.what());
        }
    }
};

// Offline audit of a transcript file. The optional mode override re-checks
// the same transcript under the other Fiat-Shamir discipline, which is how a
// weak-mode forgery is demonstrated against a strong-mode auditor.
inline CheckReport transcript_verify(const TranscriptFile& tf,
                                     std::optional<FsMode> fs_override = std::nullopt) {
    CheckReport rep;
    try {
        BulletinBoard bb;
        bool dedup_ok = true;
        for (const auto& b : tf.board) dedup_ok = bb.append(b) && dedup_ok;
        rep.checks.emplace_back("board-duplicate-free", dedup_ok);
        if (!tf.has_result) {
            rep.checks.emplace_back("result-present", false);
            return rep;
        }
        rep.checks.emplace_back("result-present", true);

        CheckReport inner;
        if (tf.scheme == "helios") {
            helios::PublicKey key = helios::pk_from_json(ojson::parse(tf.pk));
            if (fs_override) key.variant.fs = *fs_override;
            inner = helios::verify_report(key, bb, tf.nc, tf.outcome, tf.proof);
        } else if (tf.scheme == "helios-mixnet") {
            mixnet::PublicKey key = mixnet::pk_from_json(ojson::parse(tf.pk));
            if (fs_override) key.fs = *fs_override;
            inner = mixnet::verify_report(key, bb, tf.nc, tf.outcome, tf.proof);
        } else if (tf.scheme.rfind("enc2vote", 0) == 0) {
            inner.checks.emplace_back("verify-constant", true);
        } else {
            rep.checks.emplace_back("scheme-known", false);
            return rep;
        }
        rep.checks.insert(rep.checks.end(), inner.checks.begin(), inner.checks.end());
    } catch (...) {
        rep.checks.emplace_back("parse", false);
    }
    return rep;
}

}  // namespace verivote
