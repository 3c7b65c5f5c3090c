#pragma once

#include <array>
#include <random>

#include "bytes.hpp"

namespace verivote {

// Deterministic randomness source: a SHA-256 counter stream keyed by a seed.
// Streams can be split into independent children by label, so every trial of
// a game gets its own reproducible stream regardless of execution order.
//
// Every draw can be recorded to a tape, and a stream can be replayed from a
// tape. Tapes are the "random coins r" of a probabilistic algorithm: game
// adversaries disclose (vote, tape) pairs as witnesses, and the challenger
// replays the algorithm on the tape to audit the claim.
class Rng {
public:
    static Rng from_seed(const Bytes& seed) {
        Rng r;
        Bytes material;
        append_field(material, std::string("verivote.rng.seed"));
        append_field(material, seed);
        Bytes key = sha256(material);
        std::copy(key.begin(), key.end(), r.key_.begin());
        return r;
    }

    static Rng from_seed_hex(const std::string& hex) { return from_seed(hex_to_bytes(hex)); }

    static Rng from_u64(uint64_t n) {
        Bytes seed(8);
        for (int i = 0; i < 8; ++i) seed[i] = static_cast<uint8_t>(n >> (56 - 8 * i));
        return from_seed(seed);
    }

    static Rng from_entropy() {
        std::random_device rd;
        Bytes seed(32);
        for (size_t i = 0; i < seed.size(); i += 4) {
            uint32_t w = rd();
            for (size_t j = 0; j < 4 && i + j < seed.size(); ++j)
                seed[i + j] = static_cast<uint8_t>(w >> (8 * j));
        }
        return from_seed(seed);
    }

    static Rng replay(std::vector<mpz_class> tape) {
        Rng r;
        r.replay_ = true;
        r.tape_ = std::move(tape);
        return r;
    }

    // Independent child stream. Splitting with the same label twice yields the
    // same child; callers pass distinct labels (e.g. trial indices).
    Rng split(const std::string& label) const {
        Rng child;
        Bytes material;
        append_field(material, std::string("verivote.rng.split"));
        material.insert(material.end(), key_.begin(), key_.end());
        append_field(material, label);
        Bytes key = sha256(material);
        std::copy(key.begin(), key.end(), child.key_.begin());
        return child;
    }

    Rng split(uint64_t index) const { return split("i" + std::to_string(index)); }

    // Uniform in [0, bound), bound >= 1.
    mpz_class below(const mpz_class& bound) {
        if (bound <= 0) throw std::invalid_argument("rng bound must be positive");
        mpz_class out;
        if (replay_) {
            if (pos_ < tape_.size()) out = tape_[pos_++] % bound;
        } else {
            size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
            size_t nbytes = (bits + 7) / 8;
            unsigned top_mask = bits % 8 ? (1u << (bits % 8)) - 1 : 0xffu;
            do {
                Bytes raw(nbytes);
                for (auto& b : raw) b = next_byte();
                raw[0] &= static_cast<uint8_t>(top_mask);
                out = mpz_from_bytes(raw);
            } while (out >= bound);
        }
        if (recording_) tape_.push_back(out);
        return out;
    }

    uint64_t below_u64(uint64_t bound) {
        return static_cast<uint64_t>(below(mpz_class(static_cast<unsigned long>(bound))).get_ui());
    }

    bool flip() { return below_u64(2) == 1; }

    Bytes bytes(size_t n) {
        Bytes out(n);
        if (replay_) {
            mpz_class v = pos_ < tape_.size() ? tape_[pos_++] : 0;
            Bytes raw = mpz_to_bytes(v);
            size_t off = n > raw.size() ? n - raw.size() : 0;
            for (size_t i = 0; i < raw.size() && off + i < n; ++i) out[off + i] = raw[i];
        } else {
            for (auto& b : out) b = next_byte();
            if (recording_) tape_.push_back(mpz_from_bytes(out));
        }
        return out;
    }

    void start_recording() {
        recording_ = true;
        tape_.clear();
    }

    const std::vector<mpz_class>& tape() const { return tape_; }

private:
    Rng() = default;

    uint8_t next_byte() {
        if (bufpos_ == buf_.size()) {
            Bytes block;
            block.insert(block.end(), key_.begin(), key_.end());
            append_u32be(block, static_cast<uint32_t>(ctr_ >> 32));
            append_u32be(block, static_cast<uint32_t>(ctr_));
            ++ctr_;
            buf_ = sha256(block);
            bufpos_ = 0;
        }
        return buf_[bufpos_++];
    }

    std::array<uint8_t, 32> key_{};
    uint64_t ctr_ = 0;
    Bytes buf_;
    size_t bufpos_ = 0;

    bool replay_ = false;
    bool recording_ = false;
    std::vector<mpz_class> tape_;
    size_t pos_ = 0;
};

}  // namespace verivote
