#pragma once

#include "helios.hpp"
#include "mixnet.hpp"

namespace verivote {

// Scheme selection as exposed on the command line. The weak/strong axis maps
// onto each scheme's insecure and hardened shapes: plain vs proof-carrying
// encryption for Enc2Vote, weak-FS-without-weeding vs strong-FS-with-weeding
// for Helios, and the Fiat-Shamir mode for the mixnet.
inline std::unique_ptr<ElectionScheme> make_scheme(const std::string& name,
                                                   const std::string& variant, Level level,
                                                   unsigned mix_rounds = 40) {
    auto fs = fs_from_name(variant);
    if (!fs) throw std::invalid_argument("unknown variant: " + variant);
    if (name == "enc2vote")
        return make_enc2vote(*fs == FsMode::Weak ? make_plain_elgamal() : make_nm_elgamal(), level);
    if (name == "helios")
        return helios::make_scheme(*fs == FsMode::Weak ? helios::vulnerable() : helios::hardened(),
                                   level);
    if (name == "helios-mixnet") return mixnet::make_scheme(*fs, mix_rounds, level);
    throw std::invalid_argument("unknown scheme: " + name);
}

inline const std::vector<std::string>& scheme_names() {
    static const std::vector<std::string> names{"enc2vote", "helios", "helios-mixnet"};
    return names;
}

}  // namespace verivote
