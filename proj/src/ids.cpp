#include "wildkey/ids.hpp"

namespace wildkey {

namespace {

constexpr char kBase32[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ234567";

std::string base32_bits(Rng& rng, int bits) {
    std::string out;
    int have = 0;
    std::uint64_t acc = 0;
    int acc_bits = 0;
    while (have < bits) {
        if (acc_bits < 5) {
            acc = rng.next_u64();
            acc_bits = 64;
        }
        out += kBase32[acc & 0x1F];
        acc >>= 5;
        acc_bits -= 5;
        have += 5;
    }
    return out;
}

}  // namespace

std::string new_token(Rng& rng) { return base32_bits(rng, 128); }

std::string new_session_id(Rng& rng) { return base32_bits(rng, 64); }

}  // namespace wildkey
