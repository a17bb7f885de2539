#pragma once
#include <string>

#include "wildkey/rng.hpp"

namespace wildkey {

// Pseudonymous identifiers: 128 random bits in RFC 4648 base32 (26 chars,
// uppercase, no padding). Tokens carry nothing derived from an identity.
std::string new_token(Rng& rng);

// Shorter id for sessions/trials (64 bits, 13 base32 chars).
std::string new_session_id(Rng& rng);

}  // namespace wildkey
