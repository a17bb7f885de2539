#pragma once
#include <string>
#include <vector>

namespace wildkey {

// Built-in target phrases for the simulator; every word is present in the
// bundled English dictionary.
const std::vector<std::string>& builtin_phrases();

}  // namespace wildkey
