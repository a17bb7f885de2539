#pragma once
#include <stdexcept>
#include <string>

namespace wildkey {

// Error taxonomy, mapped to CLI exit codes by the tool layer:
//   ConfigError / usage        -> 1
//   MalformedTrialError, data  -> 2
//   PersistenceError           -> 3

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedTrialError : std::runtime_error {
    explicit MalformedTrialError(const std::string& what) : std::runtime_error(what) {}
};

struct NotFoundError : std::runtime_error {
    explicit NotFoundError(const std::string& what) : std::runtime_error(what) {}
};

struct PersistenceError : std::runtime_error {
    explicit PersistenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wildkey
