#pragma once

#include <stdexcept>
#include <string>

namespace spamhunt {

// Bad user input: missing/malformed files, out-of-range arguments,
// violated operation preconditions. Maps to process exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A verdict provider answered outside the question's declared answer set.
class ProtocolError : public InputError {
public:
    explicit ProtocolError(const std::string& what) : InputError(what) {}
};

} // namespace spamhunt
