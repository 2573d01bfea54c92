#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidUrl : Error {
    using Error::Error;
};

struct MalformedTimeMap : Error {
    using Error::Error;
};

struct MixedOriginals : Error {
    using Error::Error;
};

struct MalformedCdxLine : Error {
    MalformedCdxLine(const std::string& what, std::size_t offset)
        : Error(what + " (byte offset " + std::to_string(offset) + ")"), byte_offset(offset) {}
    std::size_t byte_offset;
};

struct NetworkError : Error {
    NetworkError(const std::string& what, int attempts_made)
        : Error(what + " (after " + std::to_string(attempts_made) + " attempt(s))"),
          attempts(attempts_made) {}
    int attempts;
};

struct CacheMiss : Error {
    using Error::Error;
};

struct UncoveredInstant : Error {
    using Error::Error;
};

struct InvalidRange : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace tempo
