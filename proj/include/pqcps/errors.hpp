#pragma once

#include <stdexcept>
#include <string>

namespace pqcps {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed argument: wrong seed/key/ciphertext length, bad enum value, ...
class InputError : public Error {
public:
    using Error::Error;
};

/// Handshake state machine violation or malformed handshake message.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// AEAD tag verification failed.
class AuthenticationError : public Error {
public:
    using Error::Error;
};

/// Message counter is not fresh (duplicate or out-of-order delivery).
class ReplayError : public Error {
public:
    using Error::Error;
};

/// Session can no longer send (counter space exhausted).
class SessionError : public Error {
public:
    using Error::Error;
};

/// Invalid simulation/scenario configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input document (JSON model, CSV table, KAT file, hex string).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Lookup into a closed registry failed.
class LookupError : public Error {
public:
    using Error::Error;
};

} // namespace pqcps
