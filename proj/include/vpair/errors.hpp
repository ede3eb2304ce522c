#pragma once

#include <stdexcept>
#include <string>

namespace vpair {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class EmptyRegistry : public Error {
public:
    EmptyRegistry() : Error("species registry is empty") {}
};

/// A caller-side precondition was violated (negative length, T <= 0, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class MaxDepthExceeded : public Error {
public:
    using Error::Error;
};

class NonFiniteIntegrand : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class MaxIterExceeded : public Error {
public:
    using Error::Error;
};

class OverflowGuard : public Error {
public:
    using Error::Error;
};

class NegativeRadicand : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace vpair
