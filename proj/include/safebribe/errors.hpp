#pragma once

#include <stdexcept>
#include <string>

namespace safebribe {

// Base class for everything this library throws on bad input or exhausted
// resource guards. Internal logic errors use assert/abort instead.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class RuleError : public Error {
public:
    using Error::Error;
};

class PairError : public Error {
public:
    using Error::Error;
};

class EmptyProfileError : public Error {
public:
    using Error::Error;
};

class VoterIdError : public Error {
public:
    using Error::Error;
};

class ShiftRangeError : public Error {
public:
    using Error::Error;
};

// Payload kind does not match the operation (e.g. a Safe payload handed to an
// Is-Safe checker).
class VariantError : public Error {
public:
    using Error::Error;
};

// Operation not applicable (e.g. max_flow on a network with lower bounds).
class OperationError : public Error {
public:
    using Error::Error;
};

class ResourceLimitError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

}  // namespace safebribe
