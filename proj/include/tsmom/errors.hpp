#pragma once

#include <stdexcept>
#include <string>

namespace tsmom {

/// Base class for all engine errors. Data-level failures derive from this;
/// callers that only need pass/fail can catch the base.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonPositivePrice : public Error {
public:
    using Error::Error;
};

class InsufficientHistory : public Error {
public:
    using Error::Error;
};

class MissingRiskFree : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class LagTooLarge : public Error {
public:
    using Error::Error;
};

class ZeroVariance : public Error {
public:
    using Error::Error;
};

class SingularDesign : public Error {
public:
    using Error::Error;
};

class TooFewAssets : public Error {
public:
    using Error::Error;
};

class EmptyGroupMonth : public Error {
public:
    using Error::Error;
};

class EmptySector : public Error {
public:
    using Error::Error;
};

class MissingGroup : public Error {
public:
    using Error::Error;
};

class SpecMismatch : public Error {
public:
    using Error::Error;
};

class NoValidCells : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& file, long line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

    const std::string& file() const { return file_; }
    long line() const { return line_; }

private:
    std::string file_;
    long line_;
};

class DuplicateRow : public Error {
public:
    using Error::Error;
};

class GapInSeries : public Error {
public:
    using Error::Error;
};

class UnknownFactor : public Error {
public:
    using Error::Error;
};

class UnknownSector : public Error {
public:
    using Error::Error;
};

}  // namespace tsmom
