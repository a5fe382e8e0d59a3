#pragma once

#include <stdexcept>
#include <string>

namespace gravbell {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A height was requested where g|z - R|/c^2 exceeds the first-order regime.
class WeakFieldViolation : public Error {
public:
    using Error::Error;
};

class NegativeExtent : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class UnsupportedKind : public Error {
public:
    using Error::Error;
};

class BandwidthExceedsCarrier : public Error {
public:
    using Error::Error;
};

class NonpositiveWavelength : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class QuadratureNotConverged : public Error {
public:
    using Error::Error;
};

class IndistinguishabilityViolated : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class ZeroGravity : public Error {
public:
    using Error::Error;
};

class FileFormatError : public Error {
public:
    using Error::Error;
};

} // namespace gravbell
