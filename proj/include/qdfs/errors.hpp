#pragma once

#include <stdexcept>
#include <string>

namespace qdfs {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

// Coefficient matrix of a dissipator has an eigenvalue below -tol.
class NotPsd : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotNormalized : public Error {
public:
    using Error::Error;
};

// Input to the propagator is not Hermitian / PSD / unit trace.
class NotDensityMatrix : public Error {
public:
    using Error::Error;
};

// Subspace basis fails orthonormality or an eigen-membership precondition.
class InvalidSubspace : public Error {
public:
    using Error::Error;
};

// Step doubling hit the cap before two resolutions agreed.
class StepCapExceeded : public Error {
public:
    using Error::Error;
};

// Requested dimension above the supported range.
class TooLarge : public Error {
public:
    using Error::Error;
};

// Fock cutoff too small for the requested coherent amplitude.
class TruncationTooSmall : public Error {
public:
    using Error::Error;
};

// Operation requires the other dissipator representation.
class WrongForm : public Error {
public:
    using Error::Error;
};

// File-level problem; message carries the offending field path.
class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

} // namespace qdfs
