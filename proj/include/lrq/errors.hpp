#pragma once

#include <stdexcept>
#include <string>

namespace lrq {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input (parameters, config values, indices).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class SizeMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Numerical failures. The CLI maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateBlock : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GaplessBlock : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OddDimension : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotSkew : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PositivityViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientData : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class AllBelowFloor : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class Inconclusive : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MixedModels : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TooLarge : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

}  // namespace lrq

namespace lrq {

// Filesystem trouble (unreadable config, unwritable output directory).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lrq
