#pragma once

#include <stdexcept>
#include <string>

namespace evtwin {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two time series do not share start, step and length.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// A series does not cover the calendar span an operation needs.
class CoverageError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class LookupError : public Error {
public:
    using Error::Error;
};

// Records of two input files that should match by id do not.
class JoinError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// A numerical invariant of the energy balance was violated.
class InvariantError : public Error {
public:
    using Error::Error;
};

// A ratio whose denominator is zero.
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

}  // namespace evtwin
