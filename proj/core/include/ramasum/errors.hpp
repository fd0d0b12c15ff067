// errors.hpp — exception taxonomy shared by all ramasum components.
#pragma once

#include <stdexcept>
#include <string>

namespace ramasum {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation (log(-1), psi(0), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Working precision below the supported floor, or otherwise unusable.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// Evaluation requested at (or too close to) a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

// An iterative scheme could not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Series term grows too fast for Ramanujan summation (rate >= pi).
class InadmissibleError : public Error {
public:
    using Error::Error;
};

// Two independent strategies disagreed beyond their combined error bounds.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

// Declared growth model cannot bound an infinite-interval tail below tol.
class TailBoundError : public Error {
public:
    using Error::Error;
};

// Analytic continuation of a Borel transform failed (e.g. Pade pole on [0, A]).
class ContinuationError : public Error {
public:
    using Error::Error;
};

class InsufficientCoefficients : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

// Formal-series truncation order too small for a requested coefficient.
class TruncationError : public Error {
public:
    using Error::Error;
};

// Parser diagnostics carry a 1-based column.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, int column)
        : Error(what + " at column " + std::to_string(column)), column_(column) {}
    int column() const { return column_; }

private:
    int column_;
};

class UnknownFunctionError : public Error {
public:
    using Error::Error;
};

// Expression references z but no z was supplied.
class MissingParam : public Error {
public:
    using Error::Error;
};

class UnknownCheck : public Error {
public:
    using Error::Error;
};

}  // namespace ramasum
