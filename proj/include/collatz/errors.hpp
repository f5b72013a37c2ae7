#pragma once

#include <stdexcept>
#include <string>

namespace collatz {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Trajectory did not reach 1 within the step budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Operation is defined for the standard variant only.
class VariantUnsupported : public Error {
public:
    using Error::Error;
};

/// Polynomial degree is below the operation's minimum.
class DegreeTooSmall : public Error {
public:
    using Error::Error;
};

/// m parameter outside its domain (m >= 2).
class InvalidM : public Error {
public:
    using Error::Error;
};

/// t parameter outside its domain (odd t >= 3).
class InvalidT : public Error {
public:
    using Error::Error;
};

/// Leading coefficient is not 1.
class NotMonic : public Error {
public:
    using Error::Error;
};

/// Column index k outside the admissible window [m, m+n-1].
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Root-product / root-sum identities violated beyond tolerance.
class VietaMismatch : public Error {
public:
    using Error::Error;
};

/// N has no odd preimage (requires N == 2 mod 3).
class NoOddPreimage : public Error {
public:
    using Error::Error;
};

/// The hypothesis of the implication being verified is false for this input.
class PremiseFailed : public Error {
public:
    using Error::Error;
};

}  // namespace collatz
