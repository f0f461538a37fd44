#pragma once

#include <stdexcept>
#include <string>

namespace mhk {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the region where the requested formula is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

class NonConvergent : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class TruncationBudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace mhk
