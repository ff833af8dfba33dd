#pragma once

#include <stdexcept>
#include <string>

namespace nalab {

// Invalid parameters or arguments outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The spectral parameter hits a pole of a Gamma factor.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Index or scale outside the annular grid / valid window.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nalab
