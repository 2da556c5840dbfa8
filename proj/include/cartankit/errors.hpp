#pragma once

#include <stdexcept>
#include <string>

namespace cartankit {

/// Input text could not be parsed (malformed JSON or a schema violation).
/// CLI maps this to exit code 2.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller
/// (wrong shape, missing structural property, mismatched contexts).
/// CLI maps this to exit code 3.
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation lost enough accuracy that its postcondition cannot be
/// certified (e.g. singular values not of the expected shape, overflow).
/// CLI maps this to exit code 4.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cartankit
