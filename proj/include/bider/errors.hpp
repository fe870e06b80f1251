#pragma once

#include <stdexcept>
#include <string>

namespace bider {

/// Numeric precondition violations and computations that left the
/// representable range (divergence, non-uniform grids, bad parameters).
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing, unreadable or unwritable files.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed command-line grammar (specs, flags, tokens).
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bider
