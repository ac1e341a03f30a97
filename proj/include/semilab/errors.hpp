#pragma once

#include <stdexcept>
#include <string>

namespace semilab {

// Invalid argument outside an operation's domain (bad interval, negative
// variance, negative time, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Binary operation on grid functions that do not share a grid.
class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Gaussian kernel support larger than the grid itself.
class KernelTooWide : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Explicit G-heat step violating sigma_hi^2 * dt / dx^2 <= 1.
class CFLViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Bad configuration or command line. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace semilab
