#pragma once

#include <stdexcept>
#include <string>

namespace t2dist {

/// Invalid argument or precondition violation. CLI exit code 2.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input that is syntactically valid but carries no usable information
/// (zero first echo, all mass outside the target grid, ...).
class DegenerateInput : public ParameterError {
public:
    explicit DegenerateInput(const std::string& what) : ParameterError(what) {}
};

/// Iterative solver failed to converge or produced non-finite values. CLI exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// File I/O, corruption, or schema failure. CLI exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace t2dist
