#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hingekit {

// Each error family maps onto one CLI / C API exit status:
//   InputError        -> 2  (bad dimensions, grades, schema, semantic rules)
//   DegeneracyError   -> 3  (degenerate geometry, non-generic cycles, projection failures)
//   ConsistencyError  -> 4  (two independent routes disagree; a tolerance bug)

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class GradeError : public InputError {
public:
    using InputError::InputError;
};

/// Schema violation while reading a scenario; `path` is a JSON pointer.
class ParseError : public InputError {
public:
    ParseError(std::string path, const std::string& what)
        : InputError(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class SemanticError : public InputError {
public:
    using InputError::InputError;
};

class DegeneracyError : public Error {
public:
    using Error::Error;
};

class DegenerateAxisError : public DegeneracyError {
public:
    using DegeneracyError::DegeneracyError;
};

class DegenerateLineError : public DegeneracyError {
public:
    using DegeneracyError::DegeneracyError;
};

class NonUniquePerpendicularError : public DegeneracyError {
public:
    using DegeneracyError::DegeneracyError;
};

class GenericityError : public DegeneracyError {
public:
    GenericityError(int window_start, const std::string& what)
        : DegeneracyError(what), window_start_(window_start) {}
    int window_start() const noexcept { return window_start_; }

private:
    int window_start_;
};

class ProjectionFailure : public DegeneracyError {
public:
    using DegeneracyError::DegeneracyError;
};

class RigidCycleError : public DegeneracyError {
public:
    using DegeneracyError::DegeneracyError;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace hingekit
