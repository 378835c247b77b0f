#pragma once

#include <stdexcept>
#include <string>

namespace rgtv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument values, mismatched dimensions, malformed text formats.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Inconsistent solver configuration (step sizes, parameter ranges, config keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& reason)
        : Error(path + ": " + reason), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Input carries no usable information (e.g. a constant image for kernel estimation).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Kernel projection had no positive mass to normalize.
class DegenerateKernel : public Error {
public:
    using Error::Error;
};

class SolverFailure : public Error {
public:
    using Error::Error;
};

}  // namespace rgtv
