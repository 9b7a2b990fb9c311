#pragma once

#include <stdexcept>
#include <string>

namespace ecpe {

// Error categories mirror the CLI exit codes: ConfigError -> 1,
// DataError -> 2, ModelError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace ecpe
