#pragma once

#include <stdexcept>
#include <string>

namespace recsim {

/// An invalid parameter, configuration file, or preset request.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace recsim
