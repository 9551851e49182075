#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace spherefill {

/// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative radius, zero volume, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parent spheres are collinear or coincident; no unique contact frame exists.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

/// A sphere lies outside the bounds of a spatial grid.
class BoundsError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Explicit time step produced a non-finite temperature, or the step size fails the stability bound.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, std::size_t particle)
      : Error(what), particle_(particle) {}
  std::size_t particle() const noexcept { return particle_; }

 private:
  std::size_t particle_;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::size_t line, std::string key)
      : Error(format(message, line, key)), line_(line), key_(std::move(key)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(const std::string& message, std::size_t line, const std::string& key) {
    std::string out = "config";
    if (line > 0) out += ":" + std::to_string(line);
    if (!key.empty()) out += " [" + key + "]";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spherefill
