#pragma once

#include <stdexcept>
#include <string>

namespace stokeseig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. r <= 0, k = 0).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Invalid or degenerate boundary description.
class GeometryError : public Error {
  public:
    using Error::Error;
};

/// Kernel evaluated at coincident source and target.
class SingularityError : public Error {
  public:
    using Error::Error;
};

/// Adaptive quadrature exceeded its refinement budget.
class QuadratureError : public Error {
  public:
    QuadratureError(const std::string& what, int panel) : Error(what), panel_(panel) {}
    int panel() const noexcept { return panel_; }

  private:
    int panel_;
};

/// Invalid run configuration; field() names the offending entry.
class ConfigError : public Error {
  public:
    ConfigError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

}  // namespace stokeseig
