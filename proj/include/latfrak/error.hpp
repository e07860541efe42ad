#pragma once

#include <stdexcept>
#include <string>

namespace latfrak {

// Base for every failure the library reports. kind() is a stable
// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error("parameter", w) {}
};

// V above the Rayleigh speed.
struct RegimeError : Error {
  RegimeError(const std::string& w, double v, double cr)
      : Error("regime", w), speed(v), rayleigh(cr) {}
  double speed;
  double rayleigh;
};

struct PoleProximityError : Error {
  PoleProximityError(const std::string& w, double x) : Error("pole_proximity", w), xi(x) {}
  double xi;
};

struct DegenerateError : Error {
  explicit DegenerateError(const std::string& w) : Error("degenerate", w) {}
};

struct UnresolvedFeatureError : Error {
  UnresolvedFeatureError(const std::string& w, double a, double b)
      : Error("unresolved_feature", w), lo(a), hi(b) {}
  double lo;
  double hi;
};

struct UnwrappingError : Error {
  explicit UnwrappingError(const std::string& w) : Error("unwrapping", w) {}
};

struct FactorizationError : Error {
  explicit FactorizationError(const std::string& w) : Error("factorization", w) {}
};

struct InvalidLoadError : Error {
  explicit InvalidLoadError(const std::string& w) : Error("invalid_load", w) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error("usage", w) {}
};

}  // namespace latfrak
