#pragma once

#include <stdexcept>
#include <string>

namespace fiberlab {

/// Point left every chart domain, or a field was asked for outside its reach.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Near-singular metric, degenerate frame, log outside the principal branch.
class ConditioningError : public std::runtime_error {
public:
  explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

/// A path step outgrew the chart-overlap guard; caller should refine dt.
class RefinementError : public std::runtime_error {
public:
  explicit RefinementError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid experiment configuration (schema violation, bad value).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fiberlab
