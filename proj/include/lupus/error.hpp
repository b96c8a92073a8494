#pragma once

#include <stdexcept>
#include <string>

namespace lupus {

// Exception families map one-to-one onto CLI exit codes (see tools/lupus.cpp).

/// Invalid user-facing configuration: bad flags, bad plan, invalid search space.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data that cannot be parsed or violates a dataset invariant.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lupus
