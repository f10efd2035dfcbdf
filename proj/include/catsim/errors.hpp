#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

// Physically meaningless input (non-positive mass, frequency, ...). The
// message names the offending field.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Configuration document does not match the schema.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number-basis representation too small for the requested state or gate.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, std::size_t required_dim)
      : std::runtime_error(what), required_dim_(required_dim) {}
  std::size_t required_dim() const noexcept { return required_dim_; }

 private:
  std::size_t required_dim_;
};

// Unitary propagation lost more norm than allowed.
class NormDriftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Protocol preconditions (feasibility, free-fall regime) not met.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace catsim
