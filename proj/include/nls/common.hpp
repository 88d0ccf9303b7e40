#pragma once

#include <stdexcept>
#include <string>

namespace nls {

inline constexpr double kPi = 3.14159265358979323846;

// Bad inputs or preconditions violated by the caller. The CLI maps these
// to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nls
