#pragma once

#include <stdexcept>
#include <string>

namespace glx {

// Library-wide error type for contract violations and solver failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace glx
