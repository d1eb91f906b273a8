#pragma once

#include <stdexcept>
#include <string>

namespace hashpeak {

/// Library-wide exception type. The message is always self-contained
/// (file paths, line numbers, offending values).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hashpeak
