#pragma once

#include <stdexcept>
#include <string>

namespace maxstream {

/// Raised when an iterative numerical procedure exhausts its configured budget
/// (refinement ceiling, bracket search limit, too few conditioning events).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxstream
