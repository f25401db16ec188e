#pragma once

#include <stdexcept>
#include <string>

namespace latcensus {

// A brute-force enumeration or census would exceed its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested tolerance cannot be met within the largest allowed truncation.
class PrecisionUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPrimitive : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace latcensus
