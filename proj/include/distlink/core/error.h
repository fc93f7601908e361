#ifndef DISTLINK_CORE_ERROR_H_
#define DISTLINK_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace distlink {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed files, violated invariants, mismatched schemas or dimensions.
class InputError : public Error {
 public:
  using Error::Error;
};

// An exhaustive oracle was asked to handle an instance above its size cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// A search exceeded its configured node budget. The instance is too hard for
// the budget; no partial answer is returned.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// A statistic is undefined for the given sample (zero variance, empty band,
// empty ground truth).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace distlink

#endif  // DISTLINK_CORE_ERROR_H_
