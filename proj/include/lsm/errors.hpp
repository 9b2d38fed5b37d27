#pragma once

#include <stdexcept>
#include <string>

namespace lsm {

// Root of every error raised by the library. Precondition violations on
// plain arguments (p < 2, n == 0, ...) use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A word would exceed the configured materialization cap.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// The word has no decomposition into images of single letters.
class NotAnImageError : public Error {
 public:
  using Error::Error;
};

// w^k is not a prefix (or suffix) of the word being stripped.
class NotPresentError : public Error {
 public:
  using Error::Error;
};

// Counts handed to inverse_counts are not the Parikh vector of an image.
class InconsistentCountsError : public Error {
 public:
  using Error::Error;
};

// A realized Parikh vector fell outside the nine-candidate frame.
class FrameViolationError : public Error {
 public:
  using Error::Error;
};

// An explicit witness construction failed its own validation.
class FormulaInvalidError : public Error {
 public:
  using Error::Error;
};

// A constructed word was not found within the membership search bound.
// This is not a proof that the word is not a factor.
class MembershipUnresolvedError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsm
