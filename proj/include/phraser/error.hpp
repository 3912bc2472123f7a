// Error hierarchy shared across the library. The CLI maps these to exit
// codes: UsageError -> 1, DataError -> 2, InternalError -> 3.

#ifndef PHRASER_ERROR_HPP
#define PHRASER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace phraser {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Misuse of the command-line surface (bad flags, missing arguments).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent external input: corpus files, config files,
// model files, out-of-range arguments, violated call preconditions.
class DataError : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace phraser

#endif  // PHRASER_ERROR_HPP
