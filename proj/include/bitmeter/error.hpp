// SPDX-License-Identifier: Apache-2.0

#ifndef BITMETER_ERROR_HPP
#define BITMETER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace bitmeter {

/// Failure categories surfaced by the library. The CLI maps these to
/// process exit codes.
enum class errc {
  validation,             ///< inconsistent spec, pmf, or argument
  unknown_format,         ///< format name not resolvable
  enumeration_too_large,  ///< format width above the enumeration guard
  oversize_exact,         ///< exact construction above the matrix guard
  io,                     ///< file read/write failure
  non_convergence,        ///< iterative solver ran out of iterations
  undefined_efficiency,   ///< efficiency ratio with zero capacity
  space_mismatch,         ///< channel/distribution spaces do not line up
};

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bitmeter

#endif  // BITMETER_ERROR_HPP
