#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of an operation does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A check needs more stored levels than the input carries; extend the
/// input with `coskeleton` first.
class TruncationTooSmall : public InvalidArgument {
 public:
  TruncationTooSmall(int have, int need)
      : InvalidArgument("truncation " + std::to_string(have) + " is too small, level " +
                        std::to_string(need) + " is required (extend via cosk)"),
        have_(have),
        need_(need) {}
  int have() const noexcept { return have_; }
  int need() const noexcept { return need_; }

 private:
  int have_;
  int need_;
};

/// A structural law (simplicial identity, groupoid axiom, cocycle, ...) fails.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the configured size cap.
class EnumerationLimitExceeded : public Error {
 public:
  EnumerationLimitExceeded(std::size_t limit, double estimate)
      : Error("enumeration exceeds limit " + std::to_string(limit) + " (estimated size " +
              std::to_string(static_cast<long long>(estimate)) + ")"),
        limit_(limit),
        estimate_(estimate) {}
  std::size_t limit() const noexcept { return limit_; }
  double estimate() const noexcept { return estimate_; }

 private:
  std::size_t limit_;
  double estimate_;
};

/// Checked integer arithmetic overflowed.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

/// Process-wide cap on enumeration sizes (hom-sets, matching objects,
/// element lists). Zero means unlimited.
std::size_t enumeration_limit() noexcept;
void set_enumeration_limit(std::size_t limit) noexcept;

/// Throws EnumerationLimitExceeded when `count` is above the cap.
void check_enumeration(double count);

}  // namespace hgk
