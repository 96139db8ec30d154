#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rcl {

// Base class for all domain errors raised by this library. I/O failures use
// IoError; everything else derives from Error and maps to the CLI's
// "domain error" exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvalidPmf : Error {
  using Error::Error;
};

struct NotARenewalSequence : Error {
  NotARenewalSequence(std::int64_t index, double value)
      : Error("not a renewal sequence: f[" + std::to_string(index) +
              "] = " + std::to_string(value) + " < 0"),
        index(index),
        value(value) {}
  std::int64_t index;
  double value;
};

struct KaluzaViolation : Error {
  using Error::Error;
};

struct UnknownLaw : Error {
  using Error::Error;
};

struct HorizonTooShort : Error {
  using Error::Error;
};

struct InvalidBias : Error {
  using Error::Error;
};

struct NotMutuallyAC : Error {
  using Error::Error;
};

struct WindowMismatch : Error {
  using Error::Error;
};

struct NoTrials : Error {
  using Error::Error;
};

struct OutOfRange : Error {
  OutOfRange(double value, double lo, double hi)
      : Error("value " + std::to_string(value) + " outside achievable range [" +
              std::to_string(lo) + ", " + std::to_string(hi) + "]"),
        value(value),
        lo(lo),
        hi(hi) {}
  double value, lo, hi;
};

struct DegenerateZeta : Error {
  using Error::Error;
};

struct BelowThreshold : Error {
  using Error::Error;
};

struct ScheduleExhausted : Error {
  using Error::Error;
};

struct WindowTooShort : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rcl
