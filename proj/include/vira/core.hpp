#pragma once

#include <stdexcept>
#include <string>

namespace vira {

/// Bad configuration value or unsupported input format.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structural validation failure (scenario files, session logs).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem / read / write failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stream fed out of contract (e.g. non-monotonic timestamps).
struct StreamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside its documented range.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Baseline requested before enough calibration turns were observed.
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }
inline double clamp11(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace vira
