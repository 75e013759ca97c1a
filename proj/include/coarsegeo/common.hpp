#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coarsegeo {

// Index into a space's materialized point registry. Id 0 is always the
// base point x0.
using PointId = std::uint32_t;

inline constexpr const char* kVersion = "coarsegeo 0.1.0";

// Closed-ball comparisons on real-valued radii use this slack so shell
// membership does not flap on the boundary.
inline constexpr double kRadiusTol = 1e-9;

// Tolerance for checks on real-valued (normed-space) data. Integer graph
// metrics are checked exactly.
inline constexpr double kRealTol = 1e-7;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed configs, space specs, product descriptors. The message carries
// the offending field path.
class SpecError : public Error {
public:
  using Error::Error;
};

// Operation called outside its contract (point not in space, D below the
// admissibility threshold, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace coarsegeo
