#pragma once

#include <stdexcept>
#include <string>

namespace dop {

// Relation input whose transitive closure would force p < p.
struct CycleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed instance file (bad JSON, wrong shape, duplicate labels).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relation pair names an element that is not in the ground set.
struct UnknownLabel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested size is above a documented enumeration guard.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hull requested in ambient dimension above the configured cap.
struct DimensionTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation needs at least one point.
struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Witness does not satisfy the crossing predicate for the given walk.
struct InvalidWitness : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Functional is identically zero where a nonzero one is required.
struct ZeroFunctional : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dop
