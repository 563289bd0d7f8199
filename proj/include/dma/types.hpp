#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace dma {

using Vec2 = Eigen::Vector2d;
using IVec2 = Eigen::Vector2i;

// Error types used across the library.  All carry a message and derive from
// std::runtime_error so callers may catch them generically.
struct EmptyInterior : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonFiniteValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateLine : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutsideHull : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundedEnvelope : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuadratureNotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundaryNotNonnegative : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HypothesisViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotDiscreteConvex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dma
