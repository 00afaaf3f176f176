#ifndef ULTRA_IDS_HPP_
#define ULTRA_IDS_HPP_

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>

namespace ultra {

// A vertex is either a named vertex (family == kNamedFamily) or the index-th
// member of a countable tail family.  Tail indices are 1-based.
inline constexpr std::int32_t kNamedFamily = -1;

struct VertexId {
  std::int32_t family = kNamedFamily;
  std::int64_t index = 0;

  static VertexId named(std::int64_t id) { return {kNamedFamily, id}; }
  static VertexId tail(std::int32_t family, std::int64_t k) { return {family, k}; }
  bool is_named() const { return family == kNamedFamily; }
  auto operator<=>(const VertexId&) const = default;
};

// An edge instance: either a concrete edge, or one member of an indexed
// bundle.  Bundle indices are 1-based.
struct EdgeRef {
  std::int32_t concrete = -1;  // concrete edge id, or -1
  std::int32_t bundle = -1;    // bundle id, or -1
  std::int64_t index = 0;      // bundle instance index (>= 1)

  static EdgeRef concrete_edge(std::int32_t id) { return {id, -1, 0}; }
  static EdgeRef bundle_edge(std::int32_t b, std::int64_t k) { return {-1, b, k}; }
  bool is_concrete() const { return concrete >= 0; }
  auto operator<=>(const EdgeRef&) const = default;
};

struct UltraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A normal-form computation exceeded its configured element budget; the
// presentation is outside the supported shape.
struct BudgetError : UltraError {
  using UltraError::UltraError;
};

// The operation is not available for this input tier.
struct TierError : UltraError {
  using UltraError::UltraError;
};

// Precondition violation on a value-level operation (wrong domain, word too
// short, non-idempotent argument, ...).
struct DomainError : UltraError {
  using UltraError::UltraError;
};

// The greedy boundary-point extension could not terminate.
struct ExtensionStuckError : UltraError {
  using UltraError::UltraError;
};

}  // namespace ultra

#endif  // ULTRA_IDS_HPP_
