#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adsp/classdata.hpp"
#include "adsp/rational.hpp"

namespace adsp {

using IntVector = std::vector<std::int64_t>;
/// Nonnegative dimension vector, one entry per star vertex (center first, then arm-major).
using DimVector = IntVector;
using Weight = std::vector<Rational>;

/// Star-shaped tree: center 0 and k arms; arm i holds vertices [i,1..arm_lengths[i]]
/// (arms are 0-based here, positions 1-based). Arrows point toward the center.
class StarQuiver {
 public:
  explicit StarQuiver(std::vector<std::size_t> arm_lengths);

  std::size_t k() const { return arm_lengths_.size(); }
  std::size_t arm_length(std::size_t arm) const { return arm_lengths_[arm]; }
  const std::vector<std::size_t>& arm_lengths() const { return arm_lengths_; }
  std::size_t vertex_count() const { return neighbors_.size(); }

  /// Index of [arm, pos]; pos == 0 denotes the center.
  std::size_t vertex(std::size_t arm, std::size_t pos) const;
  /// (arm, pos) of a vertex; the center is reported as (k, 0).
  std::pair<std::size_t, std::size_t> locate(std::size_t v) const;
  std::string label(std::size_t v) const;
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_[v]; }
  bool adjacent(std::size_t v, std::size_t w) const;

  friend bool operator==(const StarQuiver&, const StarQuiver&) = default;

 private:
  std::vector<std::size_t> arm_lengths_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

struct Instance {
  StarQuiver quiver;
  DimVector alpha;
  Weight lambda;
};

enum class RootClass { not_root, real, imaginary };
const char* to_string(RootClass c);

/// Dimension vector and weight attached to a tuple of xi sequences, with each arm
/// cut at its first zero rank. Throws InputError on mismatched n.
Instance build_instance(std::span<const XiSequence> xs);

IntVector cartan_apply(const StarQuiver& q, std::span<const std::int64_t> beta);
std::int64_t defect_p(const StarQuiver& q, std::span<const std::int64_t> beta);
/// beta^T C gamma.
std::int64_t cartan_form(const StarQuiver& q, std::span<const std::int64_t> beta,
                         std::span<const std::int64_t> gamma);

IntVector reflect(const StarQuiver& q, std::size_t v, std::span<const std::int64_t> beta);
Weight coreflect(const StarQuiver& q, std::size_t v, std::span<const Rational> lambda);

Rational dot(std::span<const Rational> lambda, std::span<const std::int64_t> beta);

bool is_coordinate_vector(std::span<const std::int64_t> beta);
bool support_connected(const StarQuiver& q, std::span<const std::int64_t> beta);
bool fundamental_region(const StarQuiver& q, std::span<const std::int64_t> beta);
RootClass classify_root(const StarQuiver& q, std::span<const std::int64_t> beta);

IntVector unit_vector(const StarQuiver& q, std::size_t v);

inline constexpr std::size_t kDefaultBoxCap = 5'000'000;

/// Positive roots beta <= alpha with lambda.beta = 0, in mixed-radix box order
/// (center coordinate outermost). Throws ResourceError past `box_cap` points.
std::vector<DimVector> enumerate_Rlambda(const StarQuiver& q, std::span<const std::int64_t> alpha,
                                         std::span<const Rational> lambda,
                                         std::size_t box_cap = kDefaultBoxCap);

}  // namespace adsp
