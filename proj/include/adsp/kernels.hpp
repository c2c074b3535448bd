#pragma once

// Data-parallel kernels over the lattice box [0, alpha]. Each kernel has a plain
// serial reference kept for cross-checking and benchmarking.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "adsp/rational.hpp"
#include "adsp/rootsys.hpp"

namespace adsp::kernels {

enum class Exec { serial_reference, parallel };

/// Mixed-radix encoding of the box [0, alpha]; vertex 0 is the most significant
/// digit, so gamma - beta always precedes gamma.
class BoxIndex {
 public:
  /// Throws ResourceError if the box has more than `cap` points.
  BoxIndex(std::span<const std::int64_t> alpha, std::size_t cap);

  std::size_t size() const { return size_; }
  std::size_t dims() const { return radix_.size(); }
  std::size_t encode(std::span<const std::int64_t> gamma) const;
  void decode(std::size_t index, std::span<std::int64_t> out) const;
  std::int64_t bound(std::size_t v) const { return radix_[v] - 1; }
  std::size_t stride(std::size_t v) const { return stride_[v]; }

 private:
  std::vector<std::int64_t> radix_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
};

/// Positive roots beta with 0 < beta <= alpha and lambda.beta = 0, in box order.
std::vector<DimVector> scan_roots(const StarQuiver& q, std::span<const std::int64_t> alpha,
                                  std::span<const Rational> lambda, std::size_t cap, Exec exec);

inline constexpr std::int32_t kNoDecomposition = std::numeric_limits<std::int32_t>::min() / 2;

struct DecompositionTable {
  BoxIndex box;
  std::vector<std::int32_t> best;  // max total defect over decompositions, or kNoDecomposition
  std::vector<std::int32_t> last;  // index into parts of a final summand, -1 if none
};

/// Unbounded-multiplicity decomposition DP over the box:
/// best(0) = 0, best(g) = max over parts b <= g of defect(b) + best(g - b).
DecompositionTable decomposition_dp(std::span<const std::int64_t> alpha, std::span<const DimVector> parts,
                                    std::span<const std::int32_t> defects, std::size_t cap, Exec exec);

/// Walks `last` back from alpha. Requires best(alpha) != kNoDecomposition.
std::vector<DimVector> backtrack(const DecompositionTable& t, std::span<const std::int64_t> alpha,
                                 std::span<const DimVector> parts);

}  // namespace adsp::kernels
