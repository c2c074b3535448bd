#include "adsp/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adsp/errors.hpp"

namespace adsp::kernels {

BoxIndex::BoxIndex(std::span<const std::int64_t> alpha, std::size_t cap)
    : radix_(alpha.size()), stride_(alpha.size()) {
  for (std::size_t v = alpha.size(); v-- > 0;) {
    require_input(alpha[v] >= 0, "box bound must be nonnegative");
    radix_[v] = alpha[v] + 1;
    stride_[v] = size_;
    const auto r = static_cast<std::size_t>(radix_[v]);
    if (size_ > cap / r) {
      throw ResourceError("lattice box exceeds the cap of " + std::to_string(cap) + " points");
    }
    size_ *= r;
  }
  if (size_ > cap) throw ResourceError("lattice box exceeds the cap of " + std::to_string(cap) + " points");
}

std::size_t BoxIndex::encode(std::span<const std::int64_t> gamma) const {
  std::size_t idx = 0;
  for (std::size_t v = 0; v < radix_.size(); ++v) idx += static_cast<std::size_t>(gamma[v]) * stride_[v];
  return idx;
}

void BoxIndex::decode(std::size_t index, std::span<std::int64_t> out) const {
  for (std::size_t v = 0; v < radix_.size(); ++v) {
    out[v] = static_cast<std::int64_t>(index / stride_[v]);
    index %= stride_[v];
  }
}

namespace {

// lambda scaled to a common denominator; int64 when every partial sum over the
// box is guaranteed to fit, otherwise GMP integers.
struct ScaledWeight {
  bool small = true;
  std::vector<std::int64_t> fast;
  std::vector<Integer> big;

  ScaledWeight(std::span<const Rational> lambda, std::span<const std::int64_t> alpha) {
    Integer den = 1;
    for (const auto& l : lambda) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_den_mpz_t());
    Integer total = 1;
    for (auto a : alpha) total += a;
    const Integer limit = Integer(1) << 62;
    for (const auto& l : lambda) {
      Integer w = l.get_num() * (den / l.get_den());
      if (abs(w) * total >= limit) small = false;
      big.push_back(w);
    }
    if (small) {
      for (const auto& w : big) fast.push_back(w.get_si());
    }
  }

  bool orthogonal(std::span<const std::int64_t> beta) const {
    if (small) {
      std::int64_t s = 0;
      for (std::size_t v = 0; v < beta.size(); ++v) s += fast[v] * beta[v];
      return s == 0;
    }
    Integer s = 0;
    for (std::size_t v = 0; v < beta.size(); ++v) s += big[v] * beta[v];
    return s == 0;
  }
};

bool is_candidate(const StarQuiver& q, std::span<const std::int64_t> beta, const ScaledWeight& w) {
  if (!w.orthogonal(beta)) return false;
  // roots have p >= 0; the quadratic form is a cheap filter before the Weyl walk
  if (defect_p(q, beta) < 0) return false;
  return classify_root(q, beta) != RootClass::not_root;
}

std::vector<DimVector> scan_serial(const StarQuiver& q, std::span<const std::int64_t> alpha,
                                   std::span<const Rational> lambda, const BoxIndex& box) {
  std::vector<DimVector> out;
  DimVector beta(alpha.size(), 0);
  for (std::size_t idx = 1; idx < box.size(); ++idx) {
    // odometer: least significant digit is the last vertex
    for (std::size_t v = alpha.size(); v-- > 0;) {
      if (beta[v] < alpha[v]) {
        ++beta[v];
        break;
      }
      beta[v] = 0;
    }
    if (sgn(dot(lambda, beta)) != 0) continue;
    if (classify_root(q, beta) != RootClass::not_root) out.push_back(beta);
  }
  return out;
}

std::vector<DimVector> scan_parallel(const StarQuiver& q, std::span<const std::int64_t> alpha,
                                     std::span<const Rational> lambda, const BoxIndex& box) {
  const ScaledWeight weight(lambda, alpha);
  std::vector<unsigned char> hit(box.size(), 0);
  const auto n = static_cast<std::int64_t>(box.size());
#pragma omp parallel
  {
    DimVector beta(alpha.size());
#pragma omp for schedule(dynamic, 4096)
    for (std::int64_t idx = 1; idx < n; ++idx) {
      box.decode(static_cast<std::size_t>(idx), beta);
      hit[static_cast<std::size_t>(idx)] = is_candidate(q, beta, weight) ? 1 : 0;
    }
  }
  std::vector<DimVector> out;
  DimVector beta(alpha.size());
  for (std::size_t idx = 1; idx < box.size(); ++idx) {
    if (!hit[idx]) continue;
    box.decode(idx, beta);
    out.push_back(beta);
  }
  return out;
}

bool fits_below(std::span<const std::int64_t> part, std::span<const std::int64_t> gamma) {
  for (std::size_t v = 0; v < part.size(); ++v) {
    if (part[v] > gamma[v]) return false;
  }
  return true;
}

void dp_reference(DecompositionTable& t, std::span<const std::int64_t> alpha, std::span<const DimVector> parts,
                  std::span<const std::int32_t> defects) {
  std::vector<std::size_t> offsets;
  for (const auto& b : parts) offsets.push_back(t.box.encode(b));
  DimVector gamma(alpha.size());
  for (std::size_t idx = 1; idx < t.box.size(); ++idx) {
    t.box.decode(idx, gamma);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (!fits_below(parts[p], gamma)) continue;
      const auto prev = t.best[idx - offsets[p]];
      if (prev == kNoDecomposition) continue;
      const auto cand = prev + defects[p];
      if (cand > t.best[idx]) {
        t.best[idx] = cand;
        t.last[idx] = static_cast<std::int32_t>(p);
      }
    }
  }
}

// Part-major sweep. For a fixed part b, the update at gamma reads gamma - b,
// which differs from gamma in the most significant coordinate `lead` where b is
// nonzero; all points sharing that coordinate are independent, so each slab is
// processed in parallel and slabs in increasing order.
void dp_parallel(DecompositionTable& t, std::span<const std::int64_t> alpha, std::span<const DimVector> parts,
                 std::span<const std::int32_t> defects) {
  const std::size_t dims = alpha.size();
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const DimVector& b = parts[p];
    const std::size_t offset = t.box.encode(b);
    std::size_t lead = 0;
    while (lead < dims && b[lead] == 0) ++lead;
    if (lead == dims) continue;

    // sub-box over every coordinate except `lead`, each ranging over [b_v, alpha_v]
    std::vector<std::int64_t> lo(dims), extent(dims);
    std::size_t slab = 1;
    for (std::size_t v = 0; v < dims; ++v) {
      lo[v] = b[v];
      extent[v] = (v == lead) ? 1 : alpha[v] - b[v] + 1;
      slab *= static_cast<std::size_t>(extent[v]);
    }
    const std::int32_t gain = defects[p];
    for (std::int64_t c = b[lead]; c <= alpha[lead]; ++c) {
      const std::size_t base = static_cast<std::size_t>(c) * t.box.stride(lead);
      const auto count = static_cast<std::int64_t>(slab);
#pragma omp parallel
      {
        std::int64_t first = 0, last = count;
#ifdef _OPENMP
        const std::int64_t nt = omp_get_num_threads(), tid = omp_get_thread_num();
        first = count * tid / nt;
        last = count * (tid + 1) / nt;
#endif
        if (first < last) {
          // decode `first` into sub-box digits, then walk an odometer
          std::vector<std::int64_t> digit(dims, 0);
          std::int64_t rem = first;
          for (std::size_t v = dims; v-- > 0;) {
            digit[v] = rem % extent[v];
            rem /= extent[v];
          }
          std::size_t idx = base;
          for (std::size_t v = 0; v < dims; ++v) {
            if (v != lead) idx += static_cast<std::size_t>(lo[v] + digit[v]) * t.box.stride(v);
          }
          for (std::int64_t s = first; s < last; ++s) {
            const auto prev = t.best[idx - offset];
            if (prev != kNoDecomposition && prev + gain > t.best[idx]) {
              t.best[idx] = prev + gain;
              t.last[idx] = static_cast<std::int32_t>(p);
            }
            for (std::size_t v = dims; v-- > 0;) {
              if (v == lead) continue;
              if (++digit[v] < extent[v]) {
                idx += t.box.stride(v);
                break;
              }
              idx -= static_cast<std::size_t>(digit[v] - 1) * t.box.stride(v);
              digit[v] = 0;
            }
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<DimVector> scan_roots(const StarQuiver& q, std::span<const std::int64_t> alpha,
                                  std::span<const Rational> lambda, std::size_t cap, Exec exec) {
  require_input(alpha.size() == q.vertex_count() && lambda.size() == q.vertex_count(),
                "vector length does not match the quiver");
  const BoxIndex box(alpha, cap);
  return exec == Exec::parallel ? scan_parallel(q, alpha, lambda, box) : scan_serial(q, alpha, lambda, box);
}

DecompositionTable decomposition_dp(std::span<const std::int64_t> alpha, std::span<const DimVector> parts,
                                    std::span<const std::int32_t> defects, std::size_t cap, Exec exec) {
  require_input(parts.size() == defects.size(), "one defect per part");
  DecompositionTable t{BoxIndex(alpha, cap), {}, {}};
  t.best.assign(t.box.size(), kNoDecomposition);
  t.last.assign(t.box.size(), -1);
  t.best[0] = 0;
  for (const auto& b : parts) {
    require_input(b.size() == alpha.size() && fits_below(b, alpha), "part outside the box");
    require_input(std::any_of(b.begin(), b.end(), [](std::int64_t x) { return x != 0; }), "zero part");
  }
  if (exec == Exec::parallel) {
    dp_parallel(t, alpha, parts, defects);
  } else {
    dp_reference(t, alpha, parts, defects);
  }
  return t;
}

std::vector<DimVector> backtrack(const DecompositionTable& t, std::span<const std::int64_t> alpha,
                                 std::span<const DimVector> parts) {
  std::vector<DimVector> out;
  std::size_t idx = t.box.encode(alpha);
  ensure(t.best[idx] != kNoDecomposition, "backtrack from an undecomposable vector");
  while (idx != 0) {
    const auto p = t.last[idx];
    ensure(p >= 0, "decomposition table has a broken predecessor chain");
    out.push_back(parts[static_cast<std::size_t>(p)]);
    idx -= t.box.encode(parts[static_cast<std::size_t>(p)]);
  }
  return out;
}

}  // namespace adsp::kernels
