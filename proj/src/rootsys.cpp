#include "adsp/rootsys.hpp"

#include <algorithm>
#include <numeric>

#include "adsp/errors.hpp"
#include "adsp/kernels.hpp"

namespace adsp {

StarQuiver::StarQuiver(std::vector<std::size_t> arm_lengths) : arm_lengths_(std::move(arm_lengths)) {
  std::size_t next = 1;
  neighbors_.emplace_back();
  for (auto len : arm_lengths_) {
    offsets_.push_back(next);
    std::size_t prev = 0;
    for (std::size_t j = 0; j < len; ++j) {
      neighbors_.emplace_back();
      neighbors_[next].push_back(prev);
      neighbors_[prev].push_back(next);
      prev = next++;
    }
  }
}

std::size_t StarQuiver::vertex(std::size_t arm, std::size_t pos) const {
  if (pos == 0) return 0;
  require_input(arm < k() && pos <= arm_lengths_[arm], "vertex out of range");
  return offsets_[arm] + pos - 1;
}

std::pair<std::size_t, std::size_t> StarQuiver::locate(std::size_t v) const {
  require_input(v < vertex_count(), "vertex out of range");
  if (v == 0) return {k(), 0};
  std::size_t arm = 0;
  while (v >= offsets_[arm] + arm_lengths_[arm]) ++arm;
  return {arm, v - offsets_[arm] + 1};
}

std::string StarQuiver::label(std::size_t v) const {
  if (v == 0) return "0";
  const auto [arm, pos] = locate(v);
  return "[" + std::to_string(arm + 1) + "," + std::to_string(pos) + "]";
}

bool StarQuiver::adjacent(std::size_t v, std::size_t w) const {
  const auto& nb = neighbors_[v];
  return std::find(nb.begin(), nb.end(), w) != nb.end();
}

const char* to_string(RootClass c) {
  switch (c) {
    case RootClass::real: return "real";
    case RootClass::imaginary: return "imaginary";
    case RootClass::not_root: break;
  }
  return "not_root";
}

Instance build_instance(std::span<const XiSequence> xs) {
  require_input(!xs.empty(), "need at least one xi sequence");
  const std::size_t n = xs.front().n();
  std::vector<std::size_t> lengths;
  for (const auto& x : xs) {
    require_input(x.n() == n, "xi sequences disagree on n");
    std::size_t len = 0;
    while (len + 1 < x.d() && x.ranks[len + 1] > 0) ++len;
    lengths.push_back(len);
  }
  StarQuiver q(lengths);
  DimVector alpha(q.vertex_count(), 0);
  Weight lambda(q.vertex_count(), Rational(0));
  alpha[0] = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lambda[0] -= xs[i].xi[0];
    for (std::size_t j = 1; j <= lengths[i]; ++j) {
      const auto v = q.vertex(i, j);
      alpha[v] = static_cast<std::int64_t>(xs[i].ranks[j]);
      lambda[v] = xs[i].xi[j - 1] - xs[i].xi[j];
    }
  }
  return {std::move(q), std::move(alpha), std::move(lambda)};
}

IntVector cartan_apply(const StarQuiver& q, std::span<const std::int64_t> beta) {
  IntVector out(q.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) {
    std::int64_t s = 2 * beta[v];
    for (auto w : q.neighbors(v)) s -= beta[w];
    out[v] = s;
  }
  return out;
}

std::int64_t cartan_form(const StarQuiver& q, std::span<const std::int64_t> beta,
                         std::span<const std::int64_t> gamma) {
  const auto cg = cartan_apply(q, gamma);
  return std::inner_product(beta.begin(), beta.end(), cg.begin(), std::int64_t{0});
}

std::int64_t defect_p(const StarQuiver& q, std::span<const std::int64_t> beta) {
  return 1 - cartan_form(q, beta, beta) / 2;
}

IntVector reflect(const StarQuiver& q, std::size_t v, std::span<const std::int64_t> beta) {
  IntVector out(beta.begin(), beta.end());
  std::int64_t c = 2 * beta[v];
  for (auto w : q.neighbors(v)) c -= beta[w];
  out[v] -= c;
  return out;
}

Weight coreflect(const StarQuiver& q, std::size_t v, std::span<const Rational> lambda) {
  Weight out(lambda.begin(), lambda.end());
  out[v] = -lambda[v];
  for (auto w : q.neighbors(v)) out[w] += lambda[v];
  return out;
}

Rational dot(std::span<const Rational> lambda, std::span<const std::int64_t> beta) {
  Rational s = 0;
  for (std::size_t v = 0; v < beta.size(); ++v) {
    if (beta[v] != 0) s += lambda[v] * Rational(static_cast<long>(beta[v]));
  }
  return s;
}

bool is_coordinate_vector(std::span<const std::int64_t> beta) {
  std::size_t ones = 0;
  for (auto b : beta) {
    if (b == 1) ++ones;
    else if (b != 0) return false;
  }
  return ones == 1;
}

bool support_connected(const StarQuiver& q, std::span<const std::int64_t> beta) {
  std::size_t start = beta.size(), total = 0;
  for (std::size_t v = 0; v < beta.size(); ++v) {
    if (beta[v] != 0) {
      ++total;
      if (start == beta.size()) start = v;
    }
  }
  if (total == 0) return false;
  std::vector<bool> seen(beta.size(), false);
  std::vector<std::size_t> queue{start};
  seen[start] = true;
  std::size_t reached = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ++reached;
    for (auto w : q.neighbors(queue[head])) {
      if (beta[w] != 0 && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return reached == total;
}

bool fundamental_region(const StarQuiver& q, std::span<const std::int64_t> beta) {
  if (!support_connected(q, beta)) return false;
  const auto c = cartan_apply(q, beta);
  return std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x <= 0; });
}

RootClass classify_root(const StarQuiver& q, std::span<const std::int64_t> beta_in) {
  IntVector beta(beta_in.begin(), beta_in.end());
  for (;;) {
    // positive roots have connected support; a reflection can disconnect a non-root
    if (!support_connected(q, beta)) return RootClass::not_root;
    if (is_coordinate_vector(beta)) return RootClass::real;
    const auto c = cartan_apply(q, beta);
    std::size_t pivot = beta.size();
    for (std::size_t v = 0; v < beta.size(); ++v) {
      if (beta[v] > 0 && c[v] > 0) {
        pivot = v;
        break;
      }
    }
    if (pivot == beta.size()) return RootClass::imaginary;  // Cβ <= 0 on a connected support
    beta[pivot] -= c[pivot];
    if (beta[pivot] < 0) return RootClass::not_root;
  }
}

IntVector unit_vector(const StarQuiver& q, std::size_t v) {
  IntVector e(q.vertex_count(), 0);
  e[v] = 1;
  return e;
}

std::vector<DimVector> enumerate_Rlambda(const StarQuiver& q, std::span<const std::int64_t> alpha,
                                         std::span<const Rational> lambda, std::size_t box_cap) {
  return kernels::scan_roots(q, alpha, lambda, box_cap, kernels::Exec::parallel);
}

}  // namespace adsp
