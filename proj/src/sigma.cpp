#include "adsp/sigma.hpp"

#include <algorithm>
#include <numeric>

#include "adsp/errors.hpp"

namespace adsp {

const char* to_string(SolutionCount c) {
  switch (c) {
    case SolutionCount::unique: return "unique";
    case SolutionCount::infinite: return "infinite";
    case SolutionCount::none: break;
  }
  return "none";
}

namespace {

void check_instance(const Instance& inst) {
  const auto nv = inst.quiver.vertex_count();
  require_input(inst.alpha.size() == nv && inst.lambda.size() == nv, "vector length does not match the quiver");
  require_input(std::all_of(inst.alpha.begin(), inst.alpha.end(), [](std::int64_t a) { return a >= 0; }),
                "dimension vector has a negative entry");
  require_input(inst.alpha[0] > 0, "dimension vector vanishes at the center");
}

Decision member_decision(RootClass rc, std::int64_t p_alpha, std::optional<std::int64_t> best) {
  Decision d;
  d.member = true;
  d.root_class = rc;
  d.solution_count = rc == RootClass::real ? SolutionCount::unique : SolutionCount::infinite;
  d.certificate = MemberOk{p_alpha, best};
  return d;
}

// Shared prefix of decide and decide_bruteforce: the trace obstruction and the
// root test. Returns a final decision, or nullopt to continue.
std::optional<Decision> screen(const Instance& inst, RootClass rc) {
  const Rational ld = dot(inst.lambda, inst.alpha);
  if (sgn(ld) != 0) {
    Decision d;
    d.root_class = rc;
    d.certificate = TraceObstruction{ld};
    return d;
  }
  if (rc == RootClass::not_root) return Decision{};
  return std::nullopt;
}

std::int64_t total_defect(const StarQuiver& q, const std::vector<DimVector>& parts) {
  std::int64_t s = 0;
  for (const auto& b : parts) s += defect_p(q, b);
  return s;
}

}  // namespace

Decision decide(const Instance& inst, const DecideOptions& opts) {
  check_instance(inst);
  const auto& q = inst.quiver;
  const RootClass rc = classify_root(q, inst.alpha);
  if (auto early = screen(inst, rc)) return *early;

  auto roots = kernels::scan_roots(q, inst.alpha, inst.lambda, opts.box_cap, opts.exec);
  std::erase(roots, inst.alpha);
  std::vector<std::int32_t> defects;
  defects.reserve(roots.size());
  for (const auto& b : roots) defects.push_back(static_cast<std::int32_t>(defect_p(q, b)));

  const auto table = kernels::decomposition_dp(inst.alpha, roots, defects, opts.box_cap, opts.exec);
  const auto best = table.best[table.box.encode(inst.alpha)];
  const std::int64_t p_alpha = defect_p(q, inst.alpha);
  if (best == kernels::kNoDecomposition) return member_decision(rc, p_alpha, std::nullopt);
  if (p_alpha > best) return member_decision(rc, p_alpha, best);

  Decision d;
  d.root_class = rc;
  auto parts = kernels::backtrack(table, inst.alpha, roots);
  std::sort(parts.begin(), parts.end());
  const auto sum_p = total_defect(q, parts);
  ensure(sum_p == best, "backtracked decomposition disagrees with the DP value");
  d.certificate = Decomposition{std::move(parts), sum_p, p_alpha};
  return d;
}

namespace {

struct Bruteforce {
  const StarQuiver& q;
  std::vector<DimVector> roots;
  std::vector<std::int64_t> defects;
  std::vector<std::size_t> chosen;
  std::optional<std::int64_t> best;
  std::vector<std::size_t> best_parts;

  // parts are chosen with non-decreasing index, so each multiset is visited once
  void search(DimVector& rest, std::size_t from, std::int64_t acc) {
    if (std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; })) {
      if (chosen.size() >= 2 && (!best || acc > *best)) {
        best = acc;
        best_parts = chosen;
      }
      return;
    }
    for (std::size_t r = from; r < roots.size(); ++r) {
      const auto& b = roots[r];
      bool fits = true;
      for (std::size_t v = 0; v < b.size() && fits; ++v) fits = b[v] <= rest[v];
      if (!fits) continue;
      for (std::size_t v = 0; v < b.size(); ++v) rest[v] -= b[v];
      chosen.push_back(r);
      search(rest, r, acc + defects[r]);
      chosen.pop_back();
      for (std::size_t v = 0; v < b.size(); ++v) rest[v] += b[v];
    }
  }
};

void enumerate_box(std::span<const std::int64_t> alpha, DimVector& cur, std::size_t v,
                   std::vector<DimVector>& out) {
  if (v == alpha.size()) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t x = 0; x <= alpha[v]; ++x) {
    cur[v] = x;
    enumerate_box(alpha, cur, v + 1, out);
  }
  cur[v] = 0;
}

}  // namespace

Decision decide_bruteforce(const Instance& inst, std::int64_t bound) {
  check_instance(inst);
  const auto total = std::accumulate(inst.alpha.begin(), inst.alpha.end(), std::int64_t{0});
  require_input(total <= bound, "brute-force oracle limited to coordinate sum " + std::to_string(bound));
  const auto& q = inst.quiver;
  const RootClass rc = classify_root(q, inst.alpha);
  if (auto early = screen(inst, rc)) return *early;

  std::vector<DimVector> box;
  DimVector cur(inst.alpha.size(), 0);
  enumerate_box(inst.alpha, cur, 0, box);
  Bruteforce bf{q, {}, {}, {}, std::nullopt, {}};
  for (const auto& b : box) {
    if (sgn(dot(inst.lambda, b)) != 0) continue;
    if (classify_root(q, b) == RootClass::not_root) continue;
    bf.roots.push_back(b);
    bf.defects.push_back(defect_p(q, b));
  }
  DimVector rest = inst.alpha;
  bf.search(rest, 0, 0);

  const std::int64_t p_alpha = defect_p(q, inst.alpha);
  if (!bf.best || p_alpha > *bf.best) return member_decision(rc, p_alpha, bf.best);
  Decision d;
  d.root_class = rc;
  std::vector<DimVector> parts;
  for (auto r : bf.best_parts) parts.push_back(bf.roots[r]);
  std::sort(parts.begin(), parts.end());
  d.certificate = Decomposition{std::move(parts), *bf.best, p_alpha};
  return d;
}

bool is_rigid(const Instance& inst, const DecideOptions& opts) {
  const auto d = decide(inst, opts);
  return d.member && d.root_class == RootClass::real;
}

namespace {

std::int64_t gcd_of(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

// Cβ vanishes on the support of β, and the support is connected: the support is
// then an extended Dynkin diagram and β a multiple of its null root.
bool is_null_on_support(const StarQuiver& q, std::span<const std::int64_t> beta) {
  if (!support_connected(q, beta)) return false;
  const auto c = cartan_apply(q, beta);
  for (std::size_t v = 0; v < beta.size(); ++v) {
    if (beta[v] != 0 && c[v] != 0) return false;
  }
  return true;
}

std::vector<DimVector> copies(const DimVector& v, std::int64_t m) {
  return std::vector<DimVector>(static_cast<std::size_t>(m), v);
}

DimVector divided(std::span<const std::int64_t> v, std::int64_t g) {
  DimVector out(v.begin(), v.end());
  for (auto& x : out) x /= g;
  return out;
}

Decision non_member(const Instance& inst, RootClass rc, std::vector<DimVector> parts) {
  std::sort(parts.begin(), parts.end());
  Decision d;
  d.root_class = rc;
  const auto sum_p = total_defect(inst.quiver, parts);
  d.certificate = Decomposition{std::move(parts), sum_p, defect_p(inst.quiver, inst.alpha)};
  return d;
}

}  // namespace

Decision classify_nilpotent(const Instance& inst) {
  check_instance(inst);
  require_input(std::all_of(inst.lambda.begin(), inst.lambda.end(), [](const Rational& l) { return sgn(l) == 0; }),
                "nilpotent classifier requires lambda = 0");
  const auto& q = inst.quiver;
  const auto& alpha = inst.alpha;
  const std::int64_t p_alpha = defect_p(q, alpha);

  if (is_coordinate_vector(alpha)) return member_decision(RootClass::real, p_alpha, std::nullopt);

  if (!fundamental_region(q, alpha)) {
    const RootClass rc = classify_root(q, alpha);
    if (rc == RootClass::not_root) return Decision{};
    // alpha = s_v(alpha) + c·ε_v with c = (Cα)_v > 0; the defects sum to p(alpha)
    const auto c = cartan_apply(q, alpha);
    std::size_t v = 0;
    while (c[v] <= 0) ++v;
    auto parts = copies(unit_vector(q, v), c[v]);
    parts.push_back(reflect(q, v, alpha));
    return non_member(inst, rc, std::move(parts));
  }

  // type (I): alpha = m·δ on an extended Dynkin support, m >= 2
  if (is_null_on_support(q, alpha)) {
    const auto m = gcd_of(alpha);
    if (m >= 2) return non_member(inst, RootClass::imaginary, copies(divided(alpha, m), m));
    return member_decision(RootClass::imaginary, p_alpha, std::nullopt);
  }

  // type (II): a leaf w with alpha_w = 1 hanging off an extending vertex of such a support
  for (std::size_t w = 0; w < alpha.size(); ++w) {
    if (alpha[w] != 1) continue;
    DimVector rest = alpha;
    rest[w] = 0;
    if (!is_null_on_support(q, rest)) continue;
    const auto m = gcd_of(rest);
    if (m < 2) continue;
    const auto delta = divided(rest, m);
    std::size_t attached = 0;
    bool extending = false;
    for (auto u : q.neighbors(w)) {
      if (delta[u] == 0) continue;
      ++attached;
      extending = delta[u] == 1;
    }
    if (attached == 1 && extending) {
      auto parts = copies(delta, m);
      parts.push_back(unit_vector(q, w));
      return non_member(inst, RootClass::imaginary, std::move(parts));
    }
  }
  return member_decision(RootClass::imaginary, p_alpha, std::nullopt);
}

Decision decide_generic(const Instance& inst, const ClassTuple& t, std::size_t state_cap) {
  check_instance(inst);
  require_input(is_generic(t, state_cap), "class tuple does not have generic eigenvalues");
  const RootClass rc = classify_root(inst.quiver, inst.alpha);
  if (rc == RootClass::not_root) return Decision{};
  return member_decision(rc, defect_p(inst.quiver, inst.alpha), std::nullopt);
}

bool certificate_valid(const Instance& inst, const Decomposition& d) {
  const auto& q = inst.quiver;
  if (d.parts.size() < 2) return false;
  DimVector sum(inst.alpha.size(), 0);
  std::int64_t sum_p = 0;
  for (const auto& b : d.parts) {
    if (b.size() != sum.size()) return false;
    if (classify_root(q, b) == RootClass::not_root) return false;
    if (sgn(dot(inst.lambda, b)) != 0) return false;
    for (std::size_t v = 0; v < b.size(); ++v) sum[v] += b[v];
    sum_p += defect_p(q, b);
  }
  return sum == inst.alpha && sum_p == d.sum_p && d.p_alpha == defect_p(q, inst.alpha) && sum_p >= d.p_alpha;
}

}  // namespace adsp
