#include "adsp/construct.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "adsp/errors.hpp"

namespace adsp {

namespace {

std::string arrow_name(const char* kind, std::size_t arm, std::size_t pos) {
  return std::string(kind) + "[" + std::to_string(arm + 1) + "][" + std::to_string(pos) + "]";
}

// The pair of maps between v and one neighbor w, seen from v: `in` maps X_w -> X_v,
// `out` maps X_v -> X_w, and the relation at v contains sign·in·out.
struct Edge {
  std::size_t w;
  int sign;
  std::size_t arm, pos;  // the arrow a[arm][pos] joining v and w
};

std::vector<Edge> edges_at(const StarQuiver& q, std::size_t v) {
  std::vector<Edge> out;
  for (auto w : q.neighbors(v)) {
    const auto [wa, wp] = q.locate(w);
    const auto [va, vp] = q.locate(v);
    if (w != 0 && (v == 0 || wp > vp)) {
      out.push_back({w, +1, wa, wp});  // a: w -> v has head v
    } else {
      out.push_back({w, -1, va, vp});  // a: v -> w has tail v
    }
  }
  return out;
}

const Matrix& in_map(const QuiverRep& rep, const Edge& e) {
  return e.sign > 0 ? rep.a[e.arm][e.pos - 1] : rep.astar[e.arm][e.pos - 1];
}

const Matrix& out_map(const QuiverRep& rep, const Edge& e) {
  return e.sign > 0 ? rep.astar[e.arm][e.pos - 1] : rep.a[e.arm][e.pos - 1];
}

std::size_t dim_at(const DimVector& d, std::size_t v) { return static_cast<std::size_t>(d[v]); }

Matrix shift(Matrix m, const Rational& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= c;
  return m;
}

}  // namespace

QuiverRep QuiverRep::zero(const StarQuiver& q, const DimVector& dims) {
  require_input(dims.size() == q.vertex_count(), "dimension vector does not match the quiver");
  QuiverRep rep{q, dims, {}, {}};
  for (std::size_t i = 0; i < q.k(); ++i) {
    rep.a.emplace_back();
    rep.astar.emplace_back();
    for (std::size_t j = 1; j <= q.arm_length(i); ++j) {
      const auto head = dim_at(dims, q.vertex(i, j - 1));
      const auto tail = dim_at(dims, q.vertex(i, j));
      rep.a[i].emplace_back(head, tail);
      rep.astar[i].emplace_back(tail, head);
    }
  }
  return rep;
}

void check_shapes(const QuiverRep& rep) {
  const auto& q = rep.quiver;
  require_input(rep.dims.size() == q.vertex_count(), "dimension vector does not match the quiver");
  require_input(rep.a.size() == q.k() && rep.astar.size() == q.k(), "arrow lists do not match the arms");
  for (std::size_t i = 0; i < q.k(); ++i) {
    require_input(rep.a[i].size() == q.arm_length(i) && rep.astar[i].size() == q.arm_length(i),
                  "arrow lists do not match the arm lengths");
    for (std::size_t j = 1; j <= q.arm_length(i); ++j) {
      const auto head = dim_at(rep.dims, q.vertex(i, j - 1));
      const auto tail = dim_at(rep.dims, q.vertex(i, j));
      require_input(rep.a[i][j - 1].rows() == head && rep.a[i][j - 1].cols() == tail,
                    "shape mismatch at " + arrow_name("a", i, j));
      require_input(rep.astar[i][j - 1].rows() == tail && rep.astar[i][j - 1].cols() == head,
                    "shape mismatch at " + arrow_name("astar", i, j));
    }
  }
}

bool check_relations(const QuiverRep& rep, std::span<const Rational> lambda) {
  check_shapes(rep);
  const auto& q = rep.quiver;
  require_input(lambda.size() == q.vertex_count(), "weight does not match the quiver");
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const auto n = dim_at(rep.dims, v);
    Matrix lhs(n, n);
    for (const auto& e : edges_at(q, v)) {
      Matrix term = in_map(rep, e) * out_map(rep, e);
      if (e.sign > 0) lhs += term;
      else lhs -= term;
    }
    if (lhs != Matrix::scalar(n, lambda[v])) return false;
  }
  return true;
}

QuiverRep matrices_to_rep(const MatrixSolution& sol, std::span<const XiSequence> xs) {
  const Instance inst = build_instance(xs);
  const auto& q = inst.quiver;
  const std::size_t n = xs.front().n();
  require_input(sol.matrices.size() == xs.size(), "one matrix per conjugacy class expected");
  Matrix total(n, n);
  for (const auto& m : sol.matrices) {
    require_input(m.rows() == n && m.cols() == n, "matrix size does not match the classes");
    total += m;
  }
  require_input(total.is_zero(), "matrices do not sum to zero");

  QuiverRep rep = QuiverRep::zero(q, inst.alpha);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Matrix& A = sol.matrices[i];
    Matrix product = Matrix::identity(n);
    Matrix basis_prev = Matrix::identity(n);
    for (std::size_t j = 1; j <= xs[i].d(); ++j) {
      const Matrix step = shift(A, xs[i].xi[j - 1]);
      product = product * step;
      require_input(mat_rank(product) == xs[i].ranks[j],
                    "matrix " + std::to_string(i + 1) + " is not in its conjugacy class (rank at step " +
                        std::to_string(j) + ")");
      if (j > q.arm_length(i)) continue;
      Matrix basis = column_space_basis(product);
      auto inclusion = solve(basis_prev, basis);
      auto restricted = solve(basis, step * basis_prev);
      ensure(inclusion && restricted, "partial-product images are not nested");
      rep.a[i][j - 1] = std::move(*inclusion);
      rep.astar[i][j - 1] = std::move(*restricted);
      basis_prev = std::move(basis);
    }
  }
  ensure(check_relations(rep, inst.lambda), "representation built from a solution violates the relations");
  return rep;
}

MatrixSolution rep_to_matrices(const QuiverRep& rep, std::span<const XiSequence> xs) {
  const Instance inst = build_instance(xs);
  require_input(rep.quiver == inst.quiver, "representation lives on a different quiver");
  require_input(rep.dims == inst.alpha, "representation has the wrong dimension vector");
  require_input(check_relations(rep, inst.lambda), "representation violates the relations");
  const auto& q = rep.quiver;
  for (std::size_t i = 0; i < q.k(); ++i) {
    for (std::size_t j = 1; j <= q.arm_length(i); ++j) {
      const Matrix& a = rep.a[i][j - 1];
      const Matrix& s = rep.astar[i][j - 1];
      require_input(mat_rank(a) == a.cols(), arrow_name("a", i, j) + " is not injective");
      require_input(mat_rank(s) == s.rows(), arrow_name("astar", i, j) + " is not surjective");
    }
  }
  const std::size_t n = dim_at(rep.dims, 0);
  MatrixSolution sol;
  for (std::size_t i = 0; i < q.k(); ++i) {
    Matrix A = Matrix::scalar(n, xs[i].xi[0]);
    if (q.arm_length(i) > 0) A += rep.a[i][0] * rep.astar[i][0];
    sol.matrices.push_back(std::move(A));
  }
  Matrix total(n, n);
  for (const auto& m : sol.matrices) total += m;
  ensure(total.is_zero(), "matrices read off a representation do not sum to zero");
  return sol;
}

QuiverRep reflection_functor(const QuiverRep& rep, std::size_t v, std::span<const Rational> lambda) {
  const auto& q = rep.quiver;
  require_input(v < q.vertex_count(), "vertex out of range");
  require_input(sgn(lambda[v]) != 0, "reflection functor needs a nonzero weight at " + q.label(v));
  require_input(check_relations(rep, lambda), "representation violates the relations");

  const auto edges = edges_at(q, v);
  const std::size_t here = dim_at(rep.dims, v);
  std::vector<std::size_t> start;
  std::size_t total = 0;
  for (const auto& e : edges) {
    start.push_back(total);
    total += dim_at(rep.dims, e.w);
  }
  require_input(total >= here, "reflected dimension would be negative at " + q.label(v));

  // toward: V -> X_v with sign·in blocks;  away: X_v -> V with out blocks;  toward·away = λ_v·1
  Matrix toward(here, total), away(total, here);
  for (std::size_t b = 0; b < edges.size(); ++b) {
    const Matrix& in = in_map(rep, edges[b]);
    const Matrix& out = out_map(rep, edges[b]);
    for (std::size_t r = 0; r < here; ++r)
      for (std::size_t c = 0; c < in.cols(); ++c) toward(r, start[b] + c) = edges[b].sign * in(r, c);
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < here; ++c) away(start[b] + r, c) = out(r, c);
  }
  ensure(toward * away == Matrix::scalar(here, lambda[v]), "relation at the reflected vertex does not factor");

  std::vector<std::size_t> free_rows;
  const Matrix kernel = kernel_matrix(toward, &free_rows);
  ensure(kernel.cols() == total - here, "toward map is not surjective");
  // projection onto ker(toward) along im(away), in kernel coordinates
  Matrix proj = Matrix::identity(total) - (1 / lambda[v]) * (away * toward);
  const Matrix new_toward = (-lambda[v]) * proj.select_rows(free_rows);
  const Matrix& new_away = kernel;

  DimVector dims = rep.dims;
  dims[v] = static_cast<std::int64_t>(kernel.cols());
  QuiverRep out = rep;
  out.dims = dims;
  for (std::size_t b = 0; b < edges.size(); ++b) {
    const auto& e = edges[b];
    const std::size_t dw = dim_at(rep.dims, e.w);
    Matrix in(kernel.cols(), dw), back(dw, kernel.cols());
    for (std::size_t r = 0; r < kernel.cols(); ++r)
      for (std::size_t c = 0; c < dw; ++c) in(r, c) = e.sign * new_toward(r, start[b] + c);
    for (std::size_t r = 0; r < dw; ++r)
      for (std::size_t c = 0; c < kernel.cols(); ++c) back(r, c) = new_away(start[b] + r, c);
    if (e.sign > 0) {
      out.a[e.arm][e.pos - 1] = std::move(in);
      out.astar[e.arm][e.pos - 1] = std::move(back);
    } else {
      out.astar[e.arm][e.pos - 1] = std::move(in);
      out.a[e.arm][e.pos - 1] = std::move(back);
    }
  }
  ensure(out.dims == reflect(q, v, rep.dims), "reflected dimension vector mismatch");
  ensure(check_relations(out, coreflect(q, v, lambda)), "reflected representation violates the relations");
  return out;
}

namespace {

// Appends the equations phi_p·M - N·phi_q = 0 (entrywise) to `eq`.
void add_intertwining(std::vector<std::vector<std::pair<std::size_t, Rational>>>& eq, const Matrix& m,
                      const Matrix& nmat, std::size_t p_off, std::size_t p_dim, std::size_t q_off, std::size_t q_dim) {
  for (std::size_t r = 0; r < p_dim; ++r) {
    for (std::size_t c = 0; c < q_dim; ++c) {
      std::vector<std::pair<std::size_t, Rational>> row;
      for (std::size_t k = 0; k < p_dim; ++k) {
        if (sgn(m(k, c)) != 0) row.emplace_back(p_off + r * p_dim + k, m(k, c));
      }
      for (std::size_t k = 0; k < q_dim; ++k) {
        if (sgn(nmat(r, k)) != 0) row.emplace_back(q_off + k * q_dim + c, -nmat(r, k));
      }
      eq.push_back(std::move(row));
    }
  }
}

std::vector<std::vector<Matrix>> hom_basis(const QuiverRep& x, const QuiverRep& y) {
  const auto& q = x.quiver;
  std::vector<std::size_t> off(q.vertex_count());
  std::size_t unknowns = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    off[v] = unknowns;
    unknowns += dim_at(x.dims, v) * dim_at(x.dims, v);
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> eq;
  for (std::size_t i = 0; i < q.k(); ++i) {
    for (std::size_t j = 1; j <= q.arm_length(i); ++j) {
      const auto h = q.vertex(i, j - 1), t = q.vertex(i, j);
      const auto dh = dim_at(x.dims, h), dt = dim_at(x.dims, t);
      add_intertwining(eq, x.a[i][j - 1], y.a[i][j - 1], off[h], dh, off[t], dt);
      add_intertwining(eq, x.astar[i][j - 1], y.astar[i][j - 1], off[t], dt, off[h], dh);
    }
  }
  Matrix system(eq.size(), unknowns);
  for (std::size_t r = 0; r < eq.size(); ++r) {
    for (const auto& [col, val] : eq[r]) system(r, col) += val;
  }
  const Matrix k = kernel_matrix(system);
  std::vector<std::vector<Matrix>> out;
  for (std::size_t b = 0; b < k.cols(); ++b) {
    std::vector<Matrix> blocks;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      const auto d = dim_at(x.dims, v);
      Matrix phi(d, d);
      for (std::size_t e = 0; e < d * d; ++e) phi(e / d, e % d) = k(off[v] + e, b);
      blocks.push_back(std::move(phi));
    }
    out.push_back(std::move(blocks));
  }
  return out;
}

}  // namespace

InvertibleSearch find_rep_isomorphism(const QuiverRep& x, const QuiverRep& y, std::size_t samples) {
  check_shapes(x);
  check_shapes(y);
  if (!(x.quiver == y.quiver) || x.dims != y.dims) return {SearchOutcome::none, {}};
  if (std::all_of(x.dims.begin(), x.dims.end(), [](std::int64_t d) { return d == 0; })) {
    return {SearchOutcome::found, std::vector<Matrix>(x.dims.size())};
  }
  const auto hom = hom_basis(x, y);
  if (hom_basis(x, x).size() != hom.size() || hom_basis(y, y).size() != hom.size()) {
    return {SearchOutcome::none, {}};
  }
  return find_invertible(hom, samples);
}

std::vector<std::size_t> reduction_path(const Instance& inst, TieBreak tie) {
  const auto& q = inst.quiver;
  DimVector alpha = inst.alpha;
  Weight lambda = inst.lambda;
  std::vector<std::size_t> path;
  while (!is_coordinate_vector(alpha)) {
    const auto c = cartan_apply(q, alpha);
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
      if (alpha[v] > 0 && c[v] > 0 && (!pick || tie == TieBreak::greatest_vertex)) pick = v;
    }
    ensure(pick.has_value(), "rigid dimension vector has no decreasing reflection");
    const auto v = *pick;
    ensure(sgn(lambda[v]) != 0, "zero weight at a decreasing reflection of a rigid instance");
    path.push_back(v);
    alpha = reflect(q, v, alpha);
    lambda = coreflect(q, v, lambda);
  }
  return path;
}

MatrixSolution construct_rigid(const ClassTuple& t, TieBreak tie, const DecideOptions& opts) {
  const auto xs = normalize(t);
  const Instance inst = build_instance(xs);
  const auto& q = inst.quiver;
  require_input(is_rigid(inst, opts), "class tuple has no rigid irreducible solution");

  const auto path = reduction_path(inst, tie);
  std::vector<Weight> weights{inst.lambda};
  DimVector alpha = inst.alpha;
  for (auto v : path) {
    weights.push_back(coreflect(q, v, weights.back()));
    alpha = reflect(q, v, alpha);
  }
  std::size_t base = 0;
  while (alpha[base] == 0) ++base;
  ensure(sgn(weights.back()[base]) == 0, "reduced weight is nonzero on the final coordinate vector");

  QuiverRep rep = QuiverRep::zero(q, alpha);
  for (std::size_t s = path.size(); s-- > 0;) {
    rep = reflection_functor(rep, path[s], weights[s + 1]);
  }
  ensure(rep.dims == inst.alpha, "replayed reflections did not restore alpha");
  MatrixSolution sol = rep_to_matrices(rep, xs);
  ensure(verify_solution(t, sol).all(), "constructed solution fails verification");
  return sol;
}

VerifyReport verify_solution(const ClassTuple& t, const MatrixSolution& sol) {
  const std::size_t n = t.n();
  require_input(sol.matrices.size() == t.k(), "solution has " + std::to_string(sol.matrices.size()) +
                                                  " matrices for " + std::to_string(t.k()) + " classes");
  for (const auto& m : sol.matrices) require_input(m.rows() == n && m.cols() == n, "solution matrix has the wrong size");

  VerifyReport rep;
  rep.classes_ok = true;
  const auto xs = normalize(t);
  for (std::size_t i = 0; i < xs.size() && rep.classes_ok; ++i) {
    Matrix product = Matrix::identity(n);
    for (std::size_t j = 1; j <= xs[i].d(); ++j) {
      product = product * shift(sol.matrices[i], xs[i].xi[j - 1]);
      if (mat_rank(product) != xs[i].ranks[j]) {
        rep.classes_ok = false;
        break;
      }
    }
  }
  Matrix total(n, n);
  for (const auto& m : sol.matrices) total += m;
  rep.sum_zero = total.is_zero();
  rep.irreducible = algebra_dimension(sol.matrices, n) == n * n;
  return rep;
}

}  // namespace adsp
