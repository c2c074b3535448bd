#include "adsp/matrix.hpp"

#include <random>
#include <utility>

#include "adsp/errors.hpp"

namespace adsp {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    require_input(row.size() == cols_, "ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, 1); }

Matrix Matrix::scalar(std::size_t n, const Rational& c) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix Matrix::column(std::span<const Rational> v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : entries_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::col(std::size_t c) const {
  const std::size_t which[] = {c};
  return select_cols(which);
}

Matrix Matrix::select_cols(std::span<const std::size_t> which) const {
  Matrix m(rows_, which.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < which.size(); ++k) m(r, k) = (*this)(r, which[k]);
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> which) const {
  Matrix m(which.size(), cols_);
  for (std::size_t k = 0; k < which.size(); ++k)
    for (std::size_t c = 0; c < cols_; ++c) m(k, c) = (*this)(which[k], c);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_input(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_input(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& c) {
  for (auto& x : entries_) x *= c;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(const Rational& c, Matrix a) { return a *= c; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_input(a.cols() == b.rows(), "matrix product: inner dimensions differ");
  Matrix p(a.rows(), b.cols());
  Rational t;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& x = a(r, k);
      if (sgn(x) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (sgn(b(k, c)) == 0) continue;
        t = x * b(k, c);
        p(r, c) += t;
      }
    }
  }
  return p;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  require_input(a.rows() == b.rows(), "hconcat: row counts differ");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rational f;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t k = c; k < m.cols(); ++k) std::swap(m(p, k), m(row, k));
    }
    const Rational inv = 1 / m(row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, c)) == 0) continue;
      f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (sgn(m(row, k)) != 0) m(r, k) -= f * m(row, k);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t mat_rank(const Matrix& m) {
  Matrix w = m;
  return rref(w).size();
}

Matrix kernel_matrix(const Matrix& m, std::vector<std::size_t>* free_rows) {
  Matrix w = m;
  const auto pivots = rref(w);
  std::vector<std::size_t> free;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  Matrix k(m.cols(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k(pivots[r], j) = -w(r, free[j]);
  }
  if (free_rows) *free_rows = std::move(free);
  return k;
}

std::vector<Matrix> kernel_basis(const Matrix& m) {
  const Matrix k = kernel_matrix(m);
  std::vector<Matrix> out;
  out.reserve(k.cols());
  for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k.col(j));
  return out;
}

Matrix column_space_basis(const Matrix& m) {
  Matrix w = m;
  const auto pivots = rref(w);
  return m.select_cols(pivots);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  require_input(a.rows() == b.rows(), "solve: row counts differ");
  Matrix aug = hconcat(a, b);
  const auto pivots = rref(aug);
  for (auto p : pivots) {
    if (p >= a.cols()) return std::nullopt;
  }
  Matrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) x(pivots[r], c) = aug(r, a.cols() + c);
  return x;
}

bool is_invertible(const Matrix& m) { return m.square() && mat_rank(m) == m.rows(); }

namespace {

// Incrementally maintained reduced basis of a subspace of Q^d.
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t dim) : dim_(dim) {}

  // Reduces v against the basis; keeps it if independent. Returns true if added.
  bool insert(std::vector<Rational> v) {
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const Rational& c = v[pivot_[b]];
      if (sgn(c) == 0) continue;
      const Rational f = c;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(rows_[b][i]) != 0) v[i] -= f * rows_[b][i];
      }
    }
    std::size_t p = 0;
    while (p < dim_ && sgn(v[p]) == 0) ++p;
    if (p == dim_) return false;
    const Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    // keep existing rows reduced at the new pivot
    for (auto& row : rows_) {
      if (sgn(row[p]) == 0) continue;
      const Rational f = row[p];
      for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(v[i]) != 0) row[i] -= f * v[i];
      }
    }
    rows_.push_back(std::move(v));
    pivot_.push_back(p);
    return true;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivot_;
};

std::vector<Rational> flatten(const Matrix& m) { return {m.entries().begin(), m.entries().end()}; }

}  // namespace

std::size_t algebra_dimension(std::span<const Matrix> generators, std::size_t n) {
  for (const auto& g : generators) {
    require_input(g.rows() == n && g.cols() == n, "algebra_dimension: generator size mismatch");
  }
  if (n == 0) return 0;
  SpanBasis span(n * n);
  std::vector<Matrix> frontier;
  auto offer = [&](const Matrix& m) {
    if (span.insert(flatten(m))) frontier.push_back(m);
  };
  offer(Matrix::identity(n));
  for (const auto& g : generators) offer(g);
  while (!frontier.empty() && span.size() < n * n) {
    std::vector<Matrix> current;
    current.swap(frontier);
    for (const auto& m : current) {
      for (const auto& g : generators) offer(m * g);
    }
  }
  return span.size();
}

namespace {

bool all_invertible(const std::vector<Matrix>& blocks) {
  for (const auto& b : blocks) {
    if (!is_invertible(b)) return false;
  }
  return true;
}

}  // namespace

InvertibleSearch find_invertible(const std::vector<std::vector<Matrix>>& basis, std::size_t samples,
                                 std::uint64_t seed) {
  if (basis.empty()) return {SearchOutcome::none, {}};
  for (const auto& b : basis) {
    if (all_invertible(b)) return {SearchOutcome::found, b};
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Matrix> combo = basis.front();
    for (auto& blk : combo) blk *= 0;
    for (const auto& b : basis) {
      const Rational c = coeff(rng);
      if (sgn(c) == 0) continue;
      for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += c * b[i];
    }
    if (all_invertible(combo)) return {SearchOutcome::found, std::move(combo)};
  }
  return {SearchOutcome::undetermined, {}};
}

namespace {

// Basis of {X : X·as[i] = bs[i]·X for all i}, as n×n matrices.
std::vector<Matrix> intertwiners(std::span<const Matrix> as, std::span<const Matrix> bs, std::size_t n) {
  const std::size_t nn = n * n;
  Matrix eq(as.size() * nn, nn);
  for (std::size_t i = 0; i < as.size(); ++i) {
    const Matrix& a = as[i];
    const Matrix& b = bs[i];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t row = i * nn + r * n + c;
        // (X a)_{rc} = sum_m X_{rm} a_{mc};  (b X)_{rc} = sum_m b_{rm} X_{mc}
        for (std::size_t m = 0; m < n; ++m) {
          eq(row, r * n + m) += a(m, c);
          eq(row, m * n + c) -= b(r, m);
        }
      }
    }
  }
  const Matrix k = kernel_matrix(eq);
  std::vector<Matrix> out;
  out.reserve(k.cols());
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Matrix x(n, n);
    for (std::size_t v = 0; v < nn; ++v) x(v / n, v % n) = k(v, j);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

ConjugatorResult simultaneous_conjugator(std::span<const Matrix> as, std::span<const Matrix> bs,
                                         std::size_t samples) {
  require_input(as.size() == bs.size(), "simultaneous_conjugator: tuple lengths differ");
  const std::size_t n = as.empty() ? (bs.empty() ? 0 : bs.front().rows()) : as.front().rows();
  for (std::size_t i = 0; i < as.size(); ++i) {
    require_input(as[i].rows() == n && as[i].cols() == n && bs[i].rows() == n && bs[i].cols() == n,
                  "simultaneous_conjugator: size mismatch");
  }
  if (n == 0) return {SearchOutcome::found, Matrix()};
  const auto hom = intertwiners(as, bs, n);
  if (hom.empty()) return {SearchOutcome::none, std::nullopt};
  // isomorphic tuples have Hom(A,B), End(A), End(B) of equal dimension
  if (intertwiners(as, as, n).size() != hom.size() || intertwiners(bs, bs, n).size() != hom.size()) {
    return {SearchOutcome::none, std::nullopt};
  }
  std::vector<std::vector<Matrix>> basis;
  basis.reserve(hom.size());
  for (const auto& x : hom) basis.push_back({x});
  auto found = find_invertible(basis, samples);
  if (found.outcome != SearchOutcome::found) return {found.outcome, std::nullopt};
  return {SearchOutcome::found, std::move(found.blocks.front())};
}

}  // namespace adsp
