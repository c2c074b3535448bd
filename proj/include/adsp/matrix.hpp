#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "adsp/rational.hpp"

namespace adsp {

/// Dense row-major matrix over the rationals. 0-row or 0-column matrices are valid
/// and show up as the maps to and from zero-dimensional vertex spaces.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix scalar(std::size_t n, const Rational& c);
  static Matrix column(std::span<const Rational> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> entries() const { return entries_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix col(std::size_t c) const;
  /// Columns listed in `which`, in that order.
  Matrix select_cols(std::span<const std::size_t> which) const;
  Matrix select_rows(std::span<const std::size_t> which) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& c);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& c, Matrix a);

/// Horizontal concatenation [a | b]; row counts must agree.
Matrix hconcat(const Matrix& a, const Matrix& b);

/// In-place reduced row echelon form. Returns the pivot columns in order.
std::vector<std::size_t> rref(Matrix& m);

std::size_t mat_rank(const Matrix& m);

/// Basis of the right null space, one column per vector. The basis is the
/// standard one attached to the free columns of rref(m): restricted to the free
/// rows it is the identity, so `free_rows` (if given) receives a left inverse
/// selector.
Matrix kernel_matrix(const Matrix& m, std::vector<std::size_t>* free_rows = nullptr);
std::vector<Matrix> kernel_basis(const Matrix& m);

/// Independent columns of m spanning its column space (the pivot columns).
Matrix column_space_basis(const Matrix& m);

/// Some X with a·X = b (free variables set to zero), or nullopt if inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

bool is_invertible(const Matrix& m);

/// Dimension of the unital algebra generated by square matrices of size n.
std::size_t algebra_dimension(std::span<const Matrix> generators, std::size_t n);

enum class SearchOutcome { found, none, undetermined };

struct InvertibleSearch {
  SearchOutcome outcome = SearchOutcome::none;
  std::vector<Matrix> blocks;  // set when found
};

/// Looks for an element of span(basis) whose blocks are all invertible. Each
/// basis element is a tuple of square blocks with matching shapes. Tries the
/// basis elements, then `samples` random small-integer combinations drawn from
/// a generator seeded with `seed`.
InvertibleSearch find_invertible(const std::vector<std::vector<Matrix>>& basis,
                                 std::size_t samples, std::uint64_t seed = 0x5eed);

struct ConjugatorResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::optional<Matrix> conjugator;
};

/// Invertible X with X·as[i] = bs[i]·X for every i. `none` is only reported when
/// it is proven: the intertwiner space is zero, or its dimension differs from
/// that of the commutant of either tuple.
ConjugatorResult simultaneous_conjugator(std::span<const Matrix> as, std::span<const Matrix> bs,
                                         std::size_t samples = 32);

}  // namespace adsp
