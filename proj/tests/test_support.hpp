#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "adsp/classdata.hpp"
#include "adsp/matrix.hpp"
#include "adsp/rootsys.hpp"
#include "adsp/sigma.hpp"

namespace adsp::testing {

using Spectrum = std::vector<std::pair<Rational, std::vector<std::size_t>>>;

inline JordanClass jordan(const Spectrum& s) {
  std::vector<Eigenblock> eb;
  for (const auto& [v, b] : s) eb.push_back({v, b});
  return JordanClass(std::move(eb));
}

inline ClassTuple tuple(const std::vector<Spectrum>& classes) {
  std::vector<JordanClass> cs;
  for (const auto& s : classes) cs.push_back(jordan(s));
  return ClassTuple(std::move(cs));
}

inline Instance instance_of(const ClassTuple& t) {
  const auto xs = normalize(t);
  return build_instance(xs);
}

/// Eigenvalues {1,-1} three times: the rigid 2×2 triple.
inline ClassTuple pm_one_triple() {
  const Spectrum pm = {{1, {1}}, {-1, {1}}};
  return tuple({pm, pm, pm});
}

inline ClassTuple nilpotent_trio(std::vector<std::size_t> third) {
  const Spectrum four_threes = {{0, {3, 3, 3, 3}}};
  return tuple({four_threes, four_threes, {{0, std::move(third)}}});
}

inline Rational rand_rational(std::mt19937_64& rng, int num = 9, int den = 4) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  Rational r(n(rng), d(rng));
  r.canonicalize();
  return r;
}

/// Block-diagonal matrix in Jordan form for the class, optionally conjugated by a
/// random unimodular-ish matrix so it is not visibly structured.
inline Matrix jordan_matrix(const JordanClass& c) {
  Matrix m(c.n(), c.n());
  std::size_t at = 0;
  for (const auto& eb : c.spectrum()) {
    for (auto b : eb.blocks) {
      for (std::size_t i = 0; i < b; ++i) {
        m(at + i, at + i) = eb.value;
        if (i + 1 < b) m(at + i, at + i + 1) = 1;
      }
      at += b;
    }
  }
  return m;
}

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    Matrix x(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) x(r, c) = d(rng);
    if (is_invertible(x)) return x;
  }
}

inline Matrix inverse(const Matrix& x) { return *solve(x, Matrix::identity(x.rows())); }

inline Rational fresh(std::mt19937_64& rng, std::vector<Rational>& used) {
  for (;;) {
    auto r = rand_rational(rng, 12, 5);
    if (std::find(used.begin(), used.end(), r) == used.end()) {
      used.push_back(r);
      return r;
    }
  }
}

/// Three 2x2 classes with distinct eigenvalues, zero total trace and a rigid solution.
inline ClassTuple random_rigid_2x2(std::mt19937_64& rng) {
  for (;;) {
    std::vector<Spectrum> cs;
    Rational tr = 0;
    for (int i = 0; i < 3; ++i) {
      std::vector<Rational> e = {rand_rational(rng, 12, 5), rand_rational(rng, 12, 5)};
      if (i == 2) e[1] = -tr - e[0];
      if (e[0] == e[1]) break;
      tr += e[0] + e[1];
      cs.push_back({{e[0], {1}}, {e[1], {1}}});
    }
    if (cs.size() != 3) continue;
    auto t = tuple(cs);
    if (is_rigid(instance_of(t))) return t;
  }
}

/// Shape (3;2,1|2,1|1): two classes with three eigenvalues, one with a double one.
inline ClassTuple random_rigid_3x3(std::mt19937_64& rng) {
  for (;;) {
    std::vector<Rational> a, b, c;
    const Rational a1 = fresh(rng, a), a2 = fresh(rng, a), a3 = fresh(rng, a);
    const Rational b1 = fresh(rng, b), b2 = fresh(rng, b), b3 = fresh(rng, b);
    const Rational x = fresh(rng, c);
    const Rational y = -(a1 + a2 + a3 + b1 + b2 + b3 + 2 * x);
    if (y == x) continue;
    auto t = tuple({{{a1, {1}}, {a2, {1}}, {a3, {1}}}, {{b1, {1}}, {b2, {1}}, {b3, {1}}}, {{x, {1, 1}}, {y, {1}}}});
    if (is_rigid(instance_of(t))) return t;
  }
}

/// A class of size exactly n: a random partition of n into blocks, spread over
/// up to three distinct random eigenvalues.
inline Spectrum random_spectrum(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> blocks;
  for (std::size_t left = n; left > 0;) {
    std::uniform_int_distribution<std::size_t> d(1, std::min<std::size_t>(left, 3));
    blocks.push_back(d(rng));
    left -= blocks.back();
  }
  std::uniform_int_distribution<std::size_t> groups_d(1, std::min<std::size_t>(blocks.size(), 3));
  const std::size_t groups = groups_d(rng);
  std::vector<Rational> used;
  Spectrum s;
  for (std::size_t g = 0; g < groups; ++g) s.push_back({fresh(rng, used), {}});
  for (std::size_t b = 0; b < blocks.size(); ++b) s[b < groups ? b : rng() % groups].second.push_back(blocks[b]);
  return s;
}

/// Shifts every eigenvalue of the last class so the total trace vanishes.
inline ClassTuple balanced(std::vector<Spectrum> classes) {
  Rational tr = 0;
  std::size_t n = 0;
  for (const auto& [v, b] : classes.back()) {
    for (auto x : b) n += x;
  }
  for (const auto& s : classes) {
    for (const auto& [v, b] : s) {
      for (auto x : b) tr += v * static_cast<long>(x);
    }
  }
  for (auto& [v, b] : classes.back()) v -= tr / static_cast<long>(n);
  return tuple(classes);
}

inline DimVector dv(std::initializer_list<std::int64_t> v) { return DimVector(v); }

inline Weight wt(std::initializer_list<Rational> v) { return Weight(v); }

}  // namespace adsp::testing
