#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "adsp/rational.hpp"

namespace adsp {

struct Eigenblock {
  Rational value;
  std::vector<std::size_t> blocks;  // Jordan block sizes, sorted descending
};

/// A conjugacy class of n×n matrices given by Jordan data.
class JordanClass {
 public:
  /// Validates (distinct eigenvalues, positive block sizes, nonempty) and sorts
  /// each block list descending. Throws InputError.
  explicit JordanClass(std::vector<Eigenblock> spectrum);

  const std::vector<Eigenblock>& spectrum() const { return spectrum_; }
  std::size_t n() const { return n_; }
  bool is_nilpotent() const { return spectrum_.size() == 1 && sgn(spectrum_.front().value) == 0; }

 private:
  std::vector<Eigenblock> spectrum_;
  std::size_t n_ = 0;
};

/// k >= 1 classes of the same size n.
class ClassTuple {
 public:
  explicit ClassTuple(std::vector<JordanClass> classes);

  const std::vector<JordanClass>& classes() const { return classes_; }
  std::size_t k() const { return classes_.size(); }
  std::size_t n() const { return classes_.front().n(); }
  bool all_nilpotent() const;

 private:
  std::vector<JordanClass> classes_;
};

/// Eigenvalue sequence xi_1..xi_d annihilating the class, with the ranks
/// r_0 = n >= r_1 >= ... >= r_d = 0 of the partial products prod_{l<=j}(A - xi_l).
struct XiSequence {
  std::vector<Rational> xi;
  std::vector<std::size_t> ranks;  // length xi.size() + 1

  std::size_t n() const { return ranks.front(); }
  std::size_t d() const { return xi.size(); }

  /// Checks every invariant, including the rank-drop condition for repeated
  /// values. Throws InputError naming the violated one.
  void validate() const;
};

/// Raw ingestion path: builds and validates.
XiSequence make_xi_sequence(std::vector<Rational> xi, std::vector<std::size_t> ranks);

XiSequence normalize(const JordanClass& c);
std::vector<XiSequence> normalize(const ClassTuple& t);

std::vector<std::pair<Rational, std::size_t>> multiplicities(const JordanClass& c);

Rational trace_of_class(const JordanClass& c);

bool trace_condition(const ClassTuple& t);

/// Default cap on distinct (class, total, weighted sum) states explored by is_generic.
inline constexpr std::size_t kDefaultGenericityCap = 10'000'000;

/// Kostov genericity. Precondition: trace_condition(t) (InputError otherwise).
/// Throws ResourceError if the state count exceeds `state_cap`.
bool is_generic(const ClassTuple& t, std::size_t state_cap = kDefaultGenericityCap);

}  // namespace adsp
