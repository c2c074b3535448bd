#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "adsp/classdata.hpp"
#include "adsp/errors.hpp"
#include "adsp/matrix.hpp"
#include "adsp/rootsys.hpp"
#include "test_support.hpp"

using namespace adsp;
using testing::jordan;
using testing::tuple;

namespace {

std::vector<Rational> q(std::initializer_list<int> v) { return {v.begin(), v.end()}; }
std::vector<std::size_t> z(std::initializer_list<std::size_t> v) { return v; }

}  // namespace

TEST_CASE("jordan class validation") {
  CHECK_THROWS_AS(jordan({}), InputError);
  CHECK_THROWS_AS(jordan({{1, {}}}), InputError);
  CHECK_THROWS_AS(jordan({{1, {0}}}), InputError);
  CHECK_THROWS_AS(jordan({{1, {1}}, {1, {2}}}), InputError);
  const auto c = jordan({{2, {1, 3, 2}}});
  CHECK(c.spectrum()[0].blocks == z({3, 2, 1}));
  CHECK(c.n() == 6);
  CHECK_THROWS_AS(tuple({{{1, {1}}}, {{1, {2}}}}), InputError);
}

TEST_CASE("normalize") {
  auto x = normalize(jordan({{0, {3, 3, 3, 3}}}));
  CHECK(x.xi == q({0, 0, 0}));
  CHECK(x.ranks == z({12, 8, 4, 0}));

  x = normalize(jordan({{1, {1}}, {-1, {1}}}));
  CHECK(x.xi == q({-1, 1}));  // equal multiplicity: ascending value
  CHECK(x.ranks == z({2, 1, 0}));

  x = normalize(jordan({{5, {1}}}));
  CHECK(x.xi == q({5, 5}));
  CHECK(x.ranks == z({1, 0, 0}));

  // larger multiplicity first
  x = normalize(jordan({{7, {1}}, {2, {2, 1}}}));
  CHECK(x.xi == q({2, 2, 7}));
  CHECK(x.ranks == z({4, 2, 1, 0}));
}

TEST_CASE("raw xi sequences are validated") {
  CHECK_NOTHROW(make_xi_sequence(q({0, 0}), z({3, 1, 0})));
  // rank drops 1 then 2 for the same value
  CHECK_THROWS_AS(make_xi_sequence(q({0, 0}), z({3, 2, 0})), InputError);
  CHECK_THROWS_AS(make_xi_sequence(q({0}), z({1, 0})), InputError);
  CHECK_THROWS_AS(make_xi_sequence(q({0, 1}), z({2, 1, 1})), InputError);
  CHECK_THROWS_AS(make_xi_sequence(q({0, 1}), z({2, 3, 0})), InputError);
  // distinct values may drop in any order
  CHECK_NOTHROW(make_xi_sequence(q({0, 1}), z({3, 2, 0})));
}

TEST_CASE("multiplicities and traces") {
  using M = std::vector<std::pair<Rational, std::size_t>>;
  CHECK(multiplicities(jordan({{0, {3, 3, 3, 3}}})) == M{{0, 12}});
  CHECK(multiplicities(jordan({{1, {1}}, {-1, {1}}})) == M{{1, 1}, {-1, 1}});
  CHECK(multiplicities(jordan({{0, {4, 3, 3, 2}}})) == M{{0, 12}});

  CHECK(trace_of_class(jordan({{1, {1}}, {-1, {1}}})) == 0);
  CHECK(trace_of_class(jordan({{5, {1}}})) == 5);
  CHECK(trace_of_class(jordan({{2, {2, 1}}, {-3, {1}}})) == 3);

  CHECK(trace_condition(testing::pm_one_triple()));
  CHECK_FALSE(trace_condition(tuple({{{5, {1}}}, {{-4, {1}}}})));
  CHECK(trace_condition(tuple({{{5, {1}}}, {{-5, {1}}}})));
}

TEST_CASE("genericity") {
  CHECK(is_generic(testing::pm_one_triple()));
  const testing::Spectrum pm = {{1, {1}}, {-1, {1}}};
  CHECK_FALSE(is_generic(tuple({pm, pm, {{2, {1}}, {-2, {1}}}})));
  CHECK(is_generic(tuple({{{0, {1}}}})));
  CHECK_THROWS_AS(is_generic(tuple({{{5, {1}}}, {{-4, {1}}}})), InputError);
  CHECK_THROWS_AS(is_generic(testing::pm_one_triple(), 3), ResourceError);
}

namespace {

JordanClass random_class(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_int_distribution<int> values(1, 3), block(1, 4), val(-4, 4);
  std::vector<Eigenblock> spectrum;
  std::size_t n = 0;
  const int distinct = values(rng);
  for (int e = 0; e < distinct && n < max_n; ++e) {
    Rational v = val(rng);
    bool dup = false;
    for (const auto& s : spectrum) dup = dup || s.value == v;
    if (dup) continue;
    Eigenblock eb{v, {}};
    const int blocks = values(rng);
    for (int b = 0; b < blocks && n < max_n; ++b) {
      const auto size = std::min<std::size_t>(static_cast<std::size_t>(block(rng)), max_n - n);
      eb.blocks.push_back(size);
      n += size;
    }
    spectrum.push_back(std::move(eb));
  }
  return JordanClass(std::move(spectrum));
}

}  // namespace

TEST_CASE("normalize: invariants and rank reconstruction on random Jordan data") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = random_class(rng, 12);
    const auto x = normalize(c);
    CHECK_NOTHROW(x.validate());
    CHECK(x.n() == c.n());
    // cross-check against a matrix in the class
    const Matrix m = testing::jordan_matrix(c);
    Matrix product = Matrix::identity(c.n());
    for (std::size_t j = 1; j <= x.d(); ++j) {
      product = product * (m - Matrix::scalar(c.n(), x.xi[j - 1]));
      CHECK(mat_rank(product) == x.ranks[j]);
    }
  }
}

TEST_CASE("generic tuples have coprime multiplicities") {
  std::mt19937_64 rng(99);
  int generic_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<JordanClass> cs;
    const std::size_t n = 1 + trial % 4;
    for (int i = 0; i < 3; ++i) cs.push_back(random_class(rng, n));
    bool same_n = true;
    for (const auto& c : cs) same_n = same_n && c.n() == cs.front().n();
    if (!same_n) continue;
    // shift the last class so the trace condition holds
    ClassTuple t0(cs);
    Rational tr = 0;
    for (const auto& c : cs) tr += trace_of_class(c);
    std::vector<Eigenblock> last = cs.back().spectrum();
    for (auto& eb : last) eb.value -= tr / Rational(static_cast<unsigned long>(cs.back().n()));
    cs.back() = JordanClass(last);
    const ClassTuple t(cs);
    REQUIRE(trace_condition(t));
    if (!is_generic(t)) continue;
    ++generic_seen;
    std::size_t g = 0;
    for (const auto& c : t.classes())
      for (const auto& [v, m] : multiplicities(c)) g = std::gcd(g, m);
    CHECK(g == 1);
  }
  CHECK(generic_seen > 10);
}

TEST_CASE("lambda.alpha equals minus the sum of traces") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<JordanClass> cs;
    while (cs.size() < 3) {
      auto c = random_class(rng, n);
      if (c.n() == n) cs.push_back(std::move(c));
    }
    const ClassTuple t(cs);
    const auto inst = testing::instance_of(t);
    Rational tr = 0;
    for (const auto& c : t.classes()) tr += trace_of_class(c);
    CHECK(dot(inst.lambda, inst.alpha) == -tr);
  }
}
