#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "adsp/errors.hpp"
#include "adsp/sigma.hpp"
#include "test_support.hpp"

using namespace adsp;
using testing::dv;
using testing::wt;

namespace {

const StarQuiver kTriple({1, 1, 1});

Instance make(const StarQuiver& q, DimVector alpha, Weight lambda) { return {q, std::move(alpha), std::move(lambda)}; }

}  // namespace

TEST_CASE("rigid 2x2 triple") {
  const auto inst = make(kTriple, dv({2, 1, 1, 1}), wt({-3, 2, 2, 2}));
  const auto d = decide(inst);
  CHECK(d.member);
  CHECK(d.root_class == RootClass::real);
  CHECK(d.solution_count == SolutionCount::unique);
  REQUIRE(std::holds_alternative<MemberOk>(d.certificate));
  CHECK_FALSE(std::get<MemberOk>(d.certificate).max_sub_defect.has_value());
  CHECK(is_rigid(inst));
}

TEST_CASE("decomposable 2x2 triple") {
  const auto inst = make(kTriple, dv({2, 1, 1, 1}), wt({0, 2, 2, -4}));
  const auto d = decide(inst);
  CHECK_FALSE(d.member);
  CHECK(d.solution_count == SolutionCount::none);
  REQUIRE(std::holds_alternative<Decomposition>(d.certificate));
  const auto& c = std::get<Decomposition>(d.certificate);
  CHECK(c.parts == std::vector<DimVector>{dv({1, 0, 0, 0}), dv({1, 1, 1, 1})});
  CHECK(c.sum_p == 0);
  CHECK(c.p_alpha == 0);
  CHECK(certificate_valid(inst, c));
  CHECK_FALSE(is_rigid(inst));
}

TEST_CASE("trace obstruction and non-roots") {
  const auto d = decide(make(kTriple, dv({2, 1, 1, 1}), wt({1, 0, 0, 0})));
  CHECK_FALSE(d.member);
  REQUIRE(std::holds_alternative<TraceObstruction>(d.certificate));
  CHECK(std::get<TraceObstruction>(d.certificate).lambda_dot_alpha == 2);

  const auto n = decide(make(kTriple, dv({2, 0, 0, 0}), wt({0, 0, 0, 0})));
  CHECK_FALSE(n.member);
  CHECK(std::holds_alternative<NotRoot>(n.certificate));
}

TEST_CASE("center coordinate vector is a member") {
  const StarQuiver q({2, 1});
  const auto d = decide(make(q, unit_vector(q, 0), wt({0, 1, 2, 3})));
  CHECK(d.member);
  CHECK(d.solution_count == SolutionCount::unique);
  CHECK_THROWS_AS(decide(make(q, unit_vector(q, 1), wt({0, 0, 0, 0}))), InputError);
}

TEST_CASE("forged certificates are rejected") {
  const auto inst = make(kTriple, dv({2, 1, 1, 1}), wt({0, 2, 2, -4}));
  CHECK_FALSE(certificate_valid(inst, {{dv({2, 1, 1, 1})}, 0, 0}));
  CHECK_FALSE(certificate_valid(inst, {{dv({1, 0, 0, 0}), dv({1, 1, 1, 0})}, 0, 0}));
  CHECK_FALSE(certificate_valid(inst, {{dv({1, 0, 0, 0}), dv({1, 1, 1, 1})}, 1, 0}));
  CHECK_FALSE(certificate_valid(inst, {{dv({2, 0, 0, 0}), dv({0, 1, 1, 1})}, 0, 0}));
}

TEST_CASE("nilpotent classifier on small affine shapes") {
  const StarQuiver d4({1, 1, 1, 1});
  const Weight zero5(5, Rational(0));
  // delta of D4~ is primitive: member, imaginary
  auto d = classify_nilpotent(make(d4, dv({2, 1, 1, 1, 1}), zero5));
  CHECK(d.member);
  CHECK(d.root_class == RootClass::imaginary);
  CHECK(d.solution_count == SolutionCount::infinite);
  // 2 delta: type I
  d = classify_nilpotent(make(d4, dv({4, 2, 2, 2, 2}), zero5));
  CHECK_FALSE(d.member);
  REQUIRE(std::holds_alternative<Decomposition>(d.certificate));
  CHECK(certificate_valid(make(d4, dv({4, 2, 2, 2, 2}), zero5), std::get<Decomposition>(d.certificate)));
  // agreement with the general decider on that case
  CHECK_FALSE(decide(make(d4, dv({4, 2, 2, 2, 2}), zero5)).member);
  CHECK_THROWS_AS(classify_nilpotent(make(kTriple, dv({2, 1, 1, 1}), wt({-3, 2, 2, 2}))), InputError);
}

TEST_CASE("nilpotent classifier type II on E6~ with a leaf") {
  // E6~ extended by one vertex on the first arm: 2 delta + e_leaf
  const StarQuiver q({3, 2, 2});
  const DimVector alpha = dv({6, 4, 2, 1, 4, 2, 4, 2});
  const Instance inst = make(q, alpha, Weight(q.vertex_count(), Rational(0)));
  const auto d = classify_nilpotent(inst);
  CHECK_FALSE(d.member);
  REQUIRE(std::holds_alternative<Decomposition>(d.certificate));
  CHECK(certificate_valid(inst, std::get<Decomposition>(d.certificate)));
  CHECK(decide(inst).member == d.member);
}

namespace {

Instance random_instance(std::mt19937_64& rng, bool zero_lambda) {
  std::uniform_int_distribution<int> k_dist(1, 3), len(0, 2);
  std::vector<std::size_t> arms(static_cast<std::size_t>(k_dist(rng)));
  for (auto& a : arms) a = static_cast<std::size_t>(len(rng));
  const StarQuiver q(arms);
  for (;;) {
    std::uniform_int_distribution<int> d(0, 3);
    DimVector alpha(q.vertex_count());
    std::int64_t sum = 0;
    for (auto& a : alpha) sum += (a = d(rng));
    if (alpha[0] == 0 || sum > 8) continue;
    Weight lambda(q.vertex_count(), Rational(0));
    if (!zero_lambda) {
      for (auto& l : lambda) l = (rng() % 3 == 0) ? testing::rand_rational(rng, 3, 2) : Rational(0);
      // push half the samples onto the hyperplane lambda.alpha = 0
      if (rng() % 2 == 0) {
        for (std::size_t v = 0; v < alpha.size(); ++v) {
          if (alpha[v] == 0) continue;
          Rational rest = dot(lambda, alpha) - lambda[v] * alpha[v];
          lambda[v] = -rest / alpha[v];
          break;
        }
      }
    }
    return {q, alpha, lambda};
  }
}

bool same(const Decision& a, const Decision& b) {
  return a.member == b.member && a.root_class == b.root_class && a.solution_count == b.solution_count;
}

}  // namespace

TEST_CASE("decide agrees with brute force") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = random_instance(rng, trial % 4 == 0);
    const auto fast = decide(inst);
    const auto slow = decide_bruteforce(inst);
    CHECK(same(fast, slow));
    CHECK(same(fast, decide(inst, {kDefaultBoxCap, kernels::Exec::serial_reference})));
    if (auto* c = std::get_if<Decomposition>(&fast.certificate)) CHECK(certificate_valid(inst, *c));
  }
}

TEST_CASE("brute force bound") {
  CHECK_THROWS_AS(decide_bruteforce(make(kTriple, dv({6, 2, 2, 2}), wt({0, 0, 0, 0})), 10), InputError);
}

TEST_CASE("generic decider") {
  const auto t = testing::pm_one_triple();
  const auto inst = testing::instance_of(t);
  const auto d = decide_generic(inst, t);
  CHECK(d.member);
  CHECK(d.root_class == RootClass::real);

  const auto g = testing::tuple({{{1, {1}}, {10, {1}}}, {{100, {1}}, {1000, {1}}}, {{Rational(-1111, 2), {1, 1}}}});
  const auto gi = testing::instance_of(g);
  const auto gd = decide_generic(gi, g);
  CHECK_FALSE(gd.member);
  CHECK(std::holds_alternative<NotRoot>(gd.certificate));
  CHECK(decide(gi).member == gd.member);

  const auto ng = testing::tuple({{{1, {1}}, {-1, {1}}}, {{1, {1}}, {-1, {1}}}, {{2, {1}}, {-2, {1}}}});
  CHECK_THROWS_AS(decide_generic(testing::instance_of(ng), ng), InputError);
}

TEST_CASE("defects in certificates") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const auto inst = random_instance(rng, false);
    const auto d = decide(inst);
    if (const auto* m = std::get_if<MemberOk>(&d.certificate)) {
      CHECK(m->p_alpha == defect_p(inst.quiver, inst.alpha));
      if (m->max_sub_defect) CHECK(*m->max_sub_defect < m->p_alpha);
      CHECK(d.solution_count == (m->p_alpha == 0 ? SolutionCount::unique : SolutionCount::infinite));
    }
    if (const auto* c = std::get_if<Decomposition>(&d.certificate)) {
      CHECK(c->sum_p >= c->p_alpha);
    }
  }
}
