#include "adsp/classdata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "adsp/errors.hpp"

namespace adsp {

JordanClass::JordanClass(std::vector<Eigenblock> spectrum) : spectrum_(std::move(spectrum)) {
  require_input(!spectrum_.empty(), "conjugacy class with empty spectrum");
  for (std::size_t a = 0; a < spectrum_.size(); ++a) {
    auto& eb = spectrum_[a];
    require_input(!eb.blocks.empty(), "eigenvalue " + to_string(eb.value) + " has no Jordan blocks");
    for (auto b : eb.blocks) require_input(b >= 1, "Jordan block sizes must be positive");
    std::sort(eb.blocks.begin(), eb.blocks.end(), std::greater<>());
    n_ += std::accumulate(eb.blocks.begin(), eb.blocks.end(), std::size_t{0});
    for (std::size_t b = 0; b < a; ++b) {
      require_input(spectrum_[b].value != eb.value, "repeated eigenvalue " + to_string(eb.value) + " in a class");
    }
  }
}

ClassTuple::ClassTuple(std::vector<JordanClass> classes) : classes_(std::move(classes)) {
  require_input(!classes_.empty(), "need at least one conjugacy class");
  for (const auto& c : classes_) {
    require_input(c.n() == classes_.front().n(), "conjugacy classes have different matrix sizes");
  }
}

bool ClassTuple::all_nilpotent() const {
  return std::all_of(classes_.begin(), classes_.end(), [](const JordanClass& c) { return c.is_nilpotent(); });
}

void XiSequence::validate() const {
  require_input(xi.size() >= 2, "xi sequence needs at least two entries");
  require_input(ranks.size() == xi.size() + 1, "ranks must have one more entry than xi");
  require_input(ranks.back() == 0, "last rank must be zero");
  for (std::size_t j = 1; j < ranks.size(); ++j) {
    require_input(ranks[j] <= ranks[j - 1], "ranks must be non-increasing");
  }
  // equal xi values: earlier rank drops dominate later ones
  for (std::size_t j = 1; j <= xi.size(); ++j) {
    for (std::size_t l = j + 1; l <= xi.size(); ++l) {
      if (xi[j - 1] != xi[l - 1]) continue;
      require_input(ranks[j - 1] - ranks[j] >= ranks[l - 1] - ranks[l],
                    "rank drop condition fails at positions " + std::to_string(j) + "," + std::to_string(l));
    }
  }
}

XiSequence make_xi_sequence(std::vector<Rational> xi, std::vector<std::size_t> ranks) {
  XiSequence s{std::move(xi), std::move(ranks)};
  s.validate();
  return s;
}

std::vector<std::pair<Rational, std::size_t>> multiplicities(const JordanClass& c) {
  std::vector<std::pair<Rational, std::size_t>> out;
  for (const auto& eb : c.spectrum()) {
    out.emplace_back(eb.value, std::accumulate(eb.blocks.begin(), eb.blocks.end(), std::size_t{0}));
  }
  return out;
}

XiSequence normalize(const JordanClass& c) {
  std::vector<const Eigenblock*> order;
  for (const auto& eb : c.spectrum()) order.push_back(&eb);
  auto mult = [](const Eigenblock* e) { return std::accumulate(e->blocks.begin(), e->blocks.end(), std::size_t{0}); };
  std::sort(order.begin(), order.end(), [&](const Eigenblock* x, const Eigenblock* y) {
    const auto mx = mult(x), my = mult(y);
    if (mx != my) return mx > my;
    return x->value < y->value;
  });

  XiSequence s;
  s.ranks.push_back(c.n());
  std::size_t finished = 0;
  for (const Eigenblock* e : order) {
    const std::size_t largest = e->blocks.front();
    for (std::size_t j = 1; j <= largest; ++j) {
      std::size_t absorbed = 0;
      for (auto b : e->blocks) absorbed += std::min(b, j);
      s.xi.push_back(e->value);
      s.ranks.push_back(c.n() - finished - absorbed);
    }
    finished += mult(e);
  }
  if (s.xi.size() == 1) {
    s.xi.push_back(s.xi.front());
    s.ranks.push_back(0);
  }
  s.validate();
  return s;
}

std::vector<XiSequence> normalize(const ClassTuple& t) {
  std::vector<XiSequence> out;
  for (const auto& c : t.classes()) out.push_back(normalize(c));
  return out;
}

Rational trace_of_class(const JordanClass& c) {
  Rational tr = 0;
  for (const auto& [value, m] : multiplicities(c)) tr += value * Rational(static_cast<unsigned long>(m));
  return tr;
}

bool trace_condition(const ClassTuple& t) {
  Rational sum = 0;
  for (const auto& c : t.classes()) sum += trace_of_class(c);
  return sgn(sum) == 0;
}

bool is_generic(const ClassTuple& t, std::size_t state_cap) {
  require_input(trace_condition(t), "genericity needs the trace condition to hold");
  const std::size_t n = t.n();
  std::size_t states = 0;
  auto charge = [&](std::size_t count) {
    states += count;
    if (states > state_cap) throw ResourceError("genericity enumeration exceeded " + std::to_string(state_cap) + " states");
  };

  // per class: weighted sums reachable with each sub-multiplicity total
  std::vector<std::vector<std::set<Rational>>> reach;
  for (const auto& c : t.classes()) {
    std::vector<std::set<Rational>> by_total(n + 1);
    by_total[0].insert(Rational(0));
    for (const auto& [value, m] : multiplicities(c)) {
      std::vector<std::set<Rational>> next(n + 1);
      for (std::size_t total = 0; total <= n; ++total) {
        for (const auto& s : by_total[total]) {
          for (std::size_t take = 0; take <= m && total + take <= n; ++take) {
            next[total + take].insert(s + value * Rational(static_cast<unsigned long>(take)));
          }
        }
      }
      by_total = std::move(next);
      for (const auto& b : by_total) charge(b.size());
    }
    reach.push_back(std::move(by_total));
  }

  // a common total strictly between 0 and n whose class sums can cancel
  for (std::size_t total = 1; total < n; ++total) {
    std::set<Rational> acc = {Rational(0)};
    for (const auto& per_class : reach) {
      std::set<Rational> next;
      for (const auto& a : acc) {
        for (const auto& s : per_class[total]) next.insert(a + s);
      }
      charge(next.size());
      acc = std::move(next);
      if (acc.empty()) break;
    }
    if (acc.count(Rational(0))) return false;
  }
  return true;
}

}  // namespace adsp
