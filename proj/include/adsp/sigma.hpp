#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "adsp/classdata.hpp"
#include "adsp/kernels.hpp"
#include "adsp/rootsys.hpp"

namespace adsp {

enum class SolutionCount { none, unique, infinite };
const char* to_string(SolutionCount c);

struct TraceObstruction {
  Rational lambda_dot_alpha;
};

struct NotRoot {};

/// Parts (at least two) from R+_lambda summing to alpha whose defects total at
/// least p(alpha).
struct Decomposition {
  std::vector<DimVector> parts;
  std::int64_t sum_p = 0;
  std::int64_t p_alpha = 0;
};

struct MemberOk {
  std::int64_t p_alpha = 0;
  std::optional<std::int64_t> max_sub_defect;  // best decomposition total, if any exists
};

using Certificate = std::variant<TraceObstruction, NotRoot, Decomposition, MemberOk>;

struct Decision {
  bool member = false;
  RootClass root_class = RootClass::not_root;
  SolutionCount solution_count = SolutionCount::none;
  Certificate certificate = NotRoot{};
};

struct DecideOptions {
  std::size_t box_cap = kDefaultBoxCap;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Membership of alpha in Sigma_lambda via the decomposition DP.
Decision decide(const Instance& inst, const DecideOptions& opts = {});

inline constexpr std::int64_t kDefaultBruteforceBound = 10;

/// Same contract as decide, by exhaustive enumeration of multiset decompositions.
/// InputError if the coordinate sum of alpha exceeds `bound`.
Decision decide_bruteforce(const Instance& inst, std::int64_t bound = kDefaultBruteforceBound);

bool is_rigid(const Instance& inst, const DecideOptions& opts = {});

/// lambda = 0 shortcut: coordinate vectors and fundamental-region vectors that are
/// not of special type (I) or (II). InputError if lambda != 0.
Decision classify_nilpotent(const Instance& inst);

/// Generic eigenvalues: member iff alpha is a root. InputError unless is_generic(t).
Decision decide_generic(const Instance& inst, const ClassTuple& t,
                        std::size_t state_cap = kDefaultGenericityCap);

/// Structural check of a non-membership decomposition: at least two parts, each a
/// positive root orthogonal to lambda, summing to alpha, with the stated defects.
bool certificate_valid(const Instance& inst, const Decomposition& d);

}  // namespace adsp
