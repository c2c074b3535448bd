#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adsp/classdata.hpp"
#include "adsp/matrix.hpp"
#include "adsp/rootsys.hpp"
#include "adsp/sigma.hpp"

namespace adsp {

/// Representation of the doubled star quiver. For arm i (0-based) and position
/// j = 1..L_i, a[i][j-1] is the arrow [i,j] -> [i,j-1] (shape dims[i,j-1] × dims[i,j])
/// and astar[i][j-1] its reverse (shape dims[i,j] × dims[i,j-1]).
struct QuiverRep {
  StarQuiver quiver;
  DimVector dims;
  std::vector<std::vector<Matrix>> a;
  std::vector<std::vector<Matrix>> astar;

  /// All maps zero.
  static QuiverRep zero(const StarQuiver& q, const DimVector& dims);
};

struct MatrixSolution {
  std::vector<Matrix> matrices;
};

/// Shape check of all arrows; InputError on mismatch.
void check_shapes(const QuiverRep& rep);

/// Deformed preprojective relations: at every vertex v,
/// sum over arrows with head v of a·a* minus sum over arrows with tail v of a*·a = λ_v·1.
bool check_relations(const QuiverRep& rep, std::span<const Rational> lambda);

QuiverRep matrices_to_rep(const MatrixSolution& sol, std::span<const XiSequence> xs);
MatrixSolution rep_to_matrices(const QuiverRep& rep, std::span<const XiSequence> xs);

/// Reflection at v for a representation satisfying the relations for lambda
/// (lambda_v != 0). The result has dims reflect(v, dims) and satisfies the
/// relations for coreflect(v, lambda).
QuiverRep reflection_functor(const QuiverRep& rep, std::size_t v, std::span<const Rational> lambda);

/// Isomorphism search between representations: one invertible block per vertex.
InvertibleSearch find_rep_isomorphism(const QuiverRep& x, const QuiverRep& y, std::size_t samples = 32);

enum class TieBreak { least_vertex, greatest_vertex };

/// Vertices reflected at while walking alpha down to a coordinate vector.
std::vector<std::size_t> reduction_path(const Instance& inst, TieBreak tie = TieBreak::least_vertex);

MatrixSolution construct_rigid(const ClassTuple& t, TieBreak tie = TieBreak::least_vertex,
                               const DecideOptions& opts = {});

struct VerifyReport {
  bool classes_ok = false;
  bool sum_zero = false;
  bool irreducible = false;

  bool all() const { return classes_ok && sum_zero && irreducible; }
};

VerifyReport verify_solution(const ClassTuple& t, const MatrixSolution& sol);

}  // namespace adsp
