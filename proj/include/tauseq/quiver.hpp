#pragma once

#include "tauseq/linalg.hpp"

#include <string>
#include <vector>

namespace tauseq {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

struct Quiver {
  int vertices = 0;
  std::vector<Arrow> arrows;

  bool has_loops() const;
  bool is_acyclic() const;
  /// Tits form q(d) = sum d_i^2 - sum_a d_{s(a)} d_{t(a)} positive definite.
  bool is_dynkin() const;
  /// Positive roots of the underlying diagram, reflection closure of the
  /// simple roots. Only valid for Dynkin quivers (finitely many roots).
  std::vector<std::vector<long>> positive_roots() const;
};

Quiver linear_quiver(int n);  // A_n with orientation 1 -> 2 -> ... -> n
Quiver d4_subspace_quiver();  // three sources into a central sink

}  // namespace tauseq
