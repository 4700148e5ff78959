#pragma once

#include "tauseq/coefficients.hpp"
#include "tauseq/linalg.hpp"
#include "tauseq/quiver.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace tauseq {

/// A path of the quiver, arrows listed in application order (index 0 acts
/// first). Trivial paths carry only their vertex.
struct Path {
  int source = 0;
  std::vector<int> arrows;
  int length() const { return (int)arrows.size(); }
};

struct PathTerm {
  Rational coeff;
  Path path;
};
/// A relation is a linear combination of parallel paths.
using PathRelation = std::vector<PathTerm>;

/// One summand of the expression of a basis element as a word in the
/// generators; the word is in application order, empty = trivial path.
struct ExprTerm {
  Rational coeff;
  int source = 0;
  std::vector<int> word;
};

struct QuiverPresentation {
  Quiver quiver;
  std::vector<PathRelation> relations;
};

/// A basic finite dimensional algebra with a complete set of primitive
/// orthogonal idempotents e_0..e_{n-1} occupying the first n basis slots.
/// The basis is Peirce-homogeneous: every basis element b satisfies
/// b = e_{tgt(b)} . b . e_{src(b)}. Products follow the composition
/// convention: b_i * b_j applies b_j first and requires src(b_i) = tgt(b_j).
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  using Ptr = std::shared_ptr<const Algebra>;

  std::string id;
  int verts = 0;
  std::vector<Arrow> gens;  // radical generators with source/target vertices
  int dim = 0;
  std::vector<int> basis_src, basis_tgt;
  std::vector<int> gen_basis;                // basis index of each generator, -1 if non-basis
  std::vector<Vec> gen_elem;                 // generator as an element (coords in basis)
  std::vector<std::vector<ExprTerm>> expr;   // basis elements as words in generators
  std::vector<int> radical_basis;            // indices spanning rad; diagonal-first ordering
  int rad_nilpotency = 1;                    // smallest m with rad^m = 0
  bool hereditary = false;
  std::optional<QuiverPresentation> presentation;

  Vec basis_vec(int b) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec mult_basis(int i, int j) const;  // b_i * b_j
  std::vector<int> block_basis(int src, int tgt) const;
  int block_dim(int src, int tgt) const;
  Mat cartan_matrix() const;                    // entry (i,j) = dim e_i A e_j
  std::vector<int> radical_series_dims() const; // dims of rad^0 > rad^1 > ...
  int generator_index(const std::string& name) const;

  /// The opposite algebra, built once and cached.
  Ptr opposite() const;

  Mat mult_table;  // (dim*dim) x dim

 private:
  mutable std::mutex op_mutex_;
  mutable Ptr op_cache_;
};

/// Quotient of the path algebra of q by the admissible ideal generated by
/// the relations. Throws when no power of the arrow ideal falls inside the
/// ideal within the path-length cap.
Algebra::Ptr path_algebra(const std::string& id, const Quiver& q,
                          const std::vector<PathRelation>& relations, int path_cap = 64);

/// Abstract algebra from structure constants. The idempotents must be
/// orthogonal, primitive, and sum to 1; the basis is rebuilt internally to
/// the Peirce-homogeneous form. Generators may be supplied (they must be
/// radical elements generating the algebra together with the idempotents);
/// otherwise a lift of rad/rad^2 is chosen.
struct GeneratorSpec {
  std::string name;
  int source = 0, target = 0;
  Vec element;  // coordinates in the input basis
};
Algebra::Ptr algebra_from_structure(const std::string& id, int dim, const Mat& mult,
                                    const std::vector<Vec>& idempotents,
                                    const std::vector<GeneratorSpec>& generators = {},
                                    Mat* new_basis_in_old = nullptr);

/// The tensor algebra R (x) kQ. For truncated polynomial R this produces the
/// quiver-with-relations presentation (loops x_i, commutation and truncation
/// relations) and cross-checks it against the structure-constant route; for
/// general R the structure-constant route is used directly.
Algebra::Ptr tensor_algebra(const std::string& id, const LocalCoefficientAlgebra& r, const Quiver& q);

/// Gabriel quiver plus a generating set of relations, read off a basic
/// algebra: one arrow per generator, relations from the kernel of the
/// surjection of the truncated path algebra onto the algebra.
QuiverPresentation basic_presentation(const Algebra& a);

}  // namespace tauseq
