#pragma once

#include "tauseq/linalg.hpp"

#include <string>
#include <vector>

namespace tauseq {

/// A local commutative coefficient algebra R, given by a basis with the unit
/// in position 0 and the maximal ideal spanned by the remaining elements.
class LocalCoefficientAlgebra {
 public:
  /// k[x]/(x^t) with basis 1, x, ..., x^{t-1}.
  static LocalCoefficientAlgebra truncated_polynomial(int t);

  /// General structure-constant input. `mult` holds the product of the i-th
  /// and j-th basis elements in row i*dim+j. Throws unless the data is
  /// commutative, associative, unital at index 0, and local.
  static LocalCoefficientAlgebra from_structure(std::vector<std::string> labels, Mat mult);

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int truncation() const { return truncation_; }  // 0 unless of k[x]/(x^t) form
  /// Indices of a chosen lift of a basis of rad/rad^2; these become the loop
  /// generators of R tensor kQ.
  const std::vector<int>& radical_generators() const { return rad_gens_; }
  int radical_nilpotency() const { return nilpotency_; }

  Vec multiply(const Vec& a, const Vec& b) const;
  /// Matrix of multiplication by the idx-th basis element on R itself.
  Mat mult_matrix(int idx) const;
  Vec basis_vec(int idx) const;

 private:
  LocalCoefficientAlgebra() = default;
  void validate_and_finish();

  int dim_ = 0;
  std::vector<std::string> labels_;
  Mat mult_;  // (dim*dim) x dim
  std::vector<int> rad_gens_;
  int nilpotency_ = 1;
  int truncation_ = 0;
};

}  // namespace tauseq
