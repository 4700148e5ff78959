#include "tauseq/coefficients.hpp"

#include <stdexcept>

namespace tauseq {

LocalCoefficientAlgebra LocalCoefficientAlgebra::truncated_polynomial(int t) {
  if (t < 1) throw std::invalid_argument("truncated_polynomial: t must be >= 1");
  LocalCoefficientAlgebra r;
  r.dim_ = t;
  for (int i = 0; i < t; ++i) r.labels_.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
  r.mult_ = Mat::Zero(t * t, t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (i + j < t) r.mult_(i * t + j, i + j) = Rational(1);
  r.truncation_ = t;
  r.validate_and_finish();
  return r;
}

LocalCoefficientAlgebra LocalCoefficientAlgebra::from_structure(std::vector<std::string> labels, Mat mult) {
  LocalCoefficientAlgebra r;
  r.dim_ = (int)labels.size();
  if (mult.rows() != (Eigen::Index)r.dim_ * r.dim_ || mult.cols() != r.dim_)
    throw std::invalid_argument("coefficient algebra: bad structure constant shape");
  r.labels_ = std::move(labels);
  r.mult_ = std::move(mult);
  r.validate_and_finish();
  return r;
}

Vec LocalCoefficientAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (a(i).is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (b(j).is_zero()) continue;
      out += mult_.row(i * dim_ + j).transpose() * (a(i) * b(j));
    }
  }
  return out;
}

Mat LocalCoefficientAlgebra::mult_matrix(int idx) const {
  Mat m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) m.col(j) = mult_.row(idx * dim_ + j).transpose();
  return m;
}

Vec LocalCoefficientAlgebra::basis_vec(int idx) const {
  Vec v = Vec::Zero(dim_);
  v(idx) = Rational(1);
  return v;
}

void LocalCoefficientAlgebra::validate_and_finish() {
  const int d = dim_;
  auto prod = [&](int i, int j) { return mult_.row(i * d + j).transpose(); };
  // unit in position 0
  for (int i = 0; i < d; ++i) {
    if (!vec_eq(Vec(prod(0, i)), Vec(basis_vec(i))) || !vec_eq(Vec(prod(i, 0)), Vec(basis_vec(i))))
      throw std::invalid_argument("coefficient algebra: basis element 0 is not a unit");
  }
  // commutativity
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!vec_eq(Vec(prod(i, j)), Vec(prod(j, i))))
        throw std::invalid_argument("coefficient algebra: structure constants not commutative");
  // associativity
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Vec left = multiply(Vec(prod(i, j)), basis_vec(k));
        Vec right = multiply(basis_vec(i), Vec(prod(j, k)));
        if (!vec_eq(left, right)) throw std::invalid_argument("coefficient algebra: structure constants not associative");
      }
  // locality: non-unit basis spans a nilpotent ideal
  Mat rad(d, d - 1);
  for (int i = 1; i < d; ++i) rad.col(i - 1) = basis_vec(i);
  for (int i = 1; i < d; ++i)
    for (int j = 1; j < d; ++j)
      if (!Vec(prod(i, j))(0).is_zero())
        throw std::invalid_argument("coefficient algebra: maximal-ideal span is not an ideal");
  Mat power = rad;
  nilpotency_ = 1;
  while (power.cols() > 0) {
    if (++nilpotency_ > d + 1) throw std::invalid_argument("coefficient algebra: radical is not nilpotent");
    std::vector<Vec> prods;
    for (Eigen::Index c = 0; c < power.cols(); ++c)
      for (int i = 1; i < d; ++i) prods.push_back(multiply(basis_vec(i), Vec(power.col(c))));
    Mat span(d, (Eigen::Index)prods.size());
    for (std::size_t k = 0; k < prods.size(); ++k) span.col((Eigen::Index)k) = prods[k];
    power = column_space_basis(span);
  }
  // radical generators: lift of a basis of rad/rad^2
  std::vector<Vec> sq;
  for (int i = 1; i < d; ++i)
    for (int j = 1; j < d; ++j) sq.push_back(Vec(prod(i, j)));
  Mat rad2(d, (Eigen::Index)sq.size());
  for (std::size_t k = 0; k < sq.size(); ++k) rad2.col((Eigen::Index)k) = sq[k];
  Mat rad2b = column_space_basis(rad2);
  rad_gens_.clear();
  Mat span = rad2b;
  for (int i = 1; i < d; ++i) {
    Mat trial = hstack(span, Mat(basis_vec(i)));
    if (rank(trial) > rank(span)) {
      rad_gens_.push_back(i);
      span = trial;
    }
  }
}

}  // namespace tauseq
