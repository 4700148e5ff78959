#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tauseq/linalg.hpp"

#include <random>

using namespace tauseq;

namespace {

Mat from_ints(int rows, int cols, std::initializer_list<int> vals) {
  Mat m(rows, cols);
  auto it = vals.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
  return m;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rational::parse("-4/6") == Rational(-2, 3));
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0).str() == "0");
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
}

TEST_CASE("kernel of identity is trivial") {
  Mat id = Mat::Identity(2, 2);
  CHECK(kernel_basis(id).cols() == 0);
}

TEST_CASE("kernel of zero map is the standard basis") {
  Mat z = Mat::Zero(2, 3);
  Mat k = kernel_basis(z);
  CHECK(k.cols() == 3);
  CHECK(mat_eq(k, Mat(Mat::Identity(3, 3))));
}

TEST_CASE("kernel of a rank one 2x2 matrix") {
  // [[1,2],[2,4]]: kernel spanned by (-2, 1)
  Mat m = from_ints(2, 2, {1, 2, 2, 4});
  Mat k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) / k(1, 0) == Rational(-2));
  CHECK(is_zero_mat(Mat(m * k)));
}

TEST_CASE("solve against identity and zero") {
  Mat id = Mat::Identity(2, 2);
  Vec t(2);
  t << Rational(3), Rational(5);
  auto res = solve_all(id, {t});
  REQUIRE(res.particular[0].has_value());
  CHECK(vec_eq(*res.particular[0], t));

  Mat z = Mat::Zero(2, 2);
  Vec bad(2);
  bad << Rational(1), Rational(0);
  auto res2 = solve_all(z, {bad});
  CHECK_FALSE(res2.particular[0].has_value());
}

TEST_CASE("back substitution example") {
  Mat m = from_ints(2, 2, {1, 1, 0, 1});
  Vec t(2);
  t << Rational(2), Rational(1);
  auto x = solve_one(m, t);
  REQUIRE(x.has_value());
  Vec expect(2);
  expect << Rational(1), Rational(1);
  CHECK(vec_eq(*x, expect));
}

TEST_CASE("invertibility checks") {
  CHECK(is_invertible(Mat(Mat::Identity(3, 3))));
  CHECK_FALSE(is_invertible(Mat(Mat::Zero(1, 1))));
  CHECK(is_invertible(from_ints(2, 2, {0, 1, 1, 0})));
  CHECK_THROWS(is_invertible(Mat(Mat::Zero(2, 3))));
}

TEST_CASE("rank-nullity on randomized small matrices") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    int r = size(rng), c = size(rng);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = Rational(entry(rng));
    Mat k = kernel_basis(m);
    CHECK(rank(m) + k.cols() == c);
    CHECK(is_zero_mat(Mat(m * k)));
  }
}

TEST_CASE("solutions are exact, no tolerance") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    Mat m(4, 3);
    Vec x(3);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = Rational(entry(rng), 1 + (std::abs(entry(rng)) % 3));
    for (int j = 0; j < 3; ++j) x(j) = Rational(entry(rng), 2);
    Vec t = m * x;
    auto sol = solve_one(m, t);
    REQUIRE(sol.has_value());
    CHECK(vec_eq(Vec(m * *sol), t));
  }
}

TEST_CASE("prime field ranks agree with rational ranks for tiny entries") {
  // entries in {-1,0,1} and size <= 6 keep every nonzero minor below the
  // default modulus, so specialization cannot drop the rank
  REQUIRE(Fp::modulus() == 32003);
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-1, 1);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    int r = size(rng), c = size(rng);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = Rational(entry(rng));
    DenseMat<Fp> mp = to_field<Fp>(m);
    CHECK(rank(mp) == rank(m));
  }
}

TEST_CASE("empty matrices behave as empty maps") {
  Mat a(0, 3);
  CHECK(rank(a) == 0);
  CHECK(kernel_basis(a).cols() == 3);
  Mat b(3, 0);
  CHECK(kernel_basis(b).cols() == 0);
}
