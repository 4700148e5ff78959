#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tauseq {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRat = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

/// Exact rational scalar. Thin value wrapper around a multiprecision
/// rational so that Eigen expressions never meet the backend's own
/// expression machinery. Always stored in lowest terms with positive
/// denominator (the backend canonicalizes on every operation).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(long long n) : v_((std::int64_t)n) {}
  Rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = BigRat(num);
    v_ /= den;
  }
  explicit Rational(BigRat v) : v_(std::move(v)) {}

  static Rational parse(const std::string& text);

  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const { return denominator(v_) == 1; }
  BigInt num() const { return numerator(v_); }
  BigInt den() const { return denominator(v_); }
  const BigRat& value() const { return v_; }

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// Serialized as `p/q`, with `/q` omitted when q = 1.
  std::string str() const;

 private:
  BigRat v_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Element of the prime field F_p for a runtime modulus. Used only by the
/// cross-check harness; the modulus is fixed once at startup.
class Fp {
 public:
  static void set_modulus(std::uint64_t p);
  static std::uint64_t modulus();

  Fp() : v_(0) {}
  Fp(int n) : v_(reduce(n)) {}
  Fp(long n) : v_(reduce(n)) {}
  Fp(long long n) : v_(reduce(n)) {}
  explicit Fp(const Rational& r);

  bool is_zero() const { return v_ == 0; }
  std::uint64_t rep() const { return v_; }

  Fp operator-() const { return from_raw(v_ == 0 ? 0 : modulus() - v_); }
  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o);

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return a.v_ != b.v_; }
  friend bool operator<(const Fp& a, const Fp& b) { return a.v_ < b.v_; }

 private:
  static Fp from_raw(std::uint64_t v) { Fp f; f.v_ = v; return f; }
  static std::uint64_t reduce(long long n);
  std::uint64_t v_;
};

inline Fp abs(const Fp& f) { return f; }

std::ostream& operator<<(std::ostream& os, const Fp& f);

}  // namespace tauseq

namespace Eigen {

template <>
struct NumTraits<tauseq::Rational> {
  using Real = tauseq::Rational;
  using NonInteger = tauseq::Rational;
  using Literal = tauseq::Rational;
  using Nested = tauseq::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40,
  };
  static tauseq::Rational epsilon() { return tauseq::Rational(0); }
  static tauseq::Rational dummy_precision() { return tauseq::Rational(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<tauseq::Fp> {
  using Real = tauseq::Fp;
  using NonInteger = tauseq::Fp;
  using Literal = tauseq::Fp;
  using Nested = tauseq::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3,
  };
  static tauseq::Fp epsilon() { return tauseq::Fp(0); }
  static tauseq::Fp dummy_precision() { return tauseq::Fp(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
