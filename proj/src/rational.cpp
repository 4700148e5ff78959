#include "tauseq/rational.hpp"

#include <atomic>
#include <ostream>

namespace tauseq {

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("bad rational literal: '" + text + "'"); };
  std::string s = text;
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigRat(BigInt(s)));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) bad();
    BigRat v(num);
    v /= BigRat(den);
    return Rational(v);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

std::string Rational::str() const {
  std::string s = num().str();
  if (!is_integer()) s += "/" + den().str();
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

namespace {
std::atomic<std::uint64_t> g_fp_modulus{32003};
}

void Fp::set_modulus(std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
  g_fp_modulus.store(p);
}

std::uint64_t Fp::modulus() { return g_fp_modulus.load(); }

std::uint64_t Fp::reduce(long long n) {
  const long long p = (long long)modulus();
  long long r = n % p;
  if (r < 0) r += p;
  return (std::uint64_t)r;
}

Fp::Fp(const Rational& r) {
  const BigInt p(modulus());
  BigInt num = r.num() % p;
  if (num < 0) num += p;
  BigInt den = r.den() % p;
  Fp result = Fp((long long)num.convert_to<std::int64_t>());
  if (den == 0) throw std::domain_error("Fp: denominator vanishes mod p");
  result /= Fp((long long)den.convert_to<std::int64_t>());
  v_ = result.v_;
}

Fp& Fp::operator+=(const Fp& o) {
  v_ += o.v_;
  if (v_ >= modulus()) v_ -= modulus();
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + modulus() - o.v_;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  v_ = (std::uint64_t)((unsigned __int128)v_ * o.v_ % modulus());
  return *this;
}

Fp& Fp::operator/=(const Fp& o) {
  if (o.v_ == 0) throw std::invalid_argument("Fp: division by zero");
  // inverse by Fermat; the modulus is prime by contract
  std::uint64_t base = o.v_, e = modulus() - 2, acc = 1;
  while (e) {
    if (e & 1) acc = (std::uint64_t)((unsigned __int128)acc * base % modulus());
    base = (std::uint64_t)((unsigned __int128)base * base % modulus());
    e >>= 1;
  }
  v_ = (std::uint64_t)((unsigned __int128)v_ * acc % modulus());
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Fp& f) { return os << f.rep(); }

}  // namespace tauseq
