#include "supalg/field.hpp"

#include <limits>

namespace supalg {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base)
      throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

Fp::Fp(u32 modulus) : p(modulus) {
  if (modulus < 3 || !is_prime(modulus))
    throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(modulus));
}

u32 Fp::pow(u32 a, u64 e) const {
  u64 r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 Fp::inv(u32 a) const {
  if (a % p == 0) throw std::domain_error("division by zero in F_p");
  return pow(a, p - 2);
}

u32 Fp::factorial(u32 n) const {
  u64 r = 1;
  for (u32 i = 2; i <= n; ++i) r = r * i % p;
  return static_cast<u32>(r);
}

FpScalar::FpScalar(u32 p, i64 value) : p_(p), v_(Fp(p).from_int(value)) {}

void FpScalar::check_same(const FpScalar& o) const {
  if (p_ != o.p_)
    throw std::invalid_argument("mixed moduli: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
}

FpScalar FpScalar::operator+(const FpScalar& o) const {
  check_same(o);
  u32 s = v_ + o.v_;
  return FpScalar(p_, s >= p_ ? s - p_ : s, true);
}

FpScalar FpScalar::operator-(const FpScalar& o) const {
  check_same(o);
  return FpScalar(p_, v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, true);
}

FpScalar FpScalar::operator*(const FpScalar& o) const {
  check_same(o);
  return FpScalar(p_, static_cast<u32>((u64)v_ * o.v_ % p_), true);
}

FpScalar FpScalar::operator/(const FpScalar& o) const { return *this * o.inverse(); }

FpScalar FpScalar::operator-() const { return FpScalar(p_, v_ == 0 ? 0 : p_ - v_, true); }

FpScalar FpScalar::inverse() const {
  if (v_ == 0) throw std::domain_error("division by zero in F_p");
  return pow(p_ - 2);
}

FpScalar FpScalar::pow(u64 e) const {
  u64 r = 1, b = v_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return FpScalar(p_, static_cast<u32>(r), true);
}

bool FpScalar::operator==(const FpScalar& o) const {
  check_same(o);
  return v_ == o.v_;
}

std::string FpScalar::to_string() const { return std::to_string(v_); }

u64 PadicDigits::value() const {
  u64 v = 0, pk = 1;
  for (u32 d : digits) {
    v += d * pk;
    pk *= p;
  }
  return v;
}

u32 PadicDigits::digit_sum() const {
  u32 s = 0;
  for (u32 d : digits) s += d;
  return s;
}

PadicDigits p_adic(u64 n, u32 p) {
  if (p < 2) throw std::invalid_argument("p_adic: base must be >= 2");
  PadicDigits out;
  out.p = p;
  while (n) {
    out.digits.push_back(static_cast<u32>(n % p));
    n /= p;
  }
  return out;
}

u32 binom_raw(u64 n, u64 k, const Fp& F) {
  if (k > n) return 0;
  u64 r = 1;
  while (n || k) {
    u32 a = static_cast<u32>(n % F.p), b = static_cast<u32>(k % F.p);
    if (b > a) return 0;
    // a choose b with a < p
    u64 num = 1, den = 1;
    for (u32 i = 0; i < b; ++i) {
      num = num * (a - i) % F.p;
      den = den * (i + 1) % F.p;
    }
    r = r * num % F.p * F.inv(static_cast<u32>(den)) % F.p;
    n /= F.p;
    k /= F.p;
  }
  return static_cast<u32>(r);
}

FpScalar binom_mod_p(u64 n, u64 k, u32 p) {
  Fp F(p);
  return FpScalar(p, binom_raw(n, k, F));
}

u32 digit_factorial_inverse_raw(u64 j, const Fp& F) {
  u64 prod = 1;
  while (j) {
    prod = prod * F.factorial(static_cast<u32>(j % F.p)) % F.p;
    j /= F.p;
  }
  return F.inv(static_cast<u32>(prod));
}

FpScalar digit_factorial_inverse(u64 j, u32 p) {
  Fp F(p);
  return FpScalar(p, digit_factorial_inverse_raw(j, F));
}

}  // namespace supalg
