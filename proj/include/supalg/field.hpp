#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace supalg {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

bool is_prime(u64 n);

// Exponentiation with overflow check; throws std::overflow_error.
u64 ipow(u64 base, unsigned exp);

// Raw arithmetic modulo a fixed odd prime. Used in hot loops where the
// modulus is known to be shared.
struct Fp {
  u32 p;

  explicit Fp(u32 modulus);

  u32 add(u32 a, u32 b) const {
    u32 s = a + b;
    return s >= p ? s - p : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>((u64)a * b % p); }
  u32 pow(u32 a, u64 e) const;
  u32 inv(u32 a) const;
  u32 from_int(i64 v) const {
    i64 r = v % (i64)p;
    return static_cast<u32>(r < 0 ? r + p : r);
  }
  u32 sign(bool negative) const { return negative ? p - 1 : 1; }
  // n! mod p for n < p.
  u32 factorial(u32 n) const;
};

class FpScalar {
 public:
  FpScalar(u32 p, i64 value);

  u32 p() const { return p_; }
  u32 value() const { return v_; }

  FpScalar operator+(const FpScalar& o) const;
  FpScalar operator-(const FpScalar& o) const;
  FpScalar operator*(const FpScalar& o) const;
  FpScalar operator/(const FpScalar& o) const;
  FpScalar operator-() const;
  FpScalar inverse() const;
  FpScalar pow(u64 e) const;

  bool operator==(const FpScalar& o) const;
  bool operator!=(const FpScalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  FpScalar(u32 p, u32 v, bool) : p_(p), v_(v) {}
  void check_same(const FpScalar& o) const;
  u32 p_;
  u32 v_;
};

struct PadicDigits {
  u32 p = 3;
  std::vector<u32> digits;  // least significant first, trailing zeros trimmed

  u64 value() const;
  u32 digit_sum() const;
  u32 digit(std::size_t i) const { return i < digits.size() ? digits[i] : 0; }
};

PadicDigits p_adic(u64 n, u32 p);

// Lucas: product of digitwise binomials.
FpScalar binom_mod_p(u64 n, u64 k, u32 p);
u32 binom_raw(u64 n, u64 k, const Fp& F);

// (prod_i j_i!)^{-1} over the p-adic digits j_i of j.
FpScalar digit_factorial_inverse(u64 j, u32 p);
u32 digit_factorial_inverse_raw(u64 j, const Fp& F);

}  // namespace supalg
