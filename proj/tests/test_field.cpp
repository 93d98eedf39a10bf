#include <doctest.h>

#include "oracle.hpp"
#include "supalg/field.hpp"

using namespace supalg;

TEST_CASE("binomials mod p") {
  CHECK(binom_mod_p(5, 2, 3).value() == 1);
  CHECK(binom_mod_p(4, 2, 3).value() == 0);
  for (u32 p : {3u, 5u, 7u})
    for (u64 n : {0ull, 1ull, 17ull, 1000ull}) CHECK(binom_mod_p(n, 0, p).value() == 1);
  CHECK(binom_mod_p(3, 5, 3).value() == 0);
}

TEST_CASE("Lucas agrees with Pascal's triangle for n, k < p^3") {
  for (u32 p : {3u, 5u}) {
    const u32 N = p * p * p;
    auto T = oracle::pascal(N, p);
    Fp F(p);
    for (u32 n = 0; n < N; ++n)
      for (u32 k = 0; k < N; ++k) {
        u32 expect = k <= n ? T[n][k] : 0;
        CHECK(binom_mod_p(n, k, p).value() == expect);
        CHECK(binom_raw(n, k, F) == expect);
      }
  }
}

TEST_CASE("Vandermonde on a grid") {
  const u32 p = 3;
  for (u64 m = 0; m < 20; ++m)
    for (u64 n = 0; n < 20; ++n)
      for (u64 k = 0; k <= m + n; k += 3) {
        FpScalar s(p, 0);
        for (u64 a = 0; a <= k; ++a) s = s + binom_mod_p(m, a, p) * binom_mod_p(n, k - a, p);
        CHECK(s == binom_mod_p(m + n, k, p));
      }
}

TEST_CASE("C(i+j,i) = C(i+j-p,i) + C(i+j-p,i-p) mod p") {
  for (u32 p : {3u, 5u})
    for (u64 i = 0; i < 40; ++i)
      for (u64 j = 0; j < 40; ++j) {
        if (i + j < p) continue;
        FpScalar rhs = binom_mod_p(i + j - p, i, p);
        if (i >= p) rhs = rhs + binom_mod_p(i + j - p, i - p, p);
        CHECK(binom_mod_p(i + j, i, p) == rhs);
      }
}

TEST_CASE("p-adic digits") {
  auto d = p_adic(5, 3);
  CHECK(d.digits == std::vector<u32>{2, 1});
  CHECK(p_adic(0, 3).digits.empty());
  CHECK(p_adic(0, 7).digits.empty());
  for (u32 p : {3u, 5u})
    for (unsigned k = 0; k < 8; ++k) CHECK(p_adic(ipow(p, k), p).digit_sum() == 1);
  for (u64 n = 0; n < 500; ++n) {
    auto e = p_adic(n, 3);
    CHECK(e.value() == n);
    if (!e.digits.empty()) CHECK(e.digits.back() != 0);
  }
}

TEST_CASE("digit factorial inverse") {
  CHECK(digit_factorial_inverse(4, 3).value() == 1);
  CHECK(digit_factorial_inverse(2, 3).value() == 2);
  CHECK(digit_factorial_inverse(0, 5).value() == 1);
  for (u32 p : {3u, 5u, 7u}) {
    for (u64 j = 0; j < 400; ++j) {
      u32 prod = 1;
      for (u64 t = j; t; t /= p)
        for (u32 k = 2; k <= t % p; ++k) prod = oracle::mulmod(prod, k, p);
      CHECK(oracle::mulmod(digit_factorial_inverse(j, p).value(), prod, p) == 1);
    }
  }
}

TEST_CASE("scalar arithmetic") {
  for (u32 p : {3u, 5u, 11u}) {
    for (i64 a = -12; a < 12; ++a)
      for (i64 b = -12; b < 12; ++b) {
        FpScalar x(p, a), y(p, b);
        i64 ra = ((a % (i64)p) + p) % p, rb = ((b % (i64)p) + p) % p;
        CHECK((x + y).value() == (ra + rb) % p);
        CHECK((x - y).value() == (ra - rb + p) % p);
        CHECK((x * y).value() == (ra * rb) % p);
        if (rb) CHECK(((x / y) * y) == x);
      }
    FpScalar g(p, 2);
    CHECK(g.pow(p - 1).value() == 1);
  }
}

TEST_CASE("moduli are carried per value") {
  CHECK_THROWS_AS(FpScalar(3, 1) + FpScalar(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(FpScalar(3, 1) == FpScalar(5, 1), std::invalid_argument);
  CHECK_THROWS(Fp(9));
  CHECK_THROWS(Fp(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(ipow(3, 64), std::overflow_error);
}
