#include <doctest.h>

#include <cstdlib>

#include "oracle.hpp"
#include "supalg/varieties.hpp"

using namespace supalg;

namespace {

// Brute force over all entry tuples with plain matrices; even indices first.
std::vector<std::vector<u32>> brute_force_points(int m, int n, int r, u32 p, const std::vector<u32>* f = nullptr,
                                                 u32 eta = 0) {
  const int N = m + n;
  auto par = [&](int i) { return i < m ? 0 : 1; };
  std::vector<std::pair<int, int>> even, odd;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) (par(i) == par(j) ? even : odd).emplace_back(i, j);
  const std::size_t len = r * even.size() + odd.size();
  std::vector<std::vector<u32>> out;
  std::vector<u32> e(len, 0);
  auto zero = oracle::Dense(N, std::vector<u32>(N, 0));
  while (true) {
    std::vector<oracle::Dense> a(r, zero);
    oracle::Dense b = zero;
    std::size_t k = 0;
    for (int i = 0; i < r; ++i)
      for (auto [x, y] : even) a[i][x][y] = e[k++];
    for (auto [x, y] : odd) b[x][y] = e[k++];
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
      for (int j = 0; j < r && ok; ++j) ok = oracle::matmul(a[i], a[j], p) == oracle::matmul(a[j], a[i], p);
    for (int i = 0; i + 1 < r && ok; ++i) ok = oracle::is_zero(oracle::matpow(a[i], p, p));
    for (int i = 0; i < r && ok; ++i) ok = oracle::matmul(a[i], b, p) == oracle::matmul(b, a[i], p);
    if (ok) ok = oracle::is_zero(oracle::add(oracle::matpow(a[r - 1], p, p), oracle::matmul(b, b, p), p));
    if (ok && f) {
      oracle::Dense acc = zero;
      for (std::size_t i = 0; i < f->size(); ++i) {
        auto term = oracle::matpow(a[r - 1], oracle::powmod(p, i, 1u << 30), p);
        for (auto& row : term)
          for (auto& x : row) x = oracle::mulmod(x, (*f)[i], p);
        acc = oracle::add(acc, term, p);
      }
      auto lin = a[0];
      for (auto& row : lin)
        for (auto& x : row) x = oracle::mulmod(x, eta, p);
      ok = oracle::is_zero(oracle::add(acc, lin, p));
    }
    if (ok) out.push_back(e);
    std::size_t pos = len;
    while (pos > 0 && ++e[pos - 1] == p) e[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

std::vector<std::vector<u32>> entries_of(const std::vector<VrPoint>& pts) {
  std::vector<std::vector<u32>> out;
  for (auto& pt : pts) out.push_back(pt.entries());
  return out;
}

}  // namespace

TEST_CASE("check_point examples") {
  auto z = VrPoint::zero(1, 1, 1, 3);
  CHECK(check_point(z).pass);
  // alpha = diag(1, 1): alpha^3 = 1 needs beta^2 = -1, impossible for an odd 1|1 map
  auto pt = VrPoint::from_entries(1, 1, 1, 3, {1, 1, 0, 0});
  auto res = check_point(pt);
  CHECK_FALSE(res.pass);
  CHECK(res.violated == "alpha_0^p + beta^2 = 0");
  // beta = [[0,1],[2,0]] squares to 2 I = -alpha^3
  auto good = VrPoint::from_entries(1, 1, 1, 3, {1, 1, 1, 2});
  CHECK(check_point(good).pass);
  auto noncomm = VrPoint::from_entries(1, 1, 1, 3, {1, 0, 1, 0});
  CHECK(check_point(noncomm).violated == "[alpha_0, beta] = 0");
  auto r2 = VrPoint::from_entries(1, 0, 2, 3, {1, 0});
  CHECK(check_point(r2).violated == "alpha_0^p = 0");
  auto f = PPolynomial::parse("T^3", 3);
  CHECK(check_point(good, PPolynomial::parse("T^9+2T^3", 3), 0).pass);
  CHECK(check_point(good, f, 0).violated == "f(alpha_0) + eta alpha_0 = 0");
  CHECK(check_point(good, f, 2).pass);  // alpha^3 + 2 alpha = 3 alpha = 0

  auto bad = z;
  bad.alpha.pop_back();
  CHECK_THROWS_AS(check_point(bad), std::invalid_argument);
  CHECK_THROWS_AS(check_point(z, PPolynomial::parse("T^5", 5), 0), std::invalid_argument);
  CHECK_THROWS_AS(VrPoint::from_entries(1, 1, 1, 3, {1, 2}), std::invalid_argument);
}

TEST_CASE("entries round trip") {
  for (auto& pt : enumerate_Vr(2, 1, 1, 3)) CHECK(VrPoint::from_entries(2, 1, 1, 3, pt.entries()) == pt);
}

TEST_CASE("point counts against brute force") {
  struct Case {
    int m, n, r;
    u32 p;
    std::size_t count;
  };
  for (auto c : {Case{1, 1, 1, 3, 9}, Case{1, 0, 1, 3, 1}, Case{2, 1, 1, 3, 105}, Case{1, 1, 2, 3, 9},
                 Case{0, 1, 1, 3, 1}, Case{1, 1, 1, 5, 25}, Case{2, 0, 1, 3, 0}}) {
    CAPTURE(c.m);
    CAPTURE(c.n);
    CAPTURE(c.r);
    auto want = brute_force_points(c.m, c.n, c.r, c.p);
    auto got = entries_of(enumerate_Vr(c.m, c.n, c.r, c.p));
    CHECK(got == want);
    if (c.count) CHECK(got.size() == c.count);
  }
  for (auto [text, eta] : std::vector<std::pair<const char*, u32>>{{"T^3", 0}, {"T^3", 1}, {"T^9+T^3", 2}, {"T^9", 0}}) {
    auto f = PPolynomial::parse(text, 3);
    for (auto [m, n, r] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, 1, 1}, {1, 1, 2}}) {
      auto want = brute_force_points(m, n, r, 3, &f.a, eta);
      CHECK(entries_of(enumerate_Vrfeta(m, n, r, 3, f, eta)) == want);
    }
  }
  CHECK(enumerate_Vrfeta(1, 1, 1, 3, PPolynomial::parse("T^3", 3), 0).size() == 5);
}

TEST_CASE("points give modules") {
  for (auto [text, eta] : std::vector<std::pair<const char*, u32>>{{"T^3", 0}, {"T^9+T^3", 1}, {"T^3", 2}}) {
    auto f = PPolynomial::parse(text, 3);
    for (auto& pt : enumerate_Vrfeta(2, 1, 1, 3, f, eta)) {
      auto mc = point_to_module(pt, f, eta);
      CAPTURE(mc.failure);
      CHECK(mc.ok);
    }
  }
  auto f = PPolynomial::parse("T^9", 3);
  auto triv = point_to_module(VrPoint::zero(1, 2, 1, 3), f, 0);
  REQUIRE(triv.ok);
  auto G = group_algebra_Mrfeta(3, 1, f, 0);
  for (std::size_t k = 0; k < G.dim(); ++k) {
    auto want = SuperMatrix::identity(triv.action[k].dom(), 3).scaled(G.counit[k]);
    if (G.par[k]) want = SuperMatrix::zero(want.dom(), want.cod(), 1, 3);
    CHECK(triv.action[k] == want);
  }
  auto off = VrPoint::from_entries(1, 1, 1, 3, {1, 1, 0, 0});
  CHECK_FALSE(point_to_module(off, PPolynomial::parse("T^3", 3), 0).ok);
}

TEST_CASE("regular points") {
  for (auto [r, text, eta] : std::vector<std::tuple<int, const char*, u32>>{
           {1, "T^3", 0}, {1, "T^9+T^3", 0}, {1, "T^3", 1}, {2, "T^3", 2}, {2, "T^9", 0}}) {
    auto f = PPolynomial::parse(text, 3);
    auto pt = regular_point(3, r, f, eta);
    auto G = group_algebra_Mrfeta(3, r, f, eta);
    CHECK(static_cast<std::size_t>(pt.m + pt.n) == G.dim());
    CHECK(check_point(pt, f, eta).pass);
    CHECK(point_to_module(pt, f, eta).ok);
  }
}

TEST_CASE("annihilating p-polynomials") {
  auto V1 = SuperSpace::even_odd(1, 0);
  auto one = SuperMatrix::identity(V1, 3);
  CHECK(annihilating_p_polynomial(one, 2) == PPolynomial::parse("T^9+2T^3", 3));
  CHECK_FALSE(annihilating_p_polynomial(one, 1).has_value());
  CHECK(annihilating_p_polynomial(one.scaled(2), 2) == PPolynomial::parse("T^9+2T^3", 3));
  CHECK(annihilating_p_polynomial(SuperMatrix::zero(V1, V1, 0, 3), 3) == PPolynomial::parse("T^3", 3));
  auto V3 = SuperSpace::even_odd(3, 0);
  auto J = SuperMatrix::zero(V3, V3, 0, 3);
  J.set(0, 1, 1);
  J.set(1, 2, 1);
  CHECK(annihilating_p_polynomial(J, 2) == PPolynomial::parse("T^3", 3));
  // 4x4 Jordan block: J^3 != 0, J^9 = 0
  auto V4 = SuperSpace::even_odd(4, 0);
  auto J4 = SuperMatrix::zero(V4, V4, 0, 3);
  for (int i = 0; i < 3; ++i) J4.set(i, i + 1, 1);
  CHECK(annihilating_p_polynomial(J4, 2) == PPolynomial::parse("T^9", 3));
  // every result annihilates
  for (auto& pt : enumerate_Vr(2, 1, 1, 3)) {
    auto f = annihilating_p_polynomial(pt.alpha[0], 3);
    REQUIRE(f.has_value());
    CHECK(f->evaluate(pt.alpha[0]).is_zero());
  }
  CHECK_THROWS_AS(annihilating_p_polynomial(SuperMatrix::zero(V1, V1, 1, 3), 1), std::invalid_argument);
}

TEST_CASE("Frobenius twist is the identity on F_p-points; covering") {
  for (auto& pt : enumerate_Vr(1, 1, 2, 3)) CHECK(frobenius_twist_point(pt, 2) == pt);
  for (auto [m, n, r] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, 1, 1}, {1, 1, 2}, {1, 2, 1}}) {
    auto rep = covering_check(m, n, r, 3, 3);
    CHECK(rep.pass);
    CHECK(rep.twist_bijective);
    CHECK(rep.rows.size() == enumerate_Vr(m, n, r, 3).size());
  }
  // diag(1,1) only has T^9 - T^3 as annihilator; max_t = 1 misses it
  auto rep = covering_check(2, 1, 1, 3, 1);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("Hopf endomorphisms of k[M_{r;s}]") {
  struct Case {
    u32 p;
    int r, s;
    std::size_t count;
  };
  for (auto c : {Case{3, 1, 1, 9}, Case{3, 1, 2, 9}, Case{3, 2, 1, 27}, Case{3, 2, 2, 27}, Case{5, 1, 1, 25}}) {
    auto rep = enumerate_endos(c.p, c.r, c.s);
    CHECK(rep.matches);
    CHECK(rep.endos.size() == c.count);
    // classification set counted directly
    std::size_t want = 0;
    const u64 q = ipow(c.p, c.r);
    for (u32 mu = 0; mu < c.p; ++mu)
      for (u32 a0 = 0; a0 < c.p; ++a0)
        if (c.s == 1 || oracle::mulmod(mu, mu, c.p) == oracle::powmod(a0, q, c.p)) ++want;
    want *= ipow(c.p, c.r - 1) * (c.s >= 2 ? c.p : 1);
    CHECK(rep.endos.size() == want);
    auto H = coordinate_Mrs(c.p, c.r, c.s);
    for (auto& e : rep.endos) {
      auto hr = hopf_hom_from_generators(H, H, e.gen_images);
      CHECK(hr.ok);
    }
  }
}

TEST_CASE("enumeration budget") {
  EnumerateOptions small;
  small.budget = 100;
  CHECK_NOTHROW(enumerate_Vr(1, 1, 1, 3, small));  // 81 points
  CHECK_THROWS_AS(enumerate_Vr(2, 1, 1, 3, small), std::runtime_error);
  small.force = true;
  CHECK(enumerate_Vr(2, 1, 1, 3, small).size() == 105);
  CHECK(enumeration_budget() == 10000000ULL);
  setenv("SUPALG_BUDGET", "50", 1);
  CHECK(enumeration_budget() == 50);
  CHECK_THROWS_AS(enumerate_Vr(1, 1, 1, 3), std::runtime_error);
  setenv("SUPALG_BUDGET", "junk", 1);
  CHECK(enumeration_budget() == 10000000ULL);
  unsetenv("SUPALG_BUDGET");
  CHECK_THROWS_AS(enumerate_Vr(1, 1, 1, 4), std::invalid_argument);
}
