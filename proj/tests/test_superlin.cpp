#include <doctest.h>

#include <map>
#include <random>

#include "oracle.hpp"
#include "supalg/superlin.hpp"

using namespace supalg;

namespace {

std::mt19937 rng(12345);

SuperMatrix random_map(const SuperSpace& dom, const SuperSpace& cod, Parity par, u32 p) {
  SuperMatrix M(dom, cod, par, p);
  std::uniform_int_distribution<u32> c(0, p - 1);
  for (std::size_t i = 0; i < cod.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j)
      if (((cod.par[i] ^ dom.par[j]) & 1) == par) M.set(i, j, c(rng));
  return M;
}

oracle::Dense dense_of(const SuperMatrix& M) {
  oracle::Dense D(M.rows(), std::vector<u32>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) D[i][j] = M.at(i, j);
  return D;
}

}  // namespace

TEST_CASE("supertwist signs") {
  SuperSpace V = SuperSpace::even_odd(1, 1), W = SuperSpace::even_odd(2, 1);
  CHECK(supertwist(V, W, 0, 2).sign == 1);   // even, odd
  CHECK(supertwist(V, W, 1, 0).sign == 1);   // odd, even
  CHECK(supertwist(V, W, 1, 2).sign == -1);  // odd, odd
  for (std::size_t i = 0; i < V.size(); ++i)
    for (std::size_t j = 0; j < W.size(); ++j) {
      auto t = supertwist(V, W, i, j);
      std::size_t wi = t.index / V.size(), vi = t.index % V.size();
      auto back = supertwist(W, V, wi, vi);
      CHECK(back.index == i * W.size() + j);
      CHECK(t.sign * back.sign == 1);
    }
}

TEST_CASE("tensor_map") {
  const u32 p = 3;
  SuperSpace V = SuperSpace::even_odd(1, 1);
  auto I = SuperMatrix::identity(V, p);
  auto II = tensor_map(I, I);
  CHECK(II == SuperMatrix::identity(II.dom(), p));

  // f even (identity), g odd; v odd (index 1), w even (index 0), g(w) = e_1.
  SuperMatrix g(V, V, 1, p);
  g.set(1, 0, 1);
  auto T = tensor_map(I, g);
  CHECK(T.parity() == 1);
  CHECK(T.at(1 * 2 + 1, 1 * 2 + 0) == p - 1);
  CHECK(T.at(0 * 2 + 1, 0 * 2 + 0) == 1);  // v even: no sign
}

TEST_CASE("tensor_map composition carries (-1)^{|g||f'|}") {
  const u32 p = 3;
  SuperSpace V = SuperSpace::even_odd(2, 1);
  for (int trial = 0; trial < 40; ++trial) {
    Parity pf = trial & 1, pg = (trial >> 1) & 1, pf2 = (trial >> 2) & 1, pg2 = (trial >> 3) & 1;
    auto f = random_map(V, V, pf, p), g = random_map(V, V, pg, p);
    auto f2 = random_map(V, V, pf2, p), g2 = random_map(V, V, pg2, p);
    auto lhs = tensor_map(f, g) * tensor_map(f2, g2);
    auto rhs = tensor_map(f * f2, g * g2);
    if (pg & pf2) rhs = rhs.scaled(p - 1);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("composition parity and associativity") {
  const u32 p = 5;
  SuperSpace V = SuperSpace::even_odd(2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    Parity a = trial & 1, b = (trial >> 1) & 1, c = (trial >> 2) & 1;
    auto A = random_map(V, V, a, p), B = random_map(V, V, b, p), C = random_map(V, V, c, p);
    CHECK((A * B).parity() == (a ^ b));
    CHECK((A * B).respects_parity());
    CHECK((A * B) * C == A * (B * C));
    CHECK(dense_of(A * B) == oracle::matmul(dense_of(A), dense_of(B), p));
  }
  SuperMatrix M(V, V, 0, p);
  CHECK_THROWS(M.set(0, 2, 1));
}

TEST_CASE("rank and kernel") {
  const u32 p = 3;
  FpSparseMatrix Z(7, 9, p);
  auto rz = rank_kernel(Z);
  CHECK(rz.rank == 0);
  CHECK(rz.kernel.size() == 9);

  FpSparseMatrix I(6, 6, p);
  for (int i = 0; i < 6; ++i) I.add(i, i, 1);
  auto ri = rank_kernel(I);
  CHECK(ri.rank == 6);
  CHECK(ri.kernel.empty());

  std::uniform_int_distribution<u32> c(0, p - 1);
  std::bernoulli_distribution sparse(0.15);
  for (int trial = 0; trial < 5; ++trial) {
    FpSparseMatrix M(50, 80, p);
    oracle::Dense D(50, std::vector<u32>(80, 0));
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 80; ++j)
        if (sparse(rng)) {
          u32 v = c(rng);
          M.add(i, j, v);
          D[i][j] = v;
        }
    auto rk = rank_kernel(M);
    CHECK(rk.rank == oracle::rank(D, p));
    CHECK(rk.rank + rk.kernel.size() == 80);
    for (const auto& x : rk.kernel) CHECK(oracle::is_zero({M.apply(x)}));
  }
}

TEST_CASE("sparse echelon agrees with dense elimination up to 200 x 200") {
  for (u32 p : {3u, 5u}) {
    std::uniform_int_distribution<u32> c(0, p - 1);
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 60 + 45 * trial;
      // low-rank product plus noise rows, so rank is well below n
      const int k = n / 3;
      oracle::Dense A(n, std::vector<u32>(k)), B(k, std::vector<u32>(n));
      for (auto& r : A)
        for (auto& x : r) x = c(rng);
      for (auto& r : B)
        for (auto& x : r) x = c(rng);
      auto D = oracle::matmul(A, B, p);
      SparseEchelon<u64> E(p);
      for (const auto& row : D) {
        SparseRow<u64> s;
        for (int j = 0; j < n; ++j)
          if (row[j]) s.emplace_back(j, row[j]);
        E.insert(s);
      }
      CHECK(E.rank() == oracle::rank(D, p));
      oracle::Dense echelon;
      for (const auto& r : E.rows()) {
        std::vector<u32> v(n, 0);
        for (auto& [j, x] : r) v[j] = x;
        echelon.push_back(v);
      }
      CHECK(oracle::same_span(echelon, D, p));
    }
  }
}

TEST_CASE("solve_combination") {
  const u32 p = 5;
  std::uniform_int_distribution<u32> c(0, p - 1);
  std::vector<SparseRow<u64>> cols;
  for (int k = 0; k < 6; ++k) {
    SparseRow<u64> col;
    for (u64 i = 0; i < 12; ++i)
      if (u32 v = c(rng)) col.emplace_back(i * 1000003ull, v);
    cols.push_back(col);
  }
  std::vector<u32> x{1, 0, 3, 4, 2, 0};
  std::map<u64, u32> acc;
  for (int k = 0; k < 6; ++k)
    for (auto& [key, v] : cols[k]) acc[key] = (acc[key] + oracle::mulmod(x[k], v, p)) % p;
  SparseRow<u64> target;
  for (auto& [key, v] : acc)
    if (v) target.emplace_back(key, v);
  auto sol = solve_combination(cols, target, p);
  REQUIRE(sol);
  std::map<u64, u32> got;
  for (int k = 0; k < 6; ++k)
    for (auto& [key, v] : cols[k]) got[key] = (got[key] + oracle::mulmod((*sol)[k], v, p)) % p;
  for (auto& [key, v] : acc) CHECK(got[key] == v);

  SparseRow<u64> outside{{7, 1}};  // key 7 appears in no column
  CHECK_FALSE(solve_combination(cols, outside, p));
}

TEST_CASE("block decomposition") {
  const u32 p = 3;
  SuperSpace V = SuperSpace::even_odd(1, 1);
  auto I = SuperMatrix::identity(V, p);
  auto [diag, anti] = block_decompose(I);
  CHECK(diag == I);
  CHECK(anti.is_zero());

  SuperMatrix alpha(V, V, 0, p);
  alpha.set(0, 0, 1);
  alpha.set(1, 1, 2);
  auto a = block_parts(alpha);
  CHECK(a.upper_left.at(0, 0) == 1);
  CHECK(a.upper_left.at(1, 1) == 0);
  CHECK(a.lower_right.at(1, 1) == 2);
  CHECK(a.lower_right.at(0, 0) == 0);

  SuperMatrix beta(V, V, 1, p);
  beta.set(0, 1, 1);
  beta.set(1, 0, 2);
  auto b = block_parts(beta);
  CHECK(b.upper_right.at(0, 1) == 1);
  CHECK(b.upper_right.at(1, 0) == 0);
  CHECK(b.lower_left.at(1, 0) == 2);
  CHECK(b.lower_left.at(0, 1) == 0);
  CHECK(b.upper_right + b.lower_left == beta);
}
