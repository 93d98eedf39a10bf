#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "supalg/groups.hpp"
#include "supalg/hopf.hpp"

namespace supalg {

// Element of (ker eps)^{(x) n}. Keys are base-K numbers, most significant
// factor first, digit k standing for basis element k + 1.
struct Cochain {
  int level = 0;
  SparseRow<u64> coef;
  bool is_zero() const { return coef.empty(); }
};

struct BettiRow {
  int n = 0;
  u64 total = 0, even = 0, odd = 0;
  std::map<int, u64> by_degree;                  // internal Z-degree (0 when ungraded)
  std::map<std::pair<int, int>, u64> by_block;   // (degree, parity)
};

class CochainComplex {
 public:
  static constexpr u64 kDefaultBudget = 200000;

  // Cochains of any level may be formed; ranks are available for d_n with
  // n < max_level, so betti(n) needs n < max_level. K^max_level <= budget.
  CochainComplex(std::shared_ptr<const HopfSuperalgebra> H, int max_level, u64 budget = kDefaultBudget);

  const HopfSuperalgebra& algebra() const { return *H_; }
  int max_level() const { return max_level_; }
  u64 reduced_dim() const { return K_; }
  u64 level_dim(int n) const { return ipow(K_, n); }
  u32 p() const { return H_->p; }

  std::vector<u32> decode(u64 key, int n) const;  // basis indices (>= 1)
  u64 encode(const std::vector<u32>& idx) const;
  int parity_of_key(u64 key, int n) const;
  int degree_of_key(u64 key, int n) const;
  int parity(const Cochain& z) const;  // -1 if zero or mixed

  Cochain differential(const Cochain& z) const;
  bool is_cocycle(const Cochain& z) const { return differential(z).is_zero(); }
  bool is_coboundary(const Cochain& z);
  // Rank of the classes of zs in H^n (all zs at the same level n).
  std::size_t rank_mod_coboundaries(const std::vector<Cochain>& zs);
  // d_{n+1} o d_n = 0 on every basis cochain of level n.
  bool d_squared_zero(int n) const;
  BettiRow betti(int n);

  Cochain cup(const Cochain& a, const Cochain& b) const;
  // Tensor product of elements of ker eps (unit components must vanish).
  Cochain from_factors(const std::vector<Vec>& factors) const;
  Cochain from_tensor2(const TVec& t) const;
  Cochain add(const Cochain& a, const Cochain& b) const;
  Cochain sub(const Cochain& a, const Cochain& b) const;
  Cochain scale(const Cochain& a, u32 c) const;
  std::string to_string(const Cochain& z) const;

 private:
  using Block = std::pair<int, int>;
  const std::map<Block, SparseEchelon<u64>>& images(int n);  // echelons of d_n images, by block
  std::map<Block, u64> block_sizes(int n) const;
  Block block_of(u64 key, int n) const { return {degree_of_key(key, n), parity_of_key(key, n)}; }

  std::shared_ptr<const HopfSuperalgebra> H_;
  int max_level_;
  u64 K_;
  std::vector<std::vector<T2>> dbar_;  // reduced coproduct of basis k+1, indices shifted to 0..K-1
  std::map<int, std::map<Block, SparseEchelon<u64>>> images_;
};

// Unreduced Hochschild complex H^{(x) n}: dimensions of H^0..H^max_n.
std::vector<u64> unreduced_betti(const HopfSuperalgebra& H, int max_n);

// theta^{p^{i-1}} style cocycles from an even primitive element theta.
Cochain lambda_cocycle(const CochainComplex& C, const Vec& theta, int i);
Cochain x_cocycle(const CochainComplex& C, const Vec& theta, int i);

// Named cocycles of k[M_{r;s}] (or k[M_{r;f}] in the same basis). w is w_s
// for the top s; for s = 1 it is x_r - y^2.
struct NamedCocycles {
  std::vector<Cochain> x, lambda;  // x[i-1] = x_i etc.
  Cochain y, w;
};
NamedCocycles named_cocycles(const CochainComplex& C, int r);
// -(sum sigma_j (x) sigma_{p^s-j} + sum_{u+v+p=p^s} sigma_u tau (x) sigma_v tau);
// needs p^s <= p^{s'} where s' is the algebra's own parameter.
Cochain w_cochain(const CochainComplex& C, int r, int s);
// Cocycles of k[G_a(r)] built from theta = basis element 1.
NamedCocycles Gar_cocycles(const CochainComplex& C, int r);

// Levelwise tensor power of a coordinate-algebra map applied to z.
Cochain induced_map(const NamedMorphism& m, const Cochain& z, const CochainComplex& target);

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// r = 1, t >= 2: -d(sigma_p) minus the three leading sums lies in F^{p+1}.
CheckResult boundary_filtration_check(u32 p, const PPolynomial& f, u32 eta);

// The cocycle suite for M_{r;s} at p: cocycles, non-coboundaries, lambda^2,
// graded commutators, and induced maps.
std::vector<CheckResult> cocycle_suite(u32 p, int r, int s);

}  // namespace supalg
