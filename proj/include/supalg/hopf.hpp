#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "supalg/field.hpp"
#include "supalg/superlin.hpp"

namespace supalg {

using Vec = std::vector<u32>;       // dense element in a fixed basis
using SVec = SparseRow<u32>;        // sparse element
using TVec = SparseRow<u64>;        // element of H (x) H, key = a * dim + b

struct T2 {
  u32 i, j, c;
};
using Tensor2 = std::vector<T2>;

struct WordTerm {
  u32 coef;
  std::vector<u32> gens;  // product of generators, left to right
};

// Algebra generators together with an expression of every basis element as
// a combination of words in them.
struct Presentation {
  std::vector<std::string> gen_names;
  std::vector<SVec> gens;
  std::vector<std::vector<WordTerm>> basis_words;
};

class Accumulator {
 public:
  explicit Accumulator(u32 p) : F_(p) {}
  void add(u64 key, u32 c) {
    if (!c) return;
    u32& slot = m_[key];
    slot = F_.add(slot, c);
  }
  TVec take();
  bool empty_after_reduce() const;

 private:
  Fp F_;
  std::unordered_map<u64, u32> m_;
};

class HopfSuperalgebra {
 public:
  u32 p = 3;
  std::string name;
  std::vector<Parity> par;
  std::vector<std::string> labels;
  std::vector<int> zdeg;  // empty when ungraded
  std::vector<SVec> mult;  // dim * dim, index a * dim + b
  SVec unit;
  std::vector<Tensor2> comult;
  std::vector<u32> counit;
  std::vector<SVec> antipode;  // images of basis vectors
  std::optional<Presentation> pres;

  std::size_t dim() const { return par.size(); }
  bool graded() const { return !zdeg.empty(); }
  Fp field() const { return Fp(p); }

  Vec basis(std::size_t i) const;
  Vec unit_vec() const;
  Vec multiply(const Vec& x, const Vec& y) const;
  Vec apply_antipode(const Vec& x) const;
  u32 apply_counit(const Vec& x) const;
  TVec apply_comult(const Vec& x) const;
  // -1 if zero or inhomogeneous
  int parity_of(const Vec& x) const;
};

Vec to_dense(const SVec& s, std::size_t dim);
SVec to_sparse(const Vec& v);
Vec vadd(const Vec& a, const Vec& b, const Fp& F);
Vec vsub(const Vec& a, const Vec& b, const Fp& F);
Vec vscale(const Vec& a, u32 c, const Fp& F);
bool is_zero(const Vec& a);

// Product in H (x) H: (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.
TVec tensor_multiply(const HopfSuperalgebra& H, const TVec& x, const TVec& y);
TVec tensor_of(const HopfSuperalgebra& H, const Vec& a, const Vec& b);
TVec tensor_sub(const TVec& a, const TVec& b, const Fp& F);
TVec tensor_add(const TVec& a, const TVec& b, const Fp& F);
TVec tensor_scale(const TVec& a, u32 c, const Fp& F);
std::string tensor_to_string(const HopfSuperalgebra& H, const TVec& t);
std::string element_to_string(const HopfSuperalgebra& H, const Vec& x);

struct AxiomResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_pass() const;
  std::string to_string() const;
};

struct VerifyOptions {
  bool supercommutative = true;
  bool commutative = false;  // ordinary commutativity, as for group algebras
  bool cocommutative = false;
  bool exhaustive = false;  // ignore the presentation and test all triples/pairs
};

AxiomReport verify_axioms(const HopfSuperalgebra& H, const VerifyOptions& opt = {});

// Graded dual with dual-basis pairing conventions.
HopfSuperalgebra dualize(const HopfSuperalgebra& H);

// Rewrite H in the basis new_basis[k] (given in old coordinates).
HopfSuperalgebra transport(const HopfSuperalgebra& H, const std::vector<Vec>& new_basis, std::string name,
                           std::vector<std::string> labels = {});

// Exact equality of all structure tensors (names and labels ignored).
bool same_structure(const HopfSuperalgebra& A, const HopfSuperalgebra& B, std::string* why = nullptr);

struct Primitives {
  std::vector<Vec> even, odd;
};
Primitives primitives(const HopfSuperalgebra& H);

class AugmentationFiltration {
 public:
  explicit AugmentationFiltration(const HopfSuperalgebra& H);

  // Echelon basis of (I_eps)^i; i = 0 gives the whole algebra.
  std::vector<Vec> power_basis(int i) const;
  int nilpotency_index() const { return nilpotency_; }  // least i with (I_eps)^i = 0
  bool in_power(const Vec& x, int i) const;
  // Membership in F^i = sum_{i1 + i2 >= i} (I_eps)^{i1} (x) (I_eps)^{i2}.
  bool in_tensor_filtration(const TVec& t, int i) const;
  int level_of(const Vec& x) const;  // largest i with x in (I_eps)^i (large if x = 0)

 private:
  const HopfSuperalgebra* H_;
  std::vector<std::vector<Vec>> levels_;  // levels_[i] = echelon basis of (I_eps)^i
  int nilpotency_ = 0;
  std::vector<Vec> adapted_;              // adapted basis
  std::vector<int> nu_;                   // filtration level of each adapted vector
  std::vector<std::vector<u32>> to_adapted_;  // change of coordinates old -> adapted
};

struct HomReport {
  bool ok = true;
  std::string failure;
  std::vector<Vec> basis_images;
};

// Checks that the linear map b_i -> images[i] is a Hopf superalgebra map.
HomReport check_hopf_map(const HopfSuperalgebra& A, const HopfSuperalgebra& B, const std::vector<Vec>& images,
                         bool exhaustive_products = true);
// Parity, unit and products only.
HomReport check_algebra_map(const HopfSuperalgebra& A, const HopfSuperalgebra& B, const std::vector<Vec>& images,
                            bool exhaustive_products = true);

// Extends generator images multiplicatively via A's presentation, then checks
// well-definedness on all basis products and compatibility with the coalgebra
// structure and antipode.
HomReport hopf_hom_from_generators(const HopfSuperalgebra& A, const HopfSuperalgebra& B,
                                   const std::vector<Vec>& gen_images);
HomReport algebra_hom_from_generators(const HopfSuperalgebra& A, const HopfSuperalgebra& B,
                                      const std::vector<Vec>& gen_images);

// Evaluate words of a presentation in an arbitrary target algebra.
Vec evaluate_words(const std::vector<WordTerm>& words, const std::vector<Vec>& gen_images, const HopfSuperalgebra& B);

std::string to_json(const HopfSuperalgebra& H);
HopfSuperalgebra from_json(const std::string& text);

}  // namespace supalg
