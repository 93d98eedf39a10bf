#pragma once

#include <memory>
#include <string>
#include <vector>

#include "supalg/hopf.hpp"

namespace supalg {

// f = sum_i a_i T^{p^i}, inseparable (a_0 = 0) and monic (a_t = 1).
struct PPolynomial {
  u32 p = 3;
  std::vector<u32> a;  // a[i] = coefficient of T^{p^i}; size t + 1

  static PPolynomial monomial(u32 p, int t);
  // Rescales to monic; *rescaled reports whether that changed anything.
  static PPolynomial from_coefficients(u32 p, std::vector<u32> a, bool* rescaled = nullptr);
  // Accepts "T^9+2T^3", "T^27 - T^3", "2*T^3" ...; coefficients reduced mod p.
  static PPolynomial parse(const std::string& text, u32 p, bool* rescaled = nullptr);

  int t() const { return static_cast<int>(a.size()) - 1; }
  int s() const;  // least index with a_i != 0
  u32 coeff(int i) const { return i >= 0 && i < static_cast<int>(a.size()) ? a[i] : 0; }
  bool is_monomial() const { return s() == t(); }
  u64 degree() const { return ipow(p, t()); }
  PPolynomial frobenius() const;  // f^p over F_p
  std::string to_string() const;
  SuperMatrix evaluate(const SuperMatrix& X) const;
  bool operator==(const PPolynomial& o) const { return p == o.p && a == o.a; }
};

// Coordinate algebra of M_{r;s}: basis t^e th^i s_j, index e*P*Q + j*P + i
// with P = p^{r-1}, Q = p^s.
HopfSuperalgebra coordinate_Mrs(u32 p, int r, int s);

// Group algebra kM_{r;f,eta}: basis g_j, v g_j for j < p^{r+t-1}, index e*N + j.
HopfSuperalgebra group_algebra_Mrfeta(u32 p, int r, const PPolynomial& f, u32 eta);
HopfSuperalgebra group_algebra_Mrs(u32 p, int r, int s);

// Coordinate algebra of M_{r;f,eta}, realised as the dual of the group
// algebra and written in the basis of coordinate_Mrs(p, r, t).
HopfSuperalgebra coordinate_Mrfeta(u32 p, int r, const PPolynomial& f, u32 eta);

// k[theta]/(theta^{p^r}) with theta primitive.
HopfSuperalgebra coordinate_Gar(u32 p, int r);
// Exterior algebra on one odd primitive generator.
HopfSuperalgebra exterior_algebra(u32 p, const std::string& gen = "t");

// Index helpers for the coordinate basis.
struct CoordIndex {
  u32 p;
  int r, s;
  u64 P, Q;
  CoordIndex(u32 p, int r, int s);
  u32 operator()(int e, u64 i, u64 j) const { return static_cast<u32>(e * P * Q + j * P + i); }
  u64 dim() const { return 2 * P * Q; }
};

// Closed-form coproduct of sigma_l in k[M_{1;f,eta}] (r = 1), keyed like
// coordinate_Mrfeta's basis.
Tensor2 closed_form_sigma_coproduct(u32 p, const PPolynomial& f, u32 eta, u64 l);

struct NamedMorphism {
  std::string name;
  std::shared_ptr<const HopfSuperalgebra> source, target;
  std::vector<Vec> images;  // images of the source basis
  bool hopf = true;         // false: only an algebra map

  Vec apply(const Vec& x) const;
  SuperMatrix matrix() const;
  HomReport verify() const;
};

using AlgebraPtr = std::shared_ptr<const HopfSuperalgebra>;
AlgebraPtr share(HopfSuperalgebra H);

// Throws std::runtime_error when the generator images do not define a Hopf map.
NamedMorphism morphism_from_generators(std::string name, AlgebraPtr src, AlgebraPtr tgt,
                                       const std::vector<Vec>& gen_images);
NamedMorphism algebra_morphism_from_generators(std::string name, AlgebraPtr src, AlgebraPtr tgt,
                                               const std::vector<Vec>& gen_images);
NamedMorphism compose(const NamedMorphism& g, const NamedMorphism& f);  // g o f
bool same_map(const NamedMorphism& a, const NamedMorphism& b);

// Group side.
NamedMorphism frobenius_group(u32 p, int r, const PPolynomial& f, u32 eta);  // kM_{r+1;f,eta} -> kM_{r;f}
NamedMorphism group_quotient(u32 p, int r, const PPolynomial& from, u32 eta_from, const PPolynomial& to,
                             u32 eta_to);  // u_i -> u_i, v -> v
NamedMorphism odd_quotient_group(u32 p, int r, const PPolynomial& f, u32 eta);  // kills the u_i
// Superalgebra isomorphism kM_{r+1;f,eta} -> kM_{r;f^p}; not compatible with the coproducts.
NamedMorphism phi_iso(u32 p, int r, const PPolynomial& f, u32 eta);

// Coordinate side.
NamedMorphism frobenius_coordinate(u32 p, int r, int s);              // k[M_{r;s}] -> k[M_{r+1;s}]
NamedMorphism frobenius_Gar(u32 p, int r);                            // k[G_a(r)] -> k[G_a(r+1)]
NamedMorphism q_coordinate(u32 p, int r, int s);                      // k[G_a(r)] -> k[M_{r;s}]
NamedMorphism q_minus_coordinate(u32 p, int r, int s);                // Lambda(t) -> k[M_{r;s}]
NamedMorphism pi_coordinate(u32 p, int r, int s, const PPolynomial& f);  // k[M_{r;s}] -> k[M_{r;f}]

// The standard morphisms for (p, r, f, eta), each verified. phi_iso only
// appears when eta != 0; requesting it with eta = 0 throws.
std::vector<NamedMorphism> standard_morphisms(u32 p, int r, const PPolynomial& f, u32 eta);

struct IdentityCheck {
  std::string name;
  bool pass;
};
// q o F = F o q, pi o F = F o pi, and F = quotient o phi_iso when eta != 0.
std::vector<IdentityCheck> morphism_identities(u32 p, int r, const PPolynomial& f, u32 eta);

}  // namespace supalg
