#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supalg/cohomology.hpp"
#include "supalg/groups.hpp"
#include "supalg/superlin.hpp"
#include "supalg/varieties.hpp"

namespace supalg {

// ---------------------------------------------------------------------------
// H(M_{r;s}) = k[x_1..x_r, y, w_s]/(x_r - y^2) (x) Lambda(lambda_1..lambda_r).
// r = 0 stands for k[y] (the ring of M_{1;f,eta}, eta != 0).
// For s = 1 the symbol w means x_r - y^2 and is substituted unless
// independent_w is set.

struct RingParams {
  u32 p = 3;
  int r = 1;
  int s = 1;
  bool independent_w = false;

  bool has_w() const { return r >= 1; }
  bool operator==(const RingParams& o) const {
    return p == o.p && r == o.r && s == o.s && independent_w == o.independent_w;
  }
  bool operator!=(const RingParams& o) const { return !(*this == o); }
  std::string to_string() const;
};

// Written in the order x^a w^c y^b lambda_S (S increasing).
struct Monomial {
  std::vector<u32> x;  // x[i] = exponent of x_{i+1}
  u32 w = 0;
  u32 y = 0;
  u32 lambda = 0;  // bit i: lambda_{i+1}

  int degree() const;
  int parity() const { return static_cast<int>(y & 1u); }
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const;
};

class CohRingElement {
 public:
  explicit CohRingElement(RingParams R) : R_(R) {}

  static CohRingElement constant(const RingParams& R, u32 c);
  static CohRingElement one(const RingParams& R) { return constant(R, 1); }
  static CohRingElement x(const RingParams& R, int i);  // 1 <= i <= r
  static CohRingElement y(const RingParams& R);
  static CohRingElement w(const RingParams& R);
  static CohRingElement lambda(const RingParams& R, int i);
  static CohRingElement monomial(const RingParams& R, const Monomial& m, u32 c = 1);

  const RingParams& params() const { return R_; }
  const std::map<Monomial, u32>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  u32 coefficient(const Monomial& m) const;

  CohRingElement operator+(const CohRingElement& o) const;
  CohRingElement operator-(const CohRingElement& o) const;
  CohRingElement operator*(const CohRingElement& o) const;
  CohRingElement scaled(u32 c) const;
  CohRingElement pow(u64 e) const;
  bool operator==(const CohRingElement& o) const { return R_ == o.R_ && t_ == o.t_; }
  bool operator!=(const CohRingElement& o) const { return !(*this == o); }

  // (degree, parity) if homogeneous and nonzero.
  std::optional<std::pair<int, int>> bidegree() const;
  std::string to_string() const;

  // Adds c * (normal form of m) in place.
  void add_term(const Monomial& m, u32 c);

 private:
  RingParams R_;
  std::map<Monomial, u32> t_;
};

// Throws std::invalid_argument on parameter mismatch.
CohRingElement ring_multiply(const CohRingElement& a, const CohRingElement& b);

// Sum of coefficients of x_top^i y^v with 2i + v = n, x_top = x_r of the ring
// (no x for r = 0).
u32 psi_evaluate(const CohRingElement& elem, int n);

// ---------------------------------------------------------------------------
// Mat_{m|n}(H). A class T (x) h is stored as the matrix with entries
// (-1)^{|h| |col j|} t_ij h, so the Yoneda product is the plain matrix product.

class MatrixClass {
 public:
  MatrixClass(RingParams R, int m, int n);

  static MatrixClass zero(const RingParams& R, int m, int n) { return MatrixClass(R, m, n); }
  static MatrixClass identity(const RingParams& R, int m, int n);
  // T (x) h for a homogeneous h.
  static MatrixClass from_tensor(const SuperMatrix& T, const CohRingElement& h);

  const RingParams& params() const { return R_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int size() const { return m_ + n_; }
  const CohRingElement& at(int i, int j) const { return a_[static_cast<std::size_t>(i * size() + j)]; }
  CohRingElement& at(int i, int j) { return a_[static_cast<std::size_t>(i * size() + j)]; }

  MatrixClass operator+(const MatrixClass& o) const;
  MatrixClass operator-(const MatrixClass& o) const;
  MatrixClass operator*(const MatrixClass& o) const;
  MatrixClass scaled(u32 c) const;
  MatrixClass pow(u64 e) const;
  bool is_zero() const;
  bool operator==(const MatrixClass& o) const;
  bool operator!=(const MatrixClass& o) const { return !(*this == o); }

  // Total parity (entry parity + row parity + column parity), -1 if mixed.
  int parity() const;
  std::string to_string() const;

 private:
  void check_same(const MatrixClass& o) const;
  RingParams R_;
  int m_, n_;
  std::vector<CohRingElement> a_;
};

// Coefficients c_l of X^{p^l} in P_f(X) for l = 0..t-1, at twist level r.
std::vector<u32> P_f_coefficients(const PPolynomial& f, int r);
SuperMatrix P_f(const PPolynomial& f, int r, const SuperMatrix& X);
MatrixClass P_f(const PPolynomial& f, int r, const MatrixClass& X);

// ---------------------------------------------------------------------------
// Characteristic classes restricted to M_{r;f,eta} along a point.

enum class ClassKind { E, EPi, C, CPi, Ei, EiPi };

struct ClassSpec {
  ClassKind kind = ClassKind::E;
  u64 j = 0;  // index of e_r(j) / e_r^Pi(j), or i of e_i^{(r-i)}
  static ClassSpec e(u64 j) { return {ClassKind::E, j}; }
  static ClassSpec e_pi(u64 j) { return {ClassKind::EPi, j}; }
  static ClassSpec c() { return {ClassKind::C, 0}; }
  static ClassSpec c_pi() { return {ClassKind::CPi, 0}; }
  static ClassSpec e_i(int i) { return {ClassKind::Ei, static_cast<u64>(i)}; }
  static ClassSpec e_i_pi(int i) { return {ClassKind::EiPi, static_cast<u64>(i)}; }
  std::string to_string() const;
};

struct ClassOptions {
  bool independent_w = false;  // s = 1: keep w_1 as a free symbol
};

// How the classes of a point are computed.
//  eta = 0:           Ext level r, ring H(M_{r;s}), closed form with f.
//  eta != 0, r = 1:   Ext level 1, ring k[y].
//  eta != 0, r >= 2:  Ext level r-1 on (alpha_1..alpha_{r-1} | beta) with f^p,
//                     ring H(M_{r-1;s+1}).
struct ClassSetup {
  enum class Mode { ClosedForm, PolynomialY };
  Mode mode = Mode::ClosedForm;
  int level = 1;  // Ext level: classes live in Ext(I^{(level)}, I^{(level)})
  RingParams ring;
  PPolynomial f;  // polynomial used in P_f
  std::vector<SuperMatrix> alpha;  // tuple at the Ext level
  SuperMatrix beta;
  int m = 0, n = 0;
  int shift = 0;  // 1 when the tuple is shifted: alpha[i] is the point's alpha_{i+1}
};

// Throws std::invalid_argument if the point is not in V_{r;f,eta}.
ClassSetup class_setup(const VrPoint& pt, const PPolynomial& f, u32 eta, const ClassOptions& opt = {});

MatrixClass class_of(const ClassSetup& S, const ClassSpec& which);
MatrixClass class_of(const VrPoint& pt, const PPolynomial& f, u32 eta, const ClassSpec& which,
                     const ClassOptions& opt = {});

// Coefficient matrix of (the normal form of) x_r^j in each entry.
SuperMatrix coefficient_of_xr_power(const MatrixClass& cls, u64 j);

struct RelationReport {
  bool pass = true;
  std::vector<CheckResult> items;
};

// Ext: every Ext relation; All: Ext plus theta_check.
enum class RelationSet { All, Ext, ErP, Commute, Theta };
RelationSet parse_relation_set(const std::string& s);  // throws std::invalid_argument

RelationReport verify_relations_at_point(const VrPoint& pt, const PPolynomial& f, u32 eta,
                                         RelationSet which = RelationSet::All);

struct ThetaRow {
  std::string coordinate;  // "X_ij(l)" or "Y_ij", 1-based indices
  u32 expected = 0, got = 0;
  bool pass = true;
};
struct ThetaReport {
  bool pass = true;
  std::vector<ThetaRow> rows;
  std::string note;  // coordinates not reached by the classes, if any
};
ThetaReport theta_check(const VrPoint& pt, const PPolynomial& f, u32 eta);

// ---------------------------------------------------------------------------
// Ext_P(I^{(r)}, I^{(r)}) with basis e(j), e(j) c, e^Pi(j), e^Pi(j) c^Pi.

enum class ExtKind : std::uint8_t { E, EC, P, PC };

struct ExtBasis {
  ExtKind kind = ExtKind::E;
  u64 j = 0;
  int degree(u32 p, int r) const;
  ExtBasis pi() const;  // e <-> e^Pi, c <-> c^Pi
  std::string to_string() const;
  bool operator<(const ExtBasis& o) const { return std::pair(kind, j) < std::pair(o.kind, o.j); }
  bool operator==(const ExtBasis& o) const { return kind == o.kind && j == o.j; }
};

struct ExtParams {
  u32 p = 3;
  int r = 1;
  int max_degree = 0;  // 0: 4 p^r
  int bound() const;
  bool operator==(const ExtParams& o) const { return p == o.p && r == o.r && bound() == o.bound(); }
};

class ExtElement {
 public:
  explicit ExtElement(ExtParams P) : P_(P) {}
  static ExtElement basis(const ExtParams& P, ExtKind k, u64 j);
  static ExtElement unit(const ExtParams& P);
  static ExtElement e0(const ExtParams& P) { return basis(P, ExtKind::E, 0); }
  static ExtElement e0_pi(const ExtParams& P) { return basis(P, ExtKind::P, 0); }
  static ExtElement e_i(const ExtParams& P, int i);  // e_i^{(r-i)} = e(p^{i-1})
  static ExtElement c(const ExtParams& P) { return basis(P, ExtKind::EC, 0); }
  static ExtElement c_pi(const ExtParams& P) { return basis(P, ExtKind::PC, 0); }

  const ExtParams& params() const { return P_; }
  const std::map<ExtBasis, u32>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const ExtBasis& b, u32 c);
  ExtElement operator+(const ExtElement& o) const;
  ExtElement operator-(const ExtElement& o) const;
  ExtElement scaled(u32 c) const;
  ExtElement pi() const;
  bool operator==(const ExtElement& o) const { return P_ == o.P_ && t_ == o.t_; }
  bool operator!=(const ExtElement& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  ExtParams P_;
  std::map<ExtBasis, u32> t_;
};

// Throws std::overflow_error past the degree bound.
ExtElement ext_multiply(const ExtElement& a, const ExtElement& b);

class ExtTensor {
 public:
  explicit ExtTensor(ExtParams P) : P_(P) {}
  const ExtParams& params() const { return P_; }
  const std::map<std::pair<ExtBasis, ExtBasis>, u32>& terms() const { return t_; }
  void add(const ExtBasis& a, const ExtBasis& b, u32 c);
  ExtTensor operator+(const ExtTensor& o) const;
  // (a (x) b)(a' (x) b') = (-1)^{deg b deg a'} aa' (x) bb'
  ExtTensor operator*(const ExtTensor& o) const;
  ExtTensor pi_left() const;
  ExtTensor pi_right() const;
  ExtTensor pi_both() const { return pi_left().pi_right(); }
  ExtElement counit_left() const;   // (eps (x) 1)
  ExtElement counit_right() const;  // (1 (x) eps)
  std::size_t size() const { return t_.size(); }
  bool operator==(const ExtTensor& o) const { return t_ == o.t_; }
  std::string to_string() const;

 private:
  ExtParams P_;
  std::map<std::pair<ExtBasis, ExtBasis>, u32> t_;
};

// Basis elements with j < p^r (throws std::invalid_argument otherwise).
ExtTensor ext_coproduct(const ExtParams& P, const ExtBasis& b);
ExtTensor ext_coproduct(const ExtElement& a);
u32 ext_counit(const ExtElement& a);

// Basis elements of degree < bound, in order.
std::vector<ExtBasis> ext_basis_below(const ExtParams& P, int bound);

// Idempotents, counit, Pi-symmetry, Delta-multiplicativity for degree < 2p^r.
std::vector<CheckResult> ext_bialgebra_checks(u32 p, int r);

MatrixClass class_of(const ClassSetup& S, const ExtElement& a);
// class_of(ab) = class_of(a) class_of(b) for basis pairs of degree < 2p^level.
std::vector<CheckResult> restriction_multiplicative_check(const VrPoint& pt, const PPolynomial& f, u32 eta);

}  // namespace supalg
