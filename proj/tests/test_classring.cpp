#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "supalg/classring.hpp"

using namespace supalg;

namespace {

using Elem = CohRingElement;

std::vector<Elem> generators(const RingParams& R) {
  std::vector<Elem> g;
  for (int i = 1; i <= R.r; ++i) g.push_back(Elem::x(R, i));
  g.push_back(Elem::y(R));
  g.push_back(Elem::w(R));
  for (int i = 1; i <= R.r; ++i) g.push_back(Elem::lambda(R, i));
  return g;
}

SuperMatrix even_block(const SuperMatrix& M) { return block_parts(M).upper_left; }

void check_relations(const std::vector<VrPoint>& pts, const PPolynomial& f, u32 eta) {
  for (auto& pt : pts) {
    CAPTURE(pt.to_string());
    auto rep = verify_relations_at_point(pt, f, eta, RelationSet::All);
    for (auto& it : rep.items) {
      CAPTURE(it.name);
      CAPTURE(it.detail);
      CHECK(it.pass);
    }
    CHECK(rep.pass);
  }
}

}  // namespace

TEST_CASE("cohomology ring signs and normal form") {
  RingParams R1{3, 1, 1}, R2{3, 1, 2}, R21{3, 2, 1};
  auto y = Elem::y(R2);
  CHECK(y * y == Elem::x(R2, 1));
  CHECK_FALSE((Elem::y(R1) * Elem::y(R1)).is_zero());
  CHECK(Elem::y(R1) * Elem::y(R1) != Elem::x(R1, 1));
  auto l1 = Elem::lambda(R21, 1), l2 = Elem::lambda(R21, 2);
  CHECK(l1 * l2 == (l2 * l1).scaled(2));
  CHECK((l1 * l1).is_zero());
  auto y21 = Elem::y(R21);
  CHECK(y21 * l1 == (l1 * y21).scaled(2));
  CHECK(Elem::w(R1) == Elem::x(R1, 1) - Elem::y(R1) * Elem::y(R1));
  RingParams Rw{3, 1, 1, true};
  CHECK(Elem::w(Rw) != Elem::x(Rw, 1) - Elem::y(Rw) * Elem::y(Rw));
  CHECK(y.bidegree() == std::make_pair(1, 1));
  CHECK(Elem::x(R2, 1).bidegree() == std::make_pair(2, 0));
  CHECK(Elem::w(R2).bidegree() == std::make_pair(2, 0));
  CHECK(l1.bidegree() == std::make_pair(1, 0));
  CHECK_FALSE((y + Elem::x(R2, 1)).bidegree().has_value());
  CHECK_THROWS_AS(ring_multiply(Elem::y(R1), Elem::y(R2)), std::invalid_argument);
}

TEST_CASE("graded commutativity on generators and associativity on random elements") {
  for (RingParams R : {RingParams{3, 1, 1}, RingParams{3, 2, 1}, RingParams{3, 2, 2}, RingParams{5, 1, 2}}) {
    auto g = generators(R);
    for (auto& a : g)
      for (auto& b : g) {
        auto [da, pa] = *a.bidegree();
        auto [db, pb] = *b.bidegree();
        u32 sign = ((da * db + pa * pb) & 1) ? R.p - 1 : 1;
        CHECK(a * b == (b * a).scaled(sign));
      }
    std::mt19937 rng(11);
    auto random_elem = [&] {
      Elem e(R);
      for (int k = 0; k < 3; ++k) {
        Elem m = Elem::one(R);
        for (int f = 0; f < 3; ++f) m = m * g[rng() % g.size()];
        e = e + m.scaled(1 + rng() % (R.p - 1));
      }
      return e;
    };
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_elem(), b = random_elem(), c = random_elem();
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("P_f") {
  auto V = SuperSpace::even_odd(1, 0);
  auto X = SuperMatrix::identity(V, 3).scaled(2);
  CHECK(P_f(PPolynomial::parse("T^3", 3), 1, X).is_zero());
  CHECK(P_f(PPolynomial::parse("T^9+T^3", 3), 1, X) == X.pow(3));
  CHECK(P_f_coefficients(PPolynomial::parse("T^9+T^3", 3), 1) == std::vector<u32>{0, 1});
  CHECK(P_f_coefficients(PPolynomial::parse("T^9+2T^3", 3), 1) == std::vector<u32>{0, 2});
  // (1/2)^{3} = 2 at r = 2
  CHECK(P_f_coefficients(PPolynomial::parse("T^9+2T^3", 3), 2) == std::vector<u32>{0, 2});
  // a = (0, 2, 1, 1): c_1 = a_2/a_1 = 2, c_2 = a_3/a_1 = 2
  CHECK(P_f_coefficients(PPolynomial::parse("T^27+T^9+2T^3", 3), 1) == std::vector<u32>{0, 2, 2});
  // monomial f = T^{p^t}: only X^{p^{t-1}} survives, with coefficient a_t / a_t
  CHECK(P_f_coefficients(PPolynomial::parse("T^9", 3), 1) == std::vector<u32>{0, 1});
  CHECK(P_f(PPolynomial::parse("T^9+T^3", 3), 1, SuperMatrix::zero(V, V, 0, 3)).is_zero());
  RingParams R{3, 1, 1};
  auto M = MatrixClass::from_tensor(SuperMatrix::identity(V, 3), Elem::x(R, 1));
  CHECK(P_f(PPolynomial::parse("T^9+T^3", 3), 1, M) == M.pow(3));
}

TEST_CASE("classes at the zero point") {
  auto f = PPolynomial::parse("T^9+T^3", 3);
  auto z = VrPoint::zero(2, 1, 1, 3);
  auto V = SuperSpace::even_odd(2, 1);
  RingParams R = class_setup(z, f, 0).ring;
  auto I = SuperMatrix::identity(V, 3);
  CHECK(class_of(z, f, 0, ClassSpec::e(0)) == MatrixClass::from_tensor(block_parts(I).upper_left, Elem::one(R)));
  CHECK(class_of(z, f, 0, ClassSpec::e_pi(0)) == MatrixClass::from_tensor(block_parts(I).lower_right, Elem::one(R)));
  for (auto spec : {ClassSpec::c(), ClassSpec::c_pi(), ClassSpec::e_i(1), ClassSpec::e_i_pi(1), ClassSpec::e(1),
                    ClassSpec::e(3)})
    CHECK(class_of(z, f, 0, spec).is_zero());
}

TEST_CASE("c_1 at a point with only beta") {
  auto f = PPolynomial::parse("T^3", 3);
  auto pt = VrPoint::from_entries(1, 1, 1, 3, {0, 0, 1, 0});
  auto S = class_setup(pt, f, 0);
  auto c = class_of(S, ClassSpec::c());
  auto y3 = Elem::y(S.ring).pow(3);
  CHECK(c == MatrixClass::from_tensor(block_parts(pt.beta).upper_right, y3));
  // stored with the column sign: (-1)^{|y^3| |odd column|}
  CHECK(c.at(0, 1) == y3.scaled(2));
  CHECK(c.parity() == 0);
  CHECK(class_of(S, ClassSpec::c_pi()).is_zero());
}

TEST_CASE("e_1 closed form at r = 1") {
  // f = T^9 - T^3 has alpha = 1 as a root; P_f(X) = 2 X^3
  auto f = PPolynomial::parse("T^9+2T^3", 3);
  auto pt = VrPoint::from_entries(1, 1, 1, 3, {1, 1, 1, 2});
  REQUIRE(check_point(pt, f, 0).pass);
  ClassOptions indep;
  indep.independent_w = true;
  auto e = class_of(pt, f, 0, ClassSpec::e_i(1), indep);
  RingParams R = e.params();
  CHECK(e.at(0, 0) == Elem::x(R, 1) + Elem::w(R).scaled(2));
  auto e_sub = class_of(pt, f, 0, ClassSpec::e_i(1));
  RingParams Rs = e_sub.params();
  // x_1 + 2 (x_1 - y^2) = y^2
  CHECK(e_sub.at(0, 0) == Elem::y(Rs) * Elem::y(Rs));

  for (auto& q : enumerate_Vrfeta(2, 1, 1, 3, f, 0)) {
    auto S = class_setup(q, f, 0, indep);
    auto a = even_block(q.alpha[0]);
    auto want = MatrixClass::from_tensor(a, Elem::x(S.ring, 1)) + MatrixClass::from_tensor(P_f(f, 1, a), Elem::w(S.ring));
    CHECK(class_of(S, ClassSpec::e_i(1)) == want);
  }
}

TEST_CASE("psi") {
  RingParams R{3, 1, 1};
  auto y = Elem::y(R);
  CHECK(psi_evaluate(Elem::one(R), 0) == 1);
  CHECK(psi_evaluate(Elem::x(R, 1) - y * y, 2) == 0);
  CHECK(psi_evaluate(Elem::lambda(R, 1) * y, 2) == 0);
  CHECK(psi_evaluate(y.pow(3).scaled(2), 3) == 2);
  CHECK(psi_evaluate(Elem::x(R, 1) + y * y, 2) == 2);
  RingParams R2{3, 2, 1};
  CHECK(psi_evaluate(Elem::x(R2, 1), 2) == 0);
  CHECK(psi_evaluate(Elem::x(R2, 2), 2) == 1);
}

TEST_CASE("Ext relations hold at every point") {
  auto T3 = PPolynomial::parse("T^3", 3);
  auto pts = enumerate_Vrfeta(1, 1, 1, 3, T3, 0);
  CHECK(pts.size() == 5);
  check_relations(pts, T3, 0);
  check_relations(enumerate_Vrfeta(1, 1, 2, 3, T3, 0), T3, 0);
  check_relations(enumerate_Vrfeta(1, 1, 2, 3, T3, 1), T3, 1);
  for (auto [text, eta] : std::vector<std::pair<const char*, u32>>{{"T^3", 0}, {"T^9+T^3", 0}, {"T^9+2T^3", 1}}) {
    auto f = PPolynomial::parse(text, 3);
    check_relations(enumerate_Vrfeta(2, 1, 1, 3, f, eta), f, eta);
  }
  auto T9 = PPolynomial::parse("T^9", 3);
  check_relations(enumerate_Vrfeta(3, 0, 1, 3, T9, 0), T9, 0);
}

TEST_CASE("regular points pass relations and theta") {
  for (auto [r, text, eta] : std::vector<std::tuple<int, const char*, u32>>{
           {1, "T^3", 0}, {1, "T^9+T^3", 0}, {1, "T^3", 1}, {2, "T^3", 0}, {2, "T^3", 2}}) {
    auto f = PPolynomial::parse(text, 3);
    auto pt = regular_point(3, r, f, eta);
    CHECK(verify_relations_at_point(pt, f, eta, RelationSet::All).pass);
    auto th = theta_check(pt, f, eta);
    CHECK(th.pass);
    CHECK_FALSE(th.rows.empty());
  }
}

TEST_CASE("theta check sweeps") {
  auto T3 = PPolynomial::parse("T^3", 3);
  for (u32 eta : {0u, 1u})
    for (auto& pt : enumerate_Vrfeta(1, 1, eta ? 2 : 1, 3, T3, eta)) {
      auto th = theta_check(pt, T3, eta);
      CHECK(th.pass);
      for (auto& row : th.rows) CHECK(row.expected == row.got);
    }
  auto th = theta_check(VrPoint::zero(1, 1, 1, 3), T3, 0);
  CHECK(th.pass);
  for (auto& row : th.rows) CHECK(row.expected == 0);
}

TEST_CASE("negative controls") {
  auto f = PPolynomial::parse("T^9+T^3", 3);
  auto pt = regular_point(3, 1, f, 0);
  auto S = class_setup(pt, f, 0);
  auto E = class_of(S, ClassSpec::e_i(1));
  auto C = class_of(S, ClassSpec::c()), CP = class_of(S, ClassSpec::c_pi());
  CHECK(E.pow(3) == C * CP);
  CHECK_FALSE((C * CP).is_zero());
  CHECK(E.pow(3) != C.scaled(2) * CP);
  // the wrong P_f breaks the relation
  ClassSetup wrong = S;
  wrong.f = PPolynomial::parse("T^3", 3);
  CHECK(class_of(wrong, ClassSpec::e_i(1)).pow(3) != C * CP);
  CHECK_THROWS_AS(class_setup(VrPoint::from_entries(1, 1, 1, 3, {1, 1, 0, 0}), f, 0), std::invalid_argument);
}

TEST_CASE("coefficients of powers of x_r") {
  auto f = PPolynomial::parse("T^3", 3);
  ClassOptions indep;
  indep.independent_w = true;
  for (auto& pt : enumerate_Vrfeta(2, 1, 2, 3, f, 0)) {
    auto S = class_setup(pt, f, 0, indep);
    for (int l = 1; l <= 2; ++l) {
      auto cl = class_of(S, ClassSpec::e_i(l));
      CHECK(coefficient_of_xr_power(cl, l == 1 ? 1 : 3) == even_block(pt.alpha[l - 1]));
    }
    auto e0 = class_of(S, ClassSpec::e(0));
    CHECK(coefficient_of_xr_power(e0, 0) == block_parts(SuperMatrix::identity(SuperSpace::even_odd(2, 1), 3)).upper_left);
  }
}

TEST_CASE("restriction is multiplicative") {
  auto f = PPolynomial::parse("T^9+T^3", 3);
  for (auto& pt : enumerate_Vrfeta(1, 1, 1, 3, f, 0))
    for (auto& row : restriction_multiplicative_check(pt, f, 0)) CHECK(row.pass);
  auto T3 = PPolynomial::parse("T^3", 3);
  for (auto& row : restriction_multiplicative_check(regular_point(3, 2, T3, 1), T3, 1)) CHECK(row.pass);
}

TEST_CASE("Ext algebra products") {
  ExtParams P{3, 1, 0};
  auto e1 = ExtElement::e_i(P, 1);
  CHECK(ext_multiply(e1, e1) == ExtElement::basis(P, ExtKind::E, 2).scaled(2));
  CHECK(ext_multiply(ext_multiply(e1, e1), e1) == ext_multiply(ExtElement::c(P), ExtElement::c_pi(P)));
  auto e0 = ExtElement::e0(P), e0p = ExtElement::e0_pi(P);
  CHECK(ext_multiply(e0, e0) == e0);
  CHECK(ext_multiply(e0p, e0p) == e0p);
  CHECK(ext_multiply(e0, e0p).is_zero());
  CHECK(e0 + e0p == ExtElement::unit(P));
  CHECK(e1.pi().pi() == e1);
  CHECK(ExtElement::c(P).pi() == ExtElement::c_pi(P));
  CHECK(ext_counit(e0) == 1);
  CHECK(ext_counit(e1) == 0);
  auto dc = ext_coproduct(ExtElement::c(P));
  CHECK(dc.size() == 4);
  // Delta(e(2)) = sum_{i+j=2} e(i) (x) e(j) + e^Pi(i) (x) e^Pi(j)
  CHECK(ext_coproduct(P, {ExtKind::E, 2}).size() == 6);
  CHECK_THROWS_AS(ext_coproduct(P, {ExtKind::E, 3}), std::invalid_argument);
  ExtParams small{3, 1, 4};
  auto a = ExtElement::basis(small, ExtKind::E, 2);
  CHECK_THROWS_AS(ext_multiply(a, a), std::overflow_error);
  for (int r : {1, 2})
    for (auto& row : ext_bialgebra_checks(3, r)) {
      CAPTURE(row.name);
      CHECK(row.pass);
    }
  for (auto& row : ext_bialgebra_checks(5, 1)) CHECK(row.pass);
}

TEST_CASE("relation set names") {
  CHECK(parse_relation_set("all") == RelationSet::All);
  CHECK(parse_relation_set("theta") == RelationSet::Theta);
  CHECK_THROWS_AS(parse_relation_set("bogus"), std::invalid_argument);
}
