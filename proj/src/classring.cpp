#include "supalg/classring.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace supalg {

namespace {

u32 binom_small(u64 n, u64 k, const Fp& F) { return binom_raw(n, k, F); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring

std::string RingParams::to_string() const {
  std::ostringstream os;
  if (r == 0) {
    os << "k[y] over F_" << p;
  } else {
    os << "H(M_{" << r << ";" << s << "}) over F_" << p;
    if (s == 1 && independent_w) os << " (w_1 independent)";
  }
  return os.str();
}

int Monomial::degree() const {
  int d = 0;
  for (u32 e : x) d += 2 * static_cast<int>(e);
  return d + 2 * static_cast<int>(w) + static_cast<int>(y) + std::popcount(lambda);
}

bool Monomial::operator<(const Monomial& o) const {
  if (x != o.x) return x < o.x;
  if (w != o.w) return w < o.w;
  if (y != o.y) return y < o.y;
  return lambda < o.lambda;
}

bool Monomial::operator==(const Monomial& o) const {
  return x == o.x && w == o.w && y == o.y && lambda == o.lambda;
}

CohRingElement CohRingElement::constant(const RingParams& R, u32 c) {
  CohRingElement e(R);
  Monomial m;
  m.x.assign(static_cast<std::size_t>(R.r), 0);
  e.add_term(m, c % R.p);
  return e;
}

CohRingElement CohRingElement::x(const RingParams& R, int i) {
  if (i < 1 || i > R.r) throw std::invalid_argument("x_i: index out of range");
  Monomial m;
  m.x.assign(static_cast<std::size_t>(R.r), 0);
  m.x[static_cast<std::size_t>(i - 1)] = 1;
  return monomial(R, m);
}

CohRingElement CohRingElement::y(const RingParams& R) {
  Monomial m;
  m.x.assign(static_cast<std::size_t>(R.r), 0);
  m.y = 1;
  return monomial(R, m);
}

CohRingElement CohRingElement::w(const RingParams& R) {
  if (!R.has_w()) throw std::invalid_argument("w: ring has no w generator");
  Monomial m;
  m.x.assign(static_cast<std::size_t>(R.r), 0);
  m.w = 1;
  return monomial(R, m);
}

CohRingElement CohRingElement::lambda(const RingParams& R, int i) {
  if (i < 1 || i > R.r) throw std::invalid_argument("lambda_i: index out of range");
  Monomial m;
  m.x.assign(static_cast<std::size_t>(R.r), 0);
  m.lambda = 1u << (i - 1);
  return monomial(R, m);
}

CohRingElement CohRingElement::monomial(const RingParams& R, const Monomial& m, u32 c) {
  CohRingElement e(R);
  e.add_term(m, c % R.p);
  return e;
}

u32 CohRingElement::coefficient(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? 0 : it->second;
}

void CohRingElement::add_term(const Monomial& m0, u32 c) {
  if (c == 0) return;
  Fp F(R_.p);
  Monomial m = m0;
  m.x.resize(static_cast<std::size_t>(R_.r), 0);
  if (R_.r == 0 && (m.w || m.lambda)) throw std::invalid_argument("k[y] has only the generator y");
  if (R_.r >= 1 && R_.s >= 2) {
    // x_r = y^2
    u32& xr = m.x[static_cast<std::size_t>(R_.r - 1)];
    m.y += 2 * xr;
    xr = 0;
  }
  if (R_.r >= 1 && R_.s == 1 && !R_.independent_w && m.w > 0) {
    // w_1 = x_r - y^2
    u32 k = m.w;
    m.w = 0;
    for (u32 i = 0; i <= k; ++i) {
      Monomial q = m;
      q.x[static_cast<std::size_t>(R_.r - 1)] += k - i;
      q.y += 2 * i;
      u32 coef = F.mul(c, binom_small(k, i, F));
      if (i & 1u) coef = F.neg(coef);
      add_term(q, coef);
    }
    return;
  }
  u32& slot = t_[m];
  slot = F.add(slot, c);
  if (slot == 0) t_.erase(m);
}

CohRingElement CohRingElement::operator+(const CohRingElement& o) const {
  if (R_ != o.R_) throw std::invalid_argument("ring parameter mismatch");
  CohRingElement out = *this;
  for (const auto& [m, c] : o.t_) out.add_term(m, c);
  return out;
}

CohRingElement CohRingElement::operator-(const CohRingElement& o) const { return *this + o.scaled(R_.p - 1); }

CohRingElement CohRingElement::scaled(u32 c) const {
  Fp F(R_.p);
  CohRingElement out(R_);
  c %= R_.p;
  if (c == 0) return out;
  for (const auto& [m, v] : t_) out.t_[m] = F.mul(v, c);
  return out;
}

namespace {

// Product of two normal-form monomials: sign from moving y^b left past
// lambda_S and from merging lambda_S lambda_T. 0 when lambdas overlap.
int monomial_product(const Monomial& a, const Monomial& b, Monomial& out) {
  if (a.lambda & b.lambda) return 0;
  int sign = 1;
  if ((b.y & 1u) && (std::popcount(a.lambda) & 1)) sign = -sign;
  int inversions = 0;
  for (u32 t = b.lambda; t; t &= t - 1) {
    int tb = std::countr_zero(t);
    inversions += std::popcount(a.lambda >> (tb + 1));
  }
  if (inversions & 1) sign = -sign;
  out.x.resize(a.x.size());
  for (std::size_t i = 0; i < a.x.size(); ++i) out.x[i] = a.x[i] + b.x[i];
  out.w = a.w + b.w;
  out.y = a.y + b.y;
  out.lambda = a.lambda | b.lambda;
  return sign;
}

}  // namespace

CohRingElement CohRingElement::operator*(const CohRingElement& o) const {
  if (R_ != o.R_) throw std::invalid_argument("ring parameter mismatch");
  Fp F(R_.p);
  CohRingElement out(R_);
  Monomial prod;
  for (const auto& [ma, ca] : t_) {
    for (const auto& [mb, cb] : o.t_) {
      int sg = monomial_product(ma, mb, prod);
      if (sg == 0) continue;
      u32 c = F.mul(ca, cb);
      out.add_term(prod, sg < 0 ? F.neg(c) : c);
    }
  }
  return out;
}

CohRingElement CohRingElement::pow(u64 e) const {
  CohRingElement result = one(R_);
  CohRingElement base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::optional<std::pair<int, int>> CohRingElement::bidegree() const {
  if (t_.empty()) return std::nullopt;
  auto first = std::pair(t_.begin()->first.degree(), t_.begin()->first.parity());
  for (const auto& [m, c] : t_)
    if (std::pair(m.degree(), m.parity()) != first) return std::nullopt;
  return first;
}

std::string CohRingElement::to_string() const {
  if (t_.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [m, c] : t_) {
    std::vector<std::string> f;
    for (std::size_t i = 0; i < m.x.size(); ++i) {
      if (!m.x[i]) continue;
      std::string s = "x" + std::to_string(i + 1);
      if (m.x[i] > 1) s += "^" + std::to_string(m.x[i]);
      f.push_back(s);
    }
    if (m.w) f.push_back("w" + std::string(m.w > 1 ? "^" + std::to_string(m.w) : ""));
    if (m.y) f.push_back("y" + std::string(m.y > 1 ? "^" + std::to_string(m.y) : ""));
    for (u32 t = m.lambda; t; t &= t - 1) f.push_back("l" + std::to_string(std::countr_zero(t) + 1));
    std::string mono = join(f, "*");
    if (mono.empty()) parts.push_back(std::to_string(c));
    else if (c == 1) parts.push_back(mono);
    else parts.push_back(std::to_string(c) + "*" + mono);
  }
  return join(parts, " + ");
}

CohRingElement ring_multiply(const CohRingElement& a, const CohRingElement& b) { return a * b; }

u32 psi_evaluate(const CohRingElement& elem, int n) {
  const RingParams& R = elem.params();
  Fp F(R.p);
  u32 sum = 0;
  for (const auto& [m, c] : elem.terms()) {
    if (m.degree() != n || m.w || m.lambda) continue;
    bool ok = true;
    for (int i = 0; i + 1 < R.r; ++i)
      if (m.x[static_cast<std::size_t>(i)]) ok = false;
    if (ok) sum = F.add(sum, c);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Matrices over the ring

MatrixClass::MatrixClass(RingParams R, int m, int n)
    : R_(R), m_(m), n_(n), a_(static_cast<std::size_t>((m + n) * (m + n)), CohRingElement(R)) {}

MatrixClass MatrixClass::identity(const RingParams& R, int m, int n) {
  MatrixClass out(R, m, n);
  for (int i = 0; i < m + n; ++i) out.at(i, i) = CohRingElement::one(R);
  return out;
}

MatrixClass MatrixClass::from_tensor(const SuperMatrix& T, const CohRingElement& h) {
  int m = static_cast<int>(T.dom().even_count());
  int n = static_cast<int>(T.dom().odd_count());
  MatrixClass out(h.params(), m, n);
  if (h.is_zero()) return out;
  auto bd = h.bidegree();
  if (!bd) throw std::invalid_argument("from_tensor: ring element not homogeneous");
  Fp F(h.params().p);
  for (int i = 0; i < m + n; ++i) {
    for (int j = 0; j < m + n; ++j) {
      u32 t = T.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!t) continue;
      bool neg = bd->second == 1 && T.dom().par[static_cast<std::size_t>(j)] == 1;
      out.at(i, j) = h.scaled(neg ? F.neg(t) : t);
    }
  }
  return out;
}

void MatrixClass::check_same(const MatrixClass& o) const {
  if (R_ != o.R_ || m_ != o.m_ || n_ != o.n_) throw std::invalid_argument("matrix class shape or ring mismatch");
}

MatrixClass MatrixClass::operator+(const MatrixClass& o) const {
  check_same(o);
  MatrixClass out = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] + o.a_[k];
  return out;
}

MatrixClass MatrixClass::operator-(const MatrixClass& o) const {
  check_same(o);
  MatrixClass out = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] - o.a_[k];
  return out;
}

MatrixClass MatrixClass::operator*(const MatrixClass& o) const {
  check_same(o);
  MatrixClass out(R_, m_, n_);
  int N = size();
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      const CohRingElement& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < N; ++j) {
        const CohRingElement& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        out.at(i, j) = out.at(i, j) + aik * bkj;
      }
    }
  return out;
}

MatrixClass MatrixClass::scaled(u32 c) const {
  MatrixClass out = *this;
  for (auto& e : out.a_) e = e.scaled(c);
  return out;
}

MatrixClass MatrixClass::pow(u64 e) const {
  MatrixClass result = identity(R_, m_, n_);
  MatrixClass base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool MatrixClass::is_zero() const {
  for (const auto& e : a_)
    if (!e.is_zero()) return false;
  return true;
}

bool MatrixClass::operator==(const MatrixClass& o) const {
  return R_ == o.R_ && m_ == o.m_ && n_ == o.n_ && a_ == o.a_;
}

int MatrixClass::parity() const {
  int par = -1;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      int rc = (i >= m_) + (j >= m_);
      for (const auto& [mono, c] : at(i, j).terms()) {
        int q = (mono.parity() + rc) & 1;
        if (par == -1) par = q;
        else if (par != q) return -1;
      }
    }
  return par == -1 ? 0 : par;
}

std::string MatrixClass::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < size(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < size(); ++j) {
      if (j) os << ", ";
      os << at(i, j).to_string();
    }
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// P_f

std::vector<u32> P_f_coefficients(const PPolynomial& f, int r) {
  Fp F(f.p);
  int t = f.t(), s = f.s();
  std::vector<u32> c(static_cast<std::size_t>(std::max(t, 1)), 0);
  u32 as_inv = F.inv(f.coeff(s));
  u64 e = ipow(f.p, static_cast<unsigned>(r - 1));
  for (int l = 1; l <= t - 1; ++l) c[static_cast<std::size_t>(l)] = F.pow(F.mul(f.coeff(l + 1), as_inv), e);
  return c;
}

SuperMatrix P_f(const PPolynomial& f, int r, const SuperMatrix& X) {
  auto c = P_f_coefficients(f, r);
  SuperMatrix out = SuperMatrix::zero(X.dom(), X.cod(), X.parity(), X.p());
  for (std::size_t l = 1; l < c.size(); ++l)
    if (c[l]) out = out + X.pow(ipow(f.p, static_cast<unsigned>(l))).scaled(c[l]);
  return out;
}

MatrixClass P_f(const PPolynomial& f, int r, const MatrixClass& X) {
  auto c = P_f_coefficients(f, r);
  MatrixClass out(X.params(), X.m(), X.n());
  for (std::size_t l = 1; l < c.size(); ++l)
    if (c[l]) out = out + X.pow(ipow(f.p, static_cast<unsigned>(l))).scaled(c[l]);
  return out;
}

// ---------------------------------------------------------------------------
// Classes

std::string ClassSpec::to_string() const {
  switch (kind) {
    case ClassKind::E: return "e_r(" + std::to_string(j) + ")";
    case ClassKind::EPi: return "e_r^Pi(" + std::to_string(j) + ")";
    case ClassKind::C: return "c_r";
    case ClassKind::CPi: return "c_r^Pi";
    case ClassKind::Ei: return "e_" + std::to_string(j);
    case ClassKind::EiPi: return "e_" + std::to_string(j) + "^Pi";
  }
  return "?";
}

ClassSetup class_setup(const VrPoint& pt, const PPolynomial& f, u32 eta, const ClassOptions& opt) {
  PointCheck pc = check_point(pt, f, eta);
  if (!pc.pass) throw std::invalid_argument("point is not in V_{r;f,eta}: " + pc.violated);
  ClassSetup S;
  S.m = pt.m;
  S.n = pt.n;
  S.beta = pt.beta;
  if (eta % pt.p == 0) {
    S.mode = ClassSetup::Mode::ClosedForm;
    S.level = pt.r;
    S.ring = RingParams{pt.p, pt.r, f.s(), opt.independent_w};
    S.f = f;
    S.alpha = pt.alpha;
  } else if (pt.r == 1) {
    S.mode = ClassSetup::Mode::PolynomialY;
    S.level = 1;
    S.ring = RingParams{pt.p, 0, 1, false};
    S.f = f;
    S.alpha = pt.alpha;
  } else {
    S.mode = ClassSetup::Mode::ClosedForm;
    S.level = pt.r - 1;
    S.ring = RingParams{pt.p, pt.r - 1, f.s() + 1, opt.independent_w};
    S.f = f.frobenius();
    S.alpha.assign(pt.alpha.begin() + 1, pt.alpha.end());
    S.shift = 1;
  }
  return S;
}

namespace {

SuperMatrix diagonal_block(const SuperMatrix& M, bool odd_block) {
  BlockParts b = block_parts(M);
  return odd_block ? b.lower_right : b.upper_left;
}

SuperMatrix block_projector(int m, int n, u32 p, bool odd_block) {
  return diagonal_block(SuperMatrix::identity(SuperSpace::even_odd(static_cast<std::size_t>(m),
                                                                   static_cast<std::size_t>(n)),
                                               p),
                        odd_block);
}

Monomial unit_monomial(const RingParams& R) {
  Monomial m;
  m.x.assign(static_cast<std::size_t>(R.r), 0);
  return m;
}

// e_r(j) or e_r^Pi(j) for j < p^L from the closed form.
MatrixClass e_closed_form(const ClassSetup& S, u64 j, bool pi) {
  const int L = S.level;
  const u32 p = S.ring.p;
  Fp F(p);
  const u64 twist = ipow(p, static_cast<unsigned>(L));
  const u64 top = ipow(p, static_cast<unsigned>(L - 1));
  std::vector<SuperMatrix> A;
  for (const auto& a : S.alpha) A.push_back(diagonal_block(a.entrywise_pow(twist), pi));
  SuperMatrix B = P_f(S.f, L, A[static_cast<std::size_t>(L - 1)]);
  SuperMatrix proj = block_projector(S.m, S.n, p, pi);
  MatrixClass out(S.ring, S.m, S.n);

  struct Frame {
    SuperMatrix mat;
    Monomial mono;
    u32 coef;
  };
  auto rec = [&](auto&& self, int i, u64 remaining, const Frame& fr) -> void {
    if (fr.mat.is_zero() || fr.coef == 0) return;
    if (i == L - 1) {
      if (remaining % top) return;
      u64 q = remaining / top;
      if (q >= p) return;
      u32 qinv = F.inv(F.factorial(static_cast<u32>(q)));
      for (u64 c = 0; c <= q; ++c) {
        u64 d = q - c;
        SuperMatrix M = fr.mat;
        if (c) M = M * A[static_cast<std::size_t>(L - 1)].pow(c);
        if (d) M = M * B.pow(d);
        if (M.is_zero()) continue;
        Monomial mono = fr.mono;
        mono.x[static_cast<std::size_t>(L - 1)] += static_cast<u32>(top * c);
        mono.w += static_cast<u32>(top * d);
        u32 coef = F.mul(F.mul(fr.coef, qinv), binom_small(q, c, F));
        out = out + MatrixClass::from_tensor(M, CohRingElement::monomial(S.ring, mono, coef));
      }
      return;
    }
    const u64 step = ipow(p, static_cast<unsigned>(i));
    for (u64 ji = 0; ji <= remaining; ji += step) {
      PadicDigits dg = p_adic(ji, p);
      Frame nx = fr;
      u32 sdig = dg.digit_sum();
      if (sdig) nx.mat = nx.mat * A[static_cast<std::size_t>(i)].pow(sdig);
      for (int l = i; l < static_cast<int>(dg.digits.size()); ++l) {
        u32 jl = dg.digit(static_cast<std::size_t>(l));
        if (!jl) continue;
        int xi = L - (l - i);  // x_{L-(l-i)}
        nx.mono.x[static_cast<std::size_t>(xi - 1)] += static_cast<u32>(ipow(p, static_cast<unsigned>(l)) * jl);
        nx.coef = F.mul(nx.coef, F.inv(F.factorial(jl)));
      }
      self(self, i + 1, remaining - ji, nx);
    }
  };
  rec(rec, 0, j, Frame{proj, unit_monomial(S.ring), 1});
  return out;
}

MatrixClass e_polynomial_y(const ClassSetup& S, u64 j, bool pi) {
  const u32 p = S.ring.p;
  Fp F(p);
  SuperMatrix A = diagonal_block(S.alpha[0].entrywise_pow(p), pi);
  SuperMatrix M = j ? A.pow(j) : block_projector(S.m, S.n, p, pi);
  Monomial mono = unit_monomial(S.ring);
  mono.y = static_cast<u32>(2 * j);
  return MatrixClass::from_tensor(M, CohRingElement::monomial(S.ring, mono, F.inv(F.factorial(static_cast<u32>(j)))));
}

MatrixClass e_class(const ClassSetup& S, u64 j, bool pi) {
  const u64 PL = ipow(S.ring.p, static_cast<unsigned>(S.level));
  u64 b = j % PL, a = j / PL;
  MatrixClass base = S.mode == ClassSetup::Mode::ClosedForm ? e_closed_form(S, b, pi) : e_polynomial_y(S, b, pi);
  if (a == 0) return base;
  MatrixClass er = e_class(S, PL / S.ring.p, pi);
  return base * er.pow(static_cast<u64>(S.ring.p) * a);
}

MatrixClass c_class(const ClassSetup& S, bool pi) {
  const u64 PL = ipow(S.ring.p, static_cast<unsigned>(S.level));
  BlockParts bp = block_parts(S.beta.entrywise_pow(PL));
  Monomial mono = unit_monomial(S.ring);
  mono.y = static_cast<u32>(PL);
  return MatrixClass::from_tensor(pi ? bp.lower_left : bp.upper_right, CohRingElement::monomial(S.ring, mono));
}

}  // namespace

MatrixClass class_of(const ClassSetup& S, const ClassSpec& which) {
  switch (which.kind) {
    case ClassKind::E: return e_class(S, which.j, false);
    case ClassKind::EPi: return e_class(S, which.j, true);
    case ClassKind::C: return c_class(S, false);
    case ClassKind::CPi: return c_class(S, true);
    case ClassKind::Ei:
    case ClassKind::EiPi: {
      if (which.j < 1 || which.j > static_cast<u64>(S.level))
        throw std::invalid_argument("e_i: need 1 <= i <= " + std::to_string(S.level));
      u64 idx = ipow(S.ring.p, static_cast<unsigned>(which.j - 1));
      return e_class(S, idx, which.kind == ClassKind::EiPi);
    }
  }
  throw std::invalid_argument("class_of: unknown class");
}

MatrixClass class_of(const VrPoint& pt, const PPolynomial& f, u32 eta, const ClassSpec& which,
                     const ClassOptions& opt) {
  return class_of(class_setup(pt, f, eta, opt), which);
}

SuperMatrix coefficient_of_xr_power(const MatrixClass& cls, u64 j) {
  const RingParams& R = cls.params();
  Monomial target = unit_monomial(R);
  if (R.r == 0) target.y = static_cast<u32>(2 * j);
  else target.x[static_cast<std::size_t>(R.r - 1)] = static_cast<u32>(j);
  // normal form of x_r^j
  CohRingElement probe = CohRingElement::monomial(R, target);
  if (probe.terms().size() != 1) throw std::logic_error("x_r^j has no single normal-form monomial");
  Monomial key = probe.terms().begin()->first;
  SuperSpace V = SuperSpace::even_odd(static_cast<std::size_t>(cls.m()), static_cast<std::size_t>(cls.n()));
  SuperMatrix even = SuperMatrix::zero(V, V, 0, R.p), odd = SuperMatrix::zero(V, V, 1, R.p);
  bool any_odd = false;
  for (int i = 0; i < cls.size(); ++i)
    for (int k = 0; k < cls.size(); ++k) {
      u32 c = cls.at(i, k).coefficient(key);
      if (!c) continue;
      if (((i >= cls.m()) + (k >= cls.m())) & 1) {
        odd.set(static_cast<std::size_t>(i), static_cast<std::size_t>(k), c);
        any_odd = true;
      } else {
        even.set(static_cast<std::size_t>(i), static_cast<std::size_t>(k), c);
      }
    }
  if (any_odd && !even.is_zero()) throw std::logic_error("coefficient matrix has mixed parity");
  return any_odd ? odd : even;
}

// ---------------------------------------------------------------------------
// Relations and Theta

RelationSet parse_relation_set(const std::string& s) {
  if (s == "all") return RelationSet::All;
  if (s == "ext") return RelationSet::Ext;
  if (s == "er-p") return RelationSet::ErP;
  if (s == "commute") return RelationSet::Commute;
  if (s == "theta") return RelationSet::Theta;
  throw std::invalid_argument("unknown relation set '" + s + "' (all|ext|er-p|commute|theta)");
}

RelationReport verify_relations_at_point(const VrPoint& pt, const PPolynomial& f, u32 eta, RelationSet which) {
  RelationReport rep;
  ClassSetup S = class_setup(pt, f, eta);
  const int L = S.level;
  const u32 p = S.ring.p;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    rep.items.push_back({name, ok, detail});
    rep.pass = rep.pass && ok;
  };
  bool ext = which == RelationSet::All || which == RelationSet::Ext;
  std::vector<MatrixClass> E, EP;
  for (int i = 1; i <= L; ++i) {
    E.push_back(class_of(S, ClassSpec::e_i(i)));
    EP.push_back(class_of(S, ClassSpec::e_i_pi(i)));
  }
  MatrixClass C = class_of(S, ClassSpec::c()), CP = class_of(S, ClassSpec::c_pi());

  if (ext || which == RelationSet::ErP) {
    add("(e_r)^p = c_r c_r^Pi", E.back().pow(p) == C * CP);
    add("(e_r^Pi)^p = c_r^Pi c_r", EP.back().pow(p) == CP * C);
  }
  if (ext) {
    for (int i = 1; i < L; ++i) {
      add("(e_" + std::to_string(i) + ")^p = 0", E[static_cast<std::size_t>(i - 1)].pow(p).is_zero());
      add("(e_" + std::to_string(i) + "^Pi)^p = 0", EP[static_cast<std::size_t>(i - 1)].pow(p).is_zero());
    }
    MatrixClass one = MatrixClass::identity(S.ring, S.m, S.n);
    add("e_0 + e_0^Pi = 1", class_of(S, ClassSpec::e(0)) + class_of(S, ClassSpec::e_pi(0)) == one);
  }
  if (ext || which == RelationSet::Commute) {
    for (int i = 1; i <= L; ++i) {
      const auto& Ei = E[static_cast<std::size_t>(i - 1)];
      const auto& EPi = EP[static_cast<std::size_t>(i - 1)];
      add("e_" + std::to_string(i) + " c_r = c_r e_" + std::to_string(i) + "^Pi", Ei * C == C * EPi);
      add("e_" + std::to_string(i) + "^Pi c_r^Pi = c_r^Pi e_" + std::to_string(i), EPi * CP == CP * Ei);
    }
    std::vector<const MatrixClass*> gens;
    std::vector<std::string> names;
    for (int i = 1; i <= L; ++i) {
      gens.push_back(&E[static_cast<std::size_t>(i - 1)]);
      names.push_back("e_" + std::to_string(i));
      gens.push_back(&EP[static_cast<std::size_t>(i - 1)]);
      names.push_back("e_" + std::to_string(i) + "^Pi");
    }
    std::vector<std::string> bad;
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        if ((*gens[a]) * (*gens[b]) != (*gens[b]) * (*gens[a])) bad.push_back("[" + names[a] + ", " + names[b] + "]");
    add("e-subalgebra commutative", bad.empty(), join(bad, "; "));
  }
  if (which == RelationSet::All || which == RelationSet::Theta) {
    ThetaReport th = theta_check(pt, f, eta);
    std::vector<std::string> bad;
    for (const auto& row : th.rows)
      if (!row.pass) bad.push_back(row.coordinate);
    std::string detail = join(bad, "; ");
    if (!th.note.empty()) detail += (detail.empty() ? "" : "; ") + th.note;
    add("Theta = Frobenius twist", th.pass, detail);
  }
  return rep;
}

ThetaReport theta_check(const VrPoint& pt, const PPolynomial& f, u32 eta) {
  ThetaReport rep;
  ClassSetup S = class_setup(pt, f, eta);
  const u32 p = pt.p;
  Fp F(p);
  const u64 twist = ipow(p, static_cast<unsigned>(pt.r));
  const int N = pt.m + pt.n;
  auto coord = [](const std::string& base, int i, int j) {
    return base + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  for (int l = 1; l <= S.level; ++l) {
    MatrixClass X = class_of(S, ClassSpec::e_i(l)) + class_of(S, ClassSpec::e_i_pi(l));
    int deg = 2 * static_cast<int>(ipow(p, static_cast<unsigned>(l - 1)));
    int point_l = l + S.shift;  // coordinate X(point_l) reads alpha_{point_l - 1}
    const SuperMatrix& a = pt.alpha[static_cast<std::size_t>(point_l - 1)];
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if ((i < pt.m) != (j < pt.m)) continue;
        ThetaRow row;
        row.coordinate = coord("X", i, j) + "(" + std::to_string(point_l) + ")";
        row.expected = F.pow(a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), twist);
        row.got = psi_evaluate(X.at(i, j), deg);
        row.pass = row.expected == row.got;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
      }
  }
  MatrixClass C = class_of(S, ClassSpec::c()), CP = class_of(S, ClassSpec::c_pi());
  int deg = static_cast<int>(ipow(p, static_cast<unsigned>(S.level)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if ((i < pt.m) == (j < pt.m)) continue;
      ThetaRow row;
      row.coordinate = coord("Y", i, j);
      row.expected = F.pow(pt.beta.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), twist);
      // upper block: phi(Y_ij) = -(entry of c_r); lower block: entry of c_r^Pi
      CohRingElement v = i < pt.m ? C.at(i, j).scaled(p - 1) : CP.at(i, j);
      row.got = psi_evaluate(v, deg);
      row.pass = row.expected == row.got;
      rep.pass = rep.pass && row.pass;
      rep.rows.push_back(row);
    }
  if (S.shift)
    rep.note = "X(1) not reached: classes come from the shifted tuple at Ext level " + std::to_string(S.level);
  return rep;
}

// ---------------------------------------------------------------------------
// Ext model

int ExtBasis::degree(u32 p, int r) const {
  int d = 2 * static_cast<int>(j);
  if (kind == ExtKind::EC || kind == ExtKind::PC) d += static_cast<int>(ipow(p, static_cast<unsigned>(r)));
  return d;
}

ExtBasis ExtBasis::pi() const {
  switch (kind) {
    case ExtKind::E: return {ExtKind::P, j};
    case ExtKind::P: return {ExtKind::E, j};
    case ExtKind::EC: return {ExtKind::PC, j};
    case ExtKind::PC: return {ExtKind::EC, j};
  }
  return *this;
}

std::string ExtBasis::to_string() const {
  std::string js = std::to_string(j);
  switch (kind) {
    case ExtKind::E: return "e(" + js + ")";
    case ExtKind::EC: return "e(" + js + ")c";
    case ExtKind::P: return "e^Pi(" + js + ")";
    case ExtKind::PC: return "e^Pi(" + js + ")c^Pi";
  }
  return "?";
}

int ExtParams::bound() const {
  return max_degree > 0 ? max_degree : 4 * static_cast<int>(ipow(p, static_cast<unsigned>(r)));
}

ExtElement ExtElement::basis(const ExtParams& P, ExtKind k, u64 j) {
  ExtElement e(P);
  e.add({k, j}, 1);
  return e;
}

ExtElement ExtElement::unit(const ExtParams& P) { return e0(P) + e0_pi(P); }

ExtElement ExtElement::e_i(const ExtParams& P, int i) {
  if (i < 1 || i > P.r) throw std::invalid_argument("e_i: need 1 <= i <= r");
  return basis(P, ExtKind::E, ipow(P.p, static_cast<unsigned>(i - 1)));
}

void ExtElement::add(const ExtBasis& b, u32 c) {
  c %= P_.p;
  if (!c) return;
  if (b.degree(P_.p, P_.r) > P_.bound())
    throw std::overflow_error("Ext degree " + std::to_string(b.degree(P_.p, P_.r)) + " exceeds bound " +
                              std::to_string(P_.bound()));
  Fp F(P_.p);
  u32& slot = t_[b];
  slot = F.add(slot, c);
  if (!slot) t_.erase(b);
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
  if (!(P_ == o.P_)) throw std::invalid_argument("Ext parameter mismatch");
  ExtElement out = *this;
  for (const auto& [b, c] : o.t_) out.add(b, c);
  return out;
}

ExtElement ExtElement::operator-(const ExtElement& o) const { return *this + o.scaled(P_.p - 1); }

ExtElement ExtElement::scaled(u32 c) const {
  ExtElement out(P_);
  Fp F(P_.p);
  for (const auto& [b, v] : t_) out.add(b, F.mul(v, c % P_.p));
  return out;
}

ExtElement ExtElement::pi() const {
  ExtElement out(P_);
  for (const auto& [b, v] : t_) out.add(b.pi(), v);
  return out;
}

std::string ExtElement::to_string() const {
  if (t_.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [b, c] : t_) parts.push_back(c == 1 ? b.to_string() : std::to_string(c) + "*" + b.to_string());
  return join(parts, " + ");
}

namespace {

// e(i) e(j) = coef * e(k): digitwise divided powers, with the carry of the top
// digit routed through (e_r)^p = e(p^r).
std::optional<std::pair<u32, u64>> e_product(u64 i, u64 j, u32 p, int r) {
  Fp F(p);
  const u64 PR = ipow(p, static_cast<unsigned>(r));
  u64 b1 = i % PR, a1 = i / PR, b2 = j % PR, a2 = j / PR;
  PadicDigits d1 = p_adic(b1, p), d2 = p_adic(b2, p);
  u32 coef = 1;
  u64 k = 0, carry = 0;
  for (int l = 0; l < r; ++l) {
    u32 x = d1.digit(static_cast<std::size_t>(l)), y = d2.digit(static_cast<std::size_t>(l));
    u32 d = x + y;
    u64 place = ipow(p, static_cast<unsigned>(l));
    if (d < p) {
      coef = F.mul(coef, binom_raw(d, x, F));
      k += d * place;
    } else if (l == r - 1) {
      u32 num = F.factorial(d - p);
      u32 den = F.mul(F.factorial(x), F.factorial(y));
      coef = F.mul(coef, F.mul(num, F.inv(den)));
      k += (d - p) * place;
      carry = 1;
    } else {
      return std::nullopt;
    }
  }
  if (!coef) return std::nullopt;
  return std::pair(coef, k + (a1 + a2 + carry) * PR);
}

}  // namespace

ExtElement ext_multiply(const ExtElement& a, const ExtElement& b) {
  if (!(a.params() == b.params())) throw std::invalid_argument("Ext parameter mismatch");
  const ExtParams& P = a.params();
  const u64 PR = ipow(P.p, static_cast<unsigned>(P.r));
  Fp F(P.p);
  ExtElement out(P);
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) {
      ExtKind k;
      u64 shift = 0;
      using K = ExtKind;
      if (x.kind == K::E && y.kind == K::E) k = K::E;
      else if (x.kind == K::E && y.kind == K::EC) k = K::EC;
      else if (x.kind == K::EC && y.kind == K::P) k = K::EC;
      else if (x.kind == K::EC && y.kind == K::PC) k = K::E, shift = PR;
      else if (x.kind == K::P && y.kind == K::P) k = K::P;
      else if (x.kind == K::P && y.kind == K::PC) k = K::PC;
      else if (x.kind == K::PC && y.kind == K::E) k = K::PC;
      else if (x.kind == K::PC && y.kind == K::EC) k = K::P, shift = PR;
      else continue;
      auto prod = e_product(x.j, y.j, P.p, P.r);
      if (!prod) continue;
      out.add({k, prod->second + shift}, F.mul(F.mul(cx, cy), prod->first));
    }
  return out;
}

void ExtTensor::add(const ExtBasis& a, const ExtBasis& b, u32 c) {
  c %= P_.p;
  if (!c) return;
  Fp F(P_.p);
  u32& slot = t_[{a, b}];
  slot = F.add(slot, c);
  if (!slot) t_.erase({a, b});
}

ExtTensor ExtTensor::operator+(const ExtTensor& o) const {
  ExtTensor out = *this;
  for (const auto& [k, c] : o.t_) out.add(k.first, k.second, c);
  return out;
}

ExtTensor ExtTensor::operator*(const ExtTensor& o) const {
  Fp F(P_.p);
  ExtTensor out(P_);
  for (const auto& [x, cx] : t_)
    for (const auto& [y, cy] : o.t_) {
      ExtElement l = ext_multiply(ExtElement::basis(P_, x.first.kind, x.first.j),
                                  ExtElement::basis(P_, y.first.kind, y.first.j));
      if (l.is_zero()) continue;
      ExtElement r = ext_multiply(ExtElement::basis(P_, x.second.kind, x.second.j),
                                  ExtElement::basis(P_, y.second.kind, y.second.j));
      if (r.is_zero()) continue;
      u32 c = F.mul(cx, cy);
      if ((x.second.degree(P_.p, P_.r) & 1) && (y.first.degree(P_.p, P_.r) & 1)) c = F.neg(c);
      for (const auto& [lb, lc] : l.terms())
        for (const auto& [rb, rc] : r.terms()) out.add(lb, rb, F.mul(c, F.mul(lc, rc)));
    }
  return out;
}

ExtTensor ExtTensor::pi_left() const {
  ExtTensor out(P_);
  for (const auto& [k, c] : t_) out.add(k.first.pi(), k.second, c);
  return out;
}

ExtTensor ExtTensor::pi_right() const {
  ExtTensor out(P_);
  for (const auto& [k, c] : t_) out.add(k.first, k.second.pi(), c);
  return out;
}

ExtElement ExtTensor::counit_left() const {
  ExtElement out(P_);
  for (const auto& [k, c] : t_)
    if (k.first == ExtBasis{ExtKind::E, 0}) out.add(k.second, c);
  return out;
}

ExtElement ExtTensor::counit_right() const {
  ExtElement out(P_);
  for (const auto& [k, c] : t_)
    if (k.second == ExtBasis{ExtKind::E, 0}) out.add(k.first, c);
  return out;
}

std::string ExtTensor::to_string() const {
  if (t_.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& [k, c] : t_) {
    std::string s = k.first.to_string() + " (x) " + k.second.to_string();
    parts.push_back(c == 1 ? s : std::to_string(c) + "*" + s);
  }
  return join(parts, " + ");
}

ExtTensor ext_coproduct(const ExtParams& P, const ExtBasis& b) {
  const u64 PR = ipow(P.p, static_cast<unsigned>(P.r));
  if (b.j >= PR) throw std::invalid_argument("coproduct is only specified for j < p^r");
  using K = ExtKind;
  ExtTensor out(P);
  const ExtBasis e0{K::E, 0}, p0{K::P, 0}, c{K::EC, 0}, cp{K::PC, 0};
  switch (b.kind) {
    case K::E:
      for (u64 i = 0; i <= b.j; ++i) {
        out.add({K::E, i}, {K::E, b.j - i}, 1);
        out.add({K::P, i}, {K::P, b.j - i}, 1);
      }
      return out;
    case K::P:
      for (u64 i = 0; i <= b.j; ++i) {
        out.add({K::P, i}, {K::E, b.j - i}, 1);
        out.add({K::E, i}, {K::P, b.j - i}, 1);
      }
      return out;
    case K::EC: {
      ExtTensor dc(P);
      dc.add(c, e0, 1);
      dc.add(e0, c, 1);
      dc.add(cp, p0, 1);
      dc.add(p0, cp, 1);
      return b.j == 0 ? dc : ext_coproduct(P, {K::E, b.j}) * dc;
    }
    case K::PC: {
      ExtTensor dc(P);
      dc.add(cp, e0, 1);
      dc.add(e0, cp, 1);
      dc.add(c, p0, 1);
      dc.add(p0, c, 1);
      return b.j == 0 ? dc : ext_coproduct(P, {K::P, b.j}) * dc;
    }
  }
  return out;
}

ExtTensor ext_coproduct(const ExtElement& a) {
  ExtTensor out(a.params());
  Fp F(a.params().p);
  for (const auto& [b, c] : a.terms()) {
    ExtTensor d = ext_coproduct(a.params(), b);
    for (const auto& [k, v] : d.terms()) out.add(k.first, k.second, F.mul(v, c));
  }
  return out;
}

u32 ext_counit(const ExtElement& a) {
  auto it = a.terms().find({ExtKind::E, 0});
  return it == a.terms().end() ? 0 : it->second;
}

std::vector<ExtBasis> ext_basis_below(const ExtParams& P, int bound) {
  std::vector<ExtBasis> out;
  for (ExtKind k : {ExtKind::E, ExtKind::EC, ExtKind::P, ExtKind::PC})
    for (u64 j = 0;; ++j) {
      ExtBasis b{k, j};
      if (b.degree(P.p, P.r) >= bound) break;
      out.push_back(b);
    }
  return out;
}

std::vector<CheckResult> ext_bialgebra_checks(u32 p, int r) {
  ExtParams P{p, r, 0};
  const int top = 2 * static_cast<int>(ipow(p, static_cast<unsigned>(r)));
  auto B = ext_basis_below(P, top);
  auto el = [&](const ExtBasis& b) { return ExtElement::basis(P, b.kind, b.j); };
  std::vector<CheckResult> out;

  {
    std::vector<std::string> bad;
    ExtElement e0 = ExtElement::e0(P), e0p = ExtElement::e0_pi(P), one = ExtElement::unit(P);
    if (ext_multiply(e0, e0) != e0) bad.push_back("e_0 e_0");
    if (ext_multiply(e0p, e0p) != e0p) bad.push_back("e_0^Pi e_0^Pi");
    if (!ext_multiply(e0, e0p).is_zero()) bad.push_back("e_0 e_0^Pi");
    if (!ext_multiply(e0p, e0).is_zero()) bad.push_back("e_0^Pi e_0");
    for (const auto& b : B)
      if (ext_multiply(one, el(b)) != el(b) || ext_multiply(el(b), one) != el(b)) bad.push_back("1 * " + b.to_string());
    out.push_back({"idempotents", bad.empty(), join(bad, "; ")});
  }
  {
    ExtElement lhs = ExtElement::e_i(P, r);
    ExtElement pw = ExtElement::unit(P);
    for (u32 k = 0; k < p; ++k) pw = ext_multiply(pw, lhs);
    ExtElement rhs = ext_multiply(ExtElement::c(P), ExtElement::c_pi(P));
    ExtElement rhs_pi = ext_multiply(ExtElement::c_pi(P), ExtElement::c(P));
    bool ok = pw == rhs && pw.pi() == rhs_pi && !pw.is_zero();
    out.push_back({"(e_r)^p = c_r c_r^Pi", ok, ok ? "" : pw.to_string() + " vs " + rhs.to_string()});
  }
  {
    std::vector<std::string> bad;
    for (const auto& b : B) {
      ExtTensor d = ext_coproduct(P, b);
      if (d.counit_left() != el(b) || d.counit_right() != el(b)) bad.push_back(b.to_string());
    }
    out.push_back({"counit", bad.empty(), join(bad, "; ")});
  }
  {
    std::vector<std::string> bad;
    for (const auto& b : B) {
      ExtTensor d = ext_coproduct(P, b);
      ExtTensor dpi = ext_coproduct(P, b.pi());
      if (!(d == d.pi_both()) || !(d.pi_left() == dpi) || !(d.pi_right() == dpi)) bad.push_back(b.to_string());
    }
    out.push_back({"Pi-symmetry", bad.empty(), join(bad, "; ")});
  }
  {
    std::vector<std::string> bad;
    std::size_t pairs = 0;
    for (const auto& a : B)
      for (const auto& b : B) {
        if (a.degree(p, r) + b.degree(p, r) >= top) continue;
        ++pairs;
        ExtElement ab = ext_multiply(el(a), el(b));
        if (!(ext_coproduct(ab) == ext_coproduct(P, a) * ext_coproduct(P, b)))
          bad.push_back(a.to_string() + " * " + b.to_string());
      }
    out.push_back({"Delta multiplicative", bad.empty(),
                   bad.empty() ? std::to_string(pairs) + " pairs" : join(bad, "; ")});
  }
  {
    std::vector<std::string> bad;
    auto Dc = ext_coproduct(P, {ExtKind::EC, 0});
    if (Dc.size() != 4) bad.push_back("Delta(c_r) has " + std::to_string(Dc.size()) + " terms");
    out.push_back({"Delta(c_r) four terms", bad.empty(), join(bad, "; ")});
  }
  return out;
}

MatrixClass class_of(const ClassSetup& S, const ExtElement& a) {
  MatrixClass out(S.ring, S.m, S.n);
  for (const auto& [b, c] : a.terms()) {
    MatrixClass m(S.ring, S.m, S.n);
    switch (b.kind) {
      case ExtKind::E: m = class_of(S, ClassSpec::e(b.j)); break;
      case ExtKind::EC: m = class_of(S, ClassSpec::e(b.j)) * class_of(S, ClassSpec::c()); break;
      case ExtKind::P: m = class_of(S, ClassSpec::e_pi(b.j)); break;
      case ExtKind::PC: m = class_of(S, ClassSpec::e_pi(b.j)) * class_of(S, ClassSpec::c_pi()); break;
    }
    out = out + m.scaled(c);
  }
  return out;
}

std::vector<CheckResult> restriction_multiplicative_check(const VrPoint& pt, const PPolynomial& f, u32 eta) {
  ClassSetup S = class_setup(pt, f, eta);
  ExtParams P{S.ring.p, S.level, 0};
  const int top = 2 * static_cast<int>(ipow(P.p, static_cast<unsigned>(P.r)));
  auto B = ext_basis_below(P, top);
  std::map<ExtBasis, MatrixClass> cache;
  for (const auto& b : B) cache.emplace(b, class_of(S, ExtElement::basis(P, b.kind, b.j)));
  auto restrict = [&](const ExtElement& e) {
    MatrixClass out(S.ring, S.m, S.n);
    for (const auto& [b, c] : e.terms()) out = out + cache.at(b).scaled(c);
    return out;
  };
  std::vector<std::string> bad;
  std::size_t pairs = 0;
  for (const auto& a : B)
    for (const auto& b : B) {
      if (a.degree(P.p, P.r) + b.degree(P.p, P.r) >= top) continue;
      ++pairs;
      ExtElement ab = ext_multiply(ExtElement::basis(P, a.kind, a.j), ExtElement::basis(P, b.kind, b.j));
      if (restrict(ab) != cache.at(a) * cache.at(b)) bad.push_back(a.to_string() + " * " + b.to_string());
    }
  return {{"class_of multiplicative", bad.empty(),
           bad.empty() ? std::to_string(pairs) + " pairs" : join(bad, "; ")}};
}

}  // namespace supalg
