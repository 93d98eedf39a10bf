#include "supalg/groups.hpp"

#include <cctype>
#include <map>

namespace supalg {

// ---------------------------------------------------------------- PPolynomial

PPolynomial PPolynomial::monomial(u32 p, int t) {
  if (t < 1) throw std::invalid_argument("p-polynomial must have t >= 1");
  PPolynomial f;
  f.p = p;
  f.a.assign(t + 1, 0);
  f.a[t] = 1;
  return f;
}

PPolynomial PPolynomial::from_coefficients(u32 p, std::vector<u32> a, bool* rescaled) {
  Fp F(p);
  for (auto& c : a) c %= p;
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (a.empty()) throw std::invalid_argument("p-polynomial is zero");
  if (a[0] != 0) throw std::invalid_argument("p-polynomial is separable (nonzero linear term)");
  u32 lead = a.back();
  if (rescaled) *rescaled = lead != 1;
  u32 inv = F.inv(lead);
  for (auto& c : a) c = F.mul(c, inv);
  PPolynomial f;
  f.p = p;
  f.a = std::move(a);
  return f;
}

PPolynomial PPolynomial::parse(const std::string& text, u32 p, bool* rescaled) {
  Fp F(p);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty p-polynomial");
  std::map<int, u32> coeffs;
  std::size_t pos = 0;
  auto bad = [&](const std::string& why) { return std::invalid_argument("cannot parse '" + text + "': " + why); };
  while (pos < s.size()) {
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
      neg = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw bad("expected + or -");
    }
    u64 coef = 1;
    bool have_digits = false;
    u64 num = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      num = num * 10 + (s[pos++] - '0');
      have_digits = true;
      if (num > (1ull << 40)) throw bad("coefficient too large");
    }
    if (have_digits) coef = num;
    if (pos < s.size() && s[pos] == '*') ++pos;
    if (pos >= s.size() || (s[pos] != 'T' && s[pos] != 't' && s[pos] != 'X' && s[pos] != 'x')) {
      if (have_digits) throw bad("constant terms are not p-polynomials");
      throw bad("expected T");
    }
    ++pos;
    u64 e = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      e = 0;
      bool any = false;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        e = e * 10 + (s[pos++] - '0');
        any = true;
        if (e > (1ull << 40)) throw bad("exponent too large");
      }
      if (!any) throw bad("missing exponent");
    }
    int idx = 0;
    u64 q = 1;
    while (q < e) {
      q *= p;
      ++idx;
    }
    if (q != e) throw bad("exponent " + std::to_string(e) + " is not a power of " + std::to_string(p));
    u32 c = F.from_int(static_cast<i64>(coef % p));
    if (neg) c = F.neg(c);
    coeffs[idx] = F.add(coeffs[idx], c);
  }
  int top = coeffs.rbegin()->first;
  std::vector<u32> a(top + 1, 0);
  for (auto& [i, c] : coeffs) a[i] = c;
  return from_coefficients(p, a, rescaled);
}

int PPolynomial::s() const {
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    if (a[i]) return i;
  return -1;
}

PPolynomial PPolynomial::frobenius() const {
  Fp F(p);
  PPolynomial g;
  g.p = p;
  g.a.assign(a.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) g.a[i + 1] = F.pow(a[i], p);
  return g;
}

std::string PPolynomial::to_string() const {
  std::string out;
  for (int i = t(); i >= 0; --i) {
    if (!a[i]) continue;
    if (!out.empty()) out += "+";
    if (a[i] != 1) out += std::to_string(a[i]);
    out += "T^" + std::to_string(ipow(p, i));
  }
  return out;
}

SuperMatrix PPolynomial::evaluate(const SuperMatrix& X) const {
  SuperMatrix acc = SuperMatrix::zero(X.dom(), X.cod(), X.parity(), p);
  SuperMatrix pw = X;
  for (int i = 0; i <= t(); ++i) {
    if (i > 0) pw = pw.pow(p);
    if (a[i]) acc = acc + pw.scaled(a[i]);
  }
  return acc;
}

// ------------------------------------------------------- coordinate algebras

CoordIndex::CoordIndex(u32 p_, int r_, int s_) : p(p_), r(r_), s(s_) {
  if (r < 1 || s < 1) throw std::invalid_argument("r and s must be >= 1");
  P = ipow(p, r - 1);
  Q = ipow(p, s);
}

namespace {

std::string coord_label(int e, u64 i, u64 j) {
  std::string l;
  auto add = [&](const std::string& x) {
    if (!l.empty()) l += " ";
    l += x;
  };
  if (e) add("t");
  if (i == 1) add("th");
  if (i > 1) add("th^" + std::to_string(i));
  if (j) add("s_" + std::to_string(j));
  return l.empty() ? "1" : l;
}

Tensor2 to_tensor2(const TVec& t, u64 d) {
  Tensor2 out;
  for (auto& [k, c] : t) out.push_back({static_cast<u32>(k / d), static_cast<u32>(k % d), c});
  return out;
}

TVec primitive_tensor(u64 d, u32 x, u32 unit) {
  SparseRow<u64> t{{x * d + unit, 1}, {unit * d + x, 1}};
  std::sort(t.begin(), t.end());
  return t;
}

TVec tensor_power(const HopfSuperalgebra& H, const TVec& x, u64 n) {
  u64 d = H.dim();
  TVec r{{0 * d + 0, 1}};  // unit is basis 0 in every algebra built here
  for (u64 k = 0; k < n; ++k) r = tensor_multiply(H, r, x);
  return r;
}

Vec power(const HopfSuperalgebra& H, const Vec& x, u64 n) {
  Vec r = H.unit_vec();
  for (u64 k = 0; k < n; ++k) r = H.multiply(r, x);
  return r;
}

}  // namespace

HopfSuperalgebra coordinate_Mrs(u32 p, int r, int s) {
  CoordIndex ix(p, r, s);
  Fp F(p);
  const u64 P = ix.P, Q = ix.Q, d = ix.dim();
  HopfSuperalgebra H;
  H.p = p;
  H.name = "k[M_{" + std::to_string(r) + ";" + std::to_string(s) + "}]";
  H.par.resize(d);
  H.labels.resize(d);
  H.zdeg.resize(d);
  const u64 pr = ipow(p, r);
  for (int e = 0; e < 2; ++e)
    for (u64 j = 0; j < Q; ++j)
      for (u64 i = 0; i < P; ++i) {
        u32 k = ix(e, i, j);
        H.par[k] = static_cast<Parity>(e);
        H.labels[k] = coord_label(e, i, j);
        H.zdeg[k] = static_cast<int>(2 * i + 2 * j * P + e * pr);
      }

  H.mult.assign(d * d, {});
  for (int e1 = 0; e1 < 2; ++e1)
    for (u64 j1 = 0; j1 < Q; ++j1)
      for (u64 i1 = 0; i1 < P; ++i1)
        for (int e2 = 0; e2 < 2; ++e2)
          for (u64 j2 = 0; j2 < Q; ++j2)
            for (u64 i2 = 0; i2 < P; ++i2) {
              if (e1 && e2) continue;
              u64 i = i1 + i2, j = j1 + j2;
              u32 c = binom_raw(j, j1, F);
              if (i >= P) {  // th^{P} = s_1
                i -= P;
                c = F.mul(c, static_cast<u32>((j + 1) % p));
                ++j;
              }
              if (!c || j >= Q) continue;
              H.mult[ix(e1, i1, j1) * d + ix(e2, i2, j2)] = {{ix(e1 + e2, i, j), c}};
            }
  H.unit = {{0, 1}};
  H.counit.assign(d, 0);
  H.counit[0] = 1;

  const u32 tau = ix(1, 0, 0);
  TVec dtau = primitive_tensor(d, tau, 0);
  TVec dtheta = P > 1 ? primitive_tensor(d, ix(0, 1, 0), 0) : TVec{};
  std::vector<TVec> dsigma(Q);
  for (u64 j = 0; j < Q; ++j) {
    SparseRow<u64> t;
    for (u64 u = 0; u <= j; ++u) t.emplace_back(u64(ix(0, 0, u)) * d + ix(0, 0, j - u), 1);
    for (u64 u = 0; u + p <= j; ++u) t.emplace_back(u64(ix(1, 0, u)) * d + ix(1, 0, j - p - u), 1);
    dsigma[j] = normalize_row(t, F);
  }
  H.comult.resize(d);
  H.antipode.resize(d);
  for (int e = 0; e < 2; ++e)
    for (u64 j = 0; j < Q; ++j)
      for (u64 i = 0; i < P; ++i) {
        TVec D = e ? dtau : TVec{{0, 1}};
        if (i) D = tensor_multiply(H, D, tensor_power(H, dtheta, i));
        D = tensor_multiply(H, D, dsigma[j]);
        u32 k = ix(e, i, j);
        H.comult[k] = to_tensor2(D, d);
        H.antipode[k] = {{k, ((e + i + j) & 1) ? F.neg(1) : 1u}};
      }

  Presentation pres;
  u32 theta = P > 1 ? ix(0, 1, 0) : ix(0, 0, 1);
  pres.gen_names.push_back("th");
  pres.gens.push_back({{theta, 1}});
  pres.gen_names.push_back("t");
  pres.gens.push_back({{tau, 1}});
  u64 pl = p;
  for (int l = 1; l < s; ++l, pl *= p) {
    pres.gen_names.push_back("s_" + std::to_string(pl));
    pres.gens.push_back({{ix(0, 0, pl), 1}});
  }
  pres.basis_words.resize(d);
  for (int e = 0; e < 2; ++e)
    for (u64 j = 0; j < Q; ++j)
      for (u64 i = 0; i < P; ++i) {
        std::vector<u32> w;
        if (e) w.push_back(1);
        PadicDigits dg = p_adic(j, p);
        w.insert(w.end(), i + P * dg.digit(0), 0);
        for (int l = 1; l < s; ++l) w.insert(w.end(), dg.digit(l), static_cast<u32>(1 + l));
        pres.basis_words[ix(e, i, j)] = {{digit_factorial_inverse_raw(j, F), w}};
      }
  H.pres = std::move(pres);
  return H;
}

// ------------------------------------------------------------ group algebras

namespace {

struct GroupIndex {
  u32 p;
  int r, t;
  u64 P, Q, N, pr;
  GroupIndex(u32 p_, int r_, int t_) : p(p_), r(r_), t(t_) {
    P = ipow(p, r - 1);
    Q = ipow(p, t);
    N = P * Q;
    pr = P * p;
  }
  // gamma index of the monomial u_0^{I_0} ... u_{r-2}^{I_{r-2}} u_{r-1}^J
  u64 idx(u64 I, u64 J) const { return (J / p) * pr + I + (J % p) * P; }
  std::pair<u64, u64> mono(u64 j) const {
    u64 a = j / pr, b = j % pr;
    return {b % P, b / P + p * a};
  }
  // monomial = scale * gamma
  u32 scale(u64 I, u64 J, const Fp& F) const {
    u32 c = F.factorial(static_cast<u32>(J % p));
    while (I) {
      c = F.mul(c, F.factorial(static_cast<u32>(I % p)));
      I /= p;
    }
    return c;
  }
  // digitwise sum of I-tuples, false on a digit overflow (u_l^p = 0, l < r-1)
  bool add_I(u64 a, u64 b, u64& out) const {
    out = 0;
    u64 q = 1;
    for (int l = 0; l + 1 < r; ++l, q *= p) {
      u64 da = (a / q) % p, db = (b / q) % p;
      if (da + db >= p) return false;
      out += (da + db) * q;
    }
    return true;
  }
};

std::string group_label(int e, u64 j) {
  if (j == 0) return e ? "v" : "1";
  return (e ? "v g_" : "g_") + std::to_string(j);
}

}  // namespace

HopfSuperalgebra group_algebra_Mrfeta(u32 p, int r, const PPolynomial& f, u32 eta) {
  if (f.p != p) throw std::invalid_argument("p-polynomial modulus differs from p");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  if (f.coeff(0) != 0) throw std::invalid_argument("f must be inseparable");
  Fp F(p);
  eta %= p;
  const int t = f.t();
  GroupIndex gx(p, r, t);
  const u64 N = gx.N, d = 2 * N, Q = gx.Q;
  HopfSuperalgebra H;
  H.p = p;
  H.name = "kM_{" + std::to_string(r) + ";" + f.to_string() + "," + std::to_string(eta) + "}";
  H.par.resize(d);
  H.labels.resize(d);
  for (int e = 0; e < 2; ++e)
    for (u64 j = 0; j < N; ++j) {
      H.par[e * N + j] = static_cast<Parity>(e);
      H.labels[e * N + j] = group_label(e, j);
    }

  // Reduce a polynomial in (I, J) with J unbounded to J < Q.
  auto reduce = [&](std::map<std::pair<u64, u64>, u32> poly) {
    std::map<std::pair<u64, u64>, u32> out;
    while (!poly.empty()) {
      auto it = poly.begin();
      auto [I, J] = it->first;
      u32 c = it->second;
      poly.erase(it);
      if (!c) continue;
      if (J < Q) {
        out[{I, J}] = F.add(out[{I, J}], c);
        continue;
      }
      u64 rest = J - Q;
      for (int i = 1; i < t; ++i) {
        u32 a = f.coeff(i);
        if (!a) continue;
        auto key = std::make_pair(I, rest + ipow(p, i));
        poly[key] = F.add(poly[key], F.mul(c, F.neg(a)));
      }
      if (eta) {
        if (r == 1) {
          auto key = std::make_pair(I, rest + 1);
          poly[key] = F.add(poly[key], F.mul(c, F.neg(eta)));
        } else {
          u64 I2;
          if (gx.add_I(I, 1, I2)) {
            auto key = std::make_pair(I2, rest);
            poly[key] = F.add(poly[key], F.mul(c, F.neg(eta)));
          }
        }
      }
    }
    return out;
  };

  H.mult.assign(d * d, {});
  for (int e1 = 0; e1 < 2; ++e1)
    for (u64 j1 = 0; j1 < N; ++j1)
      for (int e2 = 0; e2 < 2; ++e2)
        for (u64 j2 = 0; j2 < N; ++j2) {
          auto [I1, J1] = gx.mono(j1);
          auto [I2, J2] = gx.mono(j2);
          u64 I;
          if (!gx.add_I(I1, I2, I)) continue;
          u32 c = F.mul(F.inv(gx.scale(I1, J1, F)), F.inv(gx.scale(I2, J2, F)));
          u64 J = J1 + J2;
          if (e1 && e2) {  // v^2 = -u_{r-1}^p
            J += p;
            c = F.neg(c);
          }
          int e = (e1 + e2) & 1;
          SVec row;
          for (auto& [key, v] : reduce({{{I, J}, c}})) {
            if (!v) continue;
            u64 g = gx.idx(key.first, key.second);
            row.emplace_back(static_cast<u32>(e * N + g), F.mul(v, gx.scale(key.first, key.second, F)));
          }
          H.mult[(e1 * N + j1) * d + e2 * N + j2] = normalize_row(row, F);
        }
  H.unit = {{0, 1}};
  H.counit.assign(d, 0);
  H.counit[0] = 1;

  // generators u_0, ..., u_{r-1}, v; u_l = gamma_{p^l} with
  // Delta(gamma_i) = sum_{a+b=i} gamma_a (x) gamma_b, and gamma_i = g_i for i < p^r
  Presentation pres;
  std::vector<TVec> dgen;
  for (int l = 0; l < r; ++l) {
    u64 g = l + 1 < r ? gx.idx(ipow(p, l), 0) : gx.idx(0, 1);
    pres.gen_names.push_back("u_" + std::to_string(l));
    pres.gens.push_back({{static_cast<u32>(g), 1}});
    TVec dg;
    for (u64 a = 0; a <= g; ++a) dg.emplace_back(a * d + (g - a), 1);
    dgen.push_back(dg);
  }
  pres.gen_names.push_back("v");
  pres.gens.push_back({{static_cast<u32>(N), 1}});
  dgen.push_back(primitive_tensor(d, static_cast<u32>(N), 0));

  pres.basis_words.resize(d);
  H.comult.resize(d);
  H.antipode.resize(d);
  std::map<std::vector<u32>, TVec> cache;  // coproducts of words, built by prefix
  cache[{}] = TVec{{0, 1}};
  auto word_coproduct = [&](const std::vector<u32>& w) {
    std::size_t k = w.size();
    std::vector<u32> prefix;
    while (k > 0) {
      prefix.assign(w.begin(), w.begin() + k);
      if (cache.count(prefix)) break;
      --k;
    }
    prefix.assign(w.begin(), w.begin() + k);
    TVec D = cache[prefix];
    for (std::size_t n = k; n < w.size(); ++n) {
      D = tensor_multiply(H, D, dgen[w[n]]);
      prefix.push_back(w[n]);
      cache[prefix] = D;
    }
    return D;
  };
  for (int e = 0; e < 2; ++e)
    for (u64 j = 0; j < N; ++j) {
      auto [I, J] = gx.mono(j);
      std::vector<u32> w;
      u64 digits = 0;
      u64 q = 1;
      for (int l = 0; l + 1 < r; ++l, q *= p) {
        u64 dl = (I / q) % p;
        digits += dl;
        w.insert(w.end(), dl, static_cast<u32>(l));
      }
      w.insert(w.end(), J, static_cast<u32>(r - 1));
      if (e) w.push_back(static_cast<u32>(r));
      u32 k = static_cast<u32>(e * N + j);
      u32 inv = F.inv(gx.scale(I, J, F));
      pres.basis_words[k] = {{inv, w}};
      H.comult[k] = to_tensor2(tensor_scale(word_coproduct(w), inv, F), d);
      H.antipode[k] = {{k, ((digits + J + e) & 1) ? F.neg(1) : 1u}};
    }
  H.pres = std::move(pres);
  return H;
}

HopfSuperalgebra group_algebra_Mrs(u32 p, int r, int s) {
  HopfSuperalgebra H = group_algebra_Mrfeta(p, r, PPolynomial::monomial(p, s), 0);
  H.name = "kM_{" + std::to_string(r) + ";" + std::to_string(s) + "}";
  return H;
}

HopfSuperalgebra coordinate_Mrfeta(u32 p, int r, const PPolynomial& f, u32 eta) {
  Fp F(p);
  eta %= p;
  const int t = f.t();
  HopfSuperalgebra G = group_algebra_Mrfeta(p, r, f, eta);
  HopfSuperalgebra D = dualize(G);
  HopfSuperalgebra C = coordinate_Mrs(p, r, t);
  CoordIndex ix(p, r, t);
  GroupIndex gx(p, r, t);
  const u64 d = ix.dim();
  std::vector<Vec> basis(d, Vec(d, 0));
  for (int e = 0; e < 2; ++e)
    for (u64 j = 0; j < ix.Q; ++j)
      for (u64 i = 0; i < ix.P; ++i) {
        u32 c = F.inv(F.factorial(static_cast<u32>(j % p)));
        if (e) c = F.neg(c);
        basis[ix(e, i, j)][e * gx.N + gx.idx(i, j)] = c;
      }
  HopfSuperalgebra T = transport(D, basis, "k[M_{" + std::to_string(r) + ";" + f.to_string() + "," +
                                               std::to_string(eta) + "}]",
                                 C.labels);
  for (u64 k = 0; k < d * d; ++k)
    if (T.mult[k] != C.mult[k])
      throw std::logic_error("coordinate_Mrfeta: dual product differs from k[M_{r;t}] at " + C.labels[k / d] +
                             " * " + C.labels[k % d]);
  if (T.unit != C.unit) throw std::logic_error("coordinate_Mrfeta: unit mismatch");
  T.pres = C.pres;
  if (f.is_monomial() && eta == 0) T.zdeg = C.zdeg;
  return T;
}

HopfSuperalgebra coordinate_Gar(u32 p, int r) {
  Fp F(p);
  const u64 n = ipow(p, r);
  HopfSuperalgebra H;
  H.p = p;
  H.name = "k[G_a(" + std::to_string(r) + ")]";
  H.par.assign(n, 0);
  for (u64 m = 0; m < n; ++m) {
    H.labels.push_back(m == 0 ? "1" : m == 1 ? "th" : "th^" + std::to_string(m));
    H.zdeg.push_back(static_cast<int>(2 * m));
  }
  H.mult.assign(n * n, {});
  for (u64 a = 0; a < n; ++a)
    for (u64 b = 0; a + b < n; ++b) H.mult[a * n + b] = {{static_cast<u32>(a + b), 1}};
  H.unit = {{0, 1}};
  H.counit.assign(n, 0);
  H.counit[0] = 1;
  Presentation pres;
  pres.gen_names = {"th"};
  pres.gens = {{{1, 1}}};
  for (u64 m = 0; m < n; ++m) {
    Tensor2 t;
    for (u64 k = 0; k <= m; ++k) {
      u32 c = binom_raw(m, k, F);
      if (c) t.push_back({static_cast<u32>(k), static_cast<u32>(m - k), c});
    }
    H.comult.push_back(t);
    H.antipode.push_back({{static_cast<u32>(m), (m & 1) ? F.neg(1) : 1u}});
    pres.basis_words.push_back({{1, std::vector<u32>(m, 0)}});
  }
  H.pres = std::move(pres);
  return H;
}

HopfSuperalgebra exterior_algebra(u32 p, const std::string& gen) {
  Fp F(p);
  HopfSuperalgebra H;
  H.p = p;
  H.name = "Lambda(" + gen + ")";
  H.par = {0, 1};
  H.labels = {"1", gen};
  H.mult = {{{0, 1}}, {{1, 1}}, {{1, 1}}, {}};
  H.unit = {{0, 1}};
  H.comult = {{{0, 0, 1}}, {{1, 0, 1}, {0, 1, 1}}};
  H.counit = {1, 0};
  H.antipode = {{{0, 1}}, {{1, F.neg(1)}}};
  Presentation pres;
  pres.gen_names = {gen};
  pres.gens = {{{1, 1}}};
  pres.basis_words = {{{1, {}}}, {{1, {0}}}};
  H.pres = std::move(pres);
  return H;
}

Tensor2 closed_form_sigma_coproduct(u32 p, const PPolynomial& f, u32 eta, u64 l) {
  Fp F(p);
  const int t = f.t();
  const u64 Q = ipow(p, t);
  if (l >= Q) throw std::invalid_argument("closed form only covers sigma_l with l < p^t");
  std::vector<u32> a(t);
  a[0] = eta % p;
  for (int c = 1; c < t; ++c) a[c] = f.coeff(c);
  std::vector<u64> pc(t);
  for (int c = 0; c < t; ++c) pc[c] = ipow(p, c);
  Tensor2 out;
  auto odd = [&](u64 i) { return static_cast<u32>(Q + i); };
  for (u64 i = 0; i < Q; ++i)
    for (u64 j = 0; j < Q; ++j) {
      u32 even = 0, oddc = 0;
      if (i + j == l) even = F.add(even, 1);
      if (i + j + p == l) oddc = F.add(oddc, 1);
      for (int c = 0; c < t; ++c) {
        if (i + j >= Q && i + j + pc[c] == l + Q) even = F.add(even, F.neg(a[c]));
        if (i + j + p >= Q && i + j + p + pc[c] == l + Q) oddc = F.add(oddc, F.neg(a[c]));
        for (int dd = 0; dd < t; ++dd) {
          u32 ad = F.mul(a[c], a[dd]);
          if (i + j >= Q && i + j + pc[c] >= 2 * Q && i + j + pc[c] + pc[dd] == l + 2 * Q) even = F.add(even, ad);
          if (i + j + p >= Q && i + j + p + pc[c] >= 2 * Q && i + j + pc[c] + pc[dd] + p == l + 2 * Q)
            oddc = F.add(oddc, ad);
        }
      }
      if (t == 1 && l == 1 && i == p - 1 && j == p - 1) oddc = F.add(oddc, F.neg(F.pow(a[0], 3)));
      if (even) out.push_back({static_cast<u32>(i), static_cast<u32>(j), even});
      if (oddc) out.push_back({odd(i), odd(j), oddc});
    }
  std::sort(out.begin(), out.end(), [](const T2& x, const T2& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
  return out;
}

// ------------------------------------------------------------------ morphisms

AlgebraPtr share(HopfSuperalgebra H) { return std::make_shared<const HopfSuperalgebra>(std::move(H)); }

Vec NamedMorphism::apply(const Vec& x) const {
  Fp F(source->p);
  Vec r(target->dim(), 0);
  for (std::size_t a = 0; a < x.size(); ++a)
    if (x[a]) r = vadd(r, vscale(images[a], x[a], F), F);
  return r;
}

SuperMatrix NamedMorphism::matrix() const {
  SuperMatrix M(SuperSpace{source->par}, SuperSpace{target->par}, 0, source->p);
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t i = 0; i < images[j].size(); ++i)
      if (images[j][i]) M.set(i, j, images[j][i]);
  return M;
}

HomReport NamedMorphism::verify() const {
  return hopf ? check_hopf_map(*source, *target, images) : check_algebra_map(*source, *target, images);
}

NamedMorphism morphism_from_generators(std::string name, AlgebraPtr src, AlgebraPtr tgt,
                                       const std::vector<Vec>& gen_images) {
  HomReport rep = hopf_hom_from_generators(*src, *tgt, gen_images);
  if (!rep.ok) throw std::runtime_error(name + " is not a Hopf map: " + rep.failure);
  NamedMorphism m;
  m.name = std::move(name);
  m.source = std::move(src);
  m.target = std::move(tgt);
  m.images = std::move(rep.basis_images);
  return m;
}

NamedMorphism algebra_morphism_from_generators(std::string name, AlgebraPtr src, AlgebraPtr tgt,
                                               const std::vector<Vec>& gen_images) {
  HomReport rep = algebra_hom_from_generators(*src, *tgt, gen_images);
  if (!rep.ok) throw std::runtime_error(name + " is not an algebra map: " + rep.failure);
  NamedMorphism m;
  m.name = std::move(name);
  m.source = std::move(src);
  m.target = std::move(tgt);
  m.images = std::move(rep.basis_images);
  m.hopf = false;
  return m;
}

NamedMorphism compose(const NamedMorphism& g, const NamedMorphism& f) {
  NamedMorphism h;
  h.name = g.name + " o " + f.name;
  h.source = f.source;
  h.target = g.target;
  h.hopf = g.hopf && f.hopf;
  for (auto& img : f.images) h.images.push_back(g.apply(img));
  return h;
}

bool same_map(const NamedMorphism& a, const NamedMorphism& b) {
  return a.source->dim() == b.source->dim() && a.target->dim() == b.target->dim() && a.images == b.images;
}

namespace {

Vec gen_vec(const HopfSuperalgebra& H, std::size_t g) { return to_dense(H.pres->gens.at(g), H.dim()); }

}  // namespace

NamedMorphism frobenius_group(u32 p, int r, const PPolynomial& f, u32 eta) {
  auto src = share(group_algebra_Mrfeta(p, r + 1, f, eta));
  auto tgt = share(group_algebra_Mrfeta(p, r, f, 0));
  std::vector<Vec> imgs;
  imgs.push_back(Vec(tgt->dim(), 0));
  for (int i = 1; i <= r; ++i) imgs.push_back(gen_vec(*tgt, i - 1));
  imgs.push_back(gen_vec(*tgt, r));
  return morphism_from_generators("F", src, tgt, imgs);
}

NamedMorphism group_quotient(u32 p, int r, const PPolynomial& from, u32 eta_from, const PPolynomial& to,
                             u32 eta_to) {
  auto src = share(group_algebra_Mrfeta(p, r, from, eta_from));
  auto tgt = share(group_algebra_Mrfeta(p, r, to, eta_to));
  std::vector<Vec> imgs;
  for (int i = 0; i <= r; ++i) imgs.push_back(gen_vec(*tgt, i));
  std::string name = (to.is_monomial() && eta_to == 0) ? "pi" : "quotient";
  return morphism_from_generators(name, src, tgt, imgs);
}

NamedMorphism odd_quotient_group(u32 p, int r, const PPolynomial& f, u32 eta) {
  auto src = share(group_algebra_Mrfeta(p, r, f, eta));
  auto tgt = share(exterior_algebra(p, "v"));
  std::vector<Vec> imgs(r, Vec(2, 0));
  imgs.push_back(gen_vec(*tgt, 0));
  return morphism_from_generators("q-", src, tgt, imgs);
}

NamedMorphism phi_iso(u32 p, int r, const PPolynomial& f, u32 eta) {
  Fp F(p);
  eta %= p;
  if (eta == 0) throw std::invalid_argument("phi_iso requires eta != 0");
  auto src = share(group_algebra_Mrfeta(p, r + 1, f, eta));
  auto tgt = share(group_algebra_Mrfeta(p, r, f.frobenius(), 0));
  Vec ulast = gen_vec(*tgt, r - 1);
  Vec fu(tgt->dim(), 0);
  for (int i = 0; i <= f.t(); ++i)
    if (f.coeff(i)) fu = vadd(fu, vscale(power(*tgt, ulast, ipow(p, i)), f.coeff(i), F), F);
  std::vector<Vec> imgs;
  imgs.push_back(vscale(fu, F.neg(F.inv(eta)), F));
  for (int i = 1; i <= r; ++i) imgs.push_back(gen_vec(*tgt, i - 1));
  imgs.push_back(gen_vec(*tgt, r));
  return algebra_morphism_from_generators("phi_iso", src, tgt, imgs);
}

NamedMorphism frobenius_coordinate(u32 p, int r, int s) {
  auto src = share(coordinate_Mrs(p, r, s));
  auto tgt = share(coordinate_Mrs(p, r + 1, s));
  std::vector<Vec> imgs;
  imgs.push_back(power(*tgt, gen_vec(*tgt, 0), p));
  for (std::size_t g = 1; g < src->pres->gens.size(); ++g) imgs.push_back(gen_vec(*tgt, g));
  return morphism_from_generators("F*", src, tgt, imgs);
}

NamedMorphism frobenius_Gar(u32 p, int r) {
  auto src = share(coordinate_Gar(p, r));
  auto tgt = share(coordinate_Gar(p, r + 1));
  return morphism_from_generators("F*", src, tgt, {power(*tgt, gen_vec(*tgt, 0), p)});
}

NamedMorphism q_coordinate(u32 p, int r, int s) {
  auto src = share(coordinate_Gar(p, r));
  auto tgt = share(coordinate_Mrs(p, r, s));
  return morphism_from_generators("q*", src, tgt, {gen_vec(*tgt, 0)});
}

NamedMorphism q_minus_coordinate(u32 p, int r, int s) {
  auto src = share(exterior_algebra(p, "t"));
  auto tgt = share(coordinate_Mrs(p, r, s));
  return morphism_from_generators("q-*", src, tgt, {gen_vec(*tgt, 1)});
}

NamedMorphism pi_coordinate(u32 p, int r, int s, const PPolynomial& f) {
  if (s > f.s()) throw std::invalid_argument("pi*: need s <= least exponent index of f");
  auto src = share(coordinate_Mrs(p, r, s));
  auto tgt = share(f.is_monomial() ? coordinate_Mrs(p, r, f.t()) : coordinate_Mrfeta(p, r, f, 0));
  std::vector<Vec> imgs;
  for (std::size_t g = 0; g < src->pres->gens.size(); ++g) imgs.push_back(gen_vec(*tgt, g));
  return morphism_from_generators("pi*", src, tgt, imgs);
}

std::vector<NamedMorphism> standard_morphisms(u32 p, int r, const PPolynomial& f, u32 eta) {
  eta %= p;
  std::vector<NamedMorphism> out;
  out.push_back(frobenius_group(p, r, f, eta));
  out.push_back(odd_quotient_group(p, r, f, eta));
  out.push_back(frobenius_coordinate(p, r, f.t()));
  out.push_back(q_coordinate(p, r, f.t()));
  out.push_back(q_minus_coordinate(p, r, f.t()));
  if (eta == 0) {
    out.push_back(group_quotient(p, r, f, 0, PPolynomial::monomial(p, f.s()), 0));
    out.push_back(pi_coordinate(p, r, f.s(), f));
  } else {
    out.push_back(phi_iso(p, r, f, eta));
  }
  return out;
}

std::vector<IdentityCheck> morphism_identities(u32 p, int r, const PPolynomial& f, u32 eta) {
  eta %= p;
  std::vector<IdentityCheck> out;
  {
    auto lhs = compose(frobenius_coordinate(p, r, f.t()), q_coordinate(p, r, f.t()));
    auto rhs = compose(q_coordinate(p, r + 1, f.t()), frobenius_Gar(p, r));
    out.push_back({"q o F = F o q", same_map(lhs, rhs)});
  }
  {
    PPolynomial mono = PPolynomial::monomial(p, f.s());
    auto lhs = compose(group_quotient(p, r, f, 0, mono, 0), frobenius_group(p, r, f, 0));
    auto rhs = compose(frobenius_group(p, r, mono, 0), group_quotient(p, r + 1, f, 0, mono, 0));
    out.push_back({"pi o F = F o pi", same_map(lhs, rhs)});
  }
  if (eta) {
    auto phi = phi_iso(p, r, f, eta);
    auto lhs = frobenius_group(p, r, f, eta);
    auto rhs = compose(group_quotient(p, r, f.frobenius(), 0, f, 0), phi);
    bool bij = rank_kernel([&] {
                 FpSparseMatrix M(phi.target->dim(), phi.source->dim(), p);
                 for (std::size_t j = 0; j < phi.images.size(); ++j)
                   for (std::size_t i = 0; i < phi.images[j].size(); ++i)
                     if (phi.images[j][i]) M.add(i, j, phi.images[j][i]);
                 return M;
               }())
                   .rank == phi.source->dim() &&
               phi.source->dim() == phi.target->dim();
    out.push_back({"phi_iso is bijective", bij});
    out.push_back({"F = quotient o phi_iso", same_map(lhs, rhs)});
  }
  return out;
}

}  // namespace supalg
