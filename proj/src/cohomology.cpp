#include "supalg/cohomology.hpp"

#include <sstream>
#include <stdexcept>

namespace supalg {

CochainComplex::CochainComplex(std::shared_ptr<const HopfSuperalgebra> H, int max_level, u64 budget)
    : H_(std::move(H)), max_level_(max_level) {
  if (!H_ || H_->dim() < 2) throw std::invalid_argument("cochain complex needs an algebra of dimension >= 2");
  if (max_level < 1) throw std::invalid_argument("max level must be >= 1");
  K_ = H_->dim() - 1;
  long double sz = 1;
  for (int i = 0; i < max_level; ++i) sz *= K_;
  if (sz > static_cast<long double>(budget))
    throw std::runtime_error("cochain budget exceeded: " + std::to_string(K_) + "^" + std::to_string(max_level) +
                             " > " + std::to_string(budget));
  const u64 d = H_->dim();
  dbar_.resize(K_);
  for (u64 k = 1; k < d; ++k)
    for (const T2& t : H_->comult[k]) {
      if (t.i == 0 || t.j == 0) continue;
      dbar_[k - 1].push_back({t.i - 1, t.j - 1, t.c});
    }
}

std::vector<u32> CochainComplex::decode(u64 key, int n) const {
  std::vector<u32> out(n);
  for (int i = n - 1; i >= 0; --i) {
    out[i] = static_cast<u32>(key % K_) + 1;
    key /= K_;
  }
  return out;
}

u64 CochainComplex::encode(const std::vector<u32>& idx) const {
  u64 key = 0;
  for (u32 b : idx) {
    if (b == 0 || b > K_) throw std::out_of_range("cochain factor outside ker eps basis");
    key = key * K_ + (b - 1);
  }
  return key;
}

int CochainComplex::parity_of_key(u64 key, int n) const {
  int s = 0;
  for (int i = 0; i < n; ++i, key /= K_) s ^= H_->par[key % K_ + 1];
  return s;
}

int CochainComplex::degree_of_key(u64 key, int n) const {
  if (!H_->graded()) return 0;
  int s = 0;
  for (int i = 0; i < n; ++i, key /= K_) s += H_->zdeg[key % K_ + 1];
  return s;
}

int CochainComplex::parity(const Cochain& z) const {
  if (z.is_zero()) return -1;
  int q = parity_of_key(z.coef.front().first, z.level);
  for (const auto& e : z.coef)
    if (parity_of_key(e.first, z.level) != q) return -1;
  return q;
}

Cochain CochainComplex::differential(const Cochain& z) const {
  const int n = z.level;
  Fp F(p());
  Accumulator acc(p());
  for (const auto& [key, c] : z.coef) {
    u64 pw = 1;  // K^{n-1-i}
    for (int i = n - 1; i >= 0; --i) {
      const u64 hi = key / (pw * K_), digit = key / pw % K_, lo = key % pw;
      // factor i (0-based) gets sign (-1)^{i+1}
      const u32 sc = (i % 2 == 0) ? F.neg(c) : c;
      for (const T2& t : dbar_[digit]) {
        u64 nk = ((hi * K_ + t.i) * K_ + t.j) * pw + lo;
        acc.add(nk, F.mul(sc, t.c));
      }
      pw *= K_;
    }
  }
  return {n + 1, acc.take()};
}

const std::map<CochainComplex::Block, SparseEchelon<u64>>& CochainComplex::images(int n) {
  auto it = images_.find(n);
  if (it != images_.end()) return it->second;
  if (n >= max_level_) throw std::out_of_range("level beyond the built complex");
  std::map<Block, SparseEchelon<u64>> out;
  const u64 total = level_dim(n);
  for (u64 key = 0; key < total; ++key) {
    Cochain b{n, {{key, 1}}};
    Block bl = block_of(key, n);
    auto [pos, fresh] = out.try_emplace(bl, p());
    (void)fresh;
    Cochain db = differential(b);
    if (!db.is_zero()) pos->second.insert(std::move(db.coef));
  }
  return images_.emplace(n, std::move(out)).first->second;
}

std::map<CochainComplex::Block, u64> CochainComplex::block_sizes(int n) const {
  std::map<Block, u64> out;
  const u64 total = level_dim(n);
  for (u64 key = 0; key < total; ++key) ++out[block_of(key, n)];
  return out;
}

bool CochainComplex::is_coboundary(const Cochain& z) {
  if (z.is_zero()) return true;
  if (z.level == 0) return false;
  const auto& im = images(z.level - 1);
  std::map<Block, SparseRow<u64>> parts;
  for (const auto& e : z.coef) parts[block_of(e.first, z.level)].push_back(e);
  for (auto& [bl, row] : parts) {
    auto it = im.find(bl);
    if (it == im.end() || !it->second.in_span(row)) return false;
  }
  return true;
}

std::size_t CochainComplex::rank_mod_coboundaries(const std::vector<Cochain>& zs) {
  if (zs.empty()) return 0;
  const int n = zs.front().level;
  SparseEchelon<u64> ech(p());
  if (n > 0)
    for (const auto& [bl, e] : images(n - 1))
      for (const auto& row : e.rows()) ech.insert(row);
  std::size_t r = 0;
  for (const auto& z : zs) {
    if (z.level != n) throw std::invalid_argument("rank_mod_coboundaries: mixed levels");
    if (ech.insert(z.coef)) ++r;
  }
  return r;
}

bool CochainComplex::d_squared_zero(int n) const {
  const u64 total = level_dim(n);
  for (u64 key = 0; key < total; ++key)
    if (!differential(differential(Cochain{n, {{key, 1}}})).is_zero()) return false;
  return true;
}

BettiRow CochainComplex::betti(int n) {
  BettiRow row;
  row.n = n;
  const auto sizes = block_sizes(n);
  const auto& out = images(n);
  const std::map<Block, SparseEchelon<u64>>* in = n > 0 ? &images(n - 1) : nullptr;
  for (const auto& [bl, sz] : sizes) {
    u64 b = sz;
    if (auto it = out.find(bl); it != out.end()) b -= it->second.rank();
    if (in)
      if (auto it = in->find(bl); it != in->end()) b -= it->second.rank();
    if (!b) continue;
    row.by_block[bl] += b;
    row.by_degree[bl.first] += b;
    (bl.second ? row.odd : row.even) += b;
    row.total += b;
  }
  return row;
}

Cochain CochainComplex::cup(const Cochain& a, const Cochain& b) const {
  Fp F(p());
  const u64 shift = ipow(K_, b.level);
  Cochain out{a.level + b.level, {}};
  out.coef.reserve(a.coef.size() * b.coef.size());
  for (const auto& [ka, ca] : a.coef)
    for (const auto& [kb, cb] : b.coef) out.coef.emplace_back(ka * shift + kb, F.mul(ca, cb));
  return out;  // keys already sorted
}

Cochain CochainComplex::from_factors(const std::vector<Vec>& factors) const {
  Fp F(p());
  Cochain out{0, {{0, 1}}};
  for (const Vec& f : factors) {
    if (f.size() != H_->dim()) throw std::invalid_argument("factor has wrong dimension");
    if (f[0]) throw std::invalid_argument("factor not in ker eps");
    Cochain g{1, {}};
    for (u64 k = 1; k < f.size(); ++k)
      if (f[k]) g.coef.emplace_back(k - 1, f[k]);
    out = cup(out, g);
  }
  return out;
}

Cochain CochainComplex::from_tensor2(const TVec& t) const {
  const u64 d = H_->dim();
  SparseRow<u64> row;
  for (const auto& [key, c] : t) {
    u64 a = key / d, b = key % d;
    if (!a || !b) throw std::invalid_argument("tensor has a unit factor");
    row.emplace_back((a - 1) * K_ + (b - 1), c);
  }
  return {2, normalize_row(row, Fp(p()))};
}

Cochain CochainComplex::add(const Cochain& a, const Cochain& b) const {
  if (a.level != b.level) throw std::invalid_argument("adding cochains of different levels");
  return {a.level, axpy(a.coef, 1, b.coef, Fp(p()))};
}

Cochain CochainComplex::sub(const Cochain& a, const Cochain& b) const {
  if (a.level != b.level) throw std::invalid_argument("subtracting cochains of different levels");
  Fp F(p());
  return {a.level, axpy(a.coef, F.neg(1), b.coef, F)};
}

Cochain CochainComplex::scale(const Cochain& a, u32 c) const {
  Fp F(p());
  Cochain out{a.level, {}};
  c %= p();
  if (!c) return out;
  for (const auto& [k, v] : a.coef) out.coef.emplace_back(k, F.mul(v, c));
  return out;
}

std::string CochainComplex::to_string(const Cochain& z) const {
  if (z.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : z.coef) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << "*";
    os << "[";
    auto idx = decode(k, z.level);
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "|" : "") << H_->labels[idx[i]];
    os << "]";
  }
  return os.str();
}

// ------------------------------------------------------------ unreduced

std::vector<u64> unreduced_betti(const HopfSuperalgebra& H, int max_n) {
  const u64 d = H.dim();
  Fp F(H.p);
  // Rank of d_n : H^{(x) n} -> H^{(x) n+1}, n = 0..max_n.
  std::vector<u64> rank(max_n + 1, 0), dims(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    dims[n] = ipow(d, n);
    SparseEchelon<u64> ech(H.p);
    for (u64 key = 0; key < dims[n]; ++key) {
      Accumulator acc(H.p);
      acc.add(key, 1);                   // 1 (x) a, unit = basis 0 in front
      acc.add(key * d, F.sign(n % 2 == 0));  // (-1)^{n+1} a (x) 1
      u64 pw = 1;
      for (int i = n - 1; i >= 0; --i) {
        const u64 hi = key / (pw * d), digit = key / pw % d, lo = key % pw;
        const u32 sc = F.sign(i % 2 == 0);
        for (const T2& t : H.comult[digit]) acc.add(((hi * d + t.i) * d + t.j) * pw + lo, F.mul(sc, t.c));
        pw *= d;
      }
      ech.insert(acc.take());
    }
    rank[n] = ech.rank();
  }
  std::vector<u64> out(max_n + 1);
  for (int n = 0; n <= max_n; ++n) out[n] = dims[n] - rank[n] - (n ? rank[n - 1] : 0);
  return out;
}

// ------------------------------------------------------------ named cocycles

namespace {

Vec power_of(const HopfSuperalgebra& H, const Vec& x, u64 n) {
  Vec r = H.unit_vec();
  for (u64 k = 0; k < n; ++k) r = H.multiply(r, x);
  return r;
}

int log_p(u64 q, u32 p) {
  int s = 0;
  while (q > 1) {
    if (q % p) throw std::invalid_argument("dimension is not of coordinate-algebra shape");
    q /= p;
    ++s;
  }
  return s;
}

CoordIndex layout(const CochainComplex& C, int r) {
  const HopfSuperalgebra& H = C.algebra();
  const u64 P = ipow(H.p, r - 1);
  if (H.dim() % (2 * P)) throw std::invalid_argument("algebra does not match r");
  return CoordIndex(H.p, r, log_p(H.dim() / (2 * P), H.p));
}

Vec theta_of(const HopfSuperalgebra& H, const CoordIndex& ix) {
  return H.basis(ix.P > 1 ? ix(0, 1, 0) : ix(0, 0, 1));
}

}  // namespace

Cochain lambda_cocycle(const CochainComplex& C, const Vec& theta, int i) {
  const HopfSuperalgebra& H = C.algebra();
  return C.from_factors({power_of(H, theta, ipow(H.p, i - 1))});
}

Cochain x_cocycle(const CochainComplex& C, const Vec& theta, int i) {
  const HopfSuperalgebra& H = C.algebra();
  Fp F(H.p);
  const u32 p = H.p;
  const Vec base = power_of(H, theta, ipow(p, i - 1));
  std::vector<Vec> pw(p);
  pw[0] = H.unit_vec();
  for (u32 j = 1; j < p; ++j) pw[j] = H.multiply(pw[j - 1], base);
  Cochain out{2, {}};
  for (u32 j = 1; j < p; ++j) {
    u32 c = F.mul(F.factorial(p - 1), F.inv(F.mul(F.factorial(j), F.factorial(p - j))));
    out = C.add(out, C.scale(C.from_factors({pw[j], pw[p - j]}), c));
  }
  return out;
}

Cochain w_cochain(const CochainComplex& C, int r, int s) {
  const CoordIndex ix = layout(C, r);
  const u32 p = C.p();
  const u64 ps = ipow(p, s);
  if (ps > ix.Q) throw std::invalid_argument("w_s needs s <= the algebra's s");
  const u64 d = C.algebra().dim();
  Fp F(p);
  SparseRow<u64> t;
  for (u64 j = 1; j < ps; ++j) t.emplace_back(u64(ix(0, 0, j)) * d + ix(0, 0, ps - j), F.neg(1));
  for (u64 u = 0; u + p <= ps; ++u) t.emplace_back(u64(ix(1, 0, u)) * d + ix(1, 0, ps - p - u), F.neg(1));
  return C.from_tensor2(normalize_row(t, F));
}

NamedCocycles named_cocycles(const CochainComplex& C, int r) {
  const HopfSuperalgebra& H = C.algebra();
  const CoordIndex ix = layout(C, r);
  const Vec theta = theta_of(H, ix);
  NamedCocycles out;
  for (int i = 1; i <= r; ++i) {
    out.x.push_back(x_cocycle(C, theta, i));
    out.lambda.push_back(lambda_cocycle(C, theta, i));
  }
  out.y = C.from_factors({H.basis(ix(1, 0, 0))});
  if (ix.s == 1)
    out.w = C.sub(out.x.back(), C.cup(out.y, out.y));
  else
    out.w = w_cochain(C, r, ix.s);
  return out;
}

NamedCocycles Gar_cocycles(const CochainComplex& C, int r) {
  const Vec theta = C.algebra().basis(1);
  NamedCocycles out;
  for (int i = 1; i <= r; ++i) {
    out.x.push_back(x_cocycle(C, theta, i));
    out.lambda.push_back(lambda_cocycle(C, theta, i));
  }
  return out;
}

Cochain induced_map(const NamedMorphism& m, const Cochain& z, const CochainComplex& target) {
  const u64 Ks = m.source->dim() - 1;
  const u64 Kt = target.reduced_dim();
  if (target.algebra().dim() != m.target->dim()) throw std::invalid_argument("target complex does not match map");
  std::vector<SparseRow<u64>> img(Ks);
  for (u64 k = 0; k < Ks; ++k) {
    const Vec& v = m.images[k + 1];
    if (v[0]) throw std::invalid_argument("map does not preserve ker eps");
    for (u64 b = 1; b < v.size(); ++b)
      if (v[b]) img[k].emplace_back(b - 1, v[b]);
  }
  Fp F(target.p());
  Accumulator acc(target.p());
  for (const auto& [key, c] : z.coef) {
    std::vector<u64> digits(z.level);
    u64 kk = key;
    for (int i = z.level - 1; i >= 0; --i, kk /= Ks) digits[i] = kk % Ks;
    SparseRow<u64> cur{{0, c}};
    for (int i = 0; i < z.level; ++i) {
      SparseRow<u64> nxt;
      for (const auto& [a, ca] : cur)
        for (const auto& [b, cb] : img[digits[i]]) nxt.emplace_back(a * Kt + b, F.mul(ca, cb));
      cur.swap(nxt);
    }
    for (const auto& [k, v] : cur) acc.add(k, v);
  }
  return {z.level, acc.take()};
}

// ------------------------------------------------------------ checks

CheckResult boundary_filtration_check(u32 p, const PPolynomial& f, u32 eta) {
  const int t = f.t();
  if (t < 2) throw std::invalid_argument("boundary filtration check needs t >= 2");
  CheckResult res{"boundary mod F^{p+1}: f=" + f.to_string() + " eta=" + std::to_string(eta), false, ""};
  HopfSuperalgebra H = coordinate_Mrfeta(p, 1, f, eta);
  CoordIndex ix(p, 1, t);
  Fp F(p);
  const u64 d = H.dim();
  const u32 sp = ix(0, 0, p);
  // reduced coproduct of sigma_p
  SparseRow<u64> D;
  for (const T2& e : H.comult[sp]) D.emplace_back(u64(e.i) * d + e.j, e.c);
  D = normalize_row(D, F);
  D = tensor_sub(D, {{u64(sp) * d, 1}}, F);
  D = tensor_sub(D, {{u64(sp), 1}}, F);
  SparseRow<u64> E;
  for (u64 j = 1; j < p; ++j) E.emplace_back(u64(ix(0, 0, j)) * d + ix(0, 0, p - j), 1);
  const u32 tau = ix(1, 0, 0);
  E.emplace_back(u64(tau) * d + tau, 1);
  const u32 a1 = F.neg(f.coeff(1) % p);
  const u64 step = ipow(p, t - 1);
  for (u64 j = 1; j < p; ++j) E.emplace_back(u64(ix(0, 0, j * step)) * d + ix(0, 0, (p - j) * step), a1);
  E = normalize_row(E, F);
  TVec R = tensor_sub(D, E, F);
  AugmentationFiltration filt(H);
  res.pass = filt.in_tensor_filtration(R, static_cast<int>(p) + 1);
  res.detail = "remainder has " + std::to_string(R.size()) + " terms";
  return res;
}

std::vector<CheckResult> cocycle_suite(u32 p, int r, int s) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    out.push_back({std::move(name), pass, std::move(detail)});
  };
  const std::string tag = "M_{" + std::to_string(r) + ";" + std::to_string(s) + "}";

  AlgebraPtr H = share(coordinate_Mrs(p, r, s));
  const int top = 4;
  CochainComplex C(H, top);
  NamedCocycles nc = named_cocycles(C, r);

  std::vector<std::pair<std::string, Cochain>> gens;
  for (int i = 0; i < r; ++i) {
    gens.emplace_back("x_" + std::to_string(i + 1), nc.x[i]);
    gens.emplace_back("lambda_" + std::to_string(i + 1), nc.lambda[i]);
  }
  gens.emplace_back("y", nc.y);
  gens.emplace_back(s == 1 ? "w_1" : "w_" + std::to_string(s), nc.w);

  for (auto& [name, z] : gens) {
    add(tag + " " + name + " is a cocycle", C.is_cocycle(z));
    add(tag + " " + name + " is not a coboundary", !C.is_coboundary(z));
  }
  for (int i = 0; i < r; ++i)
    add(tag + " lambda_" + std::to_string(i + 1) + "^2 is a coboundary",
        C.is_coboundary(C.cup(nc.lambda[i], nc.lambda[i])));
  if (s == 1)
    add(tag + " y^2 - x_r is not a coboundary", !C.is_coboundary(C.sub(C.cup(nc.y, nc.y), nc.x.back())));

  Fp F(p);
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const Cochain& za = gens[a].second;
      const Cochain& zb = gens[b].second;
      if (za.level + zb.level > top) continue;
      int pa = C.parity(za), pb = C.parity(zb);
      bool neg = ((za.level * zb.level) + (pa * pb)) % 2;
      Cochain comm = C.sub(C.cup(za, zb), C.scale(C.cup(zb, za), F.sign(neg)));
      add(tag + " [" + gens[a].first + ", " + gens[b].first + "] is a coboundary", C.is_coboundary(comm));
    }

  // F*: k[M_{r;s}] -> k[M_{r+1;s}]
  {
    NamedMorphism Fm = frobenius_coordinate(p, r, s);
    CochainComplex T(Fm.target, 2);
    NamedCocycles nt = named_cocycles(T, r + 1);
    for (int i = 0; i < r; ++i) {
      add(tag + " F*(x_" + std::to_string(i + 1) + ") = x_" + std::to_string(i + 2),
          T.is_coboundary(T.sub(induced_map(Fm, nc.x[i], T), nt.x[i + 1])));
      add(tag + " F*(lambda_" + std::to_string(i + 1) + ") = lambda_" + std::to_string(i + 2),
          T.is_coboundary(T.sub(induced_map(Fm, nc.lambda[i], T), nt.lambda[i + 1])));
    }
    add(tag + " F*(y) = y", T.is_coboundary(T.sub(induced_map(Fm, nc.y, T), nt.y)));
  }
  // q*: k[G_a(r)] -> k[M_{r;s}]
  {
    NamedMorphism q = q_coordinate(p, r, s);
    CochainComplex G(q.source, 2);
    NamedCocycles ng = Gar_cocycles(G, r);
    for (int i = 0; i < r; ++i) {
      add(tag + " q*(x_" + std::to_string(i + 1) + ") = x_" + std::to_string(i + 1),
          C.is_coboundary(C.sub(induced_map(q, ng.x[i], C), nc.x[i])));
      add(tag + " q*(lambda_" + std::to_string(i + 1) + ") = lambda_" + std::to_string(i + 1),
          C.is_coboundary(C.sub(induced_map(q, ng.lambda[i], C), nc.lambda[i])));
    }
  }
  // pi*: k[M_{r;s}] -> k[M_{r;s+1}]
  {
    NamedMorphism pi = pi_coordinate(p, r, s, PPolynomial::monomial(p, s + 1));
    CochainComplex T(pi.target, 2);
    NamedCocycles nt = named_cocycles(T, r);
    Cochain pw = induced_map(pi, nc.w, T);
    if (s == 1)
      add(tag + " pi*(w_1) = x_r - y^2", T.is_coboundary(T.sub(pw, T.sub(nt.x.back(), T.cup(nt.y, nt.y)))));
    else
      add(tag + " pi*(w_" + std::to_string(s) + ") is a coboundary", T.is_coboundary(pw));
  }
  return out;
}

}  // namespace supalg
