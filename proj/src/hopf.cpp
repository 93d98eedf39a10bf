#include "supalg/hopf.hpp"

#include <json.hpp>
#include <map>
#include <sstream>

namespace supalg {

TVec Accumulator::take() {
  TVec out;
  out.reserve(m_.size());
  for (auto& [k, v] : m_)
    if (v) out.emplace_back(k, v);
  std::sort(out.begin(), out.end());
  m_.clear();
  return out;
}

bool Accumulator::empty_after_reduce() const {
  for (auto& kv : m_)
    if (kv.second) return false;
  return true;
}

Vec to_dense(const SVec& s, std::size_t dim) {
  Vec v(dim, 0);
  for (auto& [k, c] : s) v.at(k) = c;
  return v;
}

SVec to_sparse(const Vec& v) {
  SVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) s.emplace_back(static_cast<u32>(i), v[i]);
  return s;
}

Vec vadd(const Vec& a, const Vec& b, const Fp& F) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Vec vsub(const Vec& a, const Vec& b, const Fp& F) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

Vec vscale(const Vec& a, u32 c, const Fp& F) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

bool is_zero(const Vec& a) {
  for (u32 x : a)
    if (x) return false;
  return true;
}

Vec HopfSuperalgebra::basis(std::size_t i) const {
  Vec v(dim(), 0);
  v.at(i) = 1;
  return v;
}

Vec HopfSuperalgebra::unit_vec() const { return to_dense(unit, dim()); }

Vec HopfSuperalgebra::multiply(const Vec& x, const Vec& y) const {
  Fp F(p);
  const std::size_t d = dim();
  Vec r(d, 0);
  for (std::size_t a = 0; a < d; ++a) {
    if (!x[a]) continue;
    for (std::size_t b = 0; b < d; ++b) {
      if (!y[b]) continue;
      u32 c = F.mul(x[a], y[b]);
      for (auto& [k, v] : mult[a * d + b]) r[k] = F.add(r[k], F.mul(c, v));
    }
  }
  return r;
}

Vec HopfSuperalgebra::apply_antipode(const Vec& x) const {
  Fp F(p);
  Vec r(dim(), 0);
  for (std::size_t a = 0; a < dim(); ++a) {
    if (!x[a]) continue;
    for (auto& [k, v] : antipode[a]) r[k] = F.add(r[k], F.mul(x[a], v));
  }
  return r;
}

u32 HopfSuperalgebra::apply_counit(const Vec& x) const {
  Fp F(p);
  u32 r = 0;
  for (std::size_t a = 0; a < dim(); ++a) r = F.add(r, F.mul(x[a], counit[a]));
  return r;
}

TVec HopfSuperalgebra::apply_comult(const Vec& x) const {
  Fp F(p);
  Accumulator acc(p);
  const u64 d = dim();
  for (std::size_t a = 0; a < dim(); ++a) {
    if (!x[a]) continue;
    for (auto& t : comult[a]) acc.add(t.i * d + t.j, F.mul(x[a], t.c));
  }
  return acc.take();
}

int HopfSuperalgebra::parity_of(const Vec& x) const {
  int found = -1;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (!x[a]) continue;
    if (found == -1)
      found = par[a];
    else if (found != par[a])
      return -1;
  }
  return found;
}

TVec tensor_multiply(const HopfSuperalgebra& H, const TVec& x, const TVec& y) {
  Fp F(H.p);
  const u64 d = H.dim();
  Accumulator acc(H.p);
  for (auto& [k1, c1] : x) {
    u64 a = k1 / d, b = k1 % d;
    for (auto& [k2, c2] : y) {
      u64 c = k2 / d, dd = k2 % d;
      u32 coef = F.mul(c1, c2);
      if (H.par[b] & H.par[c]) coef = F.neg(coef);
      const auto& ac = H.mult[a * d + c];
      const auto& bd = H.mult[b * d + dd];
      for (auto& [i, u] : ac)
        for (auto& [j, v] : bd) acc.add(i * d + j, F.mul(coef, F.mul(u, v)));
    }
  }
  return acc.take();
}

TVec tensor_of(const HopfSuperalgebra& H, const Vec& a, const Vec& b) {
  Fp F(H.p);
  const u64 d = H.dim();
  TVec out;
  for (u64 i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (u64 j = 0; j < d; ++j)
      if (b[j]) out.emplace_back(i * d + j, F.mul(a[i], b[j]));
  }
  return out;
}

TVec tensor_add(const TVec& a, const TVec& b, const Fp& F) { return axpy(a, 1, b, F); }
TVec tensor_sub(const TVec& a, const TVec& b, const Fp& F) { return axpy(a, F.neg(1), b, F); }
TVec tensor_scale(const TVec& a, u32 c, const Fp& F) {
  TVec out;
  for (auto& [k, v] : a) {
    u32 w = F.mul(v, c);
    if (w) out.emplace_back(k, w);
  }
  return out;
}

static std::string coef_prefix(u32 c) { return c == 1 ? "" : std::to_string(c) + "*"; }

std::string element_to_string(const HopfSuperalgebra& H, const Vec& x) {
  std::string s;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (!x[a]) continue;
    if (!s.empty()) s += " + ";
    s += coef_prefix(x[a]) + H.labels[a];
  }
  return s.empty() ? "0" : s;
}

std::string tensor_to_string(const HopfSuperalgebra& H, const TVec& t) {
  std::string s;
  const u64 d = H.dim();
  for (auto& [k, c] : t) {
    if (!s.empty()) s += " + ";
    s += coef_prefix(c) + "(" + H.labels[k / d] + ")(x)(" + H.labels[k % d] + ")";
  }
  return s.empty() ? "0" : s;
}

bool AxiomReport::all_pass() const {
  for (auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string AxiomReport::to_string() const {
  std::ostringstream os;
  for (auto& r : results) {
    os << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) os << ": " << r.detail;
    os << "\n";
  }
  return os.str();
}

Vec evaluate_words(const std::vector<WordTerm>& words, const std::vector<Vec>& gen_images, const HopfSuperalgebra& B) {
  Fp F(B.p);
  Vec out(B.dim(), 0);
  for (auto& w : words) {
    Vec prod = B.unit_vec();
    for (u32 g : w.gens) prod = B.multiply(prod, gen_images.at(g));
    out = vadd(out, vscale(prod, w.coef, F), F);
  }
  return out;
}

namespace {

// Triple tensors keyed (a * d + b) * d + c.
using T3 = SparseRow<u64>;

T3 delta_left(const HopfSuperalgebra& H, const TVec& t) {  // (Delta (x) 1)
  Fp F(H.p);
  const u64 d = H.dim();
  Accumulator acc(H.p);
  for (auto& [k, c] : t)
    for (auto& e : H.comult[k / d]) acc.add((e.i * d + e.j) * d + k % d, F.mul(c, e.c));
  return acc.take();
}

T3 delta_right(const HopfSuperalgebra& H, const TVec& t) {  // (1 (x) Delta)
  Fp F(H.p);
  const u64 d = H.dim();
  Accumulator acc(H.p);
  for (auto& [k, c] : t)
    for (auto& e : H.comult[k % d]) acc.add(((k / d) * d + e.i) * d + e.j, F.mul(c, e.c));
  return acc.take();
}

std::vector<Vec> generator_vectors(const HopfSuperalgebra& H) {
  std::vector<Vec> g;
  for (auto& s : H.pres->gens) g.push_back(to_dense(s, H.dim()));
  return g;
}

struct Checker {
  AxiomReport& rep;
  void add(const std::string& name, bool pass, const std::string& detail = "") {
    rep.results.push_back({name, pass, detail});
  }
};

}  // namespace

AxiomReport verify_axioms(const HopfSuperalgebra& H, const VerifyOptions& opt) {
  AxiomReport rep;
  Checker ck{rep};
  Fp F(H.p);
  const std::size_t d = H.dim();
  const bool reduced = H.pres.has_value() && !opt.exhaustive;

  // test set for the right-hand argument of products
  std::vector<Vec> right;
  std::vector<std::string> right_names;
  if (reduced) {
    right = generator_vectors(H);
    right_names = H.pres->gen_names;
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      right.push_back(H.basis(i));
      right_names.push_back(H.labels[i]);
    }
  }

  if (H.pres) {
    std::string detail;
    bool ok = true;
    auto gens = generator_vectors(H);
    for (std::size_t i = 0; i < d && ok; ++i) {
      if (evaluate_words(H.pres->basis_words[i], gens, H) != H.basis(i)) {
        ok = false;
        detail = "basis word for " + H.labels[i] + " does not evaluate to it";
      }
    }
    ck.add("generators", ok, detail);
  }

  {
    std::string detail;
    bool ok = true;
    for (std::size_t a = 0; a < d && ok; ++a)
      for (std::size_t b = 0; b < d && ok; ++b) {
        Vec ab = to_dense(H.mult[a * d + b], d);
        for (std::size_t g = 0; g < right.size() && ok; ++g) {
          Vec lhs = H.multiply(ab, right[g]);
          Vec rhs = H.multiply(H.basis(a), H.multiply(H.basis(b), right[g]));
          if (lhs != rhs) {
            ok = false;
            detail = "(" + H.labels[a] + " * " + H.labels[b] + ") * " + right_names[g];
          }
        }
      }
    ck.add("associativity", ok, detail);
  }

  {
    std::string detail;
    bool ok = true;
    Vec u = H.unit_vec();
    for (std::size_t a = 0; a < d && ok; ++a) {
      if (H.multiply(u, H.basis(a)) != H.basis(a) || H.multiply(H.basis(a), u) != H.basis(a)) {
        ok = false;
        detail = H.labels[a];
      }
    }
    ck.add("unit", ok, detail);
  }

  {
    std::string detail;
    bool ok = true;
    for (std::size_t a = 0; a < d && ok; ++a) {
      TVec D = H.apply_comult(H.basis(a));
      if (delta_left(H, D) != delta_right(H, D)) {
        ok = false;
        detail = H.labels[a];
      }
    }
    ck.add("coassociativity", ok, detail);
  }

  {
    std::string detail;
    bool ok = true;
    for (std::size_t a = 0; a < d && ok; ++a) {
      Vec left(d, 0), rightv(d, 0);
      for (auto& t : H.comult[a]) {
        left[t.j] = F.add(left[t.j], F.mul(H.counit[t.i], t.c));
        rightv[t.i] = F.add(rightv[t.i], F.mul(H.counit[t.j], t.c));
      }
      if (left != H.basis(a) || rightv != H.basis(a)) {
        ok = false;
        detail = "counit law on " + H.labels[a];
      }
    }
    for (std::size_t a = 0; a < d && ok; ++a)
      for (std::size_t b = 0; b < d && ok; ++b) {
        u32 e = H.apply_counit(to_dense(H.mult[a * d + b], d));
        if (e != F.mul(H.counit[a], H.counit[b])) {
          ok = false;
          detail = "counit not multiplicative on " + H.labels[a] + ", " + H.labels[b];
        }
      }
    if (ok) {
      Vec u = H.unit_vec();
      if (H.apply_counit(u) != 1 || H.apply_comult(u) != tensor_of(H, u, u)) {
        ok = false;
        detail = "Delta(1) != 1 (x) 1 or eps(1) != 1";
      }
    }
    ck.add("counit", ok, detail);
  }

  {
    std::string detail;
    bool ok = true;
    std::vector<TVec> dright;
    for (auto& g : right) dright.push_back(H.apply_comult(g));
    for (std::size_t a = 0; a < d && ok; ++a) {
      TVec Da = H.apply_comult(H.basis(a));
      for (std::size_t g = 0; g < right.size() && ok; ++g) {
        TVec lhs = H.apply_comult(H.multiply(H.basis(a), right[g]));
        if (lhs != tensor_multiply(H, Da, dright[g])) {
          ok = false;
          detail = "Delta(" + H.labels[a] + " * " + right_names[g] + ")";
        }
      }
    }
    ck.add("comultiplication is multiplicative", ok, detail);
  }

  {
    std::string detail;
    bool ok = true;
    for (std::size_t a = 0; a < d && ok; ++a) {
      Vec l(d, 0), r(d, 0);
      for (auto& t : H.comult[a]) {
        Vec Si = H.apply_antipode(H.basis(t.i));
        Vec Sj = H.apply_antipode(H.basis(t.j));
        l = vadd(l, vscale(H.multiply(Si, H.basis(t.j)), t.c, F), F);
        r = vadd(r, vscale(H.multiply(H.basis(t.i), Sj), t.c, F), F);
      }
      Vec expect = vscale(H.unit_vec(), H.counit[a], F);
      if (l != expect || r != expect) {
        ok = false;
        detail = H.labels[a];
      }
    }
    ck.add("antipode", ok, detail);
  }

  {
    std::string detail;
    bool ok = true;
    auto bad = [&](const std::string& what) {
      ok = false;
      if (detail.empty()) detail = what;
    };
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (auto& [k, c] : H.mult[a * d + b]) {
          if (H.par[k] != (H.par[a] ^ H.par[b])) bad("product parity " + H.labels[a] + " * " + H.labels[b]);
          if (H.graded() && H.zdeg[k] != H.zdeg[a] + H.zdeg[b])
            bad("product degree " + H.labels[a] + " * " + H.labels[b]);
        }
    for (std::size_t a = 0; a < d; ++a) {
      for (auto& t : H.comult[a]) {
        if ((H.par[t.i] ^ H.par[t.j]) != H.par[a]) bad("coproduct parity " + H.labels[a]);
        if (H.graded() && H.zdeg[t.i] + H.zdeg[t.j] != H.zdeg[a]) bad("coproduct degree " + H.labels[a]);
      }
      for (auto& [k, c] : H.antipode[a]) {
        if (H.par[k] != H.par[a]) bad("antipode parity " + H.labels[a]);
        if (H.graded() && H.zdeg[k] != H.zdeg[a]) bad("antipode degree " + H.labels[a]);
      }
      if (H.counit[a] && (H.par[a] || (H.graded() && H.zdeg[a] != 0))) bad("counit on " + H.labels[a]);
    }
    for (auto& [k, c] : H.unit)
      if (H.par[k] || (H.graded() && H.zdeg[k] != 0)) bad("unit degree");
    ck.add("grading", ok, detail);
  }

  if (opt.supercommutative) {
    std::string detail;
    bool ok = true;
    for (std::size_t a = 0; a < right.size() && ok; ++a)
      for (std::size_t b = 0; b < right.size() && ok; ++b) {
        Vec ab = H.multiply(right[a], right[b]);
        Vec ba = H.multiply(right[b], right[a]);
        int pa = H.parity_of(right[a]), pb = H.parity_of(right[b]);
        if (pa == 1 && pb == 1) ba = vscale(ba, F.neg(1), F);
        if (ab != ba) {
          ok = false;
          detail = right_names[a] + ", " + right_names[b];
        }
      }
    ck.add("supercommutative", ok, detail);
  }

  if (opt.commutative) {
    std::string detail;
    bool ok = true;
    for (std::size_t a = 0; a < right.size() && ok; ++a)
      for (std::size_t b = 0; b < right.size() && ok; ++b)
        if (H.multiply(right[a], right[b]) != H.multiply(right[b], right[a])) {
          ok = false;
          detail = right_names[a] + ", " + right_names[b];
        }
    ck.add("commutative", ok, detail);
  }

  if (opt.cocommutative) {
    std::string detail;
    bool ok = true;
    const u64 dd = d;
    for (std::size_t a = 0; a < d && ok; ++a) {
      TVec D = H.apply_comult(H.basis(a));
      SparseRow<u64> tw;
      for (auto& [k, c] : D) {
        u64 i = k / dd, j = k % dd;
        tw.emplace_back(j * dd + i, (H.par[i] & H.par[j]) ? F.neg(c) : c);
      }
      if (normalize_row(tw, F) != D) {
        ok = false;
        detail = H.labels[a];
      }
    }
    ck.add("supercocommutative", ok, detail);
  }
  return rep;
}

HopfSuperalgebra dualize(const HopfSuperalgebra& H) {
  Fp F(H.p);
  const std::size_t d = H.dim();
  HopfSuperalgebra D;
  D.p = H.p;
  D.name = "dual(" + H.name + ")";
  D.par = H.par;
  D.zdeg = H.zdeg;
  for (auto& l : H.labels) D.labels.push_back("phi[" + l + "]");

  std::vector<SparseRow<u32>> mult(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (auto& t : H.comult[k]) {
      u32 c = (H.par[t.i] & H.par[t.j]) ? F.neg(t.c) : t.c;
      mult[t.i * d + t.j].emplace_back(static_cast<u32>(k), c);
    }
  for (auto& m : mult) m = normalize_row(m, F);
  D.mult = std::move(mult);

  D.comult.assign(d, {});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (auto& [k, c] : H.mult[i * d + j]) {
        u32 cc = (H.par[i] & H.par[j]) ? F.neg(c) : c;
        D.comult[k].push_back({static_cast<u32>(i), static_cast<u32>(j), cc});
      }

  D.counit.assign(d, 0);
  for (auto& [k, c] : H.unit) D.counit[k] = c;
  for (std::size_t k = 0; k < d; ++k)
    if (H.counit[k]) D.unit.emplace_back(static_cast<u32>(k), H.counit[k]);

  std::vector<SparseRow<u32>> S(d);
  for (std::size_t k = 0; k < d; ++k)
    for (auto& [i, c] : H.antipode[k]) S[i].emplace_back(static_cast<u32>(k), c);
  for (auto& s : S) s = normalize_row(s, F);
  D.antipode = std::move(S);
  return D;
}

HopfSuperalgebra transport(const HopfSuperalgebra& H, const std::vector<Vec>& new_basis, std::string name,
                           std::vector<std::string> labels) {
  Fp F(H.p);
  const std::size_t d = H.dim();
  if (new_basis.size() != d) throw std::invalid_argument("transport: wrong number of basis vectors");
  std::vector<std::vector<u32>> M(d, std::vector<u32>(d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t a = 0; a < d; ++a) M[a][k] = new_basis[k].at(a);
  auto Minv = dense_inverse(M, F);
  // column a of Minv: new coordinates of old basis vector a
  std::vector<SVec> col(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t k = 0; k < d; ++k)
      if (Minv[k][a]) col[a].emplace_back(static_cast<u32>(k), Minv[k][a]);
  auto to_new = [&](const Vec& x) {
    Vec r(d, 0);
    for (std::size_t a = 0; a < d; ++a) {
      if (!x[a]) continue;
      for (auto& [k, c] : col[a]) r[k] = F.add(r[k], F.mul(x[a], c));
    }
    return r;
  };

  HopfSuperalgebra T;
  T.p = H.p;
  T.name = std::move(name);
  for (std::size_t k = 0; k < d; ++k) {
    int pk = H.parity_of(new_basis[k]);
    if (pk < 0) throw std::invalid_argument("transport: basis vector " + std::to_string(k) + " is not homogeneous");
    T.par.push_back(static_cast<Parity>(pk));
  }
  if (labels.size() == d)
    T.labels = std::move(labels);
  else
    for (std::size_t k = 0; k < d; ++k) T.labels.push_back("b" + std::to_string(k));
  if (H.graded()) {
    bool ok = true;
    std::vector<int> zd(d);
    for (std::size_t k = 0; k < d && ok; ++k) {
      int z = INT32_MIN;
      for (std::size_t a = 0; a < d; ++a) {
        if (!new_basis[k][a]) continue;
        if (z == INT32_MIN)
          z = H.zdeg[a];
        else if (z != H.zdeg[a])
          ok = false;
      }
      zd[k] = z;
    }
    if (ok) T.zdeg = zd;
  }

  T.mult.resize(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) T.mult[k * d + l] = to_sparse(to_new(H.multiply(new_basis[k], new_basis[l])));
  T.unit = to_sparse(to_new(H.unit_vec()));
  const u64 dd = d;
  for (std::size_t k = 0; k < d; ++k) {
    Accumulator acc(H.p);
    for (auto& [key, c] : H.apply_comult(new_basis[k]))
      for (auto& [i, u] : col[key / dd])
        for (auto& [j, v] : col[key % dd]) acc.add(i * dd + j, F.mul(c, F.mul(u, v)));
    Tensor2 t;
    for (auto& [key, c] : acc.take()) t.push_back({static_cast<u32>(key / dd), static_cast<u32>(key % dd), c});
    T.comult.push_back(std::move(t));
    T.counit.push_back(H.apply_counit(new_basis[k]));
    T.antipode.push_back(to_sparse(to_new(H.apply_antipode(new_basis[k]))));
  }

  if (H.pres) {
    Presentation P;
    P.gen_names = H.pres->gen_names;
    for (auto& g : H.pres->gens) P.gens.push_back(to_sparse(to_new(to_dense(g, d))));
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<WordTerm> words;
      for (std::size_t a = 0; a < d; ++a) {
        if (!new_basis[k][a]) continue;
        for (auto& w : H.pres->basis_words[a]) {
          u32 c = F.mul(w.coef, new_basis[k][a]);
          if (c) words.push_back({c, w.gens});
        }
      }
      P.basis_words.push_back(std::move(words));
    }
    T.pres = std::move(P);
  }
  return T;
}

static Tensor2 sorted_tensor(Tensor2 t, const Fp& F) {
  SparseRow<u64> r;
  for (auto& e : t) r.emplace_back((u64(e.i) << 32) | e.j, e.c);
  r = normalize_row(r, F);
  Tensor2 out;
  for (auto& [k, c] : r) out.push_back({static_cast<u32>(k >> 32), static_cast<u32>(k & 0xffffffffu), c});
  return out;
}

bool same_structure(const HopfSuperalgebra& A, const HopfSuperalgebra& B, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (A.p != B.p) return fail("characteristic");
  if (A.par != B.par) return fail("parities");
  Fp F(A.p);
  const std::size_t d = A.dim();
  for (std::size_t i = 0; i < d * d; ++i)
    if (normalize_row(A.mult[i], F) != normalize_row(B.mult[i], F))
      return fail("product " + A.labels[i / d] + " * " + A.labels[i % d]);
  if (normalize_row(A.unit, F) != normalize_row(B.unit, F)) return fail("unit");
  if (A.counit != B.counit) return fail("counit");
  for (std::size_t k = 0; k < d; ++k) {
    auto ta = sorted_tensor(A.comult[k], F), tb = sorted_tensor(B.comult[k], F);
    bool eq = ta.size() == tb.size();
    for (std::size_t n = 0; eq && n < ta.size(); ++n)
      eq = ta[n].i == tb[n].i && ta[n].j == tb[n].j && ta[n].c == tb[n].c;
    if (!eq) return fail("coproduct of " + A.labels[k]);
    if (normalize_row(A.antipode[k], F) != normalize_row(B.antipode[k], F)) return fail("antipode of " + A.labels[k]);
  }
  return true;
}

Primitives primitives(const HopfSuperalgebra& H) {
  Fp F(H.p);
  const std::size_t d = H.dim();
  const u64 dd = d;
  Vec u = H.unit_vec();
  Primitives out;
  for (Parity want : {Parity(0), Parity(1)}) {
    std::vector<std::size_t> dom;
    for (std::size_t a = 0; a < d; ++a)
      if (H.par[a] == want) dom.push_back(a);
    if (dom.empty()) continue;
    std::vector<TVec> cols;
    std::map<u64, std::size_t> rowid;
    for (std::size_t a : dom) {
      Vec x = H.basis(a);
      TVec t = tensor_sub(tensor_sub(H.apply_comult(x), tensor_of(H, x, u), F), tensor_of(H, u, x), F);
      for (auto& [k, c] : t) rowid.emplace(k, 0);
      cols.push_back(std::move(t));
    }
    std::size_t r = 1;  // row 0 is the counit
    for (auto& [k, id] : rowid) id = r++;
    FpSparseMatrix M(r, dom.size(), H.p);
    for (std::size_t c = 0; c < dom.size(); ++c) {
      M.add(0, c, H.counit[dom[c]]);
      for (auto& [k, v] : cols[c]) M.add(rowid[k], c, v);
    }
    (void)dd;
    for (auto& kv : rank_kernel(M).kernel) {
      Vec x(d, 0);
      for (std::size_t c = 0; c < dom.size(); ++c) x[dom[c]] = kv[c];
      (want ? out.odd : out.even).push_back(std::move(x));
    }
  }
  return out;
}

namespace {

std::vector<Vec> echelon_basis(const std::vector<Vec>& gens, u32 p, std::size_t d) {
  SparseEchelon<u32> E(p);
  for (auto& g : gens) E.insert(to_sparse(g));
  std::vector<Vec> out;
  for (auto& r : E.rows()) out.push_back(to_dense(r, d));
  return out;
}

}  // namespace

AugmentationFiltration::AugmentationFiltration(const HopfSuperalgebra& H) : H_(&H) {
  Fp F(H.p);
  const std::size_t d = H.dim();
  Vec u = H.unit_vec();
  std::vector<Vec> all, aug;
  for (std::size_t a = 0; a < d; ++a) {
    all.push_back(H.basis(a));
    aug.push_back(vsub(H.basis(a), vscale(u, H.counit[a], F), F));
  }
  levels_.push_back(all);
  levels_.push_back(echelon_basis(aug, H.p, d));
  while (!levels_.back().empty()) {
    SparseEchelon<u32> E(H.p);
    for (auto& x : levels_.back())
      for (auto& y : levels_[1]) {
        if (E.rank() == levels_.back().size()) break;
        E.insert(to_sparse(H.multiply(x, y)));
      }
    std::vector<Vec> next;
    for (auto& r : E.rows()) next.push_back(to_dense(r, d));
    if (next.size() == levels_.back().size() && !next.empty())
      throw std::runtime_error("augmentation ideal is not nilpotent");
    levels_.push_back(std::move(next));
  }
  nilpotency_ = static_cast<int>(levels_.size()) - 1;

  SparseEchelon<u32> E(H.p);
  for (int i = nilpotency_ - 1; i >= 0; --i)
    for (auto& x : levels_[i])
      if (E.insert(to_sparse(x))) {
        adapted_.push_back(x);
        nu_.push_back(i);
      }
  std::vector<std::vector<u32>> M(d, std::vector<u32>(d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t a = 0; a < d; ++a) M[a][k] = adapted_[k][a];
  to_adapted_ = dense_inverse(M, F);
}

std::vector<Vec> AugmentationFiltration::power_basis(int i) const {
  if (i < 0) i = 0;
  if (i >= static_cast<int>(levels_.size())) return {};
  return levels_[i];
}

bool AugmentationFiltration::in_power(const Vec& x, int i) const {
  const std::size_t d = H_->dim();
  Fp F(H_->p);
  for (std::size_t k = 0; k < d; ++k) {
    if (nu_[k] >= i) continue;
    u32 c = 0;
    for (std::size_t a = 0; a < d; ++a) c = F.add(c, F.mul(to_adapted_[k][a], x[a]));
    if (c) return false;
  }
  return true;
}

int AugmentationFiltration::level_of(const Vec& x) const {
  if (is_zero(x)) return nilpotency_;
  int i = 0;
  while (i + 1 < nilpotency_ && in_power(x, i + 1)) ++i;
  return i;
}

bool AugmentationFiltration::in_tensor_filtration(const TVec& t, int i) const {
  const u64 d = H_->dim();
  Fp F(H_->p);
  Accumulator acc(H_->p);
  for (auto& [key, c] : t) {
    u64 a = key / d, b = key % d;
    for (u64 k = 0; k < d; ++k) {
      u32 ck = to_adapted_[k][a];
      if (!ck) continue;
      for (u64 l = 0; l < d; ++l) {
        if (nu_[k] + nu_[l] >= i) continue;
        u32 cl = to_adapted_[l][b];
        if (cl) acc.add(k * d + l, F.mul(c, F.mul(ck, cl)));
      }
    }
  }
  return acc.empty_after_reduce();
}

HomReport check_algebra_map(const HopfSuperalgebra& A, const HopfSuperalgebra& B, const std::vector<Vec>& images,
                            bool exhaustive_products) {
  HomReport rep;
  rep.basis_images = images;
  auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.failure = why;
    return rep;
  };
  if (A.p != B.p) return fail("different characteristics");
  Fp F(A.p);
  const std::size_t d = A.dim();
  if (images.size() != d) return fail("wrong number of images");
  auto T = [&](const Vec& x) {
    Vec r(B.dim(), 0);
    for (std::size_t a = 0; a < d; ++a)
      if (x[a]) r = vadd(r, vscale(images[a], x[a], F), F);
    return r;
  };
  for (std::size_t a = 0; a < d; ++a) {
    int pb = B.parity_of(images[a]);
    if (!is_zero(images[a]) && pb != A.par[a]) return fail("image of " + A.labels[a] + " has wrong parity");
  }
  if (T(A.unit_vec()) != B.unit_vec()) return fail("unit not preserved");

  std::vector<std::size_t> rights;
  if (!exhaustive_products && A.pres) {
    // generator-reduced: right factors are the generators, handled below
  } else {
    for (std::size_t b = 0; b < d; ++b) rights.push_back(b);
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b : rights) {
      Vec lhs = T(to_dense(A.mult[a * d + b], d));
      if (lhs != B.multiply(images[a], images[b]))
        return fail("relation violated: image of " + A.labels[a] + " * " + A.labels[b]);
    }
  if (!exhaustive_products && A.pres) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t g = 0; g < A.pres->gens.size(); ++g) {
        Vec gv = to_dense(A.pres->gens[g], d);
        if (T(A.multiply(A.basis(a), gv)) != B.multiply(images[a], T(gv)))
          return fail("relation violated: image of " + A.labels[a] + " * " + A.pres->gen_names[g]);
      }
  }
  return rep;
}

HomReport check_hopf_map(const HopfSuperalgebra& A, const HopfSuperalgebra& B, const std::vector<Vec>& images,
                         bool exhaustive_products) {
  HomReport rep = check_algebra_map(A, B, images, exhaustive_products);
  if (!rep.ok) return rep;
  auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.failure = why;
    return rep;
  };
  Fp F(A.p);
  const std::size_t d = A.dim();
  auto T = [&](const Vec& x) {
    Vec r(B.dim(), 0);
    for (std::size_t a = 0; a < d; ++a)
      if (x[a]) r = vadd(r, vscale(images[a], x[a], F), F);
    return r;
  };
  const u64 dB = B.dim();
  for (std::size_t a = 0; a < d; ++a) {
    if (B.apply_counit(images[a]) != A.counit[a]) return fail("counit not preserved on " + A.labels[a]);
    Accumulator acc(A.p);
    for (auto& t : A.comult[a])
      for (u64 i = 0; i < dB; ++i) {
        u32 ci = images[t.i][i];
        if (!ci) continue;
        for (u64 j = 0; j < dB; ++j) {
          u32 cj = images[t.j][j];
          if (cj) acc.add(i * dB + j, F.mul(t.c, F.mul(ci, cj)));
        }
      }
    if (acc.take() != B.apply_comult(images[a])) return fail("coproduct not preserved on " + A.labels[a]);
    if (B.apply_antipode(images[a]) != T(A.apply_antipode(A.basis(a))))
      return fail("antipode not preserved on " + A.labels[a]);
  }
  return rep;
}

namespace {

HomReport hom_from_generators(const HopfSuperalgebra& A, const HopfSuperalgebra& B, const std::vector<Vec>& gen_images,
                              bool hopf) {
  if (!A.pres) throw std::invalid_argument("hom_from_generators: source has no presentation");
  if (gen_images.size() != A.pres->gens.size()) throw std::invalid_argument("wrong number of generator images");
  std::vector<Vec> images;
  for (std::size_t a = 0; a < A.dim(); ++a) images.push_back(evaluate_words(A.pres->basis_words[a], gen_images, B));
  Fp F(A.p);
  for (std::size_t g = 0; g < gen_images.size(); ++g) {
    Vec gv = to_dense(A.pres->gens[g], A.dim());
    Vec img(B.dim(), 0);
    for (std::size_t a = 0; a < A.dim(); ++a)
      if (gv[a]) img = vadd(img, vscale(images[a], gv[a], F), F);
    if (img != gen_images[g]) {
      HomReport rep;
      rep.ok = false;
      rep.failure = "generator " + A.pres->gen_names[g] + " is not consistent with its words";
      rep.basis_images = images;
      return rep;
    }
  }
  return hopf ? check_hopf_map(A, B, images, true) : check_algebra_map(A, B, images, true);
}

}  // namespace

HomReport hopf_hom_from_generators(const HopfSuperalgebra& A, const HopfSuperalgebra& B,
                                   const std::vector<Vec>& gen_images) {
  return hom_from_generators(A, B, gen_images, true);
}

HomReport algebra_hom_from_generators(const HopfSuperalgebra& A, const HopfSuperalgebra& B,
                                      const std::vector<Vec>& gen_images) {
  return hom_from_generators(A, B, gen_images, false);
}

using nlohmann::json;

std::string to_json(const HopfSuperalgebra& H) {
  json j;
  const std::size_t d = H.dim();
  j["name"] = H.name;
  j["p"] = H.p;
  j["dim"] = d;
  j["parity"] = H.par;
  j["labels"] = H.labels;
  if (H.graded()) j["degree"] = H.zdeg;
  json mult = json::array();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (!H.mult[a * d + b].empty()) mult.push_back({a, b, H.mult[a * d + b]});
  j["mult"] = mult;
  j["unit"] = H.unit;
  json com = json::array();
  for (auto& t : H.comult) {
    json row = json::array();
    for (auto& e : t) row.push_back({e.i, e.j, e.c});
    com.push_back(row);
  }
  j["comult"] = com;
  j["counit"] = H.counit;
  j["antipode"] = H.antipode;
  if (H.pres) {
    json pr;
    pr["names"] = H.pres->gen_names;
    pr["gens"] = H.pres->gens;
    json words = json::array();
    for (auto& ws : H.pres->basis_words) {
      json w = json::array();
      for (auto& t : ws) w.push_back({t.coef, t.gens});
      words.push_back(w);
    }
    pr["words"] = words;
    j["presentation"] = pr;
  }
  return j.dump();
}

HopfSuperalgebra from_json(const std::string& text) {
  json j = json::parse(text);
  HopfSuperalgebra H;
  H.name = j.value("name", "");
  H.p = j.at("p").get<u32>();
  Fp F(H.p);
  std::size_t d = j.at("dim").get<std::size_t>();
  H.par = j.at("parity").get<std::vector<Parity>>();
  if (j.contains("labels"))
    H.labels = j["labels"].get<std::vector<std::string>>();
  else
    for (std::size_t k = 0; k < d; ++k) H.labels.push_back("b" + std::to_string(k));
  if (j.contains("degree")) H.zdeg = j["degree"].get<std::vector<int>>();
  if (H.par.size() != d || H.labels.size() != d) throw std::invalid_argument("from_json: size mismatch");
  H.mult.assign(d * d, {});
  for (auto& e : j.at("mult")) {
    std::size_t a = e.at(0), b = e.at(1);
    H.mult.at(a * d + b) = normalize_row(e.at(2).get<SVec>(), F);
  }
  H.unit = normalize_row(j.at("unit").get<SVec>(), F);
  for (auto& row : j.at("comult")) {
    Tensor2 t;
    for (auto& e : row) t.push_back({e.at(0).get<u32>(), e.at(1).get<u32>(), F.from_int(e.at(2).get<i64>())});
    H.comult.push_back(std::move(t));
  }
  H.counit = j.at("counit").get<std::vector<u32>>();
  for (auto& s : j.at("antipode")) H.antipode.push_back(normalize_row(s.get<SVec>(), F));
  if (H.comult.size() != d || H.counit.size() != d || H.antipode.size() != d)
    throw std::invalid_argument("from_json: size mismatch");
  if (j.contains("presentation")) {
    Presentation P;
    auto& pr = j["presentation"];
    P.gen_names = pr.at("names").get<std::vector<std::string>>();
    for (auto& g : pr.at("gens")) P.gens.push_back(normalize_row(g.get<SVec>(), F));
    for (auto& ws : pr.at("words")) {
      std::vector<WordTerm> w;
      for (auto& t : ws) w.push_back({t.at(0).get<u32>(), t.at(1).get<std::vector<u32>>()});
      P.basis_words.push_back(std::move(w));
    }
    H.pres = std::move(P);
  }
  return H;
}

}  // namespace supalg
