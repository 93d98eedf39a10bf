#include "supalg/varieties.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace supalg {

namespace {

SuperSpace space_of(int m, int n) { return SuperSpace::even_odd(m, n); }

std::vector<std::pair<std::size_t, std::size_t>> slots(const SuperSpace& V, Parity parity) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < V.size(); ++i)
    for (std::size_t j = 0; j < V.size(); ++j)
      if ((V.par[i] ^ V.par[j]) == parity) out.emplace_back(i, j);
  return out;
}

std::string mat_name(const std::string& base, int i) { return base + "_" + std::to_string(i); }

// Equations involving only the alphas (and f, eta when given).
PointCheck check_alphas(const VrPoint& pt, const PPolynomial* f, u32 eta) {
  PointCheck res;
  auto fail = [&](std::string what) {
    res.pass = false;
    res.violated = std::move(what);
    return res;
  };
  const int r = pt.r;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (pt.alpha[i] * pt.alpha[j] != pt.alpha[j] * pt.alpha[i])
        return fail("[" + mat_name("alpha", i) + ", " + mat_name("alpha", j) + "] = 0");
  for (int i = 0; i + 1 < r; ++i)
    if (!pt.alpha[i].pow(pt.p).is_zero()) return fail(mat_name("alpha", i) + "^p = 0");
  if (f) {
    SuperMatrix lhs = f->evaluate(pt.alpha[r - 1]) + pt.alpha[0].scaled(eta % pt.p);
    if (!lhs.is_zero()) return fail("f(alpha_" + std::to_string(r - 1) + ") + eta alpha_0 = 0");
  }
  return res;
}

PointCheck check_beta(const VrPoint& pt, const SuperMatrix& top_pow) {
  PointCheck res;
  for (int i = 0; i < pt.r; ++i)
    if (pt.alpha[i] * pt.beta != pt.beta * pt.alpha[i]) {
      res.pass = false;
      res.violated = "[" + mat_name("alpha", i) + ", beta] = 0";
      return res;
    }
  if (!(top_pow + pt.beta * pt.beta).is_zero()) {
    res.pass = false;
    res.violated = "alpha_" + std::to_string(pt.r - 1) + "^p + beta^2 = 0";
  }
  return res;
}

void check_shape(const VrPoint& pt) {
  if (pt.r < 1) throw std::invalid_argument("r must be >= 1");
  if (static_cast<int>(pt.alpha.size()) != pt.r) throw std::invalid_argument("expected r alpha matrices");
  const SuperSpace V = space_of(pt.m, pt.n);
  for (const auto& a : pt.alpha)
    if (!(a.dom() == V) || !(a.cod() == V) || a.parity() != 0 || a.p() != pt.p)
      throw std::invalid_argument("alpha must be an even endomorphism of k^{m|n}");
  if (!(pt.beta.dom() == V) || !(pt.beta.cod() == V) || pt.beta.parity() != 1 || pt.beta.p() != pt.p)
    throw std::invalid_argument("beta must be an odd endomorphism of k^{m|n}");
}

PointCheck full_check(const VrPoint& pt, const PPolynomial* f, u32 eta) {
  check_shape(pt);
  if (f && f->p != pt.p) throw std::invalid_argument("p-polynomial modulus differs from p");
  PointCheck a = check_alphas(pt, f, eta);
  if (!a.pass) return a;
  return check_beta(pt, pt.alpha[pt.r - 1].pow(pt.p));
}

std::vector<VrPoint> enumerate_impl(int m, int n, int r, u32 p, const PPolynomial* f, u32 eta,
                                    const EnumerateOptions& opt) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (m < 0 || n < 0 || r < 1) throw std::invalid_argument("need m, n >= 0 and r >= 1");
  const SuperSpace V = space_of(m, n);
  const auto aslots = slots(V, 0), bslots = slots(V, 1);
  const std::size_t na = aslots.size(), nb = bslots.size();
  const u64 budget = opt.budget ? opt.budget : enumeration_budget();
  long double space = 1;
  for (std::size_t k = 0; k < r * na + nb; ++k) space *= p;
  if (!opt.force && space > static_cast<long double>(budget))
    throw std::runtime_error("search space " + std::to_string(static_cast<double>(space)) + " exceeds budget " +
                             std::to_string(budget) + " (use force)");

  VrPoint pt = VrPoint::zero(m, n, r, p);
  std::vector<VrPoint> out;
  std::vector<u32> digits(r * na, 0), bd(nb, 0);
  // odometer increment, last digit fastest: lexicographic order
  auto step = [p](std::vector<u32>& d) {
    for (std::size_t k = d.size(); k-- > 0;) {
      if (++d[k] < p) return true;
      d[k] = 0;
    }
    return false;
  };
  do {
    for (int i = 0; i < r; ++i)
      for (std::size_t k = 0; k < na; ++k) pt.alpha[i].set(aslots[k].first, aslots[k].second, digits[i * na + k]);
    if (!check_alphas(pt, f, eta).pass) continue;
    const SuperMatrix top = pt.alpha[r - 1].pow(p);
    std::fill(bd.begin(), bd.end(), 0);
    do {
      for (std::size_t k = 0; k < nb; ++k) pt.beta.set(bslots[k].first, bslots[k].second, bd[k]);
      if (check_beta(pt, top).pass) out.push_back(pt);
    } while (step(bd));
  } while (step(digits));
  return out;
}

Vec power_vec(const HopfSuperalgebra& H, const Vec& x, u64 n) {
  Vec r = H.unit_vec();
  for (u64 k = 0; k < n; ++k) r = H.multiply(r, x);
  return r;
}

SparseRow<u64> flatten(const SuperMatrix& M) {
  SparseRow<u64> out;
  const auto& d = M.data();
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k]) out.emplace_back(k, d[k]);
  return out;
}

}  // namespace

VrPoint VrPoint::zero(int m, int n, int r, u32 p) {
  VrPoint pt;
  pt.p = p;
  pt.m = m;
  pt.n = n;
  pt.r = r;
  const SuperSpace V = space_of(m, n);
  pt.alpha.assign(r, SuperMatrix::zero(V, V, 0, p));
  pt.beta = SuperMatrix::zero(V, V, 1, p);
  return pt;
}

std::vector<u32> VrPoint::entries() const {
  const SuperSpace V = space_of(m, n);
  std::vector<u32> e;
  for (const auto& a : alpha)
    for (auto [i, j] : slots(V, 0)) e.push_back(a.at(i, j));
  for (auto [i, j] : slots(V, 1)) e.push_back(beta.at(i, j));
  return e;
}

VrPoint VrPoint::from_entries(int m, int n, int r, u32 p, const std::vector<u32>& e) {
  VrPoint pt = zero(m, n, r, p);
  const SuperSpace V = space_of(m, n);
  const auto as = slots(V, 0), bs = slots(V, 1);
  if (e.size() != r * as.size() + bs.size()) throw std::invalid_argument("wrong number of entries");
  std::size_t k = 0;
  for (int i = 0; i < r; ++i)
    for (auto [a, b] : as) pt.alpha[i].set(a, b, e[k++] % p);
  for (auto [a, b] : bs) pt.beta.set(a, b, e[k++] % p);
  return pt;
}

std::string VrPoint::to_string() const {
  std::ostringstream os;
  const SuperSpace V = space_of(m, n);
  auto dump = [&](const SuperMatrix& M) {
    os << "[";
    for (std::size_t i = 0; i < V.size(); ++i) {
      if (i) os << ";";
      for (std::size_t j = 0; j < V.size(); ++j) os << (j ? "," : "") << M.at(i, j);
    }
    os << "]";
  };
  for (int i = 0; i < r; ++i) {
    os << "alpha_" << i << "=";
    dump(alpha[i]);
    os << " ";
  }
  os << "beta=";
  dump(beta);
  return os.str();
}

PointCheck check_point(const VrPoint& pt) { return full_check(pt, nullptr, 0); }

PointCheck check_point(const VrPoint& pt, const PPolynomial& f, u32 eta) { return full_check(pt, &f, eta); }

u64 enumeration_budget() {
  if (const char* env = std::getenv("SUPALG_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10000000ULL;
}

std::vector<VrPoint> enumerate_Vr(int m, int n, int r, u32 p, const EnumerateOptions& opt) {
  return enumerate_impl(m, n, r, p, nullptr, 0, opt);
}

std::vector<VrPoint> enumerate_Vrfeta(int m, int n, int r, u32 p, const PPolynomial& f, u32 eta,
                                      const EnumerateOptions& opt) {
  if (f.p != p) throw std::invalid_argument("p-polynomial modulus differs from p");
  return enumerate_impl(m, n, r, p, &f, eta % p, opt);
}

ModuleCheck point_to_module(const VrPoint& pt, const PPolynomial& f, u32 eta) {
  ModuleCheck res;
  PointCheck pc = check_point(pt, f, eta);
  if (!pc.pass) {
    res.ok = false;
    res.failure = "not a point of V_{r;f,eta}: " + pc.violated;
    return res;
  }
  const HopfSuperalgebra G = group_algebra_Mrfeta(pt.p, pt.r, f, eta);
  const SuperSpace V = space_of(pt.m, pt.n);
  std::vector<SuperMatrix> gens(pt.alpha);
  gens.push_back(pt.beta);
  const auto& words = G.pres->basis_words;
  const std::size_t d = G.dim();
  res.action.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    SuperMatrix acc = SuperMatrix::zero(V, V, G.par[k], pt.p);
    for (const WordTerm& w : words[k]) {
      SuperMatrix prod = SuperMatrix::identity(V, pt.p);
      for (u32 g : w.gens) prod = prod * gens[g];
      acc = acc + prod.scaled(w.coef);
    }
    res.action.push_back(std::move(acc));
  }
  auto fail = [&](std::string what) {
    res.ok = false;
    res.failure = std::move(what);
    return res;
  };
  if (res.action[0] != SuperMatrix::identity(V, pt.p)) return fail("unit does not act as identity");
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (res.action[G.pres->gens[g].front().first] != gens[g]) return fail("generator " + G.pres->gen_names[g]);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      SuperMatrix rhs = SuperMatrix::zero(V, V, G.par[a] ^ G.par[b], pt.p);
      for (const auto& [k, c] : G.mult[a * d + b]) rhs = rhs + res.action[k].scaled(c);
      if (res.action[a] * res.action[b] != rhs) return fail("product " + G.labels[a] + " * " + G.labels[b]);
    }
  return res;
}

VrPoint regular_point(u32 p, int r, const PPolynomial& f, u32 eta) {
  const HopfSuperalgebra G = group_algebra_Mrfeta(p, r, f, eta);
  const std::size_t d = G.dim();
  const int half = static_cast<int>(d / 2);
  VrPoint pt = VrPoint::zero(half, half, r, p);
  auto left_mult = [&](const SVec& g, SuperMatrix& M) {
    Vec x = to_dense(g, d);
    for (std::size_t b = 0; b < d; ++b) {
      Vec y = G.multiply(x, G.basis(b));
      for (std::size_t k = 0; k < d; ++k)
        if (y[k]) M.set(k, b, y[k]);
    }
  };
  for (int i = 0; i < r; ++i) left_mult(G.pres->gens[i], pt.alpha[i]);
  left_mult(G.pres->gens[r], pt.beta);
  return pt;
}

std::optional<PPolynomial> annihilating_p_polynomial(const SuperMatrix& alpha, int max_t) {
  if (alpha.rows() != alpha.cols() || alpha.parity() != 0)
    throw std::invalid_argument("annihilating polynomial needs an even square matrix");
  const u32 p = alpha.p();
  Fp F(p);
  std::vector<SparseRow<u64>> cols;
  SuperMatrix pw = alpha;
  for (int t = 1; t <= max_t; ++t) {
    pw = pw.pow(p);  // alpha^{p^t}
    SparseRow<u64> target = flatten(pw);
    if (auto x = solve_combination(cols, target, p)) {
      std::vector<u32> a(t + 1, 0);
      for (int i = 1; i < t; ++i) a[i] = F.neg((*x)[i - 1]);
      a[t] = 1;
      return PPolynomial::from_coefficients(p, a);
    }
    cols.push_back(std::move(target));
  }
  return std::nullopt;
}

VrPoint frobenius_twist_point(const VrPoint& pt, int r) {
  VrPoint out = pt;
  const u64 q = ipow(pt.p, r);
  for (auto& a : out.alpha) a = a.entrywise_pow(q);
  out.beta = out.beta.entrywise_pow(q);
  return out;
}

CoveringReport covering_check(int m, int n, int r, u32 p, int max_t, const EnumerateOptions& opt) {
  CoveringReport rep;
  std::vector<VrPoint> pts = enumerate_Vr(m, n, r, p, opt);
  std::vector<VrPoint> twisted;
  for (const auto& pt : pts) {
    CoveringRow row{pt, annihilating_p_polynomial(pt.alpha[r - 1], max_t), false};
    row.in_Vrf = row.f && check_point(pt, *row.f, 0).pass;
    rep.pass = rep.pass && row.in_Vrf;
    rep.rows.push_back(std::move(row));
    VrPoint tw = frobenius_twist_point(pt, r);
    if (!check_point(tw).pass) rep.twist_bijective = false;
    twisted.push_back(std::move(tw));
  }
  std::sort(twisted.begin(), twisted.end());
  twisted.erase(std::unique(twisted.begin(), twisted.end()), twisted.end());
  if (twisted != pts) rep.twist_bijective = false;  // pts is already sorted
  rep.pass = rep.pass && rep.twist_bijective;
  return rep;
}

// ------------------------------------------------------------ endomorphisms

std::vector<u32> EndoParams::tuple() const {
  std::vector<u32> t{mu};
  t.insert(t.end(), a.begin(), a.end());
  if (b) t.push_back(*b);
  return t;
}

EndoReport enumerate_endos(u32 p, int r, int s) {
  AlgebraPtr H = share(coordinate_Mrs(p, r, s));
  const HopfSuperalgebra& A = *H;
  const std::size_t d = A.dim();
  const u64 dd = d;
  Fp F(p);
  CoordIndex ix(p, r, s);
  const Presentation& pres = *A.pres;
  const std::size_t ngen = pres.gens.size();  // th, t, s_p, ..., s_{p^{s-1}}

  const Vec theta = to_dense(pres.gens[0], d);
  const Vec tau = to_dense(pres.gens[1], d);
  std::vector<Vec> thetas;
  for (int i = 0; i < r; ++i) thetas.push_back(power_vec(A, theta, ipow(p, i)));

  Primitives prim = primitives(A);
  if (prim.even.size() != static_cast<std::size_t>(r) || prim.odd.size() != 1)
    throw std::logic_error("unexpected primitive space");

  // reduced coproduct columns of even basis elements in ker eps
  std::vector<std::size_t> even_idx;
  std::vector<SparseRow<u64>> cols;
  for (std::size_t k = 1; k < d; ++k) {
    if (A.par[k]) continue;
    SparseRow<u64> c;
    for (const T2& t : A.comult[k])
      if (t.i && t.j) c.emplace_back(u64(t.i) * dd + t.j, t.c);
    even_idx.push_back(k);
    cols.push_back(normalize_row(c, F));
  }

  // reading back a_i from an image of theta
  auto coeff_along = [&](const Vec& img, const Vec& basis_vec) {
    std::size_t k = 0;
    while (!basis_vec[k]) ++k;
    return F.mul(img[k], F.inv(basis_vec[k]));
  };

  EndoReport rep;
  std::vector<Vec> gen_images(ngen, Vec(d, 0));
  std::function<void(std::size_t)> extend = [&](std::size_t g) {
    if (g == ngen) {
      HomReport hr = hopf_hom_from_generators(A, A, gen_images);
      if (!hr.ok) return;
      EndoParams e;
      e.mu = coeff_along(gen_images[1], tau);
      for (int i = 0; i < r; ++i) e.a.push_back(coeff_along(gen_images[0], thetas[i]));
      if (s >= 2) e.b = coeff_along(gen_images[ngen - 1], thetas[r - 1]);
      e.gen_images = gen_images;
      rep.endos.push_back(std::move(e));
      return;
    }
    // image of sigma_{p^l}: solve the reduced coproduct equation
    const std::size_t src = pres.gens[g].front().first;
    Accumulator acc(p);
    for (const T2& t : A.comult[src]) {
      if (!t.i || !t.j) continue;
      Vec x = evaluate_words(pres.basis_words[t.i], gen_images, A);
      Vec y = evaluate_words(pres.basis_words[t.j], gen_images, A);
      for (const auto& [k, c] : tensor_of(A, x, y)) acc.add(k, F.mul(c, t.c));
    }
    auto sol = solve_combination(cols, acc.take(), p);
    if (!sol) return;
    Vec base(d, 0);
    for (std::size_t c = 0; c < cols.size(); ++c) base[even_idx[c]] = (*sol)[c];
    std::vector<u32> coef(r, 0);
    do {
      Vec img = base;
      for (int i = 0; i < r; ++i) img = vadd(img, vscale(thetas[i], coef[i], F), F);
      gen_images[g] = img;
      extend(g + 1);
    } while ([&] {
      for (int i = r; i-- > 0;) {
        if (++coef[i] < p) return true;
        coef[i] = 0;
      }
      return false;
    }());
    gen_images[g] = Vec(d, 0);
  };

  std::vector<u32> params(r + 1, 0);  // mu, a_0..a_{r-1}
  do {
    Vec th(d, 0);
    for (int i = 0; i < r; ++i) th = vadd(th, vscale(thetas[i], params[1 + i], F), F);
    gen_images[0] = th;
    gen_images[1] = vscale(tau, params[0], F);
    extend(2);
  } while ([&] {
    for (int i = r + 1; i-- > 0;) {
      if (++params[i] < p) return true;
      params[i] = 0;
    }
    return false;
  }());

  // classification: s = 1 all (mu, a); s >= 2 adds b with mu^2 = a_0^{p^r}
  std::vector<u32> t(r + 1 + (s >= 2 ? 1 : 0), 0);
  do {
    if (s == 1 || F.mul(t[0], t[0]) == F.pow(t[1], ipow(p, r))) rep.expected.push_back(t);
  } while ([&] {
    for (std::size_t i = t.size(); i-- > 0;) {
      if (++t[i] < p) return true;
      t[i] = 0;
    }
    return false;
  }());
  std::vector<std::vector<u32>> got;
  for (const auto& e : rep.endos) got.push_back(e.tuple());
  std::sort(got.begin(), got.end());
  rep.matches = got == rep.expected;
  return rep;
}

}  // namespace supalg
