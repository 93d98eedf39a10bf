#include "supalg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "supalg/classring.hpp"
#include "supalg/cohomology.hpp"
#include "supalg/groups.hpp"
#include "supalg/hopf.hpp"
#include "supalg/varieties.hpp"

namespace supalg::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  json params = json::object();
  std::vector<std::string> columns;
  std::vector<json> rows;
  std::vector<std::string> text;  // replaces the table in text mode when set
  std::optional<bool> pass;
  std::vector<std::string> notes;

  void row(std::vector<json> values) {
    json o = json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = i < values.size() ? values[i] : json();
    rows.push_back(std::move(o));
  }
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x.dump();
    return s;
  }
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render(const Report& R, Format fmt, std::ostream& out) {
  if (fmt == Format::Json) {
    json j = json::object();
    j["command"] = R.command;
    j["params"] = R.params;
    if (R.pass) j["pass"] = *R.pass;
    j["records"] = R.rows;
    if (!R.notes.empty()) j["notes"] = R.notes;
    out << j.dump(2) << "\n";
    return;
  }
  if (fmt == Format::Csv) {
    for (std::size_t i = 0; i < R.columns.size(); ++i) out << (i ? "," : "") << R.columns[i];
    out << "\n";
    for (const auto& row : R.rows) {
      for (std::size_t i = 0; i < R.columns.size(); ++i) out << (i ? "," : "") << csv_escape(scalar_text(row[R.columns[i]]));
      out << "\n";
    }
    return;
  }
  out << "# " << R.command;
  for (const auto& [k, v] : R.params.items()) out << " " << k << "=" << scalar_text(v);
  out << "\n";
  if (!R.text.empty()) {
    for (const auto& l : R.text) out << l << "\n";
  } else {
    std::vector<std::size_t> w(R.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < R.columns.size(); ++i) w[i] = R.columns[i].size();
    for (const auto& row : R.rows) {
      std::vector<std::string> c;
      for (std::size_t i = 0; i < R.columns.size(); ++i) {
        c.push_back(scalar_text(row[R.columns[i]]));
        w[i] = std::max(w[i], c.back().size());
      }
      cells.push_back(std::move(c));
    }
    auto line = [&](const std::vector<std::string>& c) {
      std::string s;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i + 1 == c.size()) {
          s += c[i];
        } else {
          s += c[i] + std::string(w[i] - c[i].size() + 2, ' ');
        }
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      out << s << "\n";
    };
    line(R.columns);
    for (const auto& c : cells) line(c);
  }
  for (const auto& n : R.notes) out << "note: " << n << "\n";
  if (R.pass) out << "result: " << (*R.pass ? "PASS" : "FAIL") << "\n";
}

// ---------------------------------------------------------------------------

struct Context {
  const RunConfig& cfg;
  std::ostream& err;
  mutable std::optional<PPolynomial> parsed;
  bool f_given() const { return !cfg.f.empty(); }
  // --f or a nonzero --eta selects the M_{r;f,eta} variants (f defaults to T^{p^s})
  bool deformed() const { return f_given() || cfg.eta != 0; }

  PPolynomial f() const {
    if (!f_given()) return PPolynomial::monomial(cfg.p, cfg.s);
    if (parsed) return *parsed;
    bool rescaled = false;
    PPolynomial g;
    try {
      g = PPolynomial::parse(cfg.f, cfg.p, &rescaled);
    } catch (const std::exception& e) {
      throw UsageError(std::string("cannot parse --f: ") + e.what());
    }
    if (rescaled) err << "notice: f rescaled to monic " << g.to_string() << "\n";
    parsed = g;
    return g;
  }
  EnumerateOptions enum_opts() const { return {cfg.force, cfg.budget}; }
  json base_params(bool with_s = true, bool with_f = false) const {
    json j = json::object();
    j["p"] = cfg.p;
    j["r"] = cfg.r;
    if (with_f && deformed()) {
      j["f"] = f().to_string();
      j["eta"] = cfg.eta;
    } else if (with_s) {
      j["s"] = cfg.s;
    }
    return j;
  }
};

json entries_json(const VrPoint& pt) { return json(pt.entries()); }

json matrix_json(const SuperMatrix& A) {
  json rows = json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < A.cols(); ++j) row.push_back(A.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string failed_names(const std::vector<CheckResult>& items) {
  std::string s;
  for (const auto& c : items)
    if (!c.pass) s += (s.empty() ? "" : "; ") + c.name;
  return s;
}

// Random-element spot checks on top of the basis-level axiom suite.
std::vector<AxiomResult> sampled_axioms(const HopfSuperalgebra& H, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Fp F = H.field();
  const std::size_t d = H.dim();
  std::uniform_int_distribution<u32> coef(1, H.p - 1);
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  // Four random basis terms keep Delta(x) Delta(y) cheap in large dimensions.
  auto random_vec = [&] {
    Vec v(d, 0);
    for (int k = 0; k < 4; ++k) v[pick(rng)] = coef(rng);
    return v;
  };
  // m o (S (x) id) o Delta, and the mirror image.
  auto convolve = [&](const TVec& t, bool left) {
    Vec acc(d, 0);
    for (const auto& [key, c] : t) {
      const u64 a = key / d, b = key % d;
      for (const auto& [k, sc] : H.antipode[left ? a : b])
        for (const auto& [m, v] : H.mult[left ? k * d + b : a * d + k])
          acc[m] = F.add(acc[m], F.mul(c, F.mul(sc, v)));
    }
    return acc;
  };
  bool mult = true, cou = true, anti = true;
  for (int k = 0; k < samples; ++k) {
    Vec x = random_vec(), y = random_vec();
    TVec lhs = H.apply_comult(H.multiply(x, y));
    TVec rhs = tensor_multiply(H, H.apply_comult(x), H.apply_comult(y));
    if (!tensor_sub(lhs, rhs, F).empty()) mult = false;
    if (H.apply_counit(H.multiply(x, y)) != F.mul(H.apply_counit(x), H.apply_counit(y))) cou = false;
    Vec expect = vscale(H.unit_vec(), H.apply_counit(x), F);
    TVec dx = H.apply_comult(x);
    if (convolve(dx, true) != expect || convolve(dx, false) != expect) anti = false;
  }
  std::string detail = std::to_string(samples) + " random pairs, seed " + std::to_string(seed);
  return {{"sampled: Delta multiplicative", mult, detail},
          {"sampled: counit multiplicative", cou, detail},
          {"sampled: antipode convolution", anti, detail}};
}

Report cmd_verify_hopf(const Context& C) {
  const auto& cfg = C.cfg;
  Report R;
  R.params = C.base_params(true, true);
  R.params["algebra"] = cfg.algebra;
  R.columns = {"algebra", "check", "pass", "detail"};
  std::vector<std::pair<HopfSuperalgebra, VerifyOptions>> algs;
  PPolynomial f = C.f();
  bool want_coord = cfg.algebra != "group", want_group = cfg.algebra != "coordinate";
  VerifyOptions group_opt;
  group_opt.supercommutative = false;
  group_opt.commutative = true;
  group_opt.cocommutative = true;
  group_opt.exhaustive = cfg.exhaustive;
  VerifyOptions coord_opt;
  coord_opt.exhaustive = cfg.exhaustive;
  if (want_coord) algs.emplace_back(C.deformed() ? coordinate_Mrfeta(cfg.p, cfg.r, f, cfg.eta)
                                                : coordinate_Mrs(cfg.p, cfg.r, cfg.s),
                                    coord_opt);
  if (want_group) algs.emplace_back(C.deformed() ? group_algebra_Mrfeta(cfg.p, cfg.r, f, cfg.eta)
                                                : group_algebra_Mrs(cfg.p, cfg.r, cfg.s),
                                    group_opt);
  bool ok = true;
  for (const auto& [H, opt] : algs) {
    auto rep = verify_axioms(H, opt);
    auto results = rep.results;
    if (cfg.samples > 0) {
      auto extra = sampled_axioms(H, cfg.samples, cfg.seed);
      results.insert(results.end(), extra.begin(), extra.end());
    }
    for (const auto& a : results) {
      R.row({H.name, a.name, a.pass, a.detail});
      ok = ok && a.pass;
    }
  }
  R.pass = ok;
  return R;
}

Report cmd_dual_roundtrip(const Context& C) {
  const auto& cfg = C.cfg;
  Report R;
  R.params = C.base_params(true, true);
  R.columns = {"check", "pass", "detail"};
  PPolynomial f = C.f();
  const u32 eta = cfg.eta;
  bool ok = true;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    R.row({name, pass, detail});
    ok = ok && pass;
  };
  HopfSuperalgebra G = group_algebra_Mrfeta(cfg.p, cfg.r, f, eta);
  std::optional<HopfSuperalgebra> D;
  try {
    D = coordinate_Mrfeta(cfg.p, cfg.r, f, eta);
    add("dual product matches k[M_{r;t}]", true, "");
  } catch (const std::logic_error& e) {
    add("dual product matches k[M_{r;t}]", false, e.what());
  }
  if (D) {
    if (f.is_monomial() && eta == 0) {
      std::string why;
      bool same = same_structure(*D, coordinate_Mrs(cfg.p, cfg.r, f.t()), &why);
      add("dual of group algebra = coordinate algebra", same, why);
    }
    add("dual satisfies Hopf axioms", verify_axioms(*D).all_pass(), "");
    std::string why;
    bool rt = same_structure(from_json(to_json(*D)), *D, &why);
    add("json round trip (coordinate)", rt, why);
    if (cfg.r == 1) {
      const u64 Q = ipow(cfg.p, f.t());
      const u64 d = D->dim();
      u64 mismatched = 0;
      for (u64 l = 0; l < Q; ++l) {
        TVec cf;
        for (const auto& t : closed_form_sigma_coproduct(cfg.p, f, eta, l)) cf.emplace_back(u64(t.i) * d + t.j, t.c);
        std::sort(cf.begin(), cf.end());
        if (cf != D->apply_comult(D->basis(l))) ++mismatched;
      }
      add("closed-form coproduct of sigma_l", mismatched == 0,
          std::to_string(Q) + " coproducts, " + std::to_string(mismatched) + " mismatched");
    }
  }
  std::string why;
  bool dd = same_structure(dualize(dualize(G)), G, &why);
  add("double dual (group algebra)", dd, why);
  why.clear();
  bool rt = same_structure(from_json(to_json(G)), G, &why);
  add("json round trip (group algebra)", rt, why);
  R.pass = ok;
  return R;
}

Report cmd_cohomology(const Context& C) {
  const auto& cfg = C.cfg;
  Report R;
  const int N = cfg.max_degree < 0 ? 4 : cfg.max_degree;
  R.params = C.base_params(true, true);
  R.params["max_degree"] = N;
  R.columns = {"n", "total", "even", "odd", "by_degree"};
  HopfSuperalgebra H = C.deformed() ? coordinate_Mrfeta(cfg.p, cfg.r, C.f(), cfg.eta)
                                   : coordinate_Mrs(cfg.p, cfg.r, cfg.s);
  const bool graded = H.graded();
  u64 budget = cfg.budget ? cfg.budget : CochainComplex::kDefaultBudget;
  std::unique_ptr<CochainComplex> cx;
  try {
    cx = std::make_unique<CochainComplex>(share(std::move(H)), N + 1, budget);
  } catch (const std::exception& e) {
    throw UsageError(std::string(e.what()) + " (raise --budget or lower --max-degree)");
  }
  for (int n = 0; n <= N; ++n) {
    BettiRow b = cx->betti(n);
    json deg = json::object();
    std::string degtext;
    for (const auto& [d, k] : b.by_degree) {
      deg[std::to_string(d)] = k;
      degtext += (degtext.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(k);
    }
    R.row({n, b.total, b.even, b.odd, graded ? deg : json()});
    std::string line = std::to_string(n) + ": " + std::to_string(b.total) + "  (even " + std::to_string(b.even) +
                       ", odd " + std::to_string(b.odd) + ")";
    if (graded) line += "  degrees " + degtext;
    R.text.push_back(line);
  }
  if (!graded) R.notes.push_back("algebra is not Z-graded; by_degree omitted");
  return R;
}

Report cmd_cocycle_check(const Context& C) {
  Report R;
  R.params = C.base_params();
  R.columns = {"check", "pass", "detail"};
  bool ok = true;
  for (const auto& c : cocycle_suite(C.cfg.p, C.cfg.r, C.cfg.s)) {
    R.row({c.name, c.pass, c.detail});
    ok = ok && c.pass;
  }
  R.pass = ok;
  return R;
}

Report cmd_boundary_check(const Context& C) {
  const auto& cfg = C.cfg;
  Report R;
  R.params = json::object();
  R.params["p"] = cfg.p;
  R.columns = {"f", "eta", "pass", "detail"};
  std::vector<std::pair<PPolynomial, u32>> cases;
  if (cfg.sweep) {
    for (u32 a1 = 0; a1 < cfg.p; ++a1)
      for (u32 e = 0; e < cfg.p; ++e) cases.emplace_back(PPolynomial::from_coefficients(cfg.p, {0, a1, 1}), e);
    R.params["sweep"] = "t = 2, all eta";
  } else {
    PPolynomial f = C.f_given() ? C.f() : PPolynomial::monomial(cfg.p, 2);
    if (f.t() < 2) throw UsageError("boundary-check needs deg f >= p^2");
    cases.emplace_back(f, cfg.eta);
    R.params["f"] = f.to_string();
    R.params["eta"] = cfg.eta;
  }
  bool ok = true;
  for (const auto& [f, e] : cases) {
    auto c = boundary_filtration_check(cfg.p, f, e);
    R.row({f.to_string(), e, c.pass, c.detail});
    ok = ok && c.pass;
  }
  R.pass = ok;
  return R;
}

Report cmd_enumerate_points(const Context& C) {
  const auto& cfg = C.cfg;
  Report R;
  R.params["m"] = cfg.m;
  R.params["n"] = cfg.n;
  R.params["r"] = cfg.r;
  R.params["p"] = cfg.p;
  std::vector<VrPoint> pts;
  std::optional<PPolynomial> f;
  if (C.deformed()) {
    f = C.f();
    R.params["f"] = f->to_string();
    R.params["eta"] = cfg.eta;
    pts = enumerate_Vrfeta(cfg.m, cfg.n, cfg.r, cfg.p, *f, cfg.eta, C.enum_opts());
    R.columns = {"index", "entries", "alpha", "beta", "module_ok"};
  } else {
    pts = enumerate_Vr(cfg.m, cfg.n, cfg.r, cfg.p, C.enum_opts());
    R.columns = {"index", "entries", "alpha", "beta"};
  }
  bool ok = true;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    json alpha = json::array();
    for (const auto& a : pts[k].alpha) alpha.push_back(matrix_json(a));
    std::vector<json> row{k, entries_json(pts[k]), alpha, matrix_json(pts[k].beta)};
    if (f) {
      auto mc = point_to_module(pts[k], *f, cfg.eta);
      row.push_back(mc.ok);
      ok = ok && mc.ok;
    }
    R.row(row);
  }
  R.notes.push_back(std::to_string(pts.size()) + " points");
  if (f) R.pass = ok;
  return R;
}

Report cmd_endos(const Context& C) {
  Report R;
  R.params = C.base_params();
  R.columns = {"index", "mu", "a", "b"};
  auto rep = enumerate_endos(C.cfg.p, C.cfg.r, C.cfg.s);
  for (std::size_t k = 0; k < rep.endos.size(); ++k) {
    const auto& e = rep.endos[k];
    R.row({k, e.mu, json(e.a), e.b ? json(*e.b) : json()});
  }
  R.notes.push_back(std::to_string(rep.endos.size()) + " endomorphisms; classification " +
                    (rep.matches ? "matches" : "differs"));
  R.pass = rep.matches;
  return R;
}

Report cmd_covering_check(const Context& C) {
  const auto& cfg = C.cfg;
  Report R;
  R.params["m"] = cfg.m;
  R.params["n"] = cfg.n;
  R.params["r"] = cfg.r;
  R.params["p"] = cfg.p;
  R.params["max_t"] = cfg.max_t;
  R.columns = {"index", "entries", "f", "in_Vrf"};
  auto rep = covering_check(cfg.m, cfg.n, cfg.r, cfg.p, cfg.max_t, C.enum_opts());
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    const auto& row = rep.rows[k];
    R.row({k, entries_json(row.point), row.f ? json(row.f->to_string()) : json(), row.in_Vrf});
  }
  R.notes.push_back(std::string("Frobenius twist bijective: ") + (rep.twist_bijective ? "yes" : "no"));
  R.pass = rep.pass && rep.twist_bijective;
  return R;
}

Report cmd_charclass_check(const Context& C) {
  const auto& cfg = C.cfg;
  RelationSet which;
  try {
    which = parse_relation_set(cfg.relation);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report R;
  PPolynomial f = C.f();
  R.params["m"] = cfg.m;
  R.params["n"] = cfg.n;
  R.params["r"] = cfg.r;
  R.params["p"] = cfg.p;
  R.params["f"] = f.to_string();
  R.params["eta"] = cfg.eta;
  R.params["relation"] = cfg.relation;
  R.columns = {"index", "entries", "checks", "pass", "failed"};
  auto pts = enumerate_Vrfeta(cfg.m, cfg.n, cfg.r, cfg.p, f, cfg.eta, C.enum_opts());
  bool ok = true;
  std::set<std::string> notes;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto rep = verify_relations_at_point(pts[k], f, cfg.eta, which);
    auto items = rep.items;
    if (which == RelationSet::All) {
      auto mult = restriction_multiplicative_check(pts[k], f, cfg.eta);
      items.insert(items.end(), mult.begin(), mult.end());
    }
    if (which == RelationSet::All || which == RelationSet::Theta) {
      auto th = theta_check(pts[k], f, cfg.eta);
      if (!th.note.empty()) notes.insert(th.note);
    }
    bool pass = std::all_of(items.begin(), items.end(), [](const CheckResult& c) { return c.pass; });
    R.row({k, entries_json(pts[k]), items.size(), pass, failed_names(items)});
    ok = ok && pass;
  }
  R.notes.push_back(std::to_string(pts.size()) + " points");
  for (const auto& n : notes) R.notes.push_back(n);
  R.pass = ok;
  return R;
}

Report cmd_ext_table(const Context& C) {
  const auto& cfg = C.cfg;
  const int top = static_cast<int>(2 * ipow(cfg.p, cfg.r));
  const int bound = cfg.max_degree < 0 ? top : cfg.max_degree;
  Report R;
  R.params["p"] = cfg.p;
  R.params["r"] = cfg.r;
  R.params["max_degree"] = bound;
  R.columns = {"kind", "left", "right", "value"};
  ExtParams P{cfg.p, cfg.r, 2 * bound + 2};
  auto basis = ext_basis_below(P, bound);
  for (const auto& b : basis) R.row({"basis", b.to_string(), json(), b.degree(cfg.p, cfg.r)});
  for (const auto& a : basis)
    for (const auto& b : basis) {
      auto prod = ext_multiply(ExtElement::basis(P, a.kind, a.j), ExtElement::basis(P, b.kind, b.j));
      R.row({"product", a.to_string(), b.to_string(), prod.to_string()});
    }
  const u64 pr = ipow(cfg.p, cfg.r);
  for (const auto& b : basis)
    if (b.j < pr) R.row({"coproduct", b.to_string(), json(), ext_coproduct(P, b).to_string()});
  R.notes.push_back(std::to_string(basis.size()) + " basis elements of degree < " + std::to_string(bound));
  return R;
}

void validate(const RunConfig& c) {
  if (!is_prime(c.p) || c.p < 3) throw UsageError("--p must be an odd prime");
  if (c.r < 1) throw UsageError("--r must be >= 1");
  if (c.s < 1) throw UsageError("--s must be >= 1");
  if (c.m < 0 || c.n < 0 || c.m + c.n == 0) throw UsageError("--m, --n must be >= 0 with m + n >= 1");
  if (c.eta >= c.p) throw UsageError("--eta must lie in 0..p-1");
  if (c.max_t < 1) throw UsageError("--max-t must be >= 1");
  if (c.samples < 0) throw UsageError("--samples must be >= 0");
  if (c.algebra != "both" && c.algebra != "group" && c.algebra != "coordinate")
    throw UsageError("--algebra must be coordinate, group or both");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact Hopf superalgebra, cohomology and characteristic-class checks over F_p", "supalg"};
  app.require_subcommand(1);
  std::map<std::string, Format> formats{{"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};

  struct Spec {
    const char* name;
    const char* help;
    std::vector<std::string> opts;
  };
  const std::vector<Spec> specs = {
      {"verify-hopf", "Hopf axiom suite for k[M_{r;s}] / kM_{r;s} or the f, eta variants",
       {"p", "r", "s", "f", "eta", "algebra", "exhaustive", "samples", "seed"}},
      {"dual-roundtrip", "Duality between group and coordinate algebras, closed-form coproducts",
       {"p", "r", "s", "f", "eta"}},
      {"cohomology", "Betti numbers of the cobar complex", {"p", "r", "s", "f", "eta", "max-degree", "budget"}},
      {"cocycle-check", "Named cocycles, coboundaries and induced maps", {"p", "r", "s"}},
      {"boundary-check", "Leading terms of d(sigma_p) modulo F^{p+1}", {"p", "f", "eta", "all"}},
      {"enumerate-points", "Points of V_r(GL_{m|n}) or V_{r;f,eta}", {"p", "r", "m", "n", "f", "eta", "budget", "force"}},
      {"endos", "Hopf endomorphisms of k[M_{r;s}]", {"p", "r", "s"}},
      {"covering-check", "Every point lies in some V_{r;f}", {"p", "r", "m", "n", "max-t", "budget", "force"}},
      {"charclass-check", "Characteristic-class relations at every point",
       {"p", "r", "m", "n", "f", "eta", "relation", "budget", "force"}},
      {"ext-table", "Basis, products and coproducts of the Ext model", {"p", "r", "max-degree"}},
  };
  for (const auto& sp : specs) {
    CLI::App* sub = app.add_subcommand(sp.name, sp.help);
    sub->callback([&cfg, name = std::string(sp.name)] { cfg.command = name; });
    sub->add_option("--format", cfg.format, "text|csv|json")->transform(CLI::CheckedTransformer(formats));
    for (const auto& o : sp.opts) {
      if (o == "p") sub->add_option("--p", cfg.p, "prime (default 3)");
      if (o == "r") sub->add_option("--r", cfg.r, "height r (default 1)");
      if (o == "s") sub->add_option("--s", cfg.s, "f = T^{p^s} when --f is absent (default 1)");
      if (o == "m") sub->add_option("--m", cfg.m, "even dimension (default 1)");
      if (o == "n") sub->add_option("--n", cfg.n, "odd dimension (default 1)");
      if (o == "f") sub->add_option("--f", cfg.f, "p-polynomial such as T^9+2T^3");
      if (o == "eta") sub->add_option("--eta", cfg.eta, "eta in F_p (default 0)");
      if (o == "max-degree") sub->add_option("--max-degree", cfg.max_degree, "largest degree");
      if (o == "max-t") sub->add_option("--max-t", cfg.max_t, "largest t tried (default 3)");
      if (o == "budget") sub->add_option("--budget", cfg.budget, "enumeration / cochain cap");
      if (o == "force") sub->add_flag("--force", cfg.force, "ignore the enumeration budget");
      if (o == "exhaustive") sub->add_flag("--exhaustive", cfg.exhaustive, "test all basis triples");
      if (o == "all") sub->add_flag("--all", cfg.sweep, "sweep every f with t = 2 and every eta");
      if (o == "algebra") sub->add_option("--algebra", cfg.algebra, "coordinate|group|both (default both)");
      if (o == "relation") sub->add_option("--relation", cfg.relation, "all|ext|er-p|commute|theta (default all)");
      if (o == "samples") sub->add_option("--samples", cfg.samples, "random element pairs (default 0)");
      if (o == "seed") sub->add_option("--seed", cfg.seed, "seed for --samples (default 1)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands())
      if (sub->parsed()) {
        err << sub->help();
        return 2;
      }
    err << app.help();
    return 2;
  }

  try {
    validate(cfg);
    Context ctx{cfg, err, std::nullopt};
    Report R;
    const auto& c = cfg.command;
    if (c == "verify-hopf") R = cmd_verify_hopf(ctx);
    else if (c == "dual-roundtrip") R = cmd_dual_roundtrip(ctx);
    else if (c == "cohomology") R = cmd_cohomology(ctx);
    else if (c == "cocycle-check") R = cmd_cocycle_check(ctx);
    else if (c == "boundary-check") R = cmd_boundary_check(ctx);
    else if (c == "enumerate-points") R = cmd_enumerate_points(ctx);
    else if (c == "endos") R = cmd_endos(ctx);
    else if (c == "covering-check") R = cmd_covering_check(ctx);
    else if (c == "charclass-check") R = cmd_charclass_check(ctx);
    else if (c == "ext-table") R = cmd_ext_table(ctx);
    R.command = c;
    render(R, cfg.format, out);
    return R.pass.value_or(true) ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // Budget overruns land here as runtime_error.
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"supalg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace supalg::cli
