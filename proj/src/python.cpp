#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "supalg/cli.hpp"
#include "supalg/cohomology.hpp"
#include "supalg/groups.hpp"
#include "supalg/varieties.hpp"

namespace py = pybind11;
using namespace supalg;

namespace {

PPolynomial poly_or_monomial(const std::optional<std::string>& f, u32 p, int s) {
  return f ? PPolynomial::parse(*f, p) : PPolynomial::monomial(p, s);
}

}  // namespace

PYBIND11_MODULE(supalg, m) {
  m.doc() = "Exact algebra for multiparameter supergroups over F_p";

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a supalg subcommand; returns (exit code, stdout, stderr).");

  m.def(
      "binomial", [](u64 n, u64 k, u32 p) { return binom_mod_p(n, k, p).value(); }, py::arg("n"), py::arg("k"),
      py::arg("p"));

  m.def(
      "normalize_p_polynomial",
      [](const std::string& text, u32 p) { return PPolynomial::parse(text, p).to_string(); }, py::arg("text"),
      py::arg("p"));

  m.def(
      "verify_hopf",
      [](u32 p, int r, int s, const std::string& algebra) {
        HopfSuperalgebra H;
        VerifyOptions o;
        if (algebra == "coordinate") {
          H = coordinate_Mrs(p, r, s);
        } else if (algebra == "group") {
          H = group_algebra_Mrs(p, r, s);
          o.supercommutative = false;
          o.commutative = true;
          o.cocommutative = true;
        } else {
          throw py::value_error("algebra must be 'coordinate' or 'group'");
        }
        py::dict out;
        for (const auto& res : verify_axioms(H, o).results) out[py::str(res.name)] = res.pass;
        return out;
      },
      py::arg("p"), py::arg("r"), py::arg("s"), py::arg("algebra") = "coordinate",
      "Axiom name -> pass for k[M_{r;s}] or kM_{r;s}.");

  m.def(
      "betti",
      [](u32 p, int r, int s, int n, std::optional<std::string> f, u32 eta) {
        HopfSuperalgebra H = (f || eta % p) ? coordinate_Mrfeta(p, r, poly_or_monomial(f, p, s), eta)
                                            : coordinate_Mrs(p, r, s);
        CochainComplex C(share(std::move(H)), n + 1);
        auto b = C.betti(n);
        py::dict out;
        out["total"] = b.total;
        out["even"] = b.even;
        out["odd"] = b.odd;
        out["by_degree"] = b.by_degree;
        return out;
      },
      py::arg("p"), py::arg("r"), py::arg("s"), py::arg("n"), py::arg("f") = py::none(), py::arg("eta") = 0);

  m.def(
      "enumerate_points",
      [](int mm, int n, int r, u32 p, std::optional<std::string> f, u32 eta, bool force) {
        EnumerateOptions opt;
        opt.force = force;
        auto pts = (f || eta % p) ? enumerate_Vrfeta(mm, n, r, p, poly_or_monomial(f, p, 1), eta, opt)
                                  : enumerate_Vr(mm, n, r, p, opt);
        std::vector<std::vector<u32>> out;
        for (const auto& pt : pts) out.push_back(pt.entries());
        return out;
      },
      py::arg("m"), py::arg("n"), py::arg("r"), py::arg("p"), py::arg("f") = py::none(), py::arg("eta") = 0,
      py::arg("force") = false, "Entry tuples of the points, in lexicographic order.");

  m.def(
      "check_point",
      [](int mm, int n, int r, u32 p, const std::vector<u32>& entries, std::optional<std::string> f, u32 eta) {
        auto pt = VrPoint::from_entries(mm, n, r, p, entries);
        auto res = f ? check_point(pt, PPolynomial::parse(*f, p), eta) : check_point(pt);
        return py::make_tuple(res.pass, res.violated);
      },
      py::arg("m"), py::arg("n"), py::arg("r"), py::arg("p"), py::arg("entries"), py::arg("f") = py::none(),
      py::arg("eta") = 0, "(pass, first violated equation).");

  m.def(
      "endomorphisms",
      [](u32 p, int r, int s) {
        auto rep = enumerate_endos(p, r, s);
        std::vector<std::vector<u32>> tuples;
        for (const auto& e : rep.endos) tuples.push_back(e.tuple());
        return py::make_tuple(tuples, rep.matches);
      },
      py::arg("p"), py::arg("r"), py::arg("s"), "(parameter tuples, matches the classification).");
}
