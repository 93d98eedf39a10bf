#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supalg/groups.hpp"
#include "supalg/superlin.hpp"

namespace supalg {

// A point of V_r(GL_{m|n}) over F_p: even alpha_0..alpha_{r-1}, odd beta.
struct VrPoint {
  u32 p = 3;
  int m = 0, n = 0, r = 1;
  std::vector<SuperMatrix> alpha;
  SuperMatrix beta;

  static VrPoint zero(int m, int n, int r, u32 p);
  // Free entries in order: alpha_0 (row-major, diagonal blocks), ..., beta
  // (row-major, off-diagonal blocks).
  std::vector<u32> entries() const;
  static VrPoint from_entries(int m, int n, int r, u32 p, const std::vector<u32>& e);
  std::string to_string() const;
  bool operator==(const VrPoint& o) const { return p == o.p && m == o.m && n == o.n && entries() == o.entries(); }
  bool operator<(const VrPoint& o) const { return entries() < o.entries(); }
};

struct PointCheck {
  bool pass = true;
  std::string violated;  // name of the first failing equation
};

// Throws std::invalid_argument on shape or parity mismatch.
PointCheck check_point(const VrPoint& pt);
PointCheck check_point(const VrPoint& pt, const PPolynomial& f, u32 eta);

// SUPALG_BUDGET if set, else 10^7.
u64 enumeration_budget();

struct EnumerateOptions {
  bool force = false;  // ignore the budget
  u64 budget = 0;      // 0: enumeration_budget()
};

// All points in lexicographic order of entries(); throws std::runtime_error
// when p^{#entries} exceeds the budget.
std::vector<VrPoint> enumerate_Vr(int m, int n, int r, u32 p, const EnumerateOptions& opt = {});
std::vector<VrPoint> enumerate_Vrfeta(int m, int n, int r, u32 p, const PPolynomial& f, u32 eta,
                                      const EnumerateOptions& opt = {});

struct ModuleCheck {
  bool ok = true;
  std::string failure;
  std::vector<SuperMatrix> action;  // action of each basis element of kM_{r;f,eta}
};
// u_i acts by alpha_i and v by beta; checks every structure constant.
ModuleCheck point_to_module(const VrPoint& pt, const PPolynomial& f, u32 eta);

// Left multiplication by u_0..u_{r-1}, v on kM_{r;f,eta} itself.
VrPoint regular_point(u32 p, int r, const PPolynomial& f, u32 eta);

// Least-degree monic inseparable f with f(alpha) = 0 and degree <= p^{max_t}.
std::optional<PPolynomial> annihilating_p_polynomial(const SuperMatrix& alpha, int max_t);

VrPoint frobenius_twist_point(const VrPoint& pt, int r);

struct CoveringRow {
  VrPoint point;
  std::optional<PPolynomial> f;
  bool in_Vrf = false;
};
struct CoveringReport {
  bool pass = true;
  bool twist_bijective = true;
  std::vector<CoveringRow> rows;
};
CoveringReport covering_check(int m, int n, int r, u32 p, int max_t, const EnumerateOptions& opt = {});

// Hopf endomorphisms of k[M_{r;s}] over F_p.
struct EndoParams {
  u32 mu = 0;
  std::vector<u32> a;  // theta -> sum a_i theta^{p^i}
  std::optional<u32> b;  // s >= 2: theta^{p^{r-1}}-coefficient of the image of sigma_{p^{s-1}}
  std::vector<Vec> gen_images;
  std::vector<u32> tuple() const;  // (mu, a_0, ..., a_{r-1}[, b])
};
struct EndoReport {
  std::vector<EndoParams> endos;
  std::vector<std::vector<u32>> expected;  // parameter set of the classification, sorted
  bool matches = false;
};
EndoReport enumerate_endos(u32 p, int r, int s);

}  // namespace supalg
