#include "supalg/superlin.hpp"

#include <map>
#include <sstream>

namespace supalg {

SuperSpace SuperSpace::even_odd(std::size_t m, std::size_t n) {
  SuperSpace V;
  V.par.assign(m, 0);
  V.par.insert(V.par.end(), n, 1);
  return V;
}

std::size_t SuperSpace::even_count() const {
  std::size_t c = 0;
  for (Parity q : par) c += (q == 0);
  return c;
}

TwistedIndex supertwist(const SuperSpace& V, const SuperSpace& W, std::size_t i, std::size_t j) {
  return {j * V.size() + i, supertwist_sign(V.par.at(i), W.par.at(j))};
}

SuperMatrix::SuperMatrix(SuperSpace dom, SuperSpace cod, Parity parity, u32 p)
    : dom_(std::move(dom)), cod_(std::move(cod)), parity_(parity & 1), p_(p) {
  Fp check(p);
  (void)check;
  a_.assign(dom_.size() * cod_.size(), 0);
}

SuperMatrix SuperMatrix::identity(const SuperSpace& V, u32 p) {
  SuperMatrix I(V, V, 0, p);
  for (std::size_t i = 0; i < V.size(); ++i) I.a_[i * V.size() + i] = 1;
  return I;
}

SuperMatrix SuperMatrix::zero(const SuperSpace& dom, const SuperSpace& cod, Parity parity, u32 p) {
  return SuperMatrix(dom, cod, parity, p);
}

void SuperMatrix::set(std::size_t i, std::size_t j, u32 v) {
  v %= p_;
  if (v != 0 && ((cod_.par.at(i) ^ dom_.par.at(j)) != parity_))
    throw std::invalid_argument("SuperMatrix::set: entry violates parity of the map");
  a_.at(i * cols() + j) = v;
}

bool SuperMatrix::respects_parity() const {
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (at(i, j) && ((cod_.par[i] ^ dom_.par[j]) != parity_)) return false;
  return true;
}

bool SuperMatrix::is_zero() const {
  for (u32 v : a_)
    if (v) return false;
  return true;
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
  if (!(dom_ == o.cod_) || p_ != o.p_) throw std::invalid_argument("SuperMatrix: shape or modulus mismatch in composition");
  SuperMatrix out(o.dom_, cod_, parity_ ^ o.parity_, p_);
  const std::size_t n = cols(), c = o.cols();
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      u32 a = at(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < c; ++j) {
        u32 b = o.at(k, j);
        if (b) out.a_[i * c + j] = static_cast<u32>((out.a_[i * c + j] + (u64)a * b) % p_);
      }
    }
  return out;
}

SuperMatrix SuperMatrix::operator+(const SuperMatrix& o) const {
  if (!(dom_ == o.dom_) || !(cod_ == o.cod_) || p_ != o.p_) throw std::invalid_argument("SuperMatrix: shape mismatch in sum");
  SuperMatrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = (a_[i] + o.a_[i]) % p_;
  if (parity_ != o.parity_ && !o.is_zero() && !is_zero()) throw std::invalid_argument("SuperMatrix: parity mismatch in sum");
  if (is_zero()) out.parity_ = o.parity_;
  return out;
}

SuperMatrix SuperMatrix::operator-(const SuperMatrix& o) const { return *this + o.scaled(p_ - 1); }

SuperMatrix SuperMatrix::scaled(u32 c) const {
  SuperMatrix out = *this;
  for (auto& v : out.a_) v = static_cast<u32>((u64)v * c % p_);
  return out;
}

SuperMatrix SuperMatrix::pow(u64 e) const {
  if (!(dom_ == cod_)) throw std::invalid_argument("SuperMatrix::pow: not square");
  SuperMatrix r = identity(dom_, p_), b = *this;
  if (e == 0) return r;
  bool first = true;
  while (e) {
    if (e & 1) {
      r = first ? b : r * b;
      first = false;
    }
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

SuperMatrix SuperMatrix::entrywise_pow(u64 e) const {
  SuperMatrix out = *this;
  Fp F(p_);
  for (auto& v : out.a_) v = F.pow(v, e);
  return out;
}

bool SuperMatrix::operator==(const SuperMatrix& o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && p_ == o.p_ && a_ == o.a_;
}

std::string SuperMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols(); ++j) os << (j ? " " : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

SuperMatrix tensor_map(const SuperMatrix& f, const SuperMatrix& g) {
  if (f.p() != g.p()) throw std::invalid_argument("tensor_map: mixed moduli");
  SuperSpace dom, cod;
  for (Parity a : f.dom().par)
    for (Parity b : g.dom().par) dom.par.push_back(a ^ b);
  for (Parity a : f.cod().par)
    for (Parity b : g.cod().par) cod.par.push_back(a ^ b);
  SuperMatrix out(dom, cod, f.parity() ^ g.parity(), f.p());
  Fp F(f.p());
  const std::size_t gr = g.rows(), gc = g.cols();
  for (std::size_t a = 0; a < f.rows(); ++a)
    for (std::size_t b = 0; b < f.cols(); ++b) {
      u32 fv = f.at(a, b);
      if (!fv) continue;
      bool neg = (f.dom().par[b] & g.parity()) != 0;
      for (std::size_t a2 = 0; a2 < gr; ++a2)
        for (std::size_t b2 = 0; b2 < gc; ++b2) {
          u32 gv = g.at(a2, b2);
          if (!gv) continue;
          u32 v = F.mul(fv, gv);
          out.set(a * gr + a2, b * gc + b2, neg ? F.neg(v) : v);
        }
    }
  return out;
}

BlockParts block_parts(const SuperMatrix& M) {
  if (!(M.dom() == M.cod())) throw std::invalid_argument("block_parts: map is not square");
  const SuperSpace& V = M.dom();
  BlockParts out{SuperMatrix(V, V, 0, M.p()), SuperMatrix(V, V, 0, M.p()), SuperMatrix(V, V, 1, M.p()),
                 SuperMatrix(V, V, 1, M.p())};
  for (std::size_t i = 0; i < V.size(); ++i)
    for (std::size_t j = 0; j < V.size(); ++j) {
      u32 v = M.at(i, j);
      if (!v) continue;
      Parity a = V.par[i], b = V.par[j];
      if (a == 0 && b == 0) out.upper_left.set(i, j, v);
      else if (a == 1 && b == 1) out.lower_right.set(i, j, v);
      else if (a == 0) out.upper_right.set(i, j, v);
      else out.lower_left.set(i, j, v);
    }
  return out;
}

std::pair<SuperMatrix, SuperMatrix> block_decompose(const SuperMatrix& M) {
  BlockParts b = block_parts(M);
  return {b.upper_left + b.lower_right, b.upper_right + b.lower_left};
}

FpSparseMatrix::FpSparseMatrix(std::size_t rows, std::size_t cols, u32 p)
    : rows_(rows), cols_(cols), p_(p), data_(rows) {
  Fp check(p);
  (void)check;
}

void FpSparseMatrix::add(std::size_t i, std::size_t j, u32 v) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("FpSparseMatrix::add");
  v %= p_;
  if (!v) return;
  auto& row = data_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == j) {
    it->second = (it->second + v) % p_;
    if (!it->second) row.erase(it);
  } else {
    row.insert(it, {static_cast<u32>(j), v});
  }
}

u32 FpSparseMatrix::get(std::size_t i, std::size_t j) const {
  const auto& row = data_.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t k) { return e.first < k; });
  return (it != row.end() && it->first == j) ? it->second : 0;
}

std::vector<u32> FpSparseMatrix::apply(const std::vector<u32>& x) const {
  std::vector<u32> y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    u64 acc = 0;
    for (auto& [j, v] : data_[i]) acc = (acc + (u64)v * x.at(j)) % p_;
    y[i] = static_cast<u32>(acc);
  }
  return y;
}

std::vector<std::vector<u32>> FpSparseMatrix::dense() const {
  std::vector<std::vector<u32>> D(rows_, std::vector<u32>(cols_, 0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (auto& [j, v] : data_[i]) D[i][j] = v;
  return D;
}

std::size_t FpSparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (auto& r : data_) n += r.size();
  return n;
}

RankKernel rank_kernel(const FpSparseMatrix& M) {
  Fp F(M.p());
  SparseEchelon<u32> E(M.p());
  for (const auto& row : M.row_data()) E.insert(row);

  // Back-substitute to reduced echelon form, highest pivot first.
  std::vector<SparseRow<u32>> rows = E.rows();
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.front().first < b.front().first; });
  std::unordered_map<u32, std::size_t> pivot_of;
  for (std::size_t k = 0; k < rows.size(); ++k) pivot_of[rows[k].front().first] = k;
  for (std::size_t k = rows.size(); k-- > 0;) {
    std::size_t idx = 1;
    while (idx < rows[k].size()) {
      auto it = pivot_of.find(rows[k][idx].first);
      if (it == pivot_of.end()) {
        ++idx;
        continue;
      }
      rows[k] = axpy(rows[k], F.neg(rows[k][idx].second), rows[it->second], F);
    }
  }

  RankKernel out;
  out.rank = rows.size();
  std::unordered_map<u32, std::size_t> slot;
  for (u32 free = 0; free < M.cols(); ++free) {
    if (pivot_of.count(free)) continue;
    slot[free] = out.kernel.size();
    out.kernel.emplace_back(M.cols(), 0);
    out.kernel.back()[free] = 1;
  }
  for (const auto& row : rows)
    for (std::size_t k = 1; k < row.size(); ++k)
      out.kernel[slot.at(row[k].first)][row.front().first] = F.neg(row[k].second);
  return out;
}

std::vector<std::vector<u32>> dense_inverse(std::vector<std::vector<u32>> A, const Fp& F) {
  const std::size_t n = A.size();
  std::vector<std::vector<u32>> I(n, std::vector<u32>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error("dense_inverse: singular matrix");
    std::swap(A[piv], A[c]);
    std::swap(I[piv], I[c]);
    u32 inv = F.inv(A[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      A[c][j] = F.mul(A[c][j], inv);
      I[c][j] = F.mul(I[c][j], inv);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || A[i][c] == 0) continue;
      u32 f = A[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        A[i][j] = F.sub(A[i][j], F.mul(f, A[c][j]));
        I[i][j] = F.sub(I[i][j], F.mul(f, I[c][j]));
      }
    }
  }
  return I;
}

std::optional<std::vector<u32>> solve_combination(const std::vector<SparseRow<u64>>& cols,
                                                  const SparseRow<u64>& target, u32 p) {
  // Each column carries a tag key above the data keys; once the data part of
  // the target is eliminated, the tags record the combination used.
  constexpr u64 kTag = u64(1) << 62;
  Fp F(p);
  SparseEchelon<u64> E(p);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    SparseRow<u64> row = cols[k];
    row.emplace_back(kTag + k, 1);
    E.insert(std::move(row));
  }
  SparseRow<u64> r = E.reduce(target);
  std::vector<u32> x(cols.size(), 0);
  for (const auto& [key, c] : r) {
    if (key < kTag) return std::nullopt;
    x[key - kTag] = F.neg(c);
  }
  return x;
}

}  // namespace supalg
