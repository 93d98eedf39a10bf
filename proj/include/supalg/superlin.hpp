#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "supalg/field.hpp"

namespace supalg {

using Parity = std::uint8_t;

struct SuperSpace {
  std::vector<Parity> par;

  static SuperSpace even_odd(std::size_t m, std::size_t n);
  std::size_t size() const { return par.size(); }
  std::size_t even_count() const;
  std::size_t odd_count() const { return size() - even_count(); }
  bool operator==(const SuperSpace& o) const { return par == o.par; }
};

// Koszul sign of v (x) w -> w (x) v.
inline int supertwist_sign(Parity a, Parity b) { return (a & b) ? -1 : 1; }

struct TwistedIndex {
  std::size_t index;  // index in W (x) V
  int sign;
};

// Basis vector i (x) j of V (x) W goes to sign * (j (x) i) in W (x) V.
TwistedIndex supertwist(const SuperSpace& V, const SuperSpace& W, std::size_t i, std::size_t j);

// Dense homogeneous map between superspaces; entry (row, col) of the matrix
// sending basis column col of dom into cod.
class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(SuperSpace dom, SuperSpace cod, Parity parity, u32 p);

  static SuperMatrix identity(const SuperSpace& V, u32 p);
  static SuperMatrix zero(const SuperSpace& dom, const SuperSpace& cod, Parity parity, u32 p);

  const SuperSpace& dom() const { return dom_; }
  const SuperSpace& cod() const { return cod_; }
  Parity parity() const { return parity_; }
  u32 p() const { return p_; }
  std::size_t rows() const { return cod_.size(); }
  std::size_t cols() const { return dom_.size(); }

  u32 at(std::size_t i, std::size_t j) const { return a_[i * cols() + j]; }
  // Throws if (i, j) is not allowed by the parity of the map and v != 0.
  void set(std::size_t i, std::size_t j, u32 v);

  bool respects_parity() const;
  bool is_zero() const;

  SuperMatrix operator*(const SuperMatrix& o) const;  // composition this o o
  SuperMatrix operator+(const SuperMatrix& o) const;
  SuperMatrix operator-(const SuperMatrix& o) const;
  SuperMatrix scaled(u32 c) const;
  SuperMatrix pow(u64 e) const;  // square maps only
  SuperMatrix entrywise_pow(u64 e) const;
  bool operator==(const SuperMatrix& o) const;
  bool operator!=(const SuperMatrix& o) const { return !(*this == o); }

  const std::vector<u32>& data() const { return a_; }
  std::string to_string() const;

 private:
  SuperSpace dom_, cod_;
  Parity parity_ = 0;
  u32 p_ = 3;
  std::vector<u32> a_;
};

// (f (x) g)(v (x) v') = (-1)^{|v| |g|} f(v) (x) g(v').
SuperMatrix tensor_map(const SuperMatrix& f, const SuperMatrix& g);

struct BlockParts {
  SuperMatrix upper_left, lower_right, upper_right, lower_left;  // each re-embedded
};

// (diagonal part, antidiagonal part) of a square map on k^{m|n}.
std::pair<SuperMatrix, SuperMatrix> block_decompose(const SuperMatrix& M);
BlockParts block_parts(const SuperMatrix& M);

template <class Key>
using SparseRow = std::vector<std::pair<Key, u32>>;

// row <- row + c * other, both sorted by key.
template <class Key>
SparseRow<Key> axpy(const SparseRow<Key>& row, u32 c, const SparseRow<Key>& other, const Fp& F) {
  SparseRow<Key> out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || other[j].first < row[i].first) {
      u32 v = F.mul(c, other[j].second);
      if (v) out.emplace_back(other[j].first, v);
      ++j;
    } else {
      u32 v = F.add(row[i].second, F.mul(c, other[j].second));
      if (v) out.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// Incremental row echelon form over F_p. Rows are inserted in call order and
// each stored row pivots on its lowest key.
template <class Key>
class SparseEchelon {
 public:
  using Row = SparseRow<Key>;

  explicit SparseEchelon(u32 p) : F_(p) {}

  Row reduce(Row r) const {
    std::size_t idx = 0;
    while (idx < r.size()) {
      auto it = pivot_.find(r[idx].first);
      if (it == pivot_.end()) {
        ++idx;
        continue;
      }
      r = axpy(r, F_.neg(r[idx].second), rows_[it->second], F_);
    }
    return r;
  }

  // Returns true when r was independent of the stored rows.
  bool insert(Row r) {
    r = reduce(std::move(r));
    if (r.empty()) return false;
    u32 inv = F_.inv(r.front().second);
    for (auto& e : r) e.second = F_.mul(e.second, inv);
    pivot_.emplace(r.front().first, rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  bool in_span(const Row& r) const { return reduce(r).empty(); }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  const Fp& field() const { return F_; }

 private:
  Fp F_;
  std::vector<Row> rows_;
  std::unordered_map<Key, std::size_t> pivot_;
};

// Normalize a row given as unsorted (key, value) pairs: sort, merge duplicates,
// drop zeros.
template <class Key>
SparseRow<Key> normalize_row(SparseRow<Key> r, const Fp& F) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow<Key> out;
  for (auto& e : r) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second = F.add(out.back().second, e.second);
    else
      out.push_back(e);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }), out.end());
  return out;
}

class FpSparseMatrix {
 public:
  FpSparseMatrix(std::size_t rows, std::size_t cols, u32 p);

  void add(std::size_t i, std::size_t j, u32 v);  // accumulates
  u32 get(std::size_t i, std::size_t j) const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u32 p() const { return p_; }
  const std::vector<SparseRow<u32>>& row_data() const { return data_; }

  std::vector<u32> apply(const std::vector<u32>& x) const;
  std::vector<std::vector<u32>> dense() const;
  std::size_t nonzeros() const;

 private:
  std::size_t rows_, cols_;
  u32 p_;
  std::vector<SparseRow<u32>> data_;  // kept sorted
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<std::vector<u32>> kernel;  // basis of {x : M x = 0}, dense
};

RankKernel rank_kernel(const FpSparseMatrix& M);

// Dense inverse of a square matrix (row-major); throws if singular.
std::vector<std::vector<u32>> dense_inverse(std::vector<std::vector<u32>> A, const Fp& F);

// Some x with sum_k x_k cols[k] = target, or nullopt. Keys must stay below 2^62.
std::optional<std::vector<u32>> solve_combination(const std::vector<SparseRow<u64>>& cols,
                                                  const SparseRow<u64>& target, u32 p);

}  // namespace supalg
