#include "common/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace gformal {

bool positive_definite(const QMatrix& m) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "positive_definite: non-square");
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    QMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
    if (sgn(determinant(minor)) <= 0) return false;
  }
  return true;
}

SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, const Rational& s) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + s * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct LocalKernel {
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> free;
};

// Kernel of one connected block, local column indices; exact RREF.
LocalKernel block_kernel_exact(const std::vector<const SparseVec*>& cols,
                               const std::unordered_map<std::uint32_t, std::size_t>& row_of) {
  QMatrix m(row_of.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, v] : *cols[j]) m(row_of.at(r), j) = v;
  auto e = rref(m);
  std::vector<bool> is_pivot(cols.size(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  LocalKernel k;
  for (std::size_t f = 0; f < cols.size(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols.size(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    k.basis.push_back(std::move(v));
    k.free.push_back(f);
  }
  return k;
}

// Same, via elimination mod p followed by rational reconstruction. Returns
// nullopt when an entry has no image mod p or reconstruction fails; the
// caller verifies the candidate exactly.
std::optional<LocalKernel> block_kernel_modular(
    const std::vector<const SparseVec*>& cols, const std::unordered_map<std::uint32_t, std::size_t>& row_of) {
  const std::size_t rows = row_of.size(), ncols = cols.size();
  std::vector<std::uint64_t> m(rows * ncols, 0);
  for (std::size_t j = 0; j < ncols; ++j)
    for (const auto& [r, v] : *cols[j]) {
      auto img = modp::image(v);
      if (!img) return std::nullopt;
      m[row_of.at(r) * ncols + j] = *img;
    }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p * ncols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != rank)
      for (std::size_t j = 0; j < ncols; ++j) std::swap(m[p * ncols + j], m[rank * ncols + j]);
    std::uint64_t* prow = &m[rank * ncols];
    std::uint64_t inv = modp::inverse(prow[c]);
    for (std::size_t j = c; j < ncols; ++j) prow[j] = modp::mul(prow[j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      std::uint64_t* row = &m[i * ncols];
      std::uint64_t f = row[c];
      if (f == 0) continue;
      std::uint64_t nf = modp::kPrime - f;
      for (std::size_t j = c; j < ncols; ++j)
        if (prow[j]) row[j] = modp::reduce(row[j] + nf * prow[j]);
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  LocalKernel k;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      std::uint64_t e = m[i * ncols + f];
      if (e == 0) continue;
      auto q = modp::reconstruct(modp::kPrime - e);
      if (!q) return std::nullopt;
      v[pivots[i]] = *q;
    }
    k.basis.push_back(std::move(v));
    k.free.push_back(f);
  }
  return k;
}

bool annihilates(const std::vector<const SparseVec*>& cols, const std::vector<Rational>& v) {
  std::unordered_map<std::uint32_t, Rational> acc;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (sgn(v[j]) == 0) continue;
    for (const auto& [r, x] : *cols[j]) acc[r] += x * v[j];
  }
  for (const auto& [r, x] : acc)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace

SparseKernel sparse_nullspace(const std::vector<SparseVec>& columns, std::size_t rows) {
  const std::size_t n = columns.size();
  UnionFind uf(n);
  std::vector<std::int64_t> first_col(rows, -1);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [r, v] : columns[j]) {
      require(r < rows, ErrorCode::Internal, "sparse_nullspace: row index out of range");
      if (first_col[r] < 0)
        first_col[r] = static_cast<std::int64_t>(j);
      else
        uf.unite(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(first_col[r]));
    }
  std::vector<std::vector<std::uint32_t>> blocks;
  {
    std::unordered_map<std::uint32_t, std::size_t> block_of;
    for (std::uint32_t j = 0; j < n; ++j) {
      auto root = uf.find(j);
      auto [it, inserted] = block_of.try_emplace(root, blocks.size());
      if (inserted) blocks.emplace_back();
      blocks[it->second].push_back(j);
    }
  }

  SparseKernel out;
  for (const auto& block : blocks) {
    std::vector<const SparseVec*> cols;
    std::unordered_map<std::uint32_t, std::size_t> row_of;
    std::vector<std::uint32_t> touched;
    for (auto j : block) {
      cols.push_back(&columns[j]);
      for (const auto& [r, v] : columns[j])
        if (row_of.emplace(r, 0).second) touched.push_back(r);
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t i = 0; i < touched.size(); ++i) row_of[touched[i]] = i;

    LocalKernel local;
    if (touched.empty()) {
      for (std::size_t j = 0; j < block.size(); ++j) {
        std::vector<Rational> v(block.size(), Rational(0));
        v[j] = 1;
        local.basis.push_back(std::move(v));
        local.free.push_back(j);
      }
    } else if (touched.size() * block.size() <= 256) {
      local = block_kernel_exact(cols, row_of);
    } else {
      auto candidate = block_kernel_modular(cols, row_of);
      bool ok = candidate.has_value();
      if (ok)
        for (const auto& v : candidate->basis)
          if (!annihilates(cols, v)) {
            ok = false;
            break;
          }
      local = ok ? std::move(*candidate) : block_kernel_exact(cols, row_of);
    }
    for (std::size_t t = 0; t < local.basis.size(); ++t) {
      const auto& v = local.basis[t];
      SparseVec sv;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(v[j]) != 0) sv.emplace_back(block[j], v[j]);
      std::sort(sv.begin(), sv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.basis.push_back(std::move(sv));
      out.free_columns.push_back(block[local.free[t]]);
    }
  }
  return out;
}

}  // namespace gformal
