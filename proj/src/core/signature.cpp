#include "core/signature.hpp"

#include <algorithm>

namespace gastar {

Signature::Signature(std::string name, SignatureKind kind,
                     std::vector<std::vector<Rational>> matrix)
    : name_(std::move(name)), kind_(kind), dim_(static_cast<int>(matrix.size())), m_(std::move(matrix)) {
  if (dim_ == 0 || dim_ > 30) throw math_error("signature dimension out of range");
  for (const auto& row : m_)
    if (static_cast<int>(row.size()) != dim_) throw math_error("contraction matrix is not square");
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (kind_ == SignatureKind::symmetric && m_[i][j] != m_[j][i])
        throw math_error("contraction matrix is not symmetric");
      if (kind_ == SignatureKind::antisymmetric && m_[i][j] != -m_[j][i])
        throw math_error("contraction matrix is not antisymmetric");
    }
  }
}

bool Signature::same_as(const Signature& o) const {
  return kind_ == o.kind_ && dim_ == o.dim_ && m_ == o.m_;
}

Rational rational_matrix_det(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = m[col][col].inverse();
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Rational f = m[r][col] * inv;
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

bool solve_exact(const std::vector<std::vector<Rational>>& columns,
                 const std::vector<Rational>& rhs, std::vector<Rational>& x) {
  const size_t rows = rhs.size();
  const size_t cols = columns.size();
  // augmented row-major [A | b]
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (size_t j = 0; j < cols; ++j) {
    if (columns[j].size() != rows) throw math_error("solve_exact: ragged system");
    for (size_t i = 0; i < rows; ++i) a[i][j] = columns[j][i];
  }
  for (size_t i = 0; i < rows; ++i) a[i][cols] = rhs[i];

  std::vector<int> pivot_col_of_row(rows, -1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t p = row;
    while (p < rows && a[p][col].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[row]);
    Rational inv = a[row][col].inverse();
    for (size_t c = col; c <= cols; ++c) a[row][c] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (size_t c = col; c <= cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col_of_row[row] = static_cast<int>(col);
    ++row;
  }
  for (size_t r = row; r < rows; ++r)
    if (!a[r][cols].is_zero()) return false;

  x.assign(cols, Rational(0));
  for (size_t r = 0; r < row; ++r) x[static_cast<size_t>(pivot_col_of_row[r])] = a[r][cols];
  return true;
}

Rational Signature::determinant() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!det_ready_) {
    det_ = rational_matrix_det(m_);
    det_ready_ = true;
  }
  return det_;
}

const std::vector<std::vector<Rational>>& Signature::inverse() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!inv_ready_) {
    int n = dim_;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = m_[i][j];
      a[i][n + i] = Rational(1);
    }
    for (int col = 0; col < n; ++col) {
      int p = col;
      while (p < n && a[p][col].is_zero()) ++p;
      if (p == n) throw math_error("degenerate contraction matrix");
      std::swap(a[p], a[col]);
      Rational inv = a[col][col].inverse();
      for (int c = 0; c < 2 * n; ++c) a[col][c] *= inv;
      for (int r = 0; r < n; ++r) {
        if (r == col || a[r][col].is_zero()) continue;
        Rational f = a[r][col];
        for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    inv_.assign(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv_[i][j] = a[i][n + j];
    inv_ready_ = true;
  }
  return inv_;
}

const std::vector<std::pair<uint32_t, Rational>>& Signature::minors_for(uint32_t row_subset) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = minor_cache_.find(row_subset);
  if (it != minor_cache_.end()) return it->second;

  std::vector<int> rows;
  for (int b = 0; b < dim_; ++b)
    if (row_subset & (1u << b)) rows.push_back(b);
  const int k = static_cast<int>(rows.size());

  std::vector<std::pair<uint32_t, Rational>> out;
  if (k == 0) {
    out.emplace_back(0u, Rational(1));
  } else {
    // Depth-first matching over nonzero entries yields every column subset
    // whose minor can be nonzero; the exact determinant filters the rest.
    std::vector<uint32_t> candidates;
    std::vector<int> chosen(static_cast<size_t>(k), -1);
    uint32_t used = 0;
    auto emit = [&]() {
      uint32_t t = 0;
      for (int c : chosen) t |= 1u << c;
      candidates.push_back(t);
    };
    auto dfs = [&](auto&& self, int depth) -> void {
      if (depth == k) {
        emit();
        return;
      }
      for (int j = 0; j < dim_; ++j) {
        if (used & (1u << j)) continue;
        if (m_[rows[static_cast<size_t>(depth)]][j].is_zero()) continue;
        used |= 1u << j;
        chosen[static_cast<size_t>(depth)] = j;
        self(self, depth + 1);
        used &= ~(1u << j);
      }
    };
    dfs(dfs, 0);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (uint32_t t : candidates) {
      std::vector<int> cols;
      for (int b = 0; b < dim_; ++b)
        if (t & (1u << b)) cols.push_back(b);
      std::vector<std::vector<Rational>> sub(static_cast<size_t>(k),
                                             std::vector<Rational>(static_cast<size_t>(k)));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          sub[static_cast<size_t>(a)][static_cast<size_t>(b)] =
              m_[rows[static_cast<size_t>(a)]][cols[static_cast<size_t>(b)]];
      Rational det = rational_matrix_det(std::move(sub));
      if (!det.is_zero()) out.emplace_back(t, det);
    }
  }
  return minor_cache_.emplace(row_subset, std::move(out)).first->second;
}

SignaturePtr euclidean_signature(int dim) {
  std::vector<std::vector<Rational>> m(static_cast<size_t>(dim),
                                       std::vector<Rational>(static_cast<size_t>(dim)));
  for (int i = 0; i < dim; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rational(1);
  return std::make_shared<Signature>("euclid" + std::to_string(dim), SignatureKind::symmetric,
                                     std::move(m));
}

SignaturePtr minkowski_signature(int dim, bool timelike_minus) {
  std::vector<std::vector<Rational>> m(static_cast<size_t>(dim),
                                       std::vector<Rational>(static_cast<size_t>(dim)));
  for (int i = 0; i < dim; ++i) {
    bool time = i == 0;
    int v = (time == timelike_minus) ? -1 : 1;
    m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rational(v);
  }
  return std::make_shared<Signature>(
      std::string("minkowski") + std::to_string(dim) + (timelike_minus ? "-nonstd" : "-std"),
      SignatureKind::symmetric, std::move(m));
}

SignaturePtr symplectic_signature(int dof) {
  int dim = 2 * dof;
  std::vector<std::vector<Rational>> m(static_cast<size_t>(dim),
                                       std::vector<Rational>(static_cast<size_t>(dim)));
  for (int k = 0; k < dof; ++k) {
    m[static_cast<size_t>(k)][static_cast<size_t>(dof + k)] = Rational(1);
    m[static_cast<size_t>(dof + k)][static_cast<size_t>(k)] = Rational(-1);
  }
  return std::make_shared<Signature>("symplectic" + std::to_string(dim),
                                     SignatureKind::antisymmetric, std::move(m));
}

SignaturePtr signature_from_matrix(const std::string& name, SignatureKind kind,
                                   std::vector<std::vector<Rational>> matrix) {
  return std::make_shared<Signature>(name, kind, std::move(matrix));
}

}  // namespace gastar
