#include "chevlab/linalg.hpp"

#include <algorithm>
#include <string>

namespace chevlab {

namespace {

int invMod(int a, int p) { return int(powMod(std::uint64_t(a % p), std::uint64_t(p - 2), std::uint64_t(p))); }

}  // namespace

FpMat FpMat::identity(int p, int n) {
  FpMat m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::mul(const FpMat& other) const {
  FpMat r(p, rows, other.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      int v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < other.cols; ++j)
        r.at(i, j) = (r.at(i, j) + v * other.at(k, j)) % p;
    }
  return r;
}

std::vector<int> FpMat::apply(const std::vector<int>& v) const {
  std::vector<int> r(rows, 0);
  for (int i = 0; i < rows; ++i) {
    int acc = 0;
    for (int j = 0; j < cols; ++j) acc += at(i, j) * v[j];
    r[i] = ((acc % p) + p) % p;
  }
  return r;
}

FpMat FpMat::transpose() const {
  FpMat r(p, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

std::vector<int> rrefInPlace(FpMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    int iv = invMod(m.at(r, c), m.p);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = (m.at(r, j) * iv) % m.p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      int f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = ((m.at(i, j) - f * m.at(r, j)) % m.p + m.p) % m.p;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rankOf(FpMat m) { return int(rrefInPlace(m).size()); }

std::vector<std::vector<int>> kernelBasis(const FpMat& m) {
  FpMat r = m;
  std::vector<int> pivots = rrefInPlace(r);
  std::vector<bool> isPivot(m.cols, false);
  for (int c : pivots) isPivot[c] = true;
  std::vector<std::vector<int>> out;
  for (int c = 0; c < m.cols; ++c) {
    if (isPivot[c]) continue;
    std::vector<int> v(m.cols, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = (m.p - r.at(int(i), c)) % m.p;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<FpMat> inverseOf(const FpMat& m) {
  if (m.rows != m.cols) return std::nullopt;
  FpMat aug(m.p, m.rows, 2 * m.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols + i) = 1;
  }
  std::vector<int> pivots = rrefInPlace(aug);
  bool ok = int(pivots.size()) >= m.cols;
  for (int i = 0; i < m.cols && ok; ++i) ok = (pivots[i] == i);
  if (!ok) return std::nullopt;
  FpMat inv(m.p, m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) inv.at(i, j) = aug.at(i, m.cols + j);
  return inv;
}

std::optional<std::vector<int>> solve(const FpMat& m, const std::vector<int>& b) {
  FpMat aug(m.p, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = ((b[i] % m.p) + m.p) % m.p;
  }
  std::vector<int> pivots = rrefInPlace(aug);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] == m.cols) return std::nullopt;
  std::vector<int> x(m.cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(int(i), m.cols);
  return x;
}

bool FpSpan::add(const std::vector<int>& v) {
  std::vector<int> w = reduce(v);
  int lead = -1;
  for (int i = 0; i < dim_; ++i)
    if (w[i]) {
      lead = i;
      break;
    }
  if (lead < 0) return false;
  int iv = invMod(w[lead], p_);
  for (int& x : w) x = (x * iv) % p_;
  // Back-reduce existing rows to keep the basis in RREF.
  for (auto& row : rows_) {
    int f = row[lead];
    if (!f) continue;
    for (int i = 0; i < dim_; ++i) row[i] = ((row[i] - f * w[i]) % p_ + p_) % p_;
  }
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(w));
  pivots_.insert(pivots_.begin() + pos, lead);
  return true;
}

std::vector<int> FpSpan::reduce(const std::vector<int>& v) const {
  std::vector<int> w(dim_);
  for (int i = 0; i < dim_; ++i) w[i] = ((v[i] % p_) + p_) % p_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    int f = w[pivots_[r]];
    if (!f) continue;
    const auto& row = rows_[r];
    for (int i = 0; i < dim_; ++i) w[i] = ((w[i] - f * row[i]) % p_ + p_) % p_;
  }
  return w;
}

bool FpSpan::contains(const std::vector<int>& v) const {
  std::vector<int> w = reduce(v);
  for (int x : w)
    if (x) return false;
  return true;
}

bool FpSpan::containsSpan(const FpSpan& other) const {
  for (const auto& row : other.rows_)
    if (!contains(row)) return false;
  return true;
}

std::string FpSpan::key() const {
  std::string s;
  s.reserve(rows_.size() * dim_ + 8);
  for (const auto& row : rows_)
    for (int x : row) s.push_back(char('0' + x));
  return s;
}

RowReducer::RowReducer(int p, int cols, int rhsLen)
    : p_(p),
      cols_(cols),
      rhsLen_(rhsLen),
      words_((cols + rhsLen + 63) / 64),
      pivotRowOfCol_(cols, -1) {}

bool RowReducer::rowIsZeroCoeffs(const Row& r) const { return firstCoeffCol(r) < 0; }

bool RowReducer::rowIsZeroRhs(const Row& r) const {
  if (p_ == 2) {
    for (int b = cols_; b < cols_ + rhsLen_; ++b)
      if ((r.bits[b >> 6] >> (b & 63)) & 1) return false;
    return true;
  }
  for (int b = cols_; b < cols_ + rhsLen_; ++b)
    if (r.vals[b]) return false;
  return true;
}

int RowReducer::firstCoeffCol(const Row& r) const {
  if (p_ == 2) {
    for (int w = 0; w * 64 < cols_; ++w) {
      std::uint64_t v = r.bits[w];
      if ((w + 1) * 64 > cols_) {
        int keep = cols_ - w * 64;
        v &= (keep == 64) ? ~0ull : ((std::uint64_t(1) << keep) - 1);
      }
      if (v) return w * 64 + __builtin_ctzll(v);
    }
    return -1;
  }
  for (int c = 0; c < cols_; ++c)
    if (r.vals[c]) return c;
  return -1;
}

void RowReducer::normalise(Row& r, int pivot) {
  if (p_ == 2) return;
  int iv = invMod(r.vals[pivot], p_);
  if (iv == 1) return;
  for (int& x : r.vals) x = (x * iv) % p_;
}

void RowReducer::eliminate(Row& target, const Row& pivotRow, int pivotCol) {
  if (p_ == 2) {
    for (int w = 0; w < words_; ++w) target.bits[w] ^= pivotRow.bits[w];
    return;
  }
  int f = target.vals[pivotCol];
  if (!f) return;
  const int total = cols_ + rhsLen_;
  for (int i = 0; i < total; ++i) {
    int pv = pivotRow.vals[i];
    if (pv) target.vals[i] = ((target.vals[i] - f * pv) % p_ + p_) % p_;
  }
}

bool RowReducer::addRow(const std::vector<int>& coeffs, const std::vector<int>& rhs) {
  Row row;
  if (p_ == 2) {
    row.bits.assign(words_, 0);
    for (int c = 0; c < cols_; ++c)
      if (coeffs[c] & 1) row.bits[c >> 6] |= std::uint64_t(1) << (c & 63);
    for (int r = 0; r < rhsLen_ && r < int(rhs.size()); ++r)
      if (rhs[r] & 1) {
        int b = cols_ + r;
        row.bits[b >> 6] |= std::uint64_t(1) << (b & 63);
      }
  } else {
    row.vals.assign(cols_ + rhsLen_, 0);
    for (int c = 0; c < cols_; ++c) row.vals[c] = ((coeffs[c] % p_) + p_) % p_;
    for (int r = 0; r < rhsLen_ && r < int(rhs.size()); ++r)
      row.vals[cols_ + r] = ((rhs[r] % p_) + p_) % p_;
  }
  for (;;) {
    int lead = firstCoeffCol(row);
    if (lead < 0) {
      if (!rowIsZeroRhs(row)) {
        ++inconsistentRows_;
        return false;
      }
      return true;
    }
    int pr = pivotRowOfCol_[lead];
    if (pr < 0) {
      normalise(row, lead);
      pivotRowOfCol_[lead] = int(rows_.size());
      pivotColOfRow_.push_back(lead);
      rows_.push_back(std::move(row));
      ++rank_;
      return true;
    }
    eliminate(row, rows_[pr], lead);
  }
}

std::optional<std::vector<std::vector<int>>> RowReducer::solution() const {
  if (inconsistentRows_ != 0) return std::nullopt;
  std::vector<std::vector<int>> out(rhsLen_, std::vector<int>(cols_, 0));
  // Back substitution: handle pivot rows by decreasing pivot column so every
  // later column is already resolved (pivot value) or free (zero).
  std::vector<int> idx(rows_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return pivotColOfRow_[a] > pivotColOfRow_[b]; });
  for (int i : idx) {
    const Row& row = rows_[i];
    int pc = pivotColOfRow_[i];
    for (int r = 0; r < rhsLen_; ++r) {
      int v;
      if (p_ == 2) {
        int b = cols_ + r;
        v = int((row.bits[b >> 6] >> (b & 63)) & 1);
        for (int c = pc + 1; c < cols_; ++c)
          if (((row.bits[c >> 6] >> (c & 63)) & 1) && out[r][c]) v ^= 1;
      } else {
        v = row.vals[cols_ + r];
        for (int c = pc + 1; c < cols_; ++c)
          if (row.vals[c] && out[r][c])
            v = ((v - row.vals[c] * out[r][c]) % p_ + p_) % p_;
      }
      out[r][pc] = v;
    }
  }
  return out;
}

}  // namespace chevlab
