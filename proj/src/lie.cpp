#include "chevlab/lie.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace chevlab {
namespace {

// n x n matrices over a field, stored as row-major entry codes.
std::vector<int> fmatMul(const Field& F, int n, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int aik = a[std::size_t(i) * n + k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j)
        r[std::size_t(i) * n + j] =
            F.add(r[std::size_t(i) * n + j], F.mul(aik, b[std::size_t(k) * n + j]));
    }
  return r;
}

std::vector<int> fmatSub(const Field& F, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

std::vector<int> fmatScale(const Field& F, int c, const std::vector<int>& a) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
  return r;
}

// F_p digit expansion of every entry, low digit first.
std::vector<int> digitVec(const Field& F, const std::vector<int>& m) {
  std::vector<int> d;
  d.reserve(m.size() * F.f());
  for (int code : m)
    for (int s = 0; s < F.f(); ++s) d.push_back(F.digit(code, s));
  return d;
}

// Kernel over the entry field of the linear map whose value on the e-th unit
// matrix is cols[e]; plain Gaussian elimination on field codes.
std::vector<std::vector<int>> fieldKernel(const Field& F, const std::vector<std::vector<int>>& cols) {
  int nc = int(cols.size());
  int nr = nc == 0 ? 0 : int(cols[0].size());
  std::vector<std::vector<int>> rows(nr, std::vector<int>(nc, 0));
  for (int c = 0; c < nc; ++c)
    for (int r = 0; r < nr; ++r) rows[r][c] = cols[c][r];
  std::vector<int> pivots;
  int rank = 0;
  for (int c = 0; c < nc && rank < nr; ++c) {
    int pr = -1;
    for (int r = rank; r < nr; ++r)
      if (rows[r][c] != 0) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(rows[rank], rows[pr]);
    int iv = F.inv(rows[rank][c]);
    for (int j = 0; j < nc; ++j) rows[rank][j] = F.mul(iv, rows[rank][j]);
    for (int r = 0; r < nr; ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      int fscale = rows[r][c];
      for (int j = 0; j < nc; ++j)
        rows[r][j] = F.sub(rows[r][j], F.mul(fscale, rows[rank][j]));
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<bool> isPivot(nc, false);
  for (int c : pivots) isPivot[c] = true;
  std::vector<std::vector<int>> kernel;
  for (int c = 0; c < nc; ++c) {
    if (isPivot[c]) continue;
    std::vector<int> v(nc, 0);
    v[c] = 1;
    for (int r = 0; r < rank; ++r)
      if (rows[r][c] != 0) v[pivots[r]] = F.neg(rows[r][c]);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::vector<int> unitMat(int n, int i, int j) {
  std::vector<int> m(std::size_t(n) * n, 0);
  m[std::size_t(i) * n + j] = 1;
  return m;
}

}  // namespace

std::string lieFamilyName(LieFamily f) {
  switch (f) {
    case LieFamily::sl: return "sl";
    case LieFamily::gl: return "gl";
    case LieFamily::pgl: return "pgl";
    case LieFamily::sp: return "sp";
    case LieFamily::su3: return "su3";
  }
  return "?";
}

LieFamily derivedFamilyOf(Family groupFam) {
  switch (groupFam) {
    case Family::SL: return LieFamily::sl;
    case Family::GL: return LieFamily::sl;
    case Family::PGL: return LieFamily::pgl;
    case Family::Sp: return LieFamily::sp;
    case Family::SU: return LieFamily::su3;
  }
  return LieFamily::sl;
}

LieFamily ambientFamilyOf(Family groupFam) {
  switch (groupFam) {
    case Family::SL: return LieFamily::sl;
    case Family::GL: return LieFamily::gl;
    case Family::PGL: return LieFamily::pgl;
    case Family::Sp: return LieFamily::sp;
    case Family::SU: return LieFamily::su3;
  }
  return LieFamily::sl;
}

LieAlgebra LieAlgebra::build(LieFamily fam, int n, FieldPtr entryField) {
  LieAlgebra L;
  L.fam_ = fam;
  L.n_ = n;
  L.F_ = entryField;
  const Field& F = *entryField;
  L.coeffF_ = F.f();

  switch (fam) {
    case LieFamily::sl: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) L.basis_.push_back(unitMat(n, i, j));
      for (int i = 0; i + 1 < n; ++i) {
        auto h = unitMat(n, i, i);
        h[std::size_t(i + 1) * n + (i + 1)] = F.neg(1);
        L.basis_.push_back(std::move(h));
      }
      break;
    }
    case LieFamily::gl: {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) L.basis_.push_back(unitMat(n, i, j));
      break;
    }
    case LieFamily::pgl: {
      // A complement of the scalar line in gl_n; coordinates are taken
      // modulo scalars through the extra columns of the expansion matrix.
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) L.basis_.push_back(unitMat(n, i, j));
      for (int i = 0; i + 1 < n; ++i) L.basis_.push_back(unitMat(n, i, i));
      break;
    }
    case LieFamily::sp: {
      if (n != 4)
        throw UnsupportedFamilyError("sp is only built for n = 4");
      // J = [[0, I], [-I, 0]]; constraint X^T J + J X = 0.
      std::vector<int> J(16, 0);
      J[0 * 4 + 2] = 1;
      J[1 * 4 + 3] = 1;
      J[2 * 4 + 0] = F.neg(1);
      J[3 * 4 + 1] = F.neg(1);
      std::vector<std::vector<int>> cols;
      for (int e = 0; e < 16; ++e) {
        auto X = unitMat(4, e / 4, e % 4);
        std::vector<int> Xt(16);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) Xt[std::size_t(i) * 4 + j] = X[std::size_t(j) * 4 + i];
        auto lhs = fmatMul(F, 4, Xt, J);
        auto rhs = fmatMul(F, 4, J, X);
        for (int i = 0; i < 16; ++i) lhs[i] = F.add(lhs[i], rhs[i]);
        cols.push_back(std::move(lhs));
      }
      for (auto& v : fieldKernel(F, cols)) L.basis_.push_back(std::move(v));
      if (int(L.basis_.size()) != 10)
        throw InconsistencyError("sp4 constraint kernel has unexpected dimension");
      break;
    }
    case LieFamily::su3: {
      if (n != 3 || F.p() != 2 || F.f() != 2)
        throw UnsupportedFamilyError("su3 is only built over the field with 4 elements");
      L.coeffF_ = 1;  // the fixed field of the conjugation, F_2
      // J = antidiagonal ones; constraints sigma(X)^T J + J X = 0 and
      // tr X = 0, linear over F_2 on the 18 entry digits.
      std::vector<int> J(9, 0);
      J[0 * 3 + 2] = J[1 * 3 + 1] = J[2 * 3 + 0] = 1;
      FpMat sys(2, 20, 18);
      for (int e = 0; e < 9; ++e)
        for (int d = 0; d < 2; ++d) {
          std::vector<int> X(9, 0);
          X[e] = d == 0 ? 1 : F.theta();
          std::vector<int> Xst(9);  // sigma(X)^T
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Xst[std::size_t(i) * 3 + j] = F.frob(X[std::size_t(j) * 3 + i]);
          auto lhs = fmatMul(F, 3, Xst, J);
          auto rhs = fmatMul(F, 3, J, X);
          for (int i = 0; i < 9; ++i) lhs[i] = F.add(lhs[i], rhs[i]);
          int col = e * 2 + d;
          for (int i = 0; i < 9; ++i) {
            sys.at(2 * i, col) = F.digit(lhs[i], 0);
            sys.at(2 * i + 1, col) = F.digit(lhs[i], 1);
          }
          int tr = F.add(F.add(X[0], X[4]), X[8]);
          sys.at(18, col) = F.digit(tr, 0);
          sys.at(19, col) = F.digit(tr, 1);
        }
      for (auto& v : kernelBasis(sys)) {
        std::vector<int> m(9, 0);
        for (int e = 0; e < 9; ++e) m[e] = v[2 * e] + 2 * v[2 * e + 1];
        L.basis_.push_back(std::move(m));
      }
      if (int(L.basis_.size()) != 8)
        throw InconsistencyError("su3 constraint kernel has unexpected dimension");
      break;
    }
  }
  L.dimF_ = int(L.basis_.size());
  L.finish();
  return L;
}

std::vector<int> LieAlgebra::fpBasisMat(int idx) const {
  const Field& F = *F_;
  int j = idx / coeffF_;
  int s = idx % coeffF_;
  if (s == 0) return basis_[j];
  return fmatScale(F, F.powi(F.theta(), s), basis_[j]);
}

void LieAlgebra::finish() {
  const Field& F = *F_;
  int fe = F.f();
  int rows = n_ * n_ * fe;
  int scalarCols = fam_ == LieFamily::pgl ? fe : 0;
  expand_ = FpMat(F.p(), rows, dimFp() + scalarCols);
  for (int idx = 0; idx < dimFp(); ++idx) {
    auto d = digitVec(F, fpBasisMat(idx));
    for (int r = 0; r < rows; ++r) expand_.at(r, idx) = d[r];
  }
  for (int s = 0; s < scalarCols; ++s) {
    std::vector<int> scal(std::size_t(n_) * n_, 0);
    int c = s == 0 ? 1 : F.powi(F.theta(), s);
    for (int i = 0; i < n_; ++i) scal[std::size_t(i) * n_ + i] = c;
    auto d = digitVec(F, scal);
    for (int r = 0; r < rows; ++r) expand_.at(r, dimFp() + s) = d[r];
  }

  int N = dimFp();
  structure_.assign(N, std::vector<std::vector<int>>(N));
  std::vector<std::vector<int>> fpMats(N);
  for (int i = 0; i < N; ++i) fpMats[i] = fpBasisMat(i);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (j < i) {
        // Antisymmetry: [B_j, B_i] already computed.
        std::vector<int> neg(structure_[j][i]);
        for (int& x : neg) x = x == 0 ? 0 : F.p() - x;
        structure_[i][j] = std::move(neg);
        continue;
      }
      auto br = fmatSub(F, fmatMul(F, n_, fpMats[i], fpMats[j]), fmatMul(F, n_, fpMats[j], fpMats[i]));
      structure_[i][j] = coordsOf(br);
    }
}

std::vector<int> LieAlgebra::coordsOf(const std::vector<int>& mat) const {
  auto d = digitVec(*F_, mat);
  auto x = solve(expand_, d);
  if (!x) throw NotStableError("matrix lies outside the algebra " + lieFamilyName(fam_));
  x->resize(dimFp());
  return *x;
}

std::vector<int> LieAlgebra::matOf(const std::vector<int>& coords) const {
  const Field& F = *F_;
  std::vector<int> m(std::size_t(n_) * n_, 0);
  for (int idx = 0; idx < dimFp(); ++idx) {
    int c = coords[idx];
    if (c == 0) continue;
    auto b = fpBasisMat(idx);
    for (std::size_t e = 0; e < m.size(); ++e) m[e] = F.add(m[e], F.mul(c, b[e]));
  }
  return m;
}

std::vector<int> LieAlgebra::bracket(const std::vector<int>& a, const std::vector<int>& b) const {
  int p = F_->p();
  int N = dimFp();
  std::vector<int> r(N, 0);
  for (int i = 0; i < N; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < N; ++j) {
      if (b[j] == 0) continue;
      int c = (a[i] * b[j]) % p;
      const auto& row = structure_[i][j];
      for (int k = 0; k < N; ++k) r[k] = (r[k] + c * row[k]) % p;
    }
  }
  return r;
}

const std::vector<int>& LieAlgebra::structureRow(int i, int j) const { return structure_[i][j]; }

CenterReport LieAlgebra::center() const {
  int N = dimFp();
  int p = F_->p();
  RowReducer red(p, N);
  std::vector<int> row(N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      for (int i = 0; i < N; ++i) row[i] = structure_[i][j][k];
      red.addRow(row);
    }
  CenterReport rep;
  rep.dimZFp = N - red.rank();
  if (rep.dimZFp % coeffF_ != 0)
    throw InconsistencyError("algebra center is not a coefficient-field subspace");
  rep.dimZ = rep.dimZFp / coeffF_;
  bool pDividesN = n_ % p == 0;
  switch (fam_) {
    case LieFamily::sl:
      rep.kerScDimFp = 0;
      rep.kerAdDimFp = pDividesN ? coeffF_ : 0;
      rep.lieClass = "Lie-simply-connected";
      break;
    case LieFamily::gl:
      rep.kerScDimFp = 0;
      rep.kerAdDimFp = coeffF_;
      rep.lieClass = "Lie-simply-connected";
      break;
    case LieFamily::pgl:
      rep.kerScDimFp = pDividesN ? coeffF_ : 0;
      rep.kerAdDimFp = 0;
      rep.lieClass = pDividesN ? "Lie-adjoint" : "Lie-simply-connected";
      break;
    case LieFamily::sp:
      rep.kerScDimFp = 0;
      rep.kerAdDimFp = p == 2 ? coeffF_ : 0;
      rep.lieClass = "Lie-simply-connected";
      break;
    case LieFamily::su3:
      rep.kerScDimFp = 0;
      rep.kerAdDimFp = 0;
      rep.lieClass = "Lie-simply-connected";
      break;
  }
  return rep;
}

FpSpan LieAlgebra::derivedSpan() const {
  int N = dimFp();
  FpSpan span(F_->p(), N);
  for (int i = 0; i < N && span.rank() < N; ++i)
    for (int j = i + 1; j < N && span.rank() < N; ++j) span.add(structure_[i][j]);
  return span;
}

bool LieAlgebra::isPerfectAlgebra() const { return derivedSpan().rank() == dimFp(); }

GModule adjointModule(const Subgroup& h, const LieAlgebra& L) {
  const Group& G = *h.parent;
  if (G.ring().kind() != RingKind::Field)
    throw UnsupportedFamilyError("conjugation modules need a group over a field");
  const Field& gf = *G.ring().fieldPtr();
  if (gf.p() != L.entryField().p() || gf.f() != L.entryField().f())
    throw UnsupportedFamilyError("group field does not match the algebra entry field");
  int N = L.dimFp();
  GModule m;
  m.p = L.p();
  m.dim = N;
  m.gens = h.gens;
  for (std::uint32_t gi : h.gens) {
    Mat g = G.elem(gi);
    Mat ginv = G.matInv(g);
    FpMat A(m.p, N, N);
    for (int idx = 0; idx < N; ++idx) {
      auto bm = L.fpBasisMat(idx);
      Mat b;
      b.a.assign(bm.begin(), bm.end());
      Mat c = G.matMul(G.matMul(g, b), ginv);
      std::vector<int> cm(c.a.begin(), c.a.end());
      auto coords = L.coordsOf(cm);
      for (int r = 0; r < N; ++r) A.at(r, idx) = coords[r];
    }
    m.act.push_back(std::move(A));
  }
  return m;
}

GModule trivialModule(const Subgroup& h, int p, int dim) {
  GModule m;
  m.p = p;
  m.dim = dim;
  m.gens = h.gens;
  m.act.assign(h.gens.size(), FpMat::identity(p, dim));
  return m;
}

GModule dualModule(const GModule& m) {
  GModule d;
  d.p = m.p;
  d.dim = m.dim;
  d.gens = m.gens;
  for (const auto& A : m.act) {
    auto inv = inverseOf(A);
    if (!inv) throw InconsistencyError("module action matrix is singular");
    d.act.push_back(inv->transpose());
  }
  return d;
}

FpSpan spinVector(const GModule& m, const std::vector<int>& v) {
  FpSpan span(m.p, m.dim);
  std::deque<std::vector<int>> work;
  if (span.add(v)) work.push_back(v);
  while (!work.empty()) {
    auto w = std::move(work.front());
    work.pop_front();
    for (const auto& A : m.act) {
      auto u = A.apply(w);
      if (span.add(u)) work.push_back(std::move(u));
    }
  }
  return span;
}

int fixedDim(const GModule& m) {
  RowReducer red(m.p, m.dim);
  std::vector<int> row(m.dim);
  for (const auto& A : m.act)
    for (int i = 0; i < m.dim; ++i) {
      for (int j = 0; j < m.dim; ++j) {
        int x = A.at(i, j) - (i == j ? 1 : 0);
        row[j] = ((x % m.p) + m.p) % m.p;
      }
      red.addRow(row);
    }
  return m.dim - red.rank();
}

int homDim(const GModule& a, const GModule& b) {
  if (a.p != b.p || a.act.size() != b.act.size())
    throw InconsistencyError("module homomorphisms need matching groups");
  int p = a.p;
  int unknowns = a.dim * b.dim;  // entries T[r][c], index r * a.dim + c
  if (unknowns == 0) return 0;
  RowReducer red(p, unknowns);
  std::vector<int> row(unknowns);
  for (std::size_t g = 0; g < a.act.size(); ++g) {
    const FpMat& A = a.act[g];
    const FpMat& B = b.act[g];
    // (B T - T A)[i][j] = 0
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < a.dim; ++j) {
        std::fill(row.begin(), row.end(), 0);
        for (int k = 0; k < b.dim; ++k) row[k * a.dim + j] = (row[k * a.dim + j] + B.at(i, k)) % p;
        for (int k = 0; k < a.dim; ++k)
          row[i * a.dim + k] = ((row[i * a.dim + k] - A.at(k, j)) % p + p) % p;
        red.addRow(row);
      }
  }
  return unknowns - red.rank();
}

GModule moduleOnSpan(const GModule& m, const FpSpan& sub) {
  int r = sub.rank();
  FpMat basisCols(m.p, m.dim, r);
  for (int c = 0; c < r; ++c)
    for (int i = 0; i < m.dim; ++i) basisCols.at(i, c) = sub.basis()[c][i];
  GModule res;
  res.p = m.p;
  res.dim = r;
  res.gens = m.gens;
  for (const auto& A : m.act) {
    FpMat Ar(m.p, r, r);
    for (int c = 0; c < r; ++c) {
      auto img = A.apply(sub.basis()[c]);
      auto coords = solve(basisCols, img);
      if (!coords) throw NotStableError("subspace is not stable under the action");
      for (int i = 0; i < r; ++i) Ar.at(i, c) = (*coords)[i];
    }
    res.act.push_back(std::move(Ar));
  }
  return res;
}

QuotientModule quotientModule(const GModule& m, const FpSpan& sub) {
  std::vector<bool> isPivot(m.dim, false);
  for (int pcol : sub.pivots()) isPivot[pcol] = true;
  std::vector<int> freePos;
  for (int i = 0; i < m.dim; ++i)
    if (!isPivot[i]) freePos.push_back(i);
  int dq = int(freePos.size());

  QuotientModule q;
  q.proj = FpMat(m.p, dq, m.dim);
  q.lift = FpMat(m.p, m.dim, dq);
  std::vector<int> unit(m.dim, 0);
  for (int c = 0; c < m.dim; ++c) {
    unit[c] = 1;
    auto red = sub.reduce(unit);
    for (int r = 0; r < dq; ++r) q.proj.at(r, c) = red[freePos[r]];
    unit[c] = 0;
  }
  for (int j = 0; j < dq; ++j) q.lift.at(freePos[j], j) = 1;

  q.mod.p = m.p;
  q.mod.dim = dq;
  q.mod.gens = m.gens;
  for (const auto& A : m.act) q.mod.act.push_back(q.proj.mul(A).mul(q.lift));
  return q;
}

namespace {

// All cyclic submodules, one spin per scalar-normalised nonzero vector.
std::vector<FpSpan> cyclicSubmodules(const GModule& m, const Budget& budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < m.dim; ++i) {
    total *= std::uint64_t(m.p);
    if (total > budget.maxSpinVectors)
      throw BudgetExceededError("submodule spin would enumerate " + std::to_string(m.dim) +
                                " dimensions over F_" + std::to_string(m.p));
  }
  std::map<std::string, FpSpan> found;
  std::vector<int> v(m.dim, 0);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    int firstNonzero = -1;
    for (int i = 0; i < m.dim; ++i) {
      v[i] = int(c % m.p);
      c /= m.p;
      if (firstNonzero < 0 && v[i] != 0) firstNonzero = i;
    }
    if (v[firstNonzero] != 1) continue;  // scalar multiples spin identically
    auto span = spinVector(m, v);
    found.emplace(span.key(), span);
  }
  std::vector<FpSpan> out;
  out.reserve(found.size());
  for (auto& kv : found) out.push_back(std::move(kv.second));
  return out;
}

FpSpan joinSpans(const FpSpan& a, const FpSpan& b) {
  FpSpan r = a;
  for (const auto& row : b.basis()) r.add(row);
  return r;
}

FpSpan spanIntersection(const FpSpan& a, const FpSpan& b, int p, int dim) {
  // x in both spans: x = sum alpha_i a_i = sum beta_j b_j.
  int ra = a.rank(), rb = b.rank();
  FpSpan out(p, dim);
  if (ra == 0 || rb == 0) return out;
  FpMat m(p, dim, ra + rb);
  for (int c = 0; c < ra; ++c)
    for (int i = 0; i < dim; ++i) m.at(i, c) = a.basis()[c][i];
  for (int c = 0; c < rb; ++c)
    for (int i = 0; i < dim; ++i) m.at(i, ra + c) = (p - b.basis()[c][i]) % p;
  for (const auto& k : kernelBasis(m)) {
    std::vector<int> x(dim, 0);
    for (int c = 0; c < ra; ++c)
      for (int i = 0; i < dim; ++i) x[i] = (x[i] + k[c] * a.basis()[c][i]) % p;
    out.add(x);
  }
  return out;
}

constexpr int kMaxLatticeSize = 4096;

}  // namespace

std::vector<FpSpan> allSubmodules(const GModule& m, const Budget& budget) {
  std::map<std::string, FpSpan> lattice;
  FpSpan zero(m.p, m.dim);
  lattice.emplace(zero.key(), zero);
  for (auto& s : cyclicSubmodules(m, budget)) lattice.emplace(s.key(), s);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<const FpSpan*> cur;
    cur.reserve(lattice.size());
    for (auto& kv : lattice) cur.push_back(&kv.second);
    int sz = int(cur.size());
    for (int i = 0; i < sz; ++i)
      for (int j = i + 1; j < sz; ++j) {
        auto join = joinSpans(*cur[i], *cur[j]);
        if (lattice.emplace(join.key(), join).second) grew = true;
        if (int(lattice.size()) > kMaxLatticeSize)
          throw BudgetExceededError("submodule lattice exceeds " + std::to_string(kMaxLatticeSize) +
                                    " members");
      }
  }
  std::vector<FpSpan> out;
  for (auto& kv : lattice) out.push_back(std::move(kv.second));
  std::sort(out.begin(), out.end(), [](const FpSpan& x, const FpSpan& y) {
    if (x.rank() != y.rank()) return x.rank() < y.rank();
    return x.key() < y.key();
  });
  return out;
}

std::vector<GModule> compositionFactors(const GModule& m, const Budget& budget) {
  std::vector<GModule> factors;
  GModule cur = m;
  while (cur.dim > 0) {
    auto cyclics = cyclicSubmodules(cur, budget);
    // The smallest cyclic submodule is minimal: anything properly inside it
    // would contain a smaller cyclic one.
    const FpSpan* best = nullptr;
    for (const auto& s : cyclics)
      if (!best || s.rank() < best->rank() || (s.rank() == best->rank() && s.key() < best->key()))
        best = &s;
    if (!best) throw InconsistencyError("nonzero module has no cyclic submodule");
    factors.push_back(moduleOnSpan(cur, *best));
    cur = quotientModule(cur, *best).mod;
  }
  return factors;
}

bool actionTrivialOn(const GModule& m, const FpSpan& sub) {
  for (const auto& A : m.act)
    for (const auto& v : sub.basis())
      if (A.apply(v) != v) return false;
  return true;
}

ModuleAnalysis analyzeModule(const GModule& m, const Budget& budget) {
  ModuleAnalysis res;
  res.dim = m.dim;
  res.socle = FpSpan(m.p, m.dim);
  res.radical = FpSpan(m.p, m.dim);
  res.submodules = allSubmodules(m, budget);
  for (const auto& s : res.submodules) res.latticeDims.push_back(s.rank());
  res.irreducible = m.dim > 0 && res.submodules.size() == 2;

  FpMat id = FpMat::identity(m.p, m.dim);
  for (const auto& A : m.act)
    if (!(A == id)) { res.nontrivialAction = true; break; }

  // Socle: join of the minimal nonzero submodules.
  for (const auto& s : res.submodules) {
    if (s.rank() == 0) continue;
    bool minimal = true;
    for (const auto& t : res.submodules) {
      if (t.rank() == 0 || t.rank() >= s.rank()) continue;
      if (s.containsSpan(t)) { minimal = false; break; }
    }
    if (minimal) res.socle = joinSpans(res.socle, s);
  }
  res.socleDim = res.socle.rank();

  // Radical: intersection of the maximal proper submodules.
  if (m.dim > 0) {
    bool first = true;
    for (const auto& s : res.submodules) {
      if (s.rank() == m.dim) continue;
      bool maximal = true;
      for (const auto& t : res.submodules) {
        if (t.rank() == m.dim || t.rank() <= s.rank()) continue;
        if (t.containsSpan(s)) { maximal = false; break; }
      }
      if (!maximal) continue;
      if (first) {
        res.radical = s;
        first = false;
      } else {
        res.radical = spanIntersection(res.radical, s, m.p, m.dim);
      }
    }
  }
  res.radicalDim = res.radical.rank();
  res.cosocleDim = m.dim - res.radicalDim;

  res.cosocleIrreducible = res.cosocleDim > 0;
  for (const auto& s : res.submodules) {
    if (s.rank() <= res.radicalDim || s.rank() == m.dim) continue;
    if (s.containsSpan(res.radical)) { res.cosocleIrreducible = false; break; }
  }

  Subgroup dummy;
  dummy.gens = m.gens;
  GModule triv = trivialModule(dummy, m.p, 1);
  res.homToTrivialDim = homDim(m, triv);
  res.fixedPointDim = fixedDim(m);
  res.endDimFp = homDim(m, m);
  for (const auto& f : compositionFactors(m, budget)) res.jhDims.push_back(f.dim);
  return res;
}

CtReport checkCenterTriviality(const Subgroup& hF, const LieAlgebra& ambient) {
  CtReport rep;
  GModule m = adjointModule(hF, ambient);
  rep.h0DimFp = fixedDim(m);
  int p = ambient.p();
  int n = ambient.n();
  int f = ambient.coeffDegree();
  switch (ambient.family()) {
    case LieFamily::sl:
      rep.centerSmooth = n % p != 0;
      rep.expectedDimFp = n % p == 0 ? f : 0;
      break;
    case LieFamily::gl:
      rep.centerSmooth = true;
      rep.expectedDimFp = f;
      break;
    case LieFamily::pgl:
      rep.centerSmooth = true;
      rep.expectedDimFp = 0;
      break;
    case LieFamily::sp:
      rep.centerSmooth = p != 2;
      rep.expectedDimFp = p == 2 ? f : 0;
      break;
    case LieFamily::su3:
      rep.centerSmooth = true;  // mu_3 is etale in characteristic 2
      rep.expectedDimFp = 0;
      break;
  }
  rep.holds = rep.centerSmooth && rep.h0DimFp == rep.expectedDimFp;
  return rep;
}

}  // namespace chevlab
