/**
 * @file group.cpp
 * @brief Matrix group enumeration, subgroups, homomorphisms, and lifts.
 */
#include "chevlab/group.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "chevlab/field.hpp"

namespace chevlab {

namespace {

constexpr std::uint32_t kEmpty = 0xffffffffu;
// widest element representation of any supported ring
constexpr int kMaxLen = 32;
using Buf = std::array<Coord, kMaxLen>;

const Coord* ent(const Mat& m, int len, int n, int r, int c) {
  return m.a.data() + std::size_t(r * n + c) * len;
}
Coord* ent(Mat& m, int len, int n, int r, int c) {
  return m.a.data() + std::size_t(r * n + c) * len;
}

Mat zeroMat(const Ring& R, int n) {
  Mat m;
  m.a.assign(std::size_t(n) * n * R.len(), 0);
  return m;
}

Mat idMat(const Ring& R, int n) {
  Mat m = zeroMat(R, n);
  for (int i = 0; i < n; ++i) R.one(ent(m, R.len(), n, i, i));
  return m;
}

Mat mulMats(const Ring& R, int n, const Mat& x, const Mat& y) {
  const int len = R.len();
  Mat out = zeroMat(R, n);
  Buf t{}, acc{}, acc2{};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      R.zero(acc.data());
      for (int k = 0; k < n; ++k) {
        R.mul(ent(x, len, n, r, k), ent(y, len, n, k, c), t.data());
        R.add(acc.data(), t.data(), acc2.data());
        acc = acc2;
      }
      std::copy(acc.begin(), acc.begin() + len, ent(out, len, n, r, c));
    }
  }
  return out;
}

Mat addMats(const Ring& R, int n, const Mat& x, const Mat& y) {
  const int len = R.len();
  Mat out = zeroMat(R, n);
  for (int e = 0; e < n * n; ++e) {
    R.add(x.a.data() + std::size_t(e) * len, y.a.data() + std::size_t(e) * len,
          out.a.data() + std::size_t(e) * len);
  }
  return out;
}

std::optional<Mat> invMat(const Ring& R, int n, const Mat& x) {
  const int len = R.len();
  // Gauss-Jordan over a local ring: every pivot column of an invertible
  // matrix contains a unit below the diagonal.
  Mat w = x;
  Mat v = idMat(R, n);
  Buf piv{}, t{}, t2{};
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    for (int r = col; r < n; ++r) {
      if (R.isUnit(ent(w, len, n, r, col))) {
        pr = r;
        break;
      }
    }
    if (pr < 0) return std::nullopt;
    if (pr != col) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < len; ++d) {
          std::swap(ent(w, len, n, pr, c)[d], ent(w, len, n, col, c)[d]);
          std::swap(ent(v, len, n, pr, c)[d], ent(v, len, n, col, c)[d]);
        }
      }
    }
    R.inv(ent(w, len, n, col, col), piv.data());
    for (int c = 0; c < n; ++c) {
      R.mul(piv.data(), ent(w, len, n, col, c), t.data());
      std::copy(t.begin(), t.begin() + len, ent(w, len, n, col, c));
      R.mul(piv.data(), ent(v, len, n, col, c), t.data());
      std::copy(t.begin(), t.begin() + len, ent(v, len, n, col, c));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Buf factor{};
      std::copy(ent(w, len, n, r, col), ent(w, len, n, r, col) + len, factor.begin());
      if (R.isZero(factor.data())) continue;
      for (int c = 0; c < n; ++c) {
        R.mul(factor.data(), ent(w, len, n, col, c), t.data());
        R.sub(ent(w, len, n, r, c), t.data(), t2.data());
        std::copy(t2.begin(), t2.begin() + len, ent(w, len, n, r, c));
        R.mul(factor.data(), ent(v, len, n, col, c), t.data());
        R.sub(ent(v, len, n, r, c), t.data(), t2.data());
        std::copy(t2.begin(), t2.begin() + len, ent(v, len, n, r, c));
      }
    }
  }
  return v;
}

void detRec(const Ring& R, int n, const Mat& m, const std::vector<int>& rows,
            const std::vector<int>& cols, Coord* out) {
  const int len = R.len();
  if (rows.size() == 1) {
    const Coord* e = ent(m, len, n, rows[0], cols[0]);
    std::copy(e, e + len, out);
    return;
  }
  Buf acc{}, minor{}, term{}, acc2{};
  R.zero(acc.data());
  std::vector<int> subRows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<int> subCols;
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (t != j) subCols.push_back(cols[t]);
    }
    detRec(R, n, m, subRows, subCols, minor.data());
    R.mul(ent(m, len, n, rows[0], cols[j]), minor.data(), term.data());
    if (j % 2 == 0) {
      R.add(acc.data(), term.data(), acc2.data());
    } else {
      R.sub(acc.data(), term.data(), acc2.data());
    }
    acc = acc2;
  }
  std::copy(acc.begin(), acc.begin() + len, out);
}

std::uint64_t mulSat(std::uint64_t a, std::uint64_t b) {
  __uint128_t r = static_cast<__uint128_t>(a) * b;
  return r > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(r);
}

std::uint64_t powSat(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = mulSat(r, b);
  return r;
}

std::string keyOf(const Mat& m) {
  return std::string(reinterpret_cast<const char*>(m.a.data()), m.a.size() * sizeof(Coord));
}

}  // namespace

std::string familyName(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::GL: return "GL";
    case Family::PGL: return "PGL";
    case Family::Sp: return "Sp";
    case Family::SU: return "SU";
  }
  return "?";
}

std::optional<Family> familyFromName(const std::string& s) {
  if (s == "SL") return Family::SL;
  if (s == "GL") return Family::GL;
  if (s == "PGL") return Family::PGL;
  if (s == "Sp") return Family::Sp;
  if (s == "SU") return Family::SU;
  return std::nullopt;
}

std::string GroupSpec::name() const {
  std::ostringstream os;
  os << familyName(fam) << n << "(" << (R ? R->name() : "?") << ")";
  return os.str();
}

int GroupSpec::algDim() const {
  switch (fam) {
    case Family::SL:
    case Family::PGL: return n * n - 1;
    case Family::GL: return n * n;
    case Family::Sp: return 10;
    case Family::SU: return 8;
  }
  return 0;
}

std::uint64_t GroupSpec::predictedOrder() const {
  const Field& F = R->field();
  const std::uint64_t q = F.q();
  std::uint64_t base = 0;
  switch (fam) {
    case Family::SL:
    case Family::PGL:
    case Family::GL: {
      base = powSat(q, n * (n - 1) / 2);
      for (int i = 2; i <= n; ++i) base = mulSat(base, powSat(q, i) - 1);
      if (fam == Family::GL) base = mulSat(base, q - 1);
      break;
    }
    case Family::Sp: {
      base = mulSat(powSat(q, 4), mulSat(powSat(q, 2) - 1, powSat(q, 4) - 1));
      break;
    }
    case Family::SU: {
      // entry field is F_{q0^2}
      std::uint64_t q0 = 1;
      while (q0 * q0 < q) ++q0;
      base = mulSat(powSat(q0, 3), mulSat(q0 * q0 - 1, powSat(q0, 3) + 1));
      break;
    }
  }
  return mulSat(base, powSat(q, algDim() * (R->len() - 1)));
}

// --- Group ---

Mat Group::matIdentity() const { return idMat(ring(), n()); }
Mat Group::matMul(const Mat& x, const Mat& y) const { return mulMats(ring(), n(), x, y); }

Mat Group::matInv(const Mat& x) const {
  auto r = invMat(ring(), n(), x);
  if (!r) throw Error("matInv: matrix is not invertible over " + ring().name());
  return *r;
}

std::vector<Coord> Group::matDet(const Mat& x) const {
  std::vector<int> idx(n());
  for (int i = 0; i < n(); ++i) idx[i] = i;
  Buf out{};
  detRec(ring(), n(), x, idx, idx, out.data());
  return std::vector<Coord>(out.begin(), out.begin() + ring().len());
}

Mat Group::canon(Mat m) const {
  if (spec_.fam != Family::PGL) return m;
  const Ring& R = ring();
  const int len = R.len();
  Buf u{}, t{};
  for (int e = 0; e < n() * n(); ++e) {
    Coord* p = m.a.data() + std::size_t(e) * len;
    if (R.isUnit(p)) {
      R.inv(p, u.data());
      for (int e2 = 0; e2 < n() * n(); ++e2) {
        Coord* p2 = m.a.data() + std::size_t(e2) * len;
        R.mul(u.data(), p2, t.data());
        std::copy(t.begin(), t.begin() + len, p2);
      }
      return m;
    }
  }
  throw Error("canon: matrix over " + R.name() + " has no unit entry");
}

void Group::rehash(std::size_t want) {
  std::size_t cap = 16;
  while (cap < want * 2) cap <<= 1;
  table_.assign(cap, kEmpty);
  tableMask_ = cap - 1;
  for (std::uint32_t i = 0; i < elems_.size(); ++i) {
    const Mat& m = elems_[i];
    std::uint64_t h = fnv1a(reinterpret_cast<const std::uint8_t*>(m.a.data()),
                            m.a.size() * sizeof(Coord)) &
                      tableMask_;
    while (table_[h] != kEmpty) h = (h + 1) & tableMask_;
    table_[h] = i;
  }
}

std::uint32_t Group::insertUnique(Mat&& m, bool& isNew) {
  if ((elems_.size() + 1) * 10 > table_.size() * 6) rehash(elems_.size() + 1);
  std::uint64_t h = fnv1a(reinterpret_cast<const std::uint8_t*>(m.a.data()),
                          m.a.size() * sizeof(Coord)) &
                    tableMask_;
  while (table_[h] != kEmpty) {
    if (elems_[table_[h]] == m) {
      isNew = false;
      return table_[h];
    }
    h = (h + 1) & tableMask_;
  }
  if (elems_.size() >= maxElems_) {
    throw BudgetExceededError("group enumeration for " + spec_.name() +
                              " exceeds the element budget");
  }
  std::uint32_t idx = static_cast<std::uint32_t>(elems_.size());
  elems_.push_back(std::move(m));
  table_[h] = idx;
  isNew = true;
  return idx;
}

std::optional<std::uint32_t> Group::tryIndexOf(const Mat& m) const {
  std::uint64_t h = fnv1a(reinterpret_cast<const std::uint8_t*>(m.a.data()),
                          m.a.size() * sizeof(Coord)) &
                    tableMask_;
  while (table_[h] != kEmpty) {
    if (elems_[table_[h]] == m) return table_[h];
    h = (h + 1) & tableMask_;
  }
  return std::nullopt;
}

std::uint32_t Group::indexOf(const Mat& m) const {
  auto r = tryIndexOf(m);
  if (!r) throw InconsistencyError("indexOf: matrix is not in the enumerated group " + spec_.name());
  return *r;
}

GroupPtr Group::enumerate(const GroupSpec& spec, const Budget& budget) {
  if (!spec.R) throw Error("enumerate: missing ring");
  const Ring& R = *spec.R;
  if (spec.n < 2 || spec.n > 4) {
    throw UnsupportedFamilyError("enumerate: only degrees 2..4 are supported");
  }
  if (spec.fam == Family::Sp) {
    if (spec.n != 4 || R.kind() != RingKind::Field) {
      throw UnsupportedFamilyError("Sp is supported only as Sp4 over a finite field");
    }
  }
  if (spec.fam == Family::SU) {
    if (spec.n != 3 || R.kind() != RingKind::Field || R.field().q() != 4) {
      throw UnsupportedFamilyError("SU is supported only as SU3 with entries in F_4");
    }
  }
  const std::uint64_t predicted = spec.predictedOrder();
  if (predicted > budget.maxGroupElements) {
    std::ostringstream os;
    os << "enumerate: " << spec.name() << " has " << predicted
       << " elements, over the budget of " << budget.maxGroupElements;
    throw BudgetExceededError(os.str());
  }

  std::shared_ptr<Group> g(new Group());
  g->spec_ = spec;
  g->maxElems_ = budget.maxGroupElements;
  g->elems_.reserve(predicted);
  g->rehash(predicted);
  const int n = spec.n;
  bool isNew = false;

  if (spec.fam == Family::SU) {
    // full scan of M_3(F_4) for matrices with conj(g)^T J g = J and det 1,
    // where conjugation is the Frobenius x -> x^2 and J is the antidiagonal
    const Field& F = R.field();
    Mat J = zeroMat(R, n);
    for (int r = 0; r < n; ++r) J.a[std::size_t(r) * n + (n - 1 - r)] = 1;
    Mat one = idMat(R, n);
    g->insertUnique(std::move(one), isNew);
    g->idIdx_ = 0;
    for (std::uint64_t code = 0; code < 262144; ++code) {
      Mat m = zeroMat(R, n);
      std::uint64_t c = code;
      for (int e = 0; e < 9; ++e) {
        m.a[e] = static_cast<Coord>(c & 3);
        c >>= 2;
      }
      Mat s = zeroMat(R, n);
      for (int r = 0; r < n; ++r) {
        for (int cc = 0; cc < n; ++cc) {
          s.a[std::size_t(r) * n + cc] = static_cast<Coord>(F.frob(m.a[std::size_t(cc) * n + r]));
        }
      }
      if (!(mulMats(R, n, mulMats(R, n, s, J), m) == J)) continue;
      if (g->matDet(m) != std::vector<Coord>{1}) continue;
      g->insertUnique(std::move(m), isNew);
    }
  } else {
    std::set<std::string> seen;
    std::vector<Mat> genMats;
    auto pushGen = [&](Mat m) {
      m = g->canon(std::move(m));
      if (m == idMat(R, n)) return;
      if (seen.insert(keyOf(m)).second) genMats.push_back(std::move(m));
    };
    const int len = R.len();
    if (spec.fam == Family::Sp) {
      // symplectic transvections x -> x + lambda <x,v> v
      const Field& F = R.field();
      const int q = F.q();
      std::vector<int> J(n * n, 0);
      const int half = n / 2;
      for (int i = 0; i < half; ++i) {
        J[i * n + half + i] = 1;
        J[(half + i) * n + i] = F.neg(1);
      }
      std::vector<int> v(n), w(n);
      for (std::uint64_t vc = 1; vc < powSat(q, n); ++vc) {
        std::uint64_t t = vc;
        for (int i = 0; i < n; ++i) {
          v[i] = static_cast<int>(t % q);
          t /= q;
        }
        for (int r = 0; r < n; ++r) {
          int acc = 0;
          for (int c = 0; c < n; ++c) acc = F.add(acc, F.mul(J[r * n + c], v[c]));
          w[r] = acc;
        }
        for (int lam = 1; lam < q; ++lam) {
          Mat m = idMat(R, n);
          for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
              int val = F.mul(lam, F.mul(v[r], w[c]));
              m.a[std::size_t(r) * n + c] =
                  static_cast<Coord>(F.add(static_cast<int>(m.a[std::size_t(r) * n + c]), val));
            }
          }
          pushGen(std::move(m));
        }
      }
    } else {
      // elementary matrices I + b e_ij over additive generators of R
      for (const auto& b : R.additiveGenerators()) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Mat m = idMat(R, n);
            std::copy(b.begin(), b.end(), ent(m, len, n, i, j));
            pushGen(std::move(m));
          }
        }
      }
      if (spec.fam == Family::GL || spec.fam == Family::PGL) {
        std::vector<std::vector<Coord>> units;
        const Field& F = R.field();
        if (F.primitive() != 1) {
          std::vector<Coord> u(len);
          R.liftResidue(F.primitive(), u.data());
          units.push_back(u);
        }
        if (R.nildeg() > 1) {
          std::vector<Coord> one(len);
          R.one(one.data());
          for (const auto& b : R.fpIdealBasis(1)) {
            std::vector<Coord> u(len);
            R.add(one.data(), b.data(), u.data());
            units.push_back(u);
          }
        }
        for (const auto& u : units) {
          Mat m = idMat(R, n);
          std::copy(u.begin(), u.end(), ent(m, len, n, 0, 0));
          pushGen(std::move(m));
        }
      }
    }

    Mat one = idMat(R, n);
    g->insertUnique(std::move(one), isNew);
    g->idIdx_ = 0;
    for (const Mat& m : genMats) {
      Mat cp = m;
      g->gens_.push_back(g->insertUnique(std::move(cp), isNew));
    }
    for (std::size_t cur = 0; cur < g->elems_.size(); ++cur) {
      Mat base = g->elems_[cur];
      for (const Mat& gm : genMats) {
        Mat prod = g->canon(mulMats(R, n, base, gm));
        g->insertUnique(std::move(prod), isNew);
      }
    }
  }

  if (g->elems_.size() != predicted) {
    std::ostringstream os;
    os << "enumerate: " << spec.name() << " closed at " << g->elems_.size()
       << " elements but the order formula gives " << predicted;
    throw InconsistencyError(os.str());
  }
  g->invCache_.assign(g->elems_.size(), kEmpty);
  g->ordCache_.assign(g->elems_.size(), 0);
  if (spec.fam == Family::SU) g->gens_ = g->smallGens();
  return g;
}

std::uint32_t Group::mul(std::uint32_t a, std::uint32_t b) const {
  return indexOf(canon(mulMats(ring(), n(), elems_[a], elems_[b])));
}

std::uint32_t Group::inv(std::uint32_t a) const {
  if (invCache_[a] != kEmpty) return invCache_[a];
  std::uint32_t r = indexOf(canon(matInv(elems_[a])));
  invCache_[a] = r;
  invCache_[r] = a;
  return r;
}

std::uint32_t Group::conj(std::uint32_t g, std::uint32_t x) const {
  return mul(mul(g, x), inv(g));
}

int Group::elementOrder(std::uint32_t a) const {
  if (ordCache_[a] != 0) return ordCache_[a];
  int ord = 1;
  std::uint32_t x = a;
  while (x != idIdx_) {
    x = mul(x, a);
    ++ord;
  }
  ordCache_[a] = ord;
  return ord;
}

BfsTree Group::bfsTree(const std::vector<std::uint32_t>& gens, bool leftMult) const {
  BfsTree t;
  const std::size_t N = elems_.size();
  t.parent.assign(N, 0);
  t.genOf.assign(N, -1);
  t.depth.assign(N, 0);
  t.visited.assign(N, false);
  t.order.reserve(N);
  t.order.push_back(idIdx_);
  t.visited[idIdx_] = true;
  t.parent[idIdx_] = idIdx_;
  for (std::size_t cur = 0; cur < t.order.size(); ++cur) {
    std::uint32_t x = t.order[cur];
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      std::uint32_t y = leftMult ? mul(gens[gi], x) : mul(x, gens[gi]);
      if (!t.visited[y]) {
        t.visited[y] = true;
        t.parent[y] = x;
        t.genOf[y] = static_cast<int>(gi);
        t.depth[y] = t.depth[x] + 1;
        t.order.push_back(y);
      }
    }
  }
  return t;
}

std::vector<std::uint32_t> Group::bfsOrder(const std::vector<std::uint32_t>& gens) const {
  return bfsTree(gens).order;
}

const std::vector<std::uint32_t>& Group::smallGens() const {
  if (!smallGens_.empty() || order() == 1) return smallGens_;
  GroupPtr self = shared_from_this();
  std::vector<bool> span(order(), false);
  span[idIdx_] = true;
  std::uint64_t spanSize = 1;
  for (std::uint32_t e = 0; e < order() && spanSize < order(); ++e) {
    if (span[e]) continue;
    smallGens_.push_back(e);
    Subgroup s = closureOf(self, smallGens_);
    for (std::uint32_t x : s.elems) span[x] = true;
    spanSize = s.order();
  }
  return smallGens_;
}

// --- subgroup constructions ---

Subgroup fullSubgroup(GroupPtr g) {
  Subgroup s;
  s.parent = g;
  s.elems.resize(g->order());
  for (std::uint32_t i = 0; i < g->order(); ++i) s.elems[i] = i;
  s.gens = g->smallGens();
  s.member.assign(g->order(), true);
  return s;
}

Subgroup trivialSubgroup(GroupPtr g) {
  Subgroup s;
  s.parent = g;
  s.elems = {g->identity()};
  s.member.assign(g->order(), false);
  s.member[g->identity()] = true;
  return s;
}

Subgroup closureOf(GroupPtr g, const std::vector<std::uint32_t>& gens) {
  auto r = closureBounded(g, gens, g->order());
  return std::move(*r);
}

std::optional<Subgroup> closureBounded(GroupPtr g, const std::vector<std::uint32_t>& gens,
                                       std::uint64_t maxOrder) {
  Subgroup s;
  s.parent = g;
  s.member.assign(g->order(), false);
  std::vector<std::uint32_t> list = {g->identity()};
  s.member[g->identity()] = true;
  for (std::uint32_t x : gens) {
    if (!s.member[x]) {
      s.member[x] = true;
      list.push_back(x);
      s.gens.push_back(x);
    }
  }
  for (std::size_t cur = 0; cur < list.size(); ++cur) {
    for (std::uint32_t gen : s.gens) {
      std::uint32_t y = g->mul(list[cur], gen);
      if (!s.member[y]) {
        if (list.size() >= maxOrder) return std::nullopt;
        s.member[y] = true;
        list.push_back(y);
      }
    }
  }
  std::sort(list.begin(), list.end());
  s.elems = std::move(list);
  return s;
}

Subgroup subgroupFromElems(GroupPtr g, std::vector<std::uint32_t> elems) {
  Subgroup s;
  s.parent = g;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  s.elems = std::move(elems);
  s.member.assign(g->order(), false);
  for (std::uint32_t e : s.elems) s.member[e] = true;
  s.gens = reduceGenerators(g, s);
  return s;
}

std::vector<std::uint32_t> reduceGenerators(GroupPtr g, const Subgroup& h) {
  std::vector<std::uint32_t> out;
  std::vector<bool> span(g->order(), false);
  span[g->identity()] = true;
  std::uint64_t spanSize = 1;
  for (std::uint32_t e : h.elems) {
    if (span[e]) continue;
    out.push_back(e);
    Subgroup s = closureOf(g, out);
    for (std::uint32_t x : s.elems) span[x] = true;
    spanSize = s.order();
    if (spanSize == h.order()) break;
  }
  if (spanSize != h.order()) {
    throw InconsistencyError("reduceGenerators: element list is not closed");
  }
  return out;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<std::uint32_t> elems;
  for (std::uint32_t e : a.elems) {
    if (b.member[e]) elems.push_back(e);
  }
  return subgroupFromElems(a.parent, std::move(elems));
}

Subgroup commutatorSubgroup(const Subgroup& h) {
  GroupPtr g = h.parent;
  std::vector<std::uint32_t> cg;
  std::set<std::uint32_t> seen;
  for (std::uint32_t a : h.gens) {
    for (std::uint32_t b : h.gens) {
      std::uint32_t c = g->mul(g->mul(a, b), g->inv(g->mul(b, a)));
      if (c != g->identity() && seen.insert(c).second) cg.push_back(c);
    }
  }
  Subgroup C = closureOf(g, cg);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t x : h.gens) {
      for (std::size_t i = 0; i < cg.size(); ++i) {
        std::uint32_t y = g->conj(x, cg[i]);
        if (!C.member[y]) {
          cg.push_back(y);
          C = closureOf(g, cg);
          changed = true;
        }
      }
    }
  }
  return C;
}

bool isPerfect(const Subgroup& h) { return commutatorSubgroup(h).order() == h.order(); }

GroupHom reductionHom(GroupPtr g, int level, const Budget& budget) {
  const Ring& R = g->ring();
  RingPtr Rq = R.quotient(level);
  GroupSpec s2 = g->spec();
  s2.R = Rq;
  GroupPtr dst = Group::enumerate(s2, budget);
  const int n = g->n();
  const int len = R.len();
  const int qlen = Rq->len();
  GroupHom hom;
  hom.src = g;
  hom.dst = dst;
  hom.level = level;
  hom.map.resize(g->order());
  std::vector<std::uint32_t> kerElems;
  for (std::uint32_t i = 0; i < g->order(); ++i) {
    const Mat& m = g->elem(i);
    Mat qm;
    qm.a.resize(std::size_t(n) * n * qlen);
    for (int e = 0; e < n * n; ++e) {
      R.project(*Rq, m.a.data() + std::size_t(e) * len, qm.a.data() + std::size_t(e) * qlen);
    }
    hom.map[i] = dst->indexOf(dst->canon(std::move(qm)));
    if (hom.map[i] == dst->identity()) kerElems.push_back(i);
  }
  hom.kernel = subgroupFromElems(g, std::move(kerElems));
  return hom;
}

Subgroup imageOf(const GroupHom& hom, const Subgroup& h) {
  Subgroup s;
  s.parent = hom.dst;
  s.member.assign(hom.dst->order(), false);
  for (std::uint32_t e : h.elems) {
    std::uint32_t t = hom.map[e];
    if (!s.member[t]) {
      s.member[t] = true;
      s.elems.push_back(t);
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  std::set<std::uint32_t> gset;
  for (std::uint32_t e : h.gens) {
    std::uint32_t t = hom.map[e];
    if (t != hom.dst->identity()) gset.insert(t);
  }
  s.gens.assign(gset.begin(), gset.end());
  return s;
}

Subgroup preimageOf(const GroupHom& hom, const Subgroup& h) {
  Subgroup s;
  s.parent = hom.src;
  s.member.assign(hom.src->order(), false);
  std::map<std::uint32_t, std::uint32_t> lift;
  for (std::uint32_t i = 0; i < hom.src->order(); ++i) {
    std::uint32_t t = hom.map[i];
    if (!h.member[t]) continue;
    s.member[i] = true;
    s.elems.push_back(i);
    if (lift.find(t) == lift.end()) lift[t] = i;
  }
  s.gens = hom.kernel.gens;
  for (std::uint32_t q : h.gens) s.gens.push_back(lift.at(q));
  return s;
}

namespace {

// Coset arithmetic of H modulo a normal subgroup: labels elements of H by
// coset id and multiplies cosets through chosen representatives.
struct CosetQuotient {
  GroupPtr g;
  std::vector<std::uint32_t> labelOf;  // parent element -> coset id (kEmpty outside H)
  std::vector<std::uint32_t> reps;     // coset id -> representative element
  std::uint32_t idCoset = 0;

  CosetQuotient(GroupPtr parent, const Subgroup& h, const Subgroup& normal)
      : g(std::move(parent)), labelOf(g->order(), kEmpty) {
    for (std::uint32_t e : h.elems) {
      if (labelOf[e] != kEmpty) continue;
      auto id = static_cast<std::uint32_t>(reps.size());
      reps.push_back(e);
      for (std::uint32_t c : normal.elems) labelOf[g->mul(e, c)] = id;
    }
    idCoset = labelOf[g->identity()];
  }

  std::uint32_t size() const { return std::uint32_t(reps.size()); }
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    return labelOf[g->mul(reps[i], reps[j])];
  }
  int orderOf(std::uint32_t i) const {
    int ord = 1;
    std::uint32_t x = i;
    while (x != idCoset) {
      x = mul(x, i);
      ++ord;
    }
    return ord;
  }
  std::vector<bool> closureOfIds(const std::vector<std::uint32_t>& gensIds, std::uint32_t* count) const {
    std::vector<bool> in(size(), false);
    std::vector<std::uint32_t> queue;
    in[idCoset] = true;
    queue.push_back(idCoset);
    std::uint32_t n = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::uint32_t s : gensIds) {
        std::uint32_t t = mul(queue[head], s);
        if (!in[t]) {
          in[t] = true;
          queue.push_back(t);
          ++n;
        }
      }
    }
    if (count) *count = n;
    return in;
  }
  std::vector<std::uint32_t> smallGeneratorIds() const {
    std::vector<std::uint32_t> gensIds;
    std::uint32_t covered = 1;
    std::vector<bool> in(size(), false);
    in[idCoset] = true;
    for (std::uint32_t i = 0; i < size() && covered < size(); ++i) {
      if (in[i]) continue;
      gensIds.push_back(i);
      in = closureOfIds(gensIds, &covered);
    }
    return gensIds;
  }
};

}  // namespace

Subgroup hC(const GroupHom& toResidue, const Subgroup& h) {
  GroupPtr g = toResidue.src;
  if (imageOf(toResidue, h).order() != toResidue.dst->order()) {
    throw NotResiduallyFullError("hC: subgroup does not surject onto the residue points");
  }
  Subgroup C = commutatorSubgroup(h);
  CosetQuotient A(g, h, C);
  if (A.size() > 4096) {
    throw BudgetExceededError("hC: abelianization larger than 4096 cosets");
  }
  // Abelianization of the residue group, and the induced map onto it.
  GroupPtr dstG = toResidue.dst;
  Subgroup dstFull = fullSubgroup(dstG);
  Subgroup CF = commutatorSubgroup(dstFull);
  CosetQuotient AF(dstG, dstFull, CF);
  std::vector<std::uint32_t> pi(A.size());
  for (std::uint32_t i = 0; i < A.size(); ++i) pi[i] = AF.labelOf[toResidue.map[A.reps[i]]];

  // Smallest subgroup of A that maps isomorphically onto AF: kept cosets form
  // a transversal of the reduction kernel inside the abelianization.  When the
  // kernel meets A trivially the lift is all of A; otherwise search for one
  // matching generator orders, preferring small coset ids.
  std::vector<bool> keepSet;
  if (A.size() == AF.size()) {
    keepSet.assign(A.size(), true);
  } else {
    std::vector<std::uint32_t> targets = AF.smallGeneratorIds();
    std::vector<std::vector<std::uint32_t>> candidates(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
      int want = AF.orderOf(targets[t]);
      for (std::uint32_t i = 0; i < A.size(); ++i)
        if (pi[i] == targets[t] && A.orderOf(i) == want) candidates[t].push_back(i);
    }
    std::vector<std::uint32_t> chosen(targets.size(), 0);
    bool found = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
      if (found) return;
      if (depth == targets.size()) {
        std::uint32_t n = 0;
        std::vector<bool> in = A.closureOfIds(chosen, &n);
        if (n != AF.size()) return;
        for (std::uint32_t i = 0; i < A.size(); ++i)
          if (in[i] && i != A.idCoset && pi[i] == AF.idCoset) return;
        keepSet = std::move(in);
        found = true;
        return;
      }
      for (std::uint32_t c : candidates[depth]) {
        chosen[depth] = c;
        dfs(depth + 1);
        if (found) return;
      }
    };
    dfs(0);
    if (!found) {
      throw OrderNotCoprimeError(
          "hC: no subgroup of the abelianization lifts the residual abelianization "
          "isomorphically; the coprime-order hypothesis fails too badly");
    }
  }
  std::vector<std::uint32_t> elems;
  for (std::uint32_t e : h.elems) {
    if (keepSet[A.labelOf[e]]) elems.push_back(e);
  }
  Subgroup s;
  s.parent = g;
  s.elems = std::move(elems);
  s.member.assign(g->order(), false);
  for (std::uint32_t e : s.elems) s.member[e] = true;
  s.gens = C.gens;
  for (std::uint32_t i = 0; i < A.size(); ++i) {
    if (keepSet[i] && A.reps[i] != g->identity()) s.gens.push_back(A.reps[i]);
  }
  if (s.gens.size() > 24) s.gens = reduceGenerators(g, s);
  return s;
}

Subgroup hPerfection(const GroupHom& toResidue, const Subgroup& h) {
  Subgroup cur = h;
  while (true) {
    Subgroup next = hC(toResidue, cur);
    if (next.order() == cur.order()) return next;
    cur = std::move(next);
  }
}

Subgroup liftPrimeOrderSubgroup(const GroupHom& toResidue, const Subgroup& m,
                                const Budget& budget) {
  GroupPtr g = toResidue.src;
  GroupPtr dst = toResidue.dst;
  if (m.parent != dst) throw Error("liftPrimeOrderSubgroup: subgroup is not in the residue group");
  if (toResidue.level != 1) throw Error("liftPrimeOrderSubgroup: expected a residue-level hom");
  const Ring& R = g->ring();
  const int p = R.field().p();
  const int n = g->n();
  if (m.order() % p == 0) {
    throw OrderNotCoprimeError("liftPrimeOrderSubgroup: |M| is divisible by p = " +
                               std::to_string(p));
  }
  const int minv = [&] {
    int r = static_cast<int>(m.order() % p);
    for (int x = 1; x < p; ++x) {
      if (r * x % p == 1) return x;
    }
    return 1;
  }();

  std::vector<std::uint32_t> s(dst->order(), kEmpty);
  for (std::uint32_t i = 0; i < g->order(); ++i) {
    std::uint32_t t = toResidue.map[i];
    if (s[t] == kEmpty) s[t] = i;
  }
  s[dst->identity()] = g->identity();

  for (int level = 1; level < R.nildeg(); ++level) {
    const Subgroup* ker = nullptr;
    GroupHom homI;
    if (level == 1) {
      ker = &toResidue.kernel;
    } else {
      homI = reductionHom(g, level, budget);
      ker = &homI.kernel;
    }
    if (ker->order() == 1) continue;
    const int ld = layerDim(R, n, level);
    std::unordered_map<std::string, std::uint32_t> layerRep;
    for (std::uint32_t k : ker->elems) {
      std::vector<int> coords = layerCoords(R, n, g->elem(k), level);
      std::string key(coords.begin(), coords.end());
      layerRep.emplace(std::move(key), k);
    }
    layerRep[std::string(ld, '\0')] = g->identity();

    std::vector<std::uint32_t> corrected = s;
    for (std::uint32_t x : m.elems) {
      std::vector<int> sum(ld, 0);
      for (std::uint32_t k : m.elems) {
        std::uint32_t xk = dst->mul(x, k);
        std::uint32_t defect = g->mul(g->mul(s[x], s[k]), g->inv(s[xk]));
        if (!ker->member[defect]) {
          throw InconsistencyError("liftPrimeOrderSubgroup: lift defect left the congruence kernel");
        }
        std::vector<int> c = layerCoords(R, n, g->elem(defect), level);
        for (int t = 0; t < ld; ++t) sum[t] = (sum[t] + c[t]) % p;
      }
      std::string key(ld, '\0');
      for (int t = 0; t < ld; ++t) {
        key[t] = static_cast<char>((p - sum[t] * minv % p) % p);
      }
      auto it = layerRep.find(key);
      if (it == layerRep.end()) {
        throw InconsistencyError("liftPrimeOrderSubgroup: correction is outside the kernel layer");
      }
      corrected[x] = g->mul(it->second, s[x]);
    }
    s = std::move(corrected);
  }

  for (std::uint32_t x : m.elems) {
    for (std::uint32_t y : m.elems) {
      if (g->mul(s[x], s[y]) != s[dst->mul(x, y)]) {
        throw InconsistencyError("liftPrimeOrderSubgroup: corrected section is not a homomorphism");
      }
    }
  }
  Subgroup out;
  out.parent = g;
  out.member.assign(g->order(), false);
  for (std::uint32_t x : m.elems) {
    out.elems.push_back(s[x]);
    out.member[s[x]] = true;
  }
  std::sort(out.elems.begin(), out.elems.end());
  for (std::uint32_t q : m.gens) out.gens.push_back(s[q]);
  return out;
}

std::optional<std::uint32_t> transporter(const Subgroup& a, const Subgroup& b) {
  GroupPtr g = a.parent;
  if (b.parent != g || a.order() != b.order()) return std::nullopt;
  std::map<int, int> ha, hb;
  for (std::uint32_t e : a.elems) ha[g->elementOrder(e)]++;
  for (std::uint32_t e : b.elems) hb[g->elementOrder(e)]++;
  if (ha != hb) return std::nullopt;
  for (std::uint32_t cand = 0; cand < g->order(); ++cand) {
    bool ok = true;
    for (std::uint32_t gen : a.gens) {
      if (!b.member[g->conj(cand, gen)]) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

bool areConjugate(const Subgroup& a, const Subgroup& b) { return transporter(a, b).has_value(); }

// --- congruence layers and truncated exponentials ---

int layerDim(const Ring& R, int n, int i) {
  if (i < 1 || i >= R.nildeg()) throw Error("layerDim: level out of range");
  int per = 0;
  if (R.kind() == RingKind::Witt2) {
    per = R.field().f();
  } else {
    for (const Monomial& m : R.monomials()) {
      if (m.deg() == i) per += R.field().f();
    }
  }
  return per * n * n;
}

std::vector<int> layerCoords(const Ring& R, int n, const Mat& g, int i) {
  const int len = R.len();
  const Field& F = R.field();
  Mat delta = g;
  {
    Mat id = idMat(R, n);
    Buf t{};
    for (int e = 0; e < n * n; ++e) {
      R.sub(g.a.data() + std::size_t(e) * len, id.a.data() + std::size_t(e) * len, t.data());
      std::copy(t.begin(), t.begin() + len, delta.a.data() + std::size_t(e) * len);
    }
  }
  std::vector<int> out;
  out.reserve(layerDim(R, n, i));
  for (int e = 0; e < n * n; ++e) {
    const Coord* c = delta.a.data() + std::size_t(e) * len;
    if (R.kind() == RingKind::Witt2) {
      if (c[0] != 0) throw InconsistencyError("layerCoords: element is not trivial below the layer");
      for (int d = 0; d < F.f(); ++d) out.push_back(F.digit(c[1], d));
    } else {
      const auto& mons = R.monomials();
      for (std::size_t t = 0; t < mons.size(); ++t) {
        const int deg = mons[t].deg();
        if (deg < i && c[t] != 0) {
          throw InconsistencyError("layerCoords: element is not trivial below the layer");
        }
        if (deg == i) {
          for (int d = 0; d < F.f(); ++d) out.push_back(F.digit(c[t], d));
        }
      }
    }
  }
  return out;
}

Mat expLevel(const Ring& R, int n, const std::vector<int>& X, const std::vector<Coord>& t, int i) {
  const int len = R.len();
  if (static_cast<int>(t.size()) != len) throw Error("expLevel: bad scalar length");
  if (!R.inIdealPower(t.data(), i)) {
    throw NotInIdealPowerError("expLevel: scalar is not in the requested ideal power");
  }
  Mat A = zeroMat(R, n);
  Buf lift{}, prod{};
  for (int e = 0; e < n * n; ++e) {
    R.liftResidue(X[e], lift.data());
    R.mul(lift.data(), t.data(), prod.data());
    std::copy(prod.begin(), prod.begin() + len, A.a.data() + std::size_t(e) * len);
  }
  Mat M = addMats(R, n, idMat(R, n), A);
  if (i < 1) throw Error("expLevel: level must be at least 1");
  if (2 * i >= R.nildeg()) return M;
  const int p = R.field().p();
  Mat P = A;
  long long fact = 1;
  for (int k = 2; k * i < R.nildeg(); ++k) {
    P = mulMats(R, n, P, A);
    fact = fact * k % (p * static_cast<long long>(p));
    bool pz = true;
    for (Coord c : P.a) {
      if (c != 0) {
        pz = false;
        break;
      }
    }
    if (pz) break;
    if (fact % p == 0) {
      throw Error("expLevel: factorial " + std::to_string(k) +
                  "! is not invertible in characteristic " + std::to_string(p));
    }
    int finv = 1;
    const int fp = static_cast<int>(fact % p);
    for (int x = 1; x < p; ++x) {
      if (fp * x % p == 1) finv = x;
    }
    Mat term = zeroMat(R, n);
    Buf s{};
    for (int e = 0; e < n * n; ++e) {
      R.scaleRes(finv, P.a.data() + std::size_t(e) * len, s.data());
      std::copy(s.begin(), s.begin() + len, term.a.data() + std::size_t(e) * len);
    }
    M = addMats(R, n, M, term);
  }
  return M;
}

}  // namespace chevlab
