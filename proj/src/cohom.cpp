/**
 * @file cohom.cpp
 * @brief Cocycle spaces via spanning-tree propagation, factor sets of
 *        congruence extensions, and the two splitting oracles.
 */
#include "chevlab/cohom.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace chevlab {

namespace {

inline int normMod(int v, int p) {
  int r = v % p;
  return r < 0 ? r + p : r;
}

/// Rebuilds the matrix 1 + delta from layer coordinates, inverting the
/// packing used by layerCoords (entries outer, layer slots in basis order,
/// base-p digits inner).
Mat matFromLayerVec(const Group& g, const std::vector<int>& v, int level) {
  const Ring& R = g.ring();
  const Field& F = R.field();
  const int len = R.len();
  const int n = g.n();
  Mat out = g.matIdentity();
  std::vector<Coord> delta(len, 0);
  std::vector<Coord> tmp(len, 0);
  std::size_t idx = 0;
  for (int e = 0; e < n * n; ++e) {
    std::fill(delta.begin(), delta.end(), Coord(0));
    if (R.kind() == RingKind::Witt2) {
      int code = 0;
      int pw = 1;
      for (int d = 0; d < F.f(); ++d) {
        code += v[idx++] * pw;
        pw *= F.p();
      }
      delta[1] = Coord(code);
    } else {
      const auto& mons = R.monomials();
      for (std::size_t t = 0; t < mons.size(); ++t) {
        if (mons[t].deg() != level) continue;
        int code = 0;
        int pw = 1;
        for (int d = 0; d < F.f(); ++d) {
          code += v[idx++] * pw;
          pw *= F.p();
        }
        delta[t] = Coord(code);
      }
    }
    Coord* entry = out.a.data() + std::size_t(e) * len;
    R.add(entry, delta.data(), tmp.data());
    std::copy(tmp.begin(), tmp.end(), entry);
  }
  return out;
}

}  // namespace

int h1Dim(const Subgroup& h, const GModule& m, const Budget& budget) {
  if (m.gens != h.gens) {
    throw InconsistencyError("h1Dim: module generators do not match the subgroup generators");
  }
  const Group& g = *h.parent;
  const int p = m.p;
  const int N = m.dim;
  const int S = int(h.gens.size());
  if (N == 0) return 0;
  if (h.order() * std::uint64_t(N) > budget.maxElimUnknowns) {
    throw BudgetExceededError("h1Dim: cocycle system exceeds the elimination budget");
  }

  BfsTree tree = g.bfsTree(h.gens, false);
  if (tree.order.size() != h.order()) {
    throw InconsistencyError("h1Dim: generators do not span the subgroup");
  }
  std::vector<std::uint32_t> pos(g.order(), UINT32_MAX);
  for (std::size_t i = 0; i < tree.order.size(); ++i) pos[tree.order[i]] = std::uint32_t(i);

  // c(u s) = c(u) + rho(u) c(s): express every value as P(u) applied to the
  // stacked generator unknowns, with rho(u) accumulated along the tree.
  std::vector<FpMat> rho(h.order(), FpMat(p, N, N));
  std::vector<FpMat> P(h.order(), FpMat(p, N, S * N));
  rho[0] = FpMat::identity(p, N);
  for (std::size_t i = 1; i < tree.order.size(); ++i) {
    const std::uint32_t v = tree.order[i];
    const std::uint32_t u = tree.parent[v];
    const int gi = tree.genOf[v];
    const std::uint32_t pu = pos[u];
    const std::uint32_t pv = pos[v];
    rho[pv] = rho[pu].mul(m.act[gi]);
    P[pv] = P[pu];
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) {
        int& slot = P[pv].at(r, gi * N + c);
        slot = normMod(slot + rho[pu].at(r, c), p);
      }
    }
  }

  RowReducer red(p, S * N);
  std::vector<int> row(std::size_t(S) * N, 0);
  for (std::uint32_t u : tree.order) {
    for (int gi = 0; gi < S; ++gi) {
      const std::uint32_t t = g.mul(u, h.gens[gi]);
      if (tree.parent[t] == u && tree.genOf[t] == gi) continue;
      const std::uint32_t pu = pos[u];
      const std::uint32_t pt = pos[t];
      for (int r = 0; r < N; ++r) {
        for (int j = 0; j < S * N; ++j) {
          row[j] = normMod(P[pu].at(r, j) - P[pt].at(r, j), p);
        }
        for (int c = 0; c < N; ++c) {
          row[gi * N + c] = normMod(row[gi * N + c] + rho[pu].at(r, c), p);
        }
        red.addRow(row);
      }
    }
  }

  const int z1 = S * N - red.rank();
  const int b1 = N - fixedDim(m);
  return z1 - b1;
}

int homToFpDim(const Subgroup& h, int p) {
  const Group& g = *h.parent;
  Subgroup der = commutatorSubgroup(h);
  std::uint64_t count = 0;
  for (std::uint32_t a : h.elems) {
    std::uint32_t ap = g.identity();
    for (int i = 0; i < p; ++i) ap = g.mul(ap, a);
    if (der.member[ap]) ++count;
  }
  if (count % der.order() != 0) {
    throw InconsistencyError("homToFpDim: torsion count is not a whole number of cosets");
  }
  std::uint64_t ratio = count / der.order();
  int rank = 0;
  while (ratio > 1) {
    if (ratio % std::uint64_t(p) != 0) {
      throw InconsistencyError("homToFpDim: torsion coset count is not a power of p");
    }
    ratio /= std::uint64_t(p);
    ++rank;
  }
  return rank;
}

int h2TrivialDim(const Subgroup& h, int p, const Budget& budget) {
  const std::uint64_t cap = (p == 2) ? budget.maxH2GroupOrder : budget.maxH2GroupOrder / 6;
  if (h.order() > cap) {
    throw BudgetExceededError("h2TrivialDim: group order exceeds the factor-set budget");
  }
  if (h.order() == 1) return 0;
  const Group& g = *h.parent;
  const std::vector<std::uint32_t>& gens = h.gens;
  const int S = int(gens.size());

  BfsTree tree = g.bfsTree(gens, true);
  const std::uint64_t n = h.order();
  if (tree.order.size() != n) {
    throw InconsistencyError("h2TrivialDim: generators do not span the subgroup");
  }
  std::vector<std::uint32_t> pos(g.order(), UINT32_MAX);
  for (std::size_t i = 0; i < tree.order.size(); ++i) pos[tree.order[i]] = std::uint32_t(i);

  // A normalised factor set is determined by the slices beta(s, -) for the
  // generators s.  Writing t = s u along the left-multiplication tree gives
  //   beta(t, k) = beta(u, k) + beta(s, u k) - beta(s, u),
  // so beta(t, -) expands into a short signed list of generator-slice terms
  // accumulated along the path from the root.
  std::vector<std::vector<std::pair<int, std::uint32_t>>> path(n);
  for (std::size_t i = 1; i < tree.order.size(); ++i) {
    const std::uint32_t v = tree.order[i];
    const std::uint32_t u = tree.parent[v];
    path[pos[v]] = path[pos[u]];
    path[pos[v]].emplace_back(tree.genOf[v], u);
  }

  const int cols = S * int(n - 1);
  RowReducer red(p, cols);
  auto colOf = [&](int gi, std::uint32_t w) -> int {
    const std::uint32_t pw = pos[w];
    return pw == 0 ? -1 : gi * int(n - 1) + int(pw) - 1;
  };
  std::vector<int> row(cols, 0);
  std::vector<int> touched;
  touched.reserve(256);
  auto bump = [&](int col, int delta) {
    if (col < 0) return;
    touched.push_back(col);
    row[col] = normMod(row[col] + delta, p);
  };

  // Every non-tree Cayley edge (s, u) forces, for all k != 1,
  //   beta(s, u) + beta(s u, k) - beta(u, k) - beta(s, u k) = 0
  // with beta(s u, -) and beta(u, -) expanded through their tree paths.
  for (std::uint32_t u : tree.order) {
    for (int gi = 0; gi < S; ++gi) {
      const std::uint32_t t = g.mul(gens[gi], u);
      if (tree.parent[t] == u && tree.genOf[t] == gi) continue;
      const auto& pt = path[pos[t]];
      const auto& pu = path[pos[u]];
      for (std::size_t ki = 1; ki < tree.order.size(); ++ki) {
        const std::uint32_t k = tree.order[ki];
        bump(colOf(gi, u), 1);
        bump(colOf(gi, g.mul(u, k)), -1);
        for (const auto& term : pt) {
          bump(colOf(term.first, g.mul(term.second, k)), 1);
          bump(colOf(term.first, term.second), -1);
        }
        for (const auto& term : pu) {
          bump(colOf(term.first, g.mul(term.second, k)), -1);
          bump(colOf(term.first, term.second), 1);
        }
        red.addRow(row);
        for (int c : touched) row[c] = 0;
        touched.clear();
      }
    }
  }

  const int z2 = cols - red.rank();
  const int b2 = int(n) - 1 - homToFpDim(h, p);
  return z2 - b2;
}

std::vector<int> kernelCoords(const ExtensionCocycle& tc, std::uint32_t srcElem) {
  const Ring& R = tc.src->ring();
  const std::vector<int> v = layerCoords(R, tc.src->n(), tc.src->elem(srcElem), tc.level);
  std::vector<int> c(tc.kdim, 0);
  std::vector<int> recon(v.size(), 0);
  for (int r = 0; r < tc.kdim; ++r) {
    c[r] = v[tc.kerPivots[r]];
    for (std::size_t j = 0; j < v.size(); ++j) {
      recon[j] = normMod(recon[j] + c[r] * tc.kerBasis[r][j], tc.p);
    }
  }
  if (recon != v) throw InconsistencyError("kernelCoords: element is outside the kernel span");
  return c;
}

std::uint32_t kernelElement(const ExtensionCocycle& tc, const std::vector<int>& coords) {
  const Group& g = *tc.src;
  std::vector<int> v(layerDim(g.ring(), g.n(), tc.level), 0);
  for (int r = 0; r < tc.kdim; ++r) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = normMod(v[j] + coords[r] * tc.kerBasis[r][j], tc.p);
    }
  }
  Mat m = matFromLayerVec(g, v, tc.level);
  return g.indexOf(g.canon(std::move(m)));
}

ExtensionCocycle extensionCocycle(const GroupHom& hom, const Budget& budget) {
  return extensionCocycle(hom, fullSubgroup(hom.dst), budget);
}

ExtensionCocycle extensionCocycle(const GroupHom& hom, const Subgroup& quot,
                                  const Budget& budget) {
  (void)budget;
  GroupPtr src = hom.src;
  GroupPtr dst = hom.dst;
  if (quot.parent != dst) {
    throw InconsistencyError("extensionCocycle: quotient subgroup belongs to another group");
  }
  const Ring& R = src->ring();
  const int p = R.field().p();
  const std::uint64_t m = dst->order();
  if (quot.order() > 1024) {
    throw BudgetExceededError("extensionCocycle: quotient too large for a full factor-set table");
  }
  const Subgroup& ker = hom.kernel;

  for (std::uint32_t k : ker.elems) {
    if (k == src->identity()) continue;
    if (src->elementOrder(k) != p) {
      throw KernelNotAbelianError("extensionCocycle: kernel has an element of order other than p");
    }
  }
  for (std::size_t i = 0; i < ker.elems.size(); ++i) {
    for (std::size_t j = i + 1; j < ker.elems.size(); ++j) {
      const std::uint32_t a = ker.elems[i];
      const std::uint32_t b = ker.elems[j];
      if (src->mul(a, b) != src->mul(b, a)) {
        throw KernelNotAbelianError("extensionCocycle: kernel is not abelian");
      }
    }
  }

  ExtensionCocycle tc;
  tc.src = src;
  tc.dst = dst;
  tc.quot = quot;
  tc.p = p;
  tc.level = hom.level;

  const int n = src->n();
  const int ld = layerDim(R, n, hom.level);
  auto lcoords = [&](std::uint32_t e) { return layerCoords(R, n, src->elem(e), hom.level); };
  FpSpan span(p, ld);
  std::vector<std::vector<int>> kc;
  kc.reserve(ker.elems.size());
  for (std::uint32_t k : ker.elems) {
    kc.push_back(lcoords(k));
    span.add(kc.back());
  }
  tc.kdim = span.rank();
  std::uint64_t expect = 1;
  for (int i = 0; i < tc.kdim; ++i) expect *= std::uint64_t(p);
  if (expect != ker.order()) {
    throw InconsistencyError("extensionCocycle: kernel coordinates are not faithful");
  }
  tc.kerBasis = span.basis();
  tc.kerPivots = span.pivots();

  // The layer coordinates must turn kernel multiplication into vector
  // addition; spot-check large kernels, check small ones exhaustively.
  auto checkPair = [&](std::size_t i, std::size_t j) {
    std::vector<int> sum = kc[i];
    for (std::size_t t = 0; t < sum.size(); ++t) sum[t] = normMod(sum[t] + kc[j][t], p);
    if (sum != lcoords(src->mul(ker.elems[i], ker.elems[j]))) {
      throw InconsistencyError("extensionCocycle: kernel coordinates are not additive");
    }
  };
  if (ker.order() <= 256) {
    for (std::size_t i = 0; i < ker.elems.size(); ++i) {
      for (std::size_t j = i; j < ker.elems.size(); ++j) checkPair(i, j);
    }
  } else {
    std::mt19937 rng(777);
    for (int s = 0; s < 20000; ++s) {
      checkPair(rng() % ker.elems.size(), rng() % ker.elems.size());
    }
  }

  tc.sigma.assign(m, UINT32_MAX);
  for (std::uint32_t i = 0; i < src->order(); ++i) {
    const std::uint32_t y = hom.map[i];
    std::uint32_t& s = tc.sigma[y];
    if (s == UINT32_MAX || src->elem(i).a < src->elem(s).a) s = i;
  }
  tc.sigma[dst->identity()] = src->identity();

  std::vector<std::uint32_t> basisElems(tc.kdim);
  for (int r = 0; r < tc.kdim; ++r) {
    std::vector<int> unit(tc.kdim, 0);
    unit[r] = 1;
    basisElems[r] = kernelElement(tc, unit);
    if (!ker.member[basisElems[r]]) {
      throw InconsistencyError("extensionCocycle: coordinate basis left the kernel");
    }
  }
  tc.act.assign(m, FpMat(p, tc.kdim, tc.kdim));
  for (std::uint32_t x : quot.elems) {
    const std::uint32_t sx = tc.sigma[x];
    for (int r = 0; r < tc.kdim; ++r) {
      const std::uint32_t c = src->conj(sx, basisElems[r]);
      if (!ker.member[c]) {
        throw InconsistencyError("extensionCocycle: kernel is not stable under conjugation");
      }
      const std::vector<int> cc = kernelCoords(tc, c);
      for (int i = 0; i < tc.kdim; ++i) tc.act[x].at(i, r) = cc[i];
    }
  }

  tc.val.assign(std::size_t(m) * m, {});
  for (std::uint32_t x : quot.elems) {
    for (std::uint32_t y : quot.elems) {
      const std::uint32_t xy = dst->mul(x, y);
      const std::uint32_t w =
          src->mul(src->mul(tc.sigma[x], tc.sigma[y]), src->inv(tc.sigma[xy]));
      if (!ker.member[w]) {
        throw InconsistencyError("extensionCocycle: factor set left the kernel");
      }
      tc.val[std::size_t(x) * m + y] = kernelCoords(tc, w);
    }
  }

  // beta(x, y) + beta(xy, z) = x beta(y, z) + beta(x, yz) on generator
  // triples and a fixed random sample.
  auto checkTriple = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    const std::uint32_t yz = dst->mul(y, z);
    const std::uint32_t xy = dst->mul(x, y);
    std::vector<int> lhs = tc.act[x].apply(tc(y, z));
    const std::vector<int>& xyz = tc(x, yz);
    const std::vector<int>& ab = tc(x, y);
    const std::vector<int>& abz = tc(xy, z);
    for (int r = 0; r < tc.kdim; ++r) {
      if (normMod(lhs[r] + xyz[r] - ab[r] - abz[r], p) != 0) {
        throw InconsistencyError("extensionCocycle: cocycle identity fails");
      }
    }
  };
  for (std::uint32_t x : quot.gens) {
    for (std::uint32_t y : quot.gens) {
      for (std::uint32_t z : quot.gens) checkTriple(x, y, z);
    }
  }
  std::mt19937 rng(9001);
  const std::size_t qn = quot.elems.size();
  for (int s = 0; s < 10000; ++s) {
    checkTriple(quot.elems[rng() % qn], quot.elems[rng() % qn], quot.elems[rng() % qn]);
  }
  return tc;
}

std::optional<std::vector<std::vector<int>>> cocycleTrivialisation(const ExtensionCocycle& tc,
                                                                   const Budget& budget) {
  GroupPtr dst = tc.dst;
  const std::uint64_t m = dst->order();
  const int N = tc.kdim;
  const int p = tc.p;
  std::vector<std::vector<int>> c(m, std::vector<int>(N, 0));
  if (N == 0) return c;
  const std::vector<std::uint32_t>& gens = tc.quot.gens;
  const int S = int(gens.size());
  if (tc.quot.order() * std::uint64_t(N) > budget.maxElimUnknowns) {
    throw BudgetExceededError("cocycleTrivialisation: coboundary system exceeds the budget");
  }

  BfsTree tree = dst->bfsTree(gens, false);
  if (tree.order.size() != tc.quot.order()) {
    throw InconsistencyError("cocycleTrivialisation: generators do not span the quotient");
  }

  // Seek c with beta(x, y) = x c(y) - c(xy) + c(x).  Along a tree edge
  // t = u s this reads c(t) = c(u) + act(u) c(s) - beta(u, s), so every
  // value is affine in the generator unknowns.
  std::vector<FpMat> P(m, FpMat(p, N, S * N));
  std::vector<std::vector<int>> q(m, std::vector<int>(N, 0));
  for (std::size_t i = 1; i < tree.order.size(); ++i) {
    const std::uint32_t v = tree.order[i];
    const std::uint32_t u = tree.parent[v];
    const int gi = tree.genOf[v];
    P[v] = P[u];
    for (int r = 0; r < N; ++r) {
      for (int cc = 0; cc < N; ++cc) {
        int& slot = P[v].at(r, gi * N + cc);
        slot = normMod(slot + tc.act[u].at(r, cc), p);
      }
    }
    const std::vector<int>& beta = tc(u, gens[gi]);
    for (int r = 0; r < N; ++r) q[v][r] = normMod(q[u][r] - beta[r], p);
  }

  RowReducer red(p, S * N, 1);
  std::vector<int> row(std::size_t(S) * N, 0);
  std::vector<int> rhs(1, 0);
  for (std::uint32_t u : tree.order) {
    for (int gi = 0; gi < S; ++gi) {
      const std::uint32_t t = dst->mul(u, gens[gi]);
      if (tree.parent[t] == u && tree.genOf[t] == gi) continue;
      const std::vector<int>& beta = tc(u, gens[gi]);
      for (int r = 0; r < N; ++r) {
        for (int j = 0; j < S * N; ++j) row[j] = normMod(P[u].at(r, j) - P[t].at(r, j), p);
        for (int cc = 0; cc < N; ++cc) {
          row[gi * N + cc] = normMod(row[gi * N + cc] + tc.act[u].at(r, cc), p);
        }
        rhs[0] = normMod(q[t][r] - q[u][r] + beta[r], p);
        red.addRow(row, rhs);
      }
    }
  }

  if (!red.consistent()) return std::nullopt;
  const auto sol = red.solution();
  const std::vector<int>& X = (*sol)[0];
  for (std::uint32_t e : tree.order) {
    for (int r = 0; r < N; ++r) {
      int acc = q[e][r];
      for (int j = 0; j < S * N; ++j) acc += P[e].at(r, j) * X[j];
      c[e][r] = normMod(acc, p);
    }
  }

  // Full verification over every pair; the tree constraints are sufficient
  // in exact arithmetic, so a failure here means a real bug.
  for (std::uint32_t x : tc.quot.elems) {
    for (std::uint32_t y : tc.quot.elems) {
      const std::uint32_t xy = dst->mul(x, y);
      const std::vector<int> xc = tc.act[x].apply(c[y]);
      const std::vector<int>& beta = tc(x, y);
      for (int r = 0; r < N; ++r) {
        if (normMod(xc[r] - c[xy][r] + c[x][r] - beta[r], p) != 0) {
          throw InconsistencyError("cocycleTrivialisation: solution fails the coboundary identity");
        }
      }
    }
  }
  return c;
}

Subgroup complementFromTrivialisation(const GroupHom& hom, const ExtensionCocycle& tc,
                                      const std::vector<std::vector<int>>& c) {
  GroupPtr src = tc.src;
  GroupPtr dst = tc.dst;
  const std::uint64_t m = dst->order();
  const int p = tc.p;
  std::vector<std::uint32_t> lifted(m, UINT32_MAX);
  for (std::uint32_t x : tc.quot.elems) {
    std::vector<int> neg(tc.kdim);
    for (int r = 0; r < tc.kdim; ++r) neg[r] = normMod(-c[x][r], p);
    lifted[x] = src->mul(kernelElement(tc, neg), tc.sigma[x]);
    if (hom.map[lifted[x]] != x) {
      throw InconsistencyError("complementFromTrivialisation: lift does not project back");
    }
  }
  for (std::uint32_t x : tc.quot.elems) {
    for (std::uint32_t y : tc.quot.elems) {
      if (src->mul(lifted[x], lifted[y]) != lifted[dst->mul(x, y)]) {
        throw InconsistencyError("complementFromTrivialisation: lift table is not multiplicative");
      }
    }
  }
  std::vector<std::uint32_t> elems;
  elems.reserve(tc.quot.elems.size());
  for (std::uint32_t x : tc.quot.elems) elems.push_back(lifted[x]);
  return subgroupFromElems(src, elems);
}

std::optional<Subgroup> findComplement(const GroupHom& hom, const Budget& budget) {
  return findComplement(hom, fullSubgroup(hom.dst), budget);
}

std::optional<Subgroup> findComplement(const GroupHom& hom, const Subgroup& quot,
                                       const Budget& budget) {
  GroupPtr src = hom.src;
  GroupPtr dst = hom.dst;
  if (quot.parent != dst) {
    throw InconsistencyError("findComplement: quotient subgroup belongs to another group");
  }
  const std::vector<std::uint32_t>& gens = quot.gens;
  const int S = int(gens.size());

  // Any complement maps its generator lifts into these order-matched fibres,
  // so exhausting the product is a completeness argument, not a heuristic.
  std::vector<int> genOrder(S);
  for (int gi = 0; gi < S; ++gi) genOrder[gi] = dst->elementOrder(gens[gi]);
  std::vector<std::vector<std::uint32_t>> fib(S);
  for (std::uint32_t u = 0; u < src->order(); ++u) {
    const std::uint32_t y = hom.map[u];
    for (int gi = 0; gi < S; ++gi) {
      if (y == gens[gi] && src->elementOrder(u) == genOrder[gi]) {
        fib[gi].push_back(u);
      }
    }
  }
  std::uint64_t combos = 1;
  for (int gi = 0; gi < S; ++gi) {
    if (fib[gi].empty()) return std::nullopt;
    if (combos > budget.maxComplementCombos / fib[gi].size()) {
      throw BudgetExceededError("findComplement: generator-lift search space too large");
    }
    combos *= fib[gi].size();
  }

  std::vector<std::size_t> pick(S, 0);
  std::vector<std::uint32_t> chosen(S);
  while (true) {
    for (int gi = 0; gi < S; ++gi) chosen[gi] = fib[gi][pick[gi]];
    auto sub = closureBounded(src, chosen, quot.order());
    if (sub && sub->order() == quot.order()) {
      std::uint64_t inKernel = 0;
      for (std::uint32_t e : sub->elems) {
        if (hom.map[e] == dst->identity()) ++inKernel;
      }
      if (inKernel == 1) return sub;
    }
    int i = 0;
    for (; i < S; ++i) {
      if (++pick[i] < fib[i].size()) break;
      pick[i] = 0;
    }
    if (i == S) break;
  }
  return std::nullopt;
}

SplittingReport checkSplitting(const GroupHom& hom, const Budget& budget) {
  return checkSplitting(hom, fullSubgroup(hom.dst), budget);
}

SplittingReport checkSplitting(const GroupHom& hom, const Subgroup& quot, const Budget& budget) {
  SplittingReport rep;
  ExtensionCocycle tc = extensionCocycle(hom, quot, budget);
  auto c = cocycleTrivialisation(tc, budget);
  if (!c) {
    rep.splits = false;
    return rep;
  }
  rep.splits = true;
  rep.complement = complementFromTrivialisation(hom, tc, *c);
  return rep;
}

}  // namespace chevlab
