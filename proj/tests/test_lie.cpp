#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "chevlab/group.hpp"
#include "chevlab/lie.hpp"

using namespace chevlab;

namespace {

GroupPtr makeGroup(Family fam, int n, const std::string& ringSpec) {
  GroupSpec spec;
  spec.fam = fam;
  spec.n = n;
  spec.R = Ring::parseSpec(ringSpec);
  return Group::enumerate(spec);
}

GModule adjointOfFull(Family fam, int n, const std::string& ringSpec, LieFamily lf, FieldPtr F) {
  return adjointModule(fullSubgroup(makeGroup(fam, n, ringSpec)), LieAlgebra::build(lf, n, F));
}

// The group matrices themselves as a module over the prime field (only for
// prime-field groups, where entry codes are field elements).
GModule naturalModule(GroupPtr g) {
  const Subgroup full = fullSubgroup(g);
  int n = g->n();
  int p = g->ring().field().p();
  GModule m;
  m.p = p;
  m.dim = n;
  m.gens = full.gens;
  for (auto gi : full.gens) {
    FpMat A(p, n, n);
    const Mat& e = g->elem(gi);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A.at(r, c) = e.a[std::size_t(r) * n + c];
    m.act.push_back(std::move(A));
  }
  return m;
}

}  // namespace

TEST_CASE("structure constants are antisymmetric and satisfy Jacobi") {
  auto F2 = Field::make(2, 1);
  auto F3 = Field::make(3, 1);
  auto F4 = Field::make(2, 2);
  auto F5 = Field::make(5, 1);
  std::vector<LieAlgebra> algebras;
  algebras.push_back(LieAlgebra::build(LieFamily::sl, 2, F4));
  algebras.push_back(LieAlgebra::build(LieFamily::sl, 3, F3));
  algebras.push_back(LieAlgebra::build(LieFamily::gl, 2, F3));
  algebras.push_back(LieAlgebra::build(LieFamily::pgl, 2, F5));
  algebras.push_back(LieAlgebra::build(LieFamily::pgl, 3, F3));
  algebras.push_back(LieAlgebra::build(LieFamily::sp, 4, F3));
  algebras.push_back(LieAlgebra::build(LieFamily::sp, 4, F2));
  algebras.push_back(LieAlgebra::build(LieFamily::su3, 3, F4));

  for (const auto& L : algebras) {
    int N = L.dimFp();
    int p = L.p();
    for (int i = 0; i < N; ++i) {
      CHECK(L.structureRow(i, i) == std::vector<int>(N, 0));
      for (int j = 0; j < N; ++j) {
        auto neg = L.structureRow(j, i);
        for (int& x : neg) x = x == 0 ? 0 : p - x;
        CHECK(L.structureRow(i, j) == neg);
      }
    }
    std::vector<int> unit(N, 0);
    for (int i = 0; i < N; ++i) {
      unit.assign(N, 0);
      unit[i] = 1;
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          // [B_i, [B_j, B_k]] + [B_j, [B_k, B_i]] + [B_k, [B_i, B_j]] = 0
          auto a = L.bracket(unit, L.structureRow(j, k));
          std::vector<int> uj(N, 0), uk(N, 0);
          uj[j] = 1;
          uk[k] = 1;
          auto b = L.bracket(uj, L.structureRow(k, i));
          auto c = L.bracket(uk, L.structureRow(i, j));
          bool zero = true;
          for (int t = 0; t < N; ++t)
            if ((a[t] + b[t] + c[t]) % p != 0) zero = false;
          CHECK(zero);
        }
    }
  }
}

TEST_CASE("coordinates round-trip and brackets match matrix commutators") {
  auto F4 = Field::make(2, 2);
  auto F3 = Field::make(3, 1);
  std::mt19937 rng(424242);
  for (const auto& L : {LieAlgebra::build(LieFamily::sl, 2, F4),
                        LieAlgebra::build(LieFamily::sp, 4, F3),
                        LieAlgebra::build(LieFamily::su3, 3, F4),
                        LieAlgebra::build(LieFamily::pgl, 2, F3)}) {
    const Field& F = L.entryField();
    int N = L.dimFp();
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> a(N), b(N);
      for (int i = 0; i < N; ++i) {
        a[i] = int(rng() % unsigned(L.p()));
        b[i] = int(rng() % unsigned(L.p()));
      }
      CHECK(L.coordsOf(L.matOf(a)) == a);
      auto ma = L.matOf(a);
      auto mb = L.matOf(b);
      int n = L.n();
      std::vector<int> comm(std::size_t(n) * n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int s = 0;
          for (int k = 0; k < n; ++k)
            s = F.add(s, F.sub(F.mul(ma[i * n + k], mb[k * n + j]), F.mul(mb[i * n + k], ma[k * n + j])));
          comm[std::size_t(i) * n + j] = s;
        }
      CHECK(L.bracket(a, b) == L.coordsOf(comm));
    }
  }

  // Quotient coordinates ignore scalar shifts.
  auto P = LieAlgebra::build(LieFamily::pgl, 2, F3);
  std::vector<int> m = {1, 2, 0, 1};
  auto c1 = P.coordsOf(m);
  std::vector<int> shifted = {2, 2, 0, 2};  // m + I
  CHECK(P.coordsOf(shifted) == c1);
}

TEST_CASE("dimensions, centers and derived spans of the classical families") {
  auto F2 = Field::make(2, 1);
  auto F3 = Field::make(3, 1);
  auto F4 = Field::make(2, 2);

  for (int n = 2; n <= 4; ++n)
    for (int p : {2, 3, 5, 7}) {
      auto L = LieAlgebra::build(LieFamily::sl, n, Field::make(p, 1));
      CHECK(L.dimF() == n * n - 1);
      CHECK(L.center().dimZ == (n % p == 0 ? 1 : 0));
      auto G = LieAlgebra::build(LieFamily::gl, n, Field::make(p, 1));
      CHECK(G.dimF() == n * n);
      CHECK(G.center().dimZ == 1);
    }

  auto sl2q4 = LieAlgebra::build(LieFamily::sl, 2, F4);
  CHECK(sl2q4.dimFp() == 6);
  CHECK(sl2q4.center().dimZ == 1);
  CHECK(sl2q4.center().dimZFp == 2);
  CHECK(sl2q4.derivedSpan().rank() == 2);  // the scalar line
  CHECK_FALSE(sl2q4.isPerfectAlgebra());

  auto sl2q2 = LieAlgebra::build(LieFamily::sl, 2, F2);
  CHECK(sl2q2.derivedSpan().rank() == 1);

  auto sl3q3 = LieAlgebra::build(LieFamily::sl, 3, F3);
  CHECK(sl3q3.isPerfectAlgebra());  // perfect despite the 1-dim center

  auto pgl2q2 = LieAlgebra::build(LieFamily::pgl, 2, F2);
  CHECK(pgl2q2.dimF() == 3);
  CHECK(pgl2q2.center().dimZ == 0);
  CHECK(pgl2q2.derivedSpan().rank() == 2);
  CHECK(pgl2q2.center().lieClass == "Lie-adjoint");

  auto pgl3q3 = LieAlgebra::build(LieFamily::pgl, 3, F3);
  CHECK(pgl3q3.center().dimZ == 0);
  CHECK(pgl3q3.derivedSpan().rank() == 7);

  auto pgl2q3 = LieAlgebra::build(LieFamily::pgl, 2, F3);
  CHECK(pgl2q3.center().lieClass == "Lie-simply-connected");

  auto sp4q2 = LieAlgebra::build(LieFamily::sp, 4, F2);
  CHECK(sp4q2.dimF() == 10);
  CHECK(sp4q2.center().dimZ == 1);
  CHECK(sp4q2.derivedSpan().rank() == 6);
  CHECK_FALSE(sp4q2.isPerfectAlgebra());

  auto sp4q3 = LieAlgebra::build(LieFamily::sp, 4, F3);
  CHECK(sp4q3.center().dimZ == 0);
  CHECK(sp4q3.isPerfectAlgebra());

  auto su3 = LieAlgebra::build(LieFamily::su3, 3, F4);
  CHECK(su3.dimF() == 8);
  CHECK(su3.coeffDegree() == 1);
  CHECK(su3.center().dimZ == 0);
  CHECK(su3.isPerfectAlgebra());

  auto gl2q3 = LieAlgebra::build(LieFamily::gl, 2, F3);
  CHECK(gl2q3.derivedSpan().rank() == 3);
  CHECK_FALSE(gl2q3.isPerfectAlgebra());

  CHECK_THROWS_AS(LieAlgebra::build(LieFamily::sp, 6, F2), UnsupportedFamilyError);
  CHECK_THROWS_AS(LieAlgebra::build(LieFamily::su3, 3, F2), UnsupportedFamilyError);
  CHECK_THROWS_AS(sl3q3.coordsOf({1, 0, 0, 0, 0, 0, 0, 0, 0}), NotStableError);
}

TEST_CASE("conjugation modules are group actions") {
  auto g = makeGroup(Family::SL, 2, "q=3");
  auto L = LieAlgebra::build(LieFamily::sl, 2, Field::make(3, 1));
  auto gens = g->smallGens();
  REQUIRE(gens.size() >= 2);
  std::uint32_t a = gens[0], b = gens[1];
  Subgroup s;
  s.parent = g;
  s.gens = {a, b, g->mul(a, b), g->identity()};
  auto m = adjointModule(s, L);
  CHECK(m.act[2] == m.act[0].mul(m.act[1]));
  CHECK(m.act[3] == FpMat::identity(3, 3));

  // The same identities hold in the quotient family.
  auto pg = makeGroup(Family::PGL, 2, "q=5");
  auto P = LieAlgebra::build(LieFamily::pgl, 2, Field::make(5, 1));
  auto pgens = pg->smallGens();
  Subgroup ps;
  ps.parent = pg;
  ps.gens = {pgens[0], pgens[1], pg->mul(pgens[0], pgens[1])};
  auto pm = adjointModule(ps, P);
  CHECK(pm.act[2] == pm.act[0].mul(pm.act[1]));
}

TEST_CASE("fixed spaces and center-triviality checks across families") {
  auto F2 = Field::make(2, 1);
  auto F3 = Field::make(3, 1);
  auto F4 = Field::make(2, 2);
  auto F5 = Field::make(5, 1);

  struct Case {
    Family fam;
    int n;
    const char* rs;
    LieFamily lf;
    FieldPtr F;
    int h0, expected;
    bool smooth, holds;
  };
  std::vector<Case> cases = {
      {Family::SL, 2, "q=2", LieFamily::sl, F2, 1, 1, false, false},
      {Family::SL, 2, "q=4", LieFamily::sl, F4, 2, 2, false, false},
      {Family::SL, 2, "q=3", LieFamily::sl, F3, 0, 0, true, true},
      {Family::SL, 2, "q=5", LieFamily::sl, F5, 0, 0, true, true},
      {Family::GL, 2, "q=3", LieFamily::gl, F3, 1, 1, true, true},
      {Family::PGL, 2, "q=3", LieFamily::pgl, F3, 0, 0, true, true},
      {Family::PGL, 2, "q=2", LieFamily::pgl, F2, 1, 0, true, false},
      {Family::Sp, 4, "q=2", LieFamily::sp, F2, 1, 1, false, false},
      {Family::SU, 3, "q=4", LieFamily::su3, F4, 0, 0, true, true},
  };
  for (const auto& c : cases) {
    CAPTURE(c.rs);
    auto rep = checkCenterTriviality(fullSubgroup(makeGroup(c.fam, c.n, c.rs)),
                                     LieAlgebra::build(c.lf, c.n, c.F));
    CHECK(rep.h0DimFp == c.h0);
    CHECK(rep.expectedDimFp == c.expected);
    CHECK(rep.centerSmooth == c.smooth);
    CHECK(rep.holds == c.holds);
  }
}

TEST_CASE("submodule lattices of small conjugation modules") {
  auto F2 = Field::make(2, 1);
  auto F4 = Field::make(2, 2);

  // Three dimensions, a trivial line and a two-dimensional simple summand.
  auto a22 = analyzeModule(adjointOfFull(Family::SL, 2, "q=2", LieFamily::sl, F2));
  CHECK(a22.latticeDims == std::vector<int>{0, 1, 2, 3});
  CHECK_FALSE(a22.irreducible);
  CHECK(a22.fixedPointDim == 1);
  CHECK(a22.socleDim == 3);
  CHECK(a22.radicalDim == 0);
  CHECK_FALSE(a22.cosocleIrreducible);
  CHECK(a22.homToTrivialDim == 1);
  CHECK(a22.endDimFp == 2);
  CHECK(a22.jhDims == std::vector<int>{1, 2});
  CHECK(a22.nontrivialAction);

  // One chain: scalars below, a four-dimensional simple on top, plus the
  // prime-subfield lines inside the scalar plane.
  auto a24 = analyzeModule(adjointOfFull(Family::SL, 2, "q=4", LieFamily::sl, F4));
  CHECK(a24.latticeDims == std::vector<int>{0, 1, 1, 1, 2, 6});
  CHECK(a24.fixedPointDim == 2);
  CHECK(a24.socleDim == 2);
  CHECK(a24.radicalDim == 2);
  CHECK(a24.cosocleDim == 4);
  CHECK(a24.cosocleIrreducible);
  CHECK(a24.homToTrivialDim == 0);
  CHECK(a24.endDimFp == 2);
  CHECK(a24.jhDims == std::vector<int>{1, 1, 4});

  // Odd characteristic: the adjoint module is absolutely irreducible.
  for (const char* rs : {"q=3", "q=5"}) {
    auto F = Field::make(rs[2] - '0', 1);
    auto an = analyzeModule(adjointOfFull(Family::SL, 2, rs, LieFamily::sl, F));
    CHECK(an.irreducible);
    CHECK(an.endDimFp == 1);
    CHECK(an.homToTrivialDim == 0);
    CHECK(an.fixedPointDim == 0);
    CHECK(an.jhDims == std::vector<int>{3});
  }

  auto a33 = analyzeModule(adjointOfFull(Family::SL, 3, "q=2", LieFamily::sl, F2));
  CHECK(a33.irreducible);
  CHECK(a33.endDimFp == 1);

  // The symplectic algebra in characteristic two is far from simple.
  auto asp = analyzeModule(adjointOfFull(Family::Sp, 4, "q=2", LieFamily::sp, F2));
  CHECK(asp.latticeDims == std::vector<int>{0, 1, 5, 6, 10});
  CHECK(asp.socleDim == 1);
  CHECK(asp.radicalDim == 6);
  CHECK(asp.cosocleDim == 4);
  CHECK(asp.cosocleIrreducible);
  CHECK(asp.homToTrivialDim == 0);
  CHECK(asp.jhDims == std::vector<int>{1, 4, 1, 4});

  auto asu = analyzeModule(adjointOfFull(Family::SU, 3, "q=4", LieFamily::su3, F4));
  CHECK(asu.irreducible);
  CHECK(asu.endDimFp == 1);
  CHECK(asu.homToTrivialDim == 0);

  // gl_2 in odd characteristic splits as scalars plus traceless.
  auto agl = analyzeModule(adjointOfFull(Family::GL, 2, "q=3", LieFamily::gl, Field::make(3, 1)));
  CHECK(agl.latticeDims == std::vector<int>{0, 1, 3, 4});
  CHECK(agl.socleDim == 4);
  CHECK(agl.radicalDim == 0);
  CHECK(agl.jhDims == std::vector<int>{1, 3});
  CHECK(agl.homToTrivialDim == 1);
}

TEST_CASE("submodules, quotients and duals interact correctly") {
  auto F4 = Field::make(2, 2);
  auto m = adjointOfFull(Family::SL, 2, "q=4", LieFamily::sl, F4);
  auto subs = allSubmodules(m);
  REQUIRE(subs.size() == 6);
  const FpSpan& scalars = subs[4];  // sorted by rank: the unique rank-2 member
  REQUIRE(scalars.rank() == 2);

  CHECK(actionTrivialOn(m, scalars));
  auto inner = moduleOnSpan(m, scalars);
  CHECK(fixedDim(inner) == 2);

  auto q = quotientModule(m, scalars);
  CHECK(q.mod.dim == 4);
  auto aq = analyzeModule(q.mod);
  CHECK(aq.irreducible);
  CHECK(aq.endDimFp == 2);
  // proj * lift is the identity on the quotient.
  CHECK(q.proj.mul(q.lift) == FpMat::identity(2, 4));

  auto d = dualModule(m);
  auto ad = analyzeModule(d);
  CHECK(ad.socleDim == 4);    // mirror of the cosocle
  CHECK(ad.radicalDim == 4);  // mirror of the socle
  CHECK(ad.cosocleDim == 2);
  auto dd = dualModule(d);
  for (std::size_t i = 0; i < m.act.size(); ++i) CHECK(dd.act[i] == m.act[i]);

  // An unstable subspace is rejected.
  FpSpan line(2, 6);
  std::vector<int> v(6, 0);
  v[0] = 1;
  line.add(v);
  CHECK_THROWS_AS(moduleOnSpan(m, line), NotStableError);
}

TEST_CASE("homomorphism dimensions detect isomorphic simples") {
  auto g3 = makeGroup(Family::SL, 2, "q=3");
  auto nat = naturalModule(g3);
  CHECK(homDim(nat, nat) == 1);
  CHECK(homDim(nat, dualModule(nat)) == 1);  // the symplectic form

  auto adj = adjointOfFull(Family::SL, 2, "q=3", LieFamily::sl, Field::make(3, 1));
  CHECK(homDim(nat, adj) == 0);

  auto factors = compositionFactors(adj);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].dim == 3);
}

TEST_CASE("identity-only actions have every subspace as a submodule") {
  auto g = makeGroup(Family::SL, 2, "q=2");
  auto full = fullSubgroup(g);
  auto t5 = trivialModule(full, 2, 5);
  auto subs = allSubmodules(t5);
  CHECK(subs.size() == 374);  // number of subspaces of a 5-dim space over F_2
  auto at = analyzeModule(t5);
  CHECK(at.socleDim == 5);
  CHECK(at.radicalDim == 0);
  CHECK(at.homToTrivialDim == 5);
  CHECK_FALSE(at.nontrivialAction);
  CHECK(at.jhDims == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("module scans stop at the spin budget") {
  auto F8 = Field::make(2, 3);
  auto m = adjointOfFull(Family::SL, 2, "q=8", LieFamily::sl, F8);
  Budget tight = defaultBudget();
  tight.maxSpinVectors = 100;  // 2^9 vectors would be needed
  CHECK_THROWS_AS(allSubmodules(m, tight), BudgetExceededError);
}
