#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "chevlab/group.hpp"

using namespace chevlab;

namespace {

GroupPtr makeGroup(Family fam, int n, const std::string& ringSpec) {
  GroupSpec spec;
  spec.fam = fam;
  spec.n = n;
  spec.R = Ring::parseSpec(ringSpec);
  return Group::enumerate(spec);
}

// Builds the matrix with the given residue-field entry codes, lifted into
// the group's base ring by the multiplicative section.
Mat liftConst(const Group& G, const std::vector<std::vector<int>>& m) {
  const Ring& R = G.ring();
  const int n = G.n();
  const int len = R.len();
  Mat out;
  out.a.assign(std::size_t(n) * n * len, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) R.liftResidue(m[r][c], out.a.data() + std::size_t(r * n + c) * len);
  return G.canon(std::move(out));
}

// I + z*I where z is the first basis element of the maximal ideal.
Mat onePlusRadicalScalar(const Group& G) {
  const Ring& R = G.ring();
  const int n = G.n();
  const int len = R.len();
  auto z = R.fpIdealBasis(1).front();
  Mat out = G.matIdentity();
  for (int i = 0; i < n; ++i) {
    Coord* e = out.a.data() + std::size_t(i * n + i) * len;
    std::vector<Coord> tmp(len);
    R.add(e, z.data(), tmp.data());
    for (int j = 0; j < len; ++j) e[j] = tmp[j];
  }
  return G.canon(std::move(out));
}

}  // namespace

TEST_CASE("orders of the classical point groups match the closed formulas") {
  struct Case {
    Family fam;
    int n;
    const char* ring;
    std::uint64_t order;
  };
  for (Case c : {
           Case{Family::SL, 2, "q=2", 6},
           Case{Family::SL, 2, "q=3", 24},
           Case{Family::SL, 2, "q=4", 60},
           Case{Family::SL, 2, "q=5", 120},
           Case{Family::SL, 2, "q=7", 336},
           Case{Family::SL, 2, "q=8", 504},
           Case{Family::SL, 2, "q=9", 720},
           Case{Family::SL, 3, "q=2", 168},
           Case{Family::SL, 3, "q=3", 5616},
           Case{Family::GL, 2, "q=3", 48},
           Case{Family::GL, 2, "q=4", 180},
           Case{Family::GL, 3, "q=2", 168},
           Case{Family::PGL, 2, "q=3", 24},
           Case{Family::PGL, 2, "q=4", 60},
           Case{Family::PGL, 2, "q=5", 120},
           Case{Family::PGL, 3, "q=2", 168},
           Case{Family::Sp, 4, "q=2", 720},
           Case{Family::SU, 3, "q=4", 216},
       }) {
    GroupPtr G = makeGroup(c.fam, c.n, c.ring);
    CHECK(G->order() == c.order);
  }
}

TEST_CASE("SL2(F3) equals the determinant-one matrices found by full scan") {
  GroupPtr G = makeGroup(Family::SL, 2, "q=3");
  const Ring& R = G->ring();
  int count = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          if (((a * d - b * c) % 3 + 3) % 3 != 1) continue;
          ++count;
          Mat m = liftConst(*G, {{a, b}, {c, d}});
          CHECK(G->tryIndexOf(m).has_value());
          auto det = G->matDet(m);
          CHECK(R.residue(det.data()) == 1);
        }
  CHECK(count == 24);
  CHECK(G->order() == 24);
}

TEST_CASE("orders over non-field coefficient rings scale by ring layers") {
  CHECK(makeGroup(Family::SL, 2, "dual:q=2")->order() == 48);
  CHECK(makeGroup(Family::SL, 2, "witt2:q=3")->order() == 648);
  CHECK(makeGroup(Family::SL, 2, "trunc:q=2,d=1,k=3")->order() == 384);
  CHECK(makeGroup(Family::GL, 2, "dual:q=3")->order() == 3888);
  CHECK(makeGroup(Family::PGL, 2, "dual:q=3")->order() == 648);
}

TEST_CASE("group operations are consistent") {
  for (const char* ring : {"q=9", "dual:q=2", "witt2:q=3"}) {
    GroupPtr G = makeGroup(Family::SL, 2, ring);
    std::mt19937_64 rng(5150);
    for (int t = 0; t < 100; ++t) {
      auto a = std::uint32_t(rng() % G->order());
      auto b = std::uint32_t(rng() % G->order());
      auto c = std::uint32_t(rng() % G->order());
      CHECK(G->mul(G->mul(a, b), c) == G->mul(a, G->mul(b, c)));
      CHECK(G->mul(a, G->inv(a)) == G->identity());
      CHECK(G->mul(G->inv(a), a) == G->identity());
      int ord = G->elementOrder(a);
      CHECK(G->order() % std::uint64_t(ord) == 0);
      std::uint32_t x = G->identity();
      for (int i = 0; i < ord; ++i) x = G->mul(x, a);
      CHECK(x == G->identity());
    }
  }
}

TEST_CASE("breadth-first trees reconstruct each element from its parent") {
  GroupPtr G = makeGroup(Family::SL, 2, "q=5");
  for (bool left : {false, true}) {
    BfsTree tree = G->bfsTree(G->smallGens(), left);
    REQUIRE(tree.order.size() == G->order());
    CHECK(tree.order[0] == G->identity());
    for (std::uint32_t v : tree.order) {
      if (v == G->identity()) continue;
      std::uint32_t parent = tree.parent[v];
      std::uint32_t g = G->smallGens()[std::size_t(tree.genOf[v])];
      CHECK((left ? G->mul(g, parent) : G->mul(parent, g)) == v);
      CHECK(tree.depth[v] == tree.depth[parent] + 1);
    }
  }
}

TEST_CASE("reduction homomorphisms are surjective with the expected kernels") {
  struct Case {
    const char* ring;
    std::uint64_t kernel;
  };
  for (Case c : {Case{"dual:q=2", 8}, Case{"witt2:q=3", 27}, Case{"dual:q=5", 125}}) {
    GroupPtr G = makeGroup(Family::SL, 2, c.ring);
    GroupHom hom = reductionHom(G, 1);
    CHECK(hom.kernel.order() == c.kernel);
    Subgroup img = imageOf(hom, fullSubgroup(G));
    CHECK(img.order() * hom.kernel.order() == G->order());
    CHECK(img.order() == hom.dst->order());
    // Kernel is elementary abelian of exponent p.
    int p = G->ring().field().p();
    for (std::uint32_t e : hom.kernel.elems) {
      if (e != G->identity()) CHECK(G->elementOrder(e) == p);
      for (std::uint32_t f : hom.kernel.elems) CHECK(G->mul(e, f) == G->mul(f, e));
    }
  }
  // Two-step ladder on a length-3 ring: levels compose correctly.
  GroupPtr G = makeGroup(Family::SL, 2, "trunc:q=2,d=1,k=3");
  GroupHom h1 = reductionHom(G, 1);
  GroupHom h2 = reductionHom(G, 2);
  CHECK(h1.kernel.order() == 64);
  CHECK(h2.kernel.order() == 8);
  CHECK(h2.dst->order() == 48);
  GroupHom h21 = reductionHom(h2.dst, 1);
  for (std::uint32_t i = 0; i < G->order(); ++i) {
    CHECK(h21.map[h2.map[i]] == h1.map[i]);
  }
}

TEST_CASE("commutator subgroups and perfectness") {
  CHECK(commutatorSubgroup(fullSubgroup(makeGroup(Family::SL, 2, "q=3"))).order() == 8);
  CHECK(commutatorSubgroup(fullSubgroup(makeGroup(Family::GL, 2, "q=3"))).order() == 24);
  CHECK(!isPerfect(fullSubgroup(makeGroup(Family::SL, 2, "q=2"))));
  CHECK(!isPerfect(fullSubgroup(makeGroup(Family::SL, 2, "q=3"))));
  CHECK(isPerfect(fullSubgroup(makeGroup(Family::SL, 2, "q=4"))));
  CHECK(isPerfect(fullSubgroup(makeGroup(Family::SL, 2, "q=5"))));
  CHECK(isPerfect(fullSubgroup(makeGroup(Family::SL, 3, "q=2"))));
  CHECK(!isPerfect(fullSubgroup(makeGroup(Family::Sp, 4, "q=2"))));
  GroupPtr SU = makeGroup(Family::SU, 3, "q=4");
  CHECK(!isPerfect(fullSubgroup(SU)));
  Subgroup dSU = commutatorSubgroup(fullSubgroup(SU));
  CHECK(dSU.order() > 1);
  CHECK(dSU.order() < SU->order());
  CHECK(SU->order() % dSU.order() == 0);
}

TEST_CASE("generator reduction returns a small regenerating set") {
  for (const char* ring : {"q=9", "q=4"}) {
    GroupPtr G = makeGroup(Family::SL, 2, ring);
    auto gens = G->smallGens();
    CHECK(gens.size() <= 4);
    CHECK(closureOf(G, gens).order() == G->order());
  }
  GroupPtr SU = makeGroup(Family::SU, 3, "q=4");
  CHECK(closureOf(SU, SU->gens()).order() == SU->order());
}

TEST_CASE("commutator-compatible subgroup of a residually full subgroup") {
  // Perfect residue group: the subgroup is its own commutator closure.
  {
    GroupPtr G = makeGroup(Family::SL, 2, "dual:q=5");
    GroupHom hom = reductionHom(G, 1);
    Subgroup hc = hC(hom, fullSubgroup(G));
    CHECK(hc.order() == G->order());
  }
  // Product of the radical scalar line with a constant section: the result
  // is a proper complement to the kernel over the residue group.
  {
    GroupPtr G = makeGroup(Family::SL, 2, "dual:q=2");
    GroupHom hom = reductionHom(G, 1);
    Mat s = liftConst(*G, {{0, 1}, {1, 0}});
    Mat t = liftConst(*G, {{1, 1}, {0, 1}});
    Mat z = onePlusRadicalScalar(*G);
    Subgroup H = closureOf(G, {G->indexOf(z), G->indexOf(s), G->indexOf(t)});
    REQUIRE(H.order() == 12);
    Subgroup hc = hC(hom, H);
    CHECK(hc.order() == 6);
    Subgroup C = commutatorSubgroup(H);
    CHECK(C.order() == 3);
    for (std::uint32_t e : C.elems) CHECK(hc.member[e]);
    for (std::uint32_t e : hc.elems) {
      if (e != G->identity()) CHECK(!hom.kernel.member[e]);
    }
    CHECK(imageOf(hom, hc).order() == 6);
    // Idempotent, and iteration stabilises at the same subgroup.
    Subgroup hc2 = hC(hom, hc);
    CHECK(hc2.elems == hc.elems);
    Subgroup fix = hPerfection(hom, H);
    CHECK(fix.elems == hc.elems);
  }
  // Non-perfect residue group with order prime to p on the torus part.
  {
    GroupPtr G = makeGroup(Family::GL, 2, "dual:q=3");
    GroupHom hom = reductionHom(G, 1);
    Subgroup hc = hC(hom, fullSubgroup(G));
    CHECK(hc.order() == 1296);
    for (std::uint32_t e : hc.elems) {
      auto det = G->matDet(G->elem(e));
      int r = G->ring().residue(det.data());
      bool central = true;
      for (int j = 1; j < G->ring().len(); ++j) central = central && det[j] == 0;
      CHECK(central);
      CHECK((r == 1 || r == 2));
    }
  }
  // A subgroup that misses part of the residue group is rejected.
  {
    GroupPtr G = makeGroup(Family::SL, 2, "dual:q=2");
    GroupHom hom = reductionHom(G, 1);
    Mat t = liftConst(*G, {{1, 1}, {0, 1}});
    Subgroup B = closureOf(G, {G->indexOf(t)});
    CHECK_THROWS_AS(hC(hom, B), NotResiduallyFullError);
  }
}

TEST_CASE("prime-order-coprime subgroups lift isomorphically") {
  {
    GroupPtr G = makeGroup(Family::SL, 2, "dual:q=5");
    GroupHom hom = reductionHom(G, 1);
    GroupPtr Q = hom.dst;
    Mat torus = liftConst(*Q, {{2, 0}, {0, 3}});
    Subgroup m = closureOf(Q, {Q->indexOf(torus)});
    REQUIRE(m.order() == 4);
    Subgroup lift = liftPrimeOrderSubgroup(hom, m);
    CHECK(lift.order() == 4);
    std::set<std::uint32_t> seen;
    for (std::uint32_t e : lift.elems) {
      CHECK(m.member[hom.map[e]]);
      seen.insert(hom.map[e]);
    }
    CHECK(seen.size() == 4);
    Mat unip = liftConst(*Q, {{1, 1}, {0, 1}});
    Subgroup bad = closureOf(Q, {Q->indexOf(unip)});
    CHECK_THROWS_AS(liftPrimeOrderSubgroup(hom, bad), OrderNotCoprimeError);
  }
  {
    GroupPtr G = makeGroup(Family::SL, 2, "witt2:q=3");
    GroupHom hom = reductionHom(G, 1);
    GroupPtr Q = hom.dst;
    Mat minus = liftConst(*Q, {{2, 0}, {0, 2}});
    Subgroup m = closureOf(Q, {Q->indexOf(minus)});
    REQUIRE(m.order() == 2);
    Subgroup lift = liftPrimeOrderSubgroup(hom, m);
    CHECK(lift.order() == 2);
    CHECK(hom.map[lift.elems[0]] != hom.map[lift.elems[1]]);
  }
}

TEST_CASE("conjugacy search finds witnesses and rejects impossible pairs") {
  GroupPtr G = makeGroup(Family::SL, 2, "q=3");
  Subgroup U = closureOf(G, {G->indexOf(liftConst(*G, {{1, 1}, {0, 1}}))});
  Subgroup L = closureOf(G, {G->indexOf(liftConst(*G, {{1, 0}, {1, 1}}))});
  REQUIRE(U.order() == 3);
  REQUIRE(L.order() == 3);
  auto g = transporter(U, L);
  REQUIRE(g.has_value());
  for (std::uint32_t e : U.elems) CHECK(L.member[G->conj(*g, e)]);
  CHECK(areConjugate(U, L));

  GroupPtr D = makeGroup(Family::SL, 2, "dual:q=2");
  Subgroup central = closureOf(D, {D->indexOf(onePlusRadicalScalar(*D))});
  Subgroup swap2 = closureOf(D, {D->indexOf(liftConst(*D, {{0, 1}, {1, 0}}))});
  REQUIRE(central.order() == 2);
  REQUIRE(swap2.order() == 2);
  CHECK(!areConjugate(central, swap2));
}

TEST_CASE("layer coordinates linearise congruence kernels") {
  GroupPtr G = makeGroup(Family::SL, 2, "dual:q=2");
  GroupHom hom = reductionHom(G, 1);
  CHECK(layerDim(G->ring(), 2, 1) == 4);
  std::set<std::vector<int>> seen;
  for (std::uint32_t e : hom.kernel.elems) seen.insert(layerCoords(G->ring(), 2, G->elem(e), 1));
  CHECK(seen.size() == 8);
  // Coordinates are additive: coords(gh) = coords(g) + coords(h).
  for (std::uint32_t e : hom.kernel.elems)
    for (std::uint32_t f : hom.kernel.elems) {
      auto ce = layerCoords(G->ring(), 2, G->elem(e), 1);
      auto cf = layerCoords(G->ring(), 2, G->elem(f), 1);
      auto cef = layerCoords(G->ring(), 2, G->elem(G->mul(e, f)), 1);
      for (std::size_t i = 0; i < ce.size(); ++i) CHECK(cef[i] == (ce[i] + cf[i]) % 2);
    }
}

TEST_CASE("truncated exponentials obey the level laws") {
  {
    GroupPtr G = makeGroup(Family::SL, 2, "dual:q=2");
    const Ring& R = G->ring();
    std::vector<Coord> t(R.len(), 0);
    t[1] = 1;
    Mat g = expLevel(R, 2, {0, 1, 0, 0}, t, 1);
    auto idx = G->tryIndexOf(G->canon(g));
    REQUIRE(idx.has_value());
    CHECK(G->elementOrder(*idx) == 2);
  }
  {
    GroupPtr G = makeGroup(Family::SL, 2, "trunc:q=3,d=1,k=3");
    const Ring& R = G->ring();
    GroupHom toLevel2 = reductionHom(G, 2);
    std::vector<Coord> t(R.len(), 0);
    t[1] = 1;
    std::vector<std::vector<int>> basis = {{0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 2}};
    for (const auto& X : basis)
      for (const auto& Y : basis) {
        std::vector<int> XY(4);
        for (int i = 0; i < 4; ++i) XY[i] = (X[i] + Y[i]) % 3;
        std::uint32_t lhs = G->mul(G->indexOf(G->canon(expLevel(R, 2, X, t, 1))),
                                   G->indexOf(G->canon(expLevel(R, 2, Y, t, 1))));
        std::uint32_t rhs = G->indexOf(G->canon(expLevel(R, 2, XY, t, 1)));
        CHECK(toLevel2.map[lhs] == toLevel2.map[rhs]);
      }
  }
  {
    GroupPtr G = makeGroup(Family::SL, 2, "dual:q=2");
    const Ring& R = G->ring();
    std::vector<Coord> notInIdeal(R.len(), 0);
    notInIdeal[0] = 1;
    CHECK_THROWS_AS(expLevel(R, 2, {0, 1, 0, 0}, notInIdeal, 1), NotInIdealPowerError);
  }
}

TEST_CASE("budgets abort enumeration before any work is done") {
  Budget tiny = defaultBudget();
  tiny.maxGroupElements = 100;
  GroupSpec spec;
  spec.fam = Family::SL;
  spec.n = 2;
  spec.R = Ring::parseSpec("q=9");
  CHECK_THROWS_AS(Group::enumerate(spec, tiny), BudgetExceededError);
  GroupPtr G = makeGroup(Family::SL, 2, "q=5");
  CHECK(!closureBounded(G, G->smallGens(), 10).has_value());
}
