#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "chevlab/ring.hpp"

using namespace chevlab;

namespace {

std::vector<Coord> elemAt(const Ring& R, std::uint64_t i) {
  std::vector<Coord> v(R.len());
  R.elementAt(i, v.data());
  return v;
}

std::vector<Coord> mulv(const Ring& R, const std::vector<Coord>& a, const std::vector<Coord>& b) {
  std::vector<Coord> r(R.len());
  R.mul(a.data(), b.data(), r.data());
  return r;
}

std::vector<Coord> addv(const Ring& R, const std::vector<Coord>& a, const std::vector<Coord>& b) {
  std::vector<Coord> r(R.len());
  R.add(a.data(), b.data(), r.data());
  return r;
}

}  // namespace

TEST_CASE("field moduli are the fixed minimal polynomials") {
  CHECK(Field::make(2, 2)->modulus() == std::vector<int>{1, 1});     // x^2+x+1
  CHECK(Field::make(2, 3)->modulus() == std::vector<int>{1, 0, 1});  // x^3+x^2+1
  CHECK(Field::make(3, 2)->modulus() == std::vector<int>{1, 0});     // x^2+1
  CHECK(Field::make(5, 2)->modulus() == std::vector<int>{1, 1});     // x^2+x+1 over F_5
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {2, 4}}) {
    FieldPtr Fp = Field::make(p, f);
    const Field& F = *Fp;
    int q = F.q();
    // Multiplicative inverses and the primitive element's order.
    for (int a = 1; a < q; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    int x = 1;
    int ord = 0;
    do {
      x = F.mul(x, F.primitive());
      ++ord;
    } while (x != 1);
    CHECK(ord == q - 1);
    // Frobenius is a ring endomorphism with f-fold iterate the identity.
    for (int a = 0; a < q; ++a) {
      CHECK(F.frob(a) == F.powi(a, std::uint64_t(p)));
      CHECK(F.frobInv(F.frob(a)) == a);
      int it = a;
      for (int i = 0; i < f; ++i) it = F.frob(it);
      CHECK(it == a);
      for (int b = 0; b < q; ++b) {
        CHECK(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)));
        CHECK(F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b)));
      }
    }
    // Associativity and distributivity on random triples.
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 200; ++t) {
      int a = int(rng() % q), b = int(rng() % q), c = int(rng() % q);
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}

TEST_CASE("length-2 Witt vectors over F_p match Z/p^2 through the ghost map") {
  for (int p : {2, 3, 5, 7}) {
    RingPtr Rp = Ring::makeWitt2(p, 1);
    const Ring& R = *Rp;
    const int p2 = p * p;
    REQUIRE(R.card() == std::uint64_t(p2));
    // ghost(a0, a1) = a0^p + p*a1 mod p^2 must be a ring isomorphism.
    auto ghost = [&](const std::vector<Coord>& a) {
      int g = 1;
      for (int i = 0; i < p; ++i) g = (g * a[0]) % p2;
      if (a[0] == 0) g = 0;
      return (g + p * a[1]) % p2;
    };
    std::set<int> images;
    for (std::uint64_t i = 0; i < R.card(); ++i) images.insert(ghost(elemAt(R, i)));
    CHECK(images.size() == std::size_t(p2));
    for (std::uint64_t i = 0; i < R.card(); ++i)
      for (std::uint64_t j = 0; j < R.card(); ++j) {
        auto a = elemAt(R, i), b = elemAt(R, j);
        CHECK(ghost(addv(R, a, b)) == (ghost(a) + ghost(b)) % p2);
        CHECK(ghost(mulv(R, a, b)) == (ghost(a) * ghost(b)) % p2);
      }
  }
}

TEST_CASE("Witt vectors over F_4: doubling is the Frobenius twist into pW") {
  RingPtr Rp = Ring::makeWitt2(2, 2);
  const Ring& R = *Rp;
  const Field& F = R.field();
  REQUIRE(R.card() == 16);
  for (std::uint64_t i = 0; i < R.card(); ++i) {
    auto a = elemAt(R, i);
    auto d = addv(R, a, a);
    CHECK(d[0] == 0);
    CHECK(d[1] == Coord(F.frob(a[0])));
  }
  // Teichmuller lifts are multiplicative and generate (R, +).
  std::vector<Coord> la(2), lb(2), lab(2);
  for (int a = 0; a < F.q(); ++a)
    for (int b = 0; b < F.q(); ++b) {
      R.liftResidue(a, la.data());
      R.liftResidue(b, lb.data());
      R.liftResidue(F.mul(a, b), lab.data());
      CHECK(mulv(R, la, lb) == lab);
    }
  auto gens = R.additiveGenerators();
  std::set<std::vector<Coord>> closure;
  closure.insert(std::vector<Coord>(R.len(), 0));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<Coord>> cur(closure.begin(), closure.end());
    for (const auto& x : cur)
      for (const auto& g : gens) {
        auto y = addv(R, x, g);
        if (closure.insert(y).second) grew = true;
      }
  }
  CHECK(closure.size() == R.card());
}

TEST_CASE("truncated polynomial ring F_2[x1,x2]/m^3") {
  RingPtr Rp = Ring::makeTruncPoly(2, 1, 2, 3);
  const Ring& R = *Rp;
  CHECK(R.card() == 64);
  CHECK(R.len() == 6);
  CHECK(R.nildeg() == 3);
  // Graded monomial order: 1, x1, x2, x1^2, x1x2, x2^2.
  std::vector<std::array<int, 2>> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(R.monomials().size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(int(R.monomials()[i].e[0]) == want[i][0]);
    CHECK(int(R.monomials()[i].e[1]) == want[i][1]);
  }
  CHECK(R.idealPowerBasis(1).size() == 5);
  CHECK(R.idealPowerBasis(2).size() == 3);
  // m^3 = 0: the product of any three maximal-ideal basis elements vanishes.
  for (const auto& a : R.idealPowerBasis(1))
    for (const auto& b : R.idealPowerBasis(1))
      for (const auto& c : R.idealPowerBasis(1)) CHECK(R.isZero(mulv(R, mulv(R, a, b), c).data()));
  // Units are exactly the elements with nonzero residue, and inverses invert.
  int units = 0;
  for (std::uint64_t i = 0; i < R.card(); ++i) {
    auto a = elemAt(R, i);
    std::vector<Coord> r(R.len());
    bool u = R.inv(a.data(), r.data());
    CHECK(u == (R.residue(a.data()) != 0));
    if (u) {
      ++units;
      std::vector<Coord> prod = mulv(R, a, r), one(R.len());
      R.one(one.data());
      CHECK(prod == one);
    }
  }
  CHECK(units == 32);
}

TEST_CASE("quotients and projection commute with arithmetic") {
  for (const char* spec : {"trunc:q=2,d=2,k=3", "witt2:q=9", "dual:q=7"}) {
    RingPtr Rp = Ring::parseSpec(spec);
    const Ring& R = *Rp;
    RingPtr Qp = R.quotient(1);
    CHECK(Qp->kind() == RingKind::Field);
    RingPtr Sp = R.quotient(R.nildeg() > 1 ? 2 : 1);
    const Ring& S = *Sp;
    std::mt19937_64 rng(777);
    for (int t = 0; t < 300; ++t) {
      auto a = elemAt(R, rng() % R.card());
      auto b = elemAt(R, rng() % R.card());
      std::vector<Coord> pa(S.len()), pb(S.len()), pab(S.len());
      R.project(S, a.data(), pa.data());
      R.project(S, b.data(), pb.data());
      R.project(S, mulv(R, a, b).data(), pab.data());
      CHECK(mulv(S, pa, pb) == pab);
      R.project(S, addv(R, a, b).data(), pab.data());
      CHECK(addv(S, pa, pb) == pab);
    }
  }
}

TEST_CASE("ring axioms on random triples for every supported kind") {
  std::vector<RingPtr> rings;
  rings.push_back(Ring::makeField(3, 2));
  rings.push_back(Ring::makeWitt2(2, 2));
  rings.push_back(Ring::makeWitt2(5, 1));
  rings.push_back(Ring::makeTruncPoly(3, 1, 1, 3));
  rings.push_back(Ring::makeTruncPoly(2, 2, 2, 2));
  for (const RingPtr& Rp : rings) {
    const Ring& R = *Rp;
    std::mt19937_64 rng(987654321);
    for (int t = 0; t < 250; ++t) {
      auto a = elemAt(R, rng() % R.card());
      auto b = elemAt(R, rng() % R.card());
      auto c = elemAt(R, rng() % R.card());
      CHECK(mulv(R, mulv(R, a, b), c) == mulv(R, a, mulv(R, b, c)));
      CHECK(addv(R, addv(R, a, b), c) == addv(R, a, addv(R, b, c)));
      CHECK(mulv(R, a, b) == mulv(R, b, a));
      CHECK(mulv(R, a, addv(R, b, c)) == addv(R, mulv(R, a, b), mulv(R, a, c)));
    }
  }
}

TEST_CASE("element enumeration round-trips") {
  for (const char* spec : {"q=8", "witt2:q=4", "trunc:q=3,d=1,k=3", "dual:q=9"}) {
    RingPtr Rp = Ring::parseSpec(spec);
    const Ring& R = *Rp;
    for (std::uint64_t i = 0; i < R.card() && i < 4096; ++i) {
      auto a = elemAt(R, i);
      CHECK(R.indexOf(a.data()) == i);
    }
  }
}

TEST_CASE("ring spec parsing and JSON round-trip") {
  CHECK(Ring::parseSpec("q=9")->card() == 9);
  CHECK(Ring::parseSpec("witt2:q=5")->card() == 25);
  CHECK(Ring::parseSpec("dual:q=7")->card() == 49);
  CHECK(Ring::parseSpec("dual:q=7")->nildeg() == 2);
  CHECK(Ring::parseSpec("trunc:q=2,d=2,k=3")->card() == 64);
  CHECK_THROWS_AS(Ring::parseSpec("nope:q=4"), Error);
  CHECK_THROWS_AS(Ring::parseSpec("q=6"), Error);
  for (const char* spec : {"q=9", "witt2:q=4", "trunc:q=2,d=2,k=3", "dual:q=25"}) {
    RingPtr Rp = Ring::parseSpec(spec);
    RingPtr back = Ring::fromJson(Rp->toJson());
    CHECK(back->toJson() == Rp->toJson());
    CHECK(back->card() == Rp->card());
    CHECK(back->name() == Rp->name());
  }
}

TEST_CASE("cardinality budget is enforced") {
  CHECK_THROWS_AS(Ring::makeTruncPoly(251, 2, 3, 4), Error);
}
