#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "chevlab/linalg.hpp"

using namespace chevlab;

namespace {

FpMat randomMat(int p, int rows, int cols, std::mt19937_64& rng) {
  FpMat m(p, rows, cols);
  for (int& x : m.a) x = int(rng() % std::uint64_t(p));
  return m;
}

}  // namespace

TEST_CASE("rref, rank and kernel agree on crafted matrices") {
  FpMat m(5, 3, 4);
  int vals[3][4] = {{1, 2, 3, 4}, {0, 1, 2, 3}, {0, 0, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = vals[i][j];
  CHECK(rankOf(m) == 3);
  auto ker = kernelBasis(m);
  REQUIRE(ker.size() == 1);
  for (const auto& v : ker) {
    for (int i = 0; i < 3; ++i) {
      int acc = 0;
      for (int j = 0; j < 4; ++j) acc += m.at(i, j) * v[j];
      CHECK(acc % 5 == 0);
    }
  }
}

TEST_CASE("matrix inverse round-trips and rejects singular input") {
  std::mt19937_64 rng(2024);
  for (int p : {2, 3, 7}) {
    for (int t = 0; t < 40; ++t) {
      FpMat m = randomMat(p, 4, 4, rng);
      auto inv = inverseOf(m);
      if (rankOf(m) < 4) {
        CHECK(!inv.has_value());
      } else {
        REQUIRE(inv.has_value());
        CHECK(m.mul(*inv) == FpMat::identity(p, 4));
        CHECK(inv->mul(m) == FpMat::identity(p, 4));
      }
    }
    FpMat z(p, 2, 2);
    CHECK(!inverseOf(z).has_value());
  }
}

TEST_CASE("solve finds a solution exactly for consistent systems") {
  std::mt19937_64 rng(515);
  for (int p : {2, 5}) {
    for (int t = 0; t < 30; ++t) {
      FpMat m = randomMat(p, 5, 3, rng);
      std::vector<int> x0(3);
      for (int& v : x0) v = int(rng() % std::uint64_t(p));
      std::vector<int> b = m.apply(x0);
      auto x = solve(m, b);
      REQUIRE(x.has_value());
      CHECK(m.apply(*x) == b);
    }
    // An inconsistent system: 0 = 1.
    FpMat m(p, 1, 2);
    CHECK(!solve(m, {1}).has_value());
  }
}

TEST_CASE("span basis is independent of insertion order") {
  std::mt19937_64 rng(99);
  for (int p : {2, 3}) {
    std::vector<std::vector<int>> vecs;
    for (int i = 0; i < 8; ++i) {
      std::vector<int> v(6);
      for (int& x : v) x = int(rng() % std::uint64_t(p));
      vecs.push_back(v);
    }
    FpSpan a(p, 6);
    for (const auto& v : vecs) a.add(v);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(vecs.begin(), vecs.end(), rng);
      FpSpan b(p, 6);
      for (const auto& v : vecs) b.add(v);
      CHECK(a.key() == b.key());
      CHECK(a.rank() == b.rank());
    }
    for (const auto& v : vecs) {
      CHECK(a.contains(v));
      CHECK(a.reduce(a.reduce(v)) == a.reduce(v));
    }
  }
}

TEST_CASE("incremental row reducer matches dense rank and solves systems") {
  std::mt19937_64 rng(4242);
  struct Config {
    int p, rows, cols;
  };
  for (Config cfg : {Config{2, 30, 130}, Config{5, 20, 37}, Config{2, 12, 40}, Config{3, 25, 25}}) {
    FpMat m = randomMat(cfg.p, cfg.rows, cfg.cols, rng);
    std::vector<int> x0(cfg.cols);
    for (int& v : x0) v = int(rng() % std::uint64_t(cfg.p));
    std::vector<int> b = m.apply(x0);

    RowReducer red(cfg.p, cfg.cols, 1);
    std::vector<int> order(cfg.rows);
    for (int i = 0; i < cfg.rows; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i : order) {
      std::vector<int> row(cfg.cols);
      for (int j = 0; j < cfg.cols; ++j) row[j] = m.at(i, j);
      CHECK(red.addRow(row, {b[i]}));
    }
    CHECK(red.rank() == rankOf(m));
    CHECK(red.consistent());
    auto sol = red.solution();
    REQUIRE(sol.has_value());
    REQUIRE(sol->size() == 1);
    CHECK(m.apply((*sol)[0]) == b);
  }
}

TEST_CASE("row reducer flags affine inconsistencies") {
  for (int p : {2, 7}) {
    RowReducer red(p, 3, 1);
    CHECK(red.addRow({1, 1, 0}, {1}));
    CHECK(red.addRow({0, 1, 1}, {0}));
    CHECK(red.addRow({1, 0, 1}, {1}));   // dependent but consistent
    CHECK(!red.addRow({1, 0, 1}, {0}));  // contradicts the rows above
    CHECK(!red.consistent());
    CHECK(red.inconsistentRows() == 1);
    CHECK(!red.solution().has_value());
  }
}

TEST_CASE("row reducer handles homogeneous streams deterministically") {
  std::mt19937_64 rng(31337);
  FpMat m = randomMat(2, 60, 200, rng);
  int reference = -1;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<int> order(m.rows);
    for (int i = 0; i < m.rows; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    RowReducer red(2, m.cols);
    for (int i : order) {
      std::vector<int> row(m.cols);
      for (int j = 0; j < m.cols; ++j) row[j] = m.at(i, j);
      red.addRow(row);
    }
    if (reference < 0) reference = red.rank();
    CHECK(red.rank() == reference);
  }
  CHECK(reference == rankOf(m));
}
