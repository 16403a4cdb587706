#include "chevlab/field.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace chevlab {

namespace {

using Poly = std::vector<int>;  // coefficients, lowest degree first

int degOf(const Poly& a) {
  for (int i = int(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

Poly polyMulMod(const Poly& a, const Poly& b, int p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

// Remainder of a by monic divisor b.
Poly polyRem(Poly a, const Poly& b, int p) {
  int db = degOf(b);
  for (int da = degOf(a); da >= db; da = degOf(a)) {
    int c = a[da];
    if (c == 0) continue;
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = ((a[da - db + i] - c * b[i]) % p + p * p) % p;
  }
  return a;
}

bool dividesExactly(const Poly& divisor, const Poly& g, int p) {
  Poly r = polyRem(g, divisor, p);
  return degOf(r) < 0;
}

// Monic polynomial of degree d from an index, digits enumerated so that the
// constant coefficient varies slowest (low-degree-first lexicographic order).
Poly monicFromIndex(std::uint64_t v, int d, int p) {
  Poly g(d + 1, 0);
  g[d] = 1;
  for (int i = 0; i < d; ++i) {
    g[i] = int(v / powMod(p, d - 1 - i, std::uint64_t(1) << 62));
    v %= powMod(p, d - 1 - i, std::uint64_t(1) << 62);
  }
  return g;
}

bool isIrreducible(const Poly& g, int p) {
  int d = degOf(g);
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int dd = 1; 2 * dd <= d; ++dd) {
    std::uint64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= std::uint64_t(p);
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly h = monicFromIndex(v, dd, p);
      if (dividesExactly(h, g, p)) return false;
    }
  }
  return true;
}

}  // namespace

int Field::addSlow(int a, int b) const {
  int r = 0, mult = 1;
  for (int i = 0; i < f_; ++i) {
    int da = (a / mult) % p_;
    int db = (b / mult) % p_;
    r += ((da + db) % p_) * mult;
    mult *= p_;
  }
  return r;
}

int Field::powi(int a, std::uint64_t e) const {
  int r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<int> Field::fpBasis() const {
  std::vector<int> b(f_);
  int v = 1;
  for (int s = 0; s < f_; ++s) {
    b[s] = v;
    v *= p_;
  }
  return b;
}

int Field::digit(int a, int d) const {
  for (int i = 0; i < d; ++i) a /= p_;
  return a % p_;
}

FieldPtr Field::make(int p, int f) {
  if (p < 2 || !isPrime(std::uint64_t(p)))
    throw NonPrimeError("field characteristic must be prime, got " + std::to_string(p));
  if (f < 1) throw DegreeTooLargeError("field degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < f; ++i) {
    q *= std::uint64_t(p);
    if (q > (std::uint64_t(1) << 16))
      throw DegreeTooLargeError("field size p^f exceeds 2^16");
  }

  // Field caching: construction is deterministic, so share instances.
  static std::map<std::pair<int, int>, FieldPtr> cache;
  auto it = cache.find({p, f});
  if (it != cache.end()) return it->second;

  auto fld = std::shared_ptr<Field>(new Field());
  Field& F = *fld;
  F.p_ = p;
  F.f_ = f;
  F.q_ = int(q);

  if (f == 1) {
    F.modulus_ = {0};
  } else {
    std::uint64_t count = q;  // p^f candidate coefficient vectors
    bool found = false;
    for (std::uint64_t v = 0; v < count && !found; ++v) {
      Poly g = monicFromIndex(v, f, p);
      if (isIrreducible(g, p)) {
        F.modulus_.assign(g.begin(), g.begin() + f);
        found = true;
      }
    }
  }

  // Multiplication of codes via polynomial arithmetic (setup only).
  Poly mod(F.modulus_);
  mod.resize(f + 1, 0);
  if (f > 1) mod[f] = 1;
  auto codeToPoly = [&](int a) {
    Poly r(f, 0);
    for (int i = 0; i < f; ++i) {
      r[i] = a % p;
      a /= p;
    }
    return r;
  };
  auto polyToCode = [&](const Poly& r) {
    int a = 0, mult = 1;
    for (int i = 0; i < f; ++i) {
      a += (i < int(r.size()) ? r[i] : 0) * mult;
      mult *= p;
    }
    return a;
  };
  auto mulCodes = [&](int a, int b) {
    if (f == 1) return int((std::int64_t(a) * b) % p);
    Poly r = polyMulMod(codeToPoly(a), codeToPoly(b), p);
    return polyToCode(polyRem(r, mod, p));
  };

  // Discrete log tables from a multiplicative generator.
  F.expT_.assign(q, 0);
  F.logT_.assign(q, 0);
  int qi = int(q);
  for (int cand = 1; cand < qi; ++cand) {
    int v = 1;
    int ord = 0;
    do {
      v = mulCodes(v, cand);
      ++ord;
    } while (v != 1);
    if (ord == qi - 1) {
      F.gen_ = cand;
      break;
    }
  }
  {
    int v = 1;
    for (int e = 0; e < qi - 1; ++e) {
      F.expT_[e] = std::uint32_t(v);
      F.logT_[v] = std::uint32_t(e);
      v = mulCodes(v, F.gen_);
    }
  }

  F.negT_.assign(q, 0);
  for (int a = 0; a < qi; ++a) {
    int r = 0, mult = 1;
    for (int i = 0; i < f; ++i) {
      int d = (a / mult) % p;
      r += ((p - d) % p) * mult;
      mult *= p;
    }
    F.negT_[a] = std::uint16_t(r);
  }
  F.invT_.assign(q, 0);
  for (int a = 1; a < qi; ++a)
    F.invT_[a] = std::uint16_t(F.expT_[(qi - 1 - int(F.logT_[a])) % (qi - 1)]);
  F.frobT_.assign(q, 0);
  F.frobInvT_.assign(q, 0);
  for (int a = 0; a < qi; ++a) {
    int v = a;
    int r = 1 % qi;
    // a^p via repeated multiplication using log tables once available
    r = a == 0 ? 0 : int(F.expT_[(std::uint64_t(F.logT_[a]) * p) % (qi - 1)]);
    F.frobT_[a] = std::uint16_t(r);
    (void)v;
  }
  for (int a = 0; a < qi; ++a) F.frobInvT_[F.frobT_[a]] = std::uint16_t(a);

  constexpr int kTableCap = 512;
  if (qi <= kTableCap) {
    F.tables_ = true;
    F.addT_.assign(q * q, 0);
    F.mulT_.assign(q * q, 0);
    for (int a = 0; a < qi; ++a)
      for (int b = 0; b < qi; ++b) {
        F.addT_[a * qi + b] = std::uint16_t(F.addSlow(a, b));
        F.mulT_[a * qi + b] = std::uint16_t(mulCodes(a, b));
      }
  }

  FieldPtr out = fld;
  cache[{p, f}] = out;
  return out;
}

}  // namespace chevlab
