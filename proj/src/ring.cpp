#include "chevlab/ring.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

#include "json.hpp"

namespace chevlab {

namespace {

// Graded order, ties broken by larger power of the earlier variable first;
// for d = 2, k = 3 this yields 1, x1, x2, x1^2, x1*x2, x2^2.
bool monomialLess(const Monomial& a, const Monomial& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  return a.e > b.e;
}

bool divisibleBy(const Monomial& m, const std::vector<int>& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (m.e[i] < g[i]) return false;
  return true;
}

}  // namespace

RingPtr Ring::makeField(int p, int f) {
  auto F = Field::make(p, f);
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::Field;
  r->F_ = F;
  r->len_ = 1;
  r->nildeg_ = 1;
  r->card_ = std::uint64_t(F->q());
  return r;
}

RingPtr Ring::makeWitt2(int p, int f) {
  auto F = Field::make(p, f);
  std::uint64_t card = std::uint64_t(F->q()) * F->q();
  if (card > defaultBudget().maxRingCard)
    throw BudgetExceededError("Witt ring cardinality exceeds cap");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::Witt2;
  r->F_ = F;
  r->len_ = 2;
  r->nildeg_ = 2;
  r->card_ = card;
  // carry_[i] = binom(p,i)/p mod p, computed from Pascal's triangle mod p^2.
  int p2 = p * p;
  std::vector<int> row(p + 1, 0);
  row[0] = 1;
  for (int n = 1; n <= p; ++n)
    for (int i = n; i >= 1; --i) row[i] = (row[i] + row[i - 1]) % p2;
  r->carry_.assign(p, 0);
  for (int i = 1; i < p; ++i) r->carry_[i] = (row[i] / p) % p;
  return r;
}

RingPtr Ring::finishTruncPoly(FieldPtr F, int d, int k,
                              std::vector<std::vector<int>> extra) {
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::TruncPoly;
  r->F_ = F;
  r->d_ = d;
  r->k_ = k;
  r->extra_ = std::move(extra);

  // Surviving monomials: total degree < k, not divisible by an extra generator.
  std::vector<Monomial> basis;
  std::array<int, 3> e{0, 0, 0};
  auto emit = [&](auto&& self, int var) -> void {
    if (var == d) {
      Monomial m;
      for (int i = 0; i < d; ++i) m.e[i] = std::uint8_t(e[i]);
      if (m.deg() >= k) return;
      for (const auto& g : r->extra_)
        if (divisibleBy(m, g)) return;
      basis.push_back(m);
      return;
    }
    for (e[var] = 0; e[var] < k; ++e[var]) self(self, var + 1);
    e[var] = 0;
  };
  emit(emit, 0);
  std::sort(basis.begin(), basis.end(), monomialLess);
  r->basis_ = basis;
  r->len_ = int(basis.size());

  std::uint64_t card = 1;
  for (int i = 0; i < r->len_; ++i) {
    card *= std::uint64_t(F->q());
    if (card > defaultBudget().maxRingCard)
      throw BudgetExceededError("truncated polynomial ring cardinality exceeds cap");
  }
  r->card_ = card;

  int maxdeg = 0;
  for (const auto& m : basis) maxdeg = std::max(maxdeg, m.deg());
  r->nildeg_ = maxdeg + 1;

  // Structure table for basis products.
  std::map<std::array<std::uint8_t, 3>, int> index;
  for (int i = 0; i < r->len_; ++i) index[basis[i].e] = i;
  r->mulIdx_.assign(std::size_t(r->len_) * r->len_, -1);
  for (int i = 0; i < r->len_; ++i)
    for (int j = 0; j < r->len_; ++j) {
      Monomial prod;
      bool over = false;
      for (int t = 0; t < 3; ++t) {
        int s = basis[i].e[t] + basis[j].e[t];
        if (s > 255) over = true;
        prod.e[t] = std::uint8_t(s);
      }
      if (over || prod.deg() >= k) continue;
      bool killed = false;
      for (const auto& g : r->extra_)
        if (divisibleBy(prod, g)) killed = true;
      if (killed) continue;
      auto it = index.find(prod.e);
      if (it != index.end())
        r->mulIdx_[std::size_t(i) * r->len_ + j] = it->second;
    }
  return r;
}

RingPtr Ring::makeTruncPoly(int p, int f, int d, int k,
                            const std::vector<std::vector<int>>& extra) {
  if (d < 1 || d > 3) throw UnsupportedFamilyError("truncated ring needs 1 <= d <= 3");
  if (k < 2 || k > 4) throw UnsupportedFamilyError("truncated ring needs 2 <= k <= 4");
  auto F = Field::make(p, f);
  std::vector<std::vector<int>> ex;
  for (const auto& g : extra) {
    if (int(g.size()) != d) throw Error("extra monomial has wrong arity");
    int deg = 0;
    for (int v : g) {
      if (v < 0) throw Error("extra monomial has negative exponent");
      deg += v;
    }
    if (deg == 0) throw Error("extra monomial must not be a unit");
    ex.push_back(g);
  }
  return finishTruncPoly(F, d, k, std::move(ex));
}

void Ring::zero(Coord* r) const { std::memset(r, 0, sizeof(Coord) * len_); }

void Ring::one(Coord* r) const {
  zero(r);
  r[0] = 1;
}

bool Ring::isZero(const Coord* a) const {
  for (int i = 0; i < len_; ++i)
    if (a[i]) return false;
  return true;
}

void Ring::add(const Coord* a, const Coord* b, Coord* r) const {
  const Field& F = *F_;
  if (kind_ == RingKind::Witt2) {
    int a0 = a[0], a1 = a[1], b0 = b[0], b1 = b[1];
    int carry = 0;
    if (a0 && b0) {
      // C(a0,b0) = sum_{0<i<p} (binom(p,i)/p) a0^i b0^{p-i}
      int p = F.p();
      for (int i = 1; i < p; ++i) {
        if (!carry_[i]) continue;
        int term = F.mul(F.powi(a0, i), F.powi(b0, p - i));
        carry = F.add(carry, F.mul(carry_[i] % F.q(), term));
      }
    }
    r[0] = Coord(F.add(a0, b0));
    r[1] = Coord(F.sub(F.add(a1, b1), carry));
    return;
  }
  for (int i = 0; i < len_; ++i) r[i] = Coord(F.add(a[i], b[i]));
}

void Ring::neg(const Coord* a, Coord* r) const {
  const Field& F = *F_;
  if (kind_ == RingKind::Witt2 && F.p() == 2) {
    int a0 = a[0];
    r[0] = Coord(a0);
    r[1] = Coord(F.add(a[1], F.mul(a0, a0)));
    return;
  }
  for (int i = 0; i < len_; ++i) r[i] = Coord(F.neg(a[i]));
}

void Ring::sub(const Coord* a, const Coord* b, Coord* r) const {
  std::vector<Coord> nb(len_);
  neg(b, nb.data());
  add(a, nb.data(), r);
}

void Ring::mul(const Coord* a, const Coord* b, Coord* r) const {
  const Field& F = *F_;
  switch (kind_) {
    case RingKind::Field:
      r[0] = Coord(F.mul(a[0], b[0]));
      return;
    case RingKind::Witt2: {
      int a0 = a[0], a1 = a[1], b0 = b[0], b1 = b[1];
      int r0 = F.mul(a0, b0);
      int r1 = F.add(F.mul(F.frob(a0), b1), F.mul(F.frob(b0), a1));
      r[0] = Coord(r0);
      r[1] = Coord(r1);
      return;
    }
    case RingKind::TruncPoly: {
      // r may alias a or b, so accumulate separately.
      std::array<int, 32> acc{};
      for (int i = 0; i < len_; ++i) {
        if (!a[i]) continue;
        const std::int32_t* row = &mulIdx_[std::size_t(i) * len_];
        for (int j = 0; j < len_; ++j) {
          if (!b[j]) continue;
          std::int32_t t = row[j];
          if (t >= 0) acc[t] = F.add(acc[t], F.mul(a[i], b[j]));
        }
      }
      for (int i = 0; i < len_; ++i) r[i] = Coord(acc[i]);
      return;
    }
  }
}

bool Ring::inv(const Coord* a, Coord* r) const {
  const Field& F = *F_;
  if (!isUnit(a)) return false;
  switch (kind_) {
    case RingKind::Field:
      r[0] = Coord(F.inv(a[0]));
      return true;
    case RingKind::Witt2: {
      // (a0,a1)^{-1} = (a0^{-1}, -a1 a0^{-2p})
      int i0 = F.inv(a[0]);
      int i0p = F.frob(i0);
      r[0] = Coord(i0);
      r[1] = Coord(F.neg(F.mul(a[1], F.mul(i0p, i0p))));
      return true;
    }
    case RingKind::TruncPoly: {
      // a = c(1 + n) with n nilpotent: a^{-1} = c^{-1}(1 - n + n^2 - ...).
      int c = a[0];
      int cInv = F.inv(c);
      std::vector<Coord> n(len_), term(len_), sum(len_);
      for (int i = 0; i < len_; ++i) n[i] = Coord(F.neg(F.mul(cInv, a[i])));
      n[0] = 0;  // n = -(c^{-1}a - 1), so the geometric series uses +n only
      one(sum.data());
      one(term.data());
      for (int j = 1; j < nildeg_; ++j) {
        mul(term.data(), n.data(), term.data());
        add(sum.data(), term.data(), sum.data());
      }
      for (int i = 0; i < len_; ++i) r[i] = Coord(F.mul(cInv, sum[i]));
      return true;
    }
  }
  return false;
}

void Ring::liftResidue(int fieldCode, Coord* r) const {
  zero(r);
  r[0] = Coord(fieldCode);
}

void Ring::scaleRes(int fieldCode, const Coord* a, Coord* r) const {
  std::vector<Coord> lift(len_);
  liftResidue(fieldCode, lift.data());
  mul(lift.data(), a, r);
}

std::vector<std::vector<Coord>> Ring::idealPowerBasis(int i) const {
  std::vector<std::vector<Coord>> out;
  if (i < 0) i = 0;
  switch (kind_) {
    case RingKind::Field:
      if (i == 0) {
        std::vector<Coord> e(1, 1);
        out.push_back(e);
      }
      break;
    case RingKind::Witt2: {
      if (i <= 0) {
        out.push_back({1, 0});
        out.push_back({0, 1});
      } else if (i == 1) {
        out.push_back({0, 1});
      }
      break;
    }
    case RingKind::TruncPoly:
      for (int t = 0; t < len_; ++t)
        if (basis_[t].deg() >= i) {
          std::vector<Coord> e(len_, 0);
          e[t] = 1;
          out.push_back(e);
        }
      break;
  }
  return out;
}

std::vector<std::vector<Coord>> Ring::fpIdealBasis(int i) const {
  std::vector<std::vector<Coord>> out;
  const Field& F = *F_;
  for (const auto& b : idealPowerBasis(i)) {
    for (int code : F.fpBasis()) {
      std::vector<Coord> e(len_);
      if (kind_ == RingKind::Witt2 && b[0] == 0) {
        // theta^s * p-slot: act on the second Witt coordinate directly so the
        // F_p-span of the layer is exactly {(0, y) : y in F}.
        e[0] = 0;
        e[1] = Coord(F.mul(code, b[1]));
      } else {
        scaleRes(code, b.data(), e.data());
      }
      out.push_back(e);
    }
  }
  return out;
}

std::vector<std::vector<Coord>> Ring::additiveGenerators() const {
  if (kind_ == RingKind::Witt2) {
    // Teichmuller lifts of an F_p-basis of F generate (W_2(F), +) = (Z/p^2)^f.
    std::vector<std::vector<Coord>> out;
    for (int code : F_->fpBasis()) out.push_back({Coord(code), 0});
    return out;
  }
  return fpIdealBasis(0);
}

bool Ring::inIdealPower(const Coord* a, int i) const {
  if (i <= 0) return true;
  switch (kind_) {
    case RingKind::Field:
      return isZero(a);
    case RingKind::Witt2:
      if (i == 1) return a[0] == 0;
      return isZero(a);
    case RingKind::TruncPoly:
      for (int t = 0; t < len_; ++t)
        if (a[t] && basis_[t].deg() < i) return false;
      return true;
  }
  return false;
}

RingPtr Ring::quotient(int i) const {
  if (i < 1 || i > nildeg_) throw Error("quotient level out of range");
  if (i == nildeg_) {
    // R/m^nildeg = R; return an identical ring.
    switch (kind_) {
      case RingKind::Field:
        return makeField(F_->p(), F_->f());
      case RingKind::Witt2:
        return makeWitt2(F_->p(), F_->f());
      case RingKind::TruncPoly:
        return finishTruncPoly(F_, d_, k_, extra_);
    }
  }
  if (i == 1) return makeField(F_->p(), F_->f());
  // Only TruncPoly has intermediate quotients (Witt2 nildeg is 2).
  return finishTruncPoly(F_, d_, i, extra_);
}

void Ring::project(const Ring& target, const Coord* a, Coord* r) const {
  if (target.len_ > len_) throw Error("projection target is larger than source");
  if (target.kind_ == RingKind::Field) {
    r[0] = Coord(residue(a));
    return;
  }
  // Graded basis order makes the quotient coordinates a prefix.
  for (int i = 0; i < target.len_; ++i) r[i] = a[i];
}

void Ring::elementAt(std::uint64_t index, Coord* r) const {
  std::uint64_t q = std::uint64_t(F_->q());
  for (int i = 0; i < len_; ++i) {
    r[i] = Coord(index % q);
    index /= q;
  }
}

std::uint64_t Ring::indexOf(const Coord* a) const {
  std::uint64_t q = std::uint64_t(F_->q());
  std::uint64_t idx = 0;
  for (int i = len_ - 1; i >= 0; --i) idx = idx * q + a[i];
  return idx;
}

std::string Ring::toJson() const {
  nlohmann::json j;
  j["p"] = F_->p();
  j["f"] = F_->f();
  std::vector<int> mod = F_->modulus();
  mod.push_back(1);
  j["modulus"] = mod;
  switch (kind_) {
    case RingKind::Field:
      j["kind"] = "field";
      break;
    case RingKind::Witt2:
      j["kind"] = "witt2";
      break;
    case RingKind::TruncPoly:
      j["kind"] = "truncpoly";
      j["d"] = d_;
      j["k"] = k_;
      j["extra"] = extra_;
      break;
  }
  return j.dump();
}

RingPtr Ring::fromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  int p = j.at("p").get<int>();
  int f = j.at("f").get<int>();
  if (kind == "field") return makeField(p, f);
  if (kind == "witt2") return makeWitt2(p, f);
  if (kind == "truncpoly") {
    std::vector<std::vector<int>> extra;
    if (j.contains("extra")) extra = j["extra"].get<std::vector<std::vector<int>>>();
    return makeTruncPoly(p, f, j.at("d").get<int>(), j.at("k").get<int>(), extra);
  }
  throw Error("unknown ring kind: " + kind);
}

RingPtr Ring::parseSpec(const std::string& spec) {
  std::string kind = "field";
  std::string rest = spec;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    kind = spec.substr(0, colon);
    rest = spec.substr(colon + 1);
  } else if (spec.rfind("q=", 0) != 0) {
    throw Error("cannot parse ring spec: " + spec);
  }
  std::map<std::string, int> kv;
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("cannot parse ring spec item: " + item);
    kv[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
  }
  if (!kv.count("q")) throw Error("ring spec needs q=");
  int q = kv["q"];
  int p = 0, f = 0;
  for (int cand = 2; cand <= q; ++cand) {
    if (!isPrime(std::uint64_t(cand))) continue;
    int v = q, deg = 0;
    while (v % cand == 0) {
      v /= cand;
      ++deg;
    }
    if (v == 1 && deg >= 1) {
      p = cand;
      f = deg;
      break;
    }
  }
  if (p == 0) throw Error("q must be a prime power in ring spec: " + spec);
  if (kind == "field") return makeField(p, f);
  if (kind == "witt2") return makeWitt2(p, f);
  if (kind == "dual") return makeTruncPoly(p, f, 1, 2);
  if (kind == "trunc") {
    int d = kv.count("d") ? kv["d"] : 1;
    int k = kv.count("k") ? kv["k"] : 2;
    return makeTruncPoly(p, f, d, k);
  }
  throw Error("unknown ring spec kind: " + kind);
}

std::string Ring::name() const {
  std::ostringstream os;
  switch (kind_) {
    case RingKind::Field:
      os << "F_" << F_->q();
      break;
    case RingKind::Witt2:
      os << "W2(F_" << F_->q() << ")";
      break;
    case RingKind::TruncPoly:
      if (d_ == 1 && k_ == 2 && extra_.empty()) {
        os << "F_" << F_->q() << "[eps]";
      } else {
        os << "F_" << F_->q() << "[";
        for (int i = 0; i < d_; ++i) os << (i ? "," : "") << "x" << (i + 1);
        os << "]/m^" << k_;
        if (!extra_.empty()) os << "+extra";
      }
      break;
  }
  return os.str();
}

}  // namespace chevlab
