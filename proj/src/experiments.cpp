#include "chevlab/experiments.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "json.hpp"

#include "chevlab/cohom.hpp"
#include "chevlab/lie.hpp"
#include "chevlab/ring.hpp"

namespace chevlab {

void ExperimentResult::add(const std::string& valueName, long long measured, long long expected,
                           bool formulaLevel) {
  values.push_back({valueName, measured, expected, formulaLevel});
}

void ExperimentResult::note(const std::string& text) { notes.push_back(text); }

void ExperimentResult::finish() {
  pass = true;
  for (const auto& v : values) {
    if (v.measured != v.expected) pass = false;
  }
}

const MeasuredValue* ExperimentResult::find(const std::string& valueName) const {
  for (const auto& v : values) {
    if (v.name == valueName) return &v;
  }
  return nullptr;
}

std::string toJson(const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["inputs"] = r.inputs;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  j["values"] = nlohmann::ordered_json::array();
  for (const auto& v : r.values) {
    nlohmann::ordered_json e;
    e["name"] = v.name;
    e["measured"] = v.measured;
    e["expected"] = v.expected;
    if (v.formulaLevel) e["formula_level"] = true;
    e["ok"] = (v.measured == v.expected);
    j["values"].push_back(e);
  }
  j["notes"] = r.notes;
  return j.dump(2);
}

namespace {

// Exhaustive per-fiber lift search is attempted when |K|^{#gens} stays below
// this cap; beyond it the complement fiber is settled by the splitting test
// plus coboundary enumeration.
constexpr std::uint64_t kComboCap = 16384;

// Elimination budget for cocycle systems over a whole congruence shell
// (the default budget is sized for residue-point groups).
Budget shellBudget(const Budget& base) {
  Budget b = base;
  b.maxElimUnknowns = std::uint64_t(1) << 20;
  return b;
}

// Index of the entrywise residue lift of a residue-group element, i.e. the
// unique preimage with vanishing higher coordinates.
std::uint32_t constLiftIndex(const Group& g, const Group& dst, std::uint32_t r) {
  const Ring& R = g.ring();
  const Ring& Rd = dst.ring();
  const int n = g.n();
  Mat dm = dst.elem(r);
  Mat sm;
  sm.a.resize(std::size_t(n) * n * R.len());
  for (int e = 0; e < n * n; ++e) {
    int code = dm.a[std::size_t(e) * Rd.len()];
    R.liftResidue(code, &sm.a[std::size_t(e) * R.len()]);
  }
  return g.indexOf(g.canon(sm));
}

// Congruence-kernel module on cocycle coordinates, carried by the residue
// group's small generators.
GModule kernelModule(const GroupHom& hom, const ExtensionCocycle& tc) {
  GModule m;
  m.p = tc.p;
  m.dim = tc.kdim;
  m.gens = hom.dst->smallGens();
  for (auto r : m.gens) m.act.push_back(tc.act[r]);
  return m;
}

// All elements of a kernel-coordinate span, as group element indices.
std::vector<std::uint32_t> spanElements(const ExtensionCocycle& tc, const FpSpan& s) {
  std::vector<std::uint32_t> out;
  std::vector<int> c(s.rank(), 0);
  while (true) {
    std::vector<int> v(tc.kdim, 0);
    for (int i = 0; i < s.rank(); ++i) {
      for (int j = 0; j < tc.kdim; ++j) v[j] = (v[j] + c[i] * s.basis()[i][j]) % tc.p;
    }
    out.push_back(kernelElement(tc, v));
    int k = 0;
    while (k < s.rank() && ++c[k] == tc.p) {
      c[k] = 0;
      ++k;
    }
    if (k == s.rank()) break;
  }
  return out;
}

// Kernel-coordinate span of H cap K.
FpSpan meetSpan(const ExtensionCocycle& tc, const Subgroup& h, const Subgroup& kernel) {
  FpSpan s(tc.p, tc.kdim);
  for (auto e : h.elems) {
    if (kernel.contains(e)) s.add(kernelCoords(tc, e));
  }
  return s;
}

struct FoundSubgroup {
  Subgroup sub;
  std::uint64_t meetOrder = 0;
  // Subgroups sharing a nonnegative cohort are conjugate by construction
  // (coboundary twists of one complement); -1 means unknown.
  int cohort = -1;
};

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/** Enumerates every proper residually full subgroup.  A residually full H is
 * generated by N = H cap K together with one lift of each residue generator,
 * so scanning kernel twists of a fixed section per proper submodule N covers
 * everything; closures that pick up extra kernel elements are discarded here
 * and found again under their true meet.  Returns deduplicated subgroups. */
std::vector<FoundSubgroup> enumerateProperRF(GroupPtr g, const GroupHom& hom,
                                             const ExtensionCocycle& tc,
                                             const std::vector<FpSpan>& subs,
                                             const Budget& budget,
                                             std::vector<std::string>* notes) {
  auto dst = hom.dst;
  auto rgens = dst->smallGens();
  const std::uint64_t kOrder = hom.kernel.order();
  const std::uint64_t dstOrder = dst->order();
  std::map<std::vector<std::uint32_t>, FoundSubgroup> found;
  for (const auto& N : subs) {
    const std::uint64_t nOrder = ipow(tc.p, N.rank());
    if (nOrder == kOrder) continue;  // full kernel: the whole group, not proper
    const std::uint64_t combos = ipow(kOrder, int(rgens.size()));
    if (combos <= kComboCap) {
      std::vector<std::uint32_t> nGens;
      for (const auto& b : N.basis()) nGens.push_back(kernelElement(tc, b));
      const std::uint64_t bound = nOrder * dstOrder;
      for (std::uint64_t t = 0; t < combos; ++t) {
        std::uint64_t tt = t;
        std::vector<std::uint32_t> gens = nGens;
        for (auto r : rgens) {
          std::uint32_t k = hom.kernel.elems[tt % kOrder];
          tt /= kOrder;
          gens.push_back(g->mul(k, tc.sigma[r]));
        }
        auto c = closureBounded(g, gens, bound);
        if (!c) continue;
        auto meet = intersect(*c, hom.kernel);
        if (meet.order() != nOrder) continue;
        std::set<std::uint32_t> img;
        for (auto e : c->elems) img.insert(hom.map[e]);
        if (img.size() != dstOrder) continue;
        if (!found.count(c->elems)) found[c->elems] = FoundSubgroup{*c, nOrder};
      }
    } else if (N.rank() == 0) {
      // Complement fiber too large to scan: a meet-free residually full
      // subgroup is exactly a complement, so the splitting test decides
      // existence and coboundary twists enumerate the complements when the
      // first cohomology vanishes.
      auto rep = checkSplitting(hom, budget);
      if (!rep.splits) {
        if (notes) notes->push_back("complement fiber: extension does not split, no subgroups");
        continue;
      }
      GModule m = kernelModule(hom, tc);
      Subgroup hd = fullSubgroup(dst);
      hd.gens = m.gens;
      int h1 = h1Dim(hd, m, budget);
      if (h1 != 0) {
        throw BudgetExceededError(
            "classifyResiduallyFull: complement fiber exceeds the lift-search budget and "
            "h1 does not vanish");
      }
      Subgroup c0 = subgroupFromElems(g, rep.complement->elems);
      for (auto v : hom.kernel.elems) {
        std::vector<std::uint32_t> conj;
        conj.reserve(c0.elems.size());
        for (auto e : c0.elems) conj.push_back(g->conj(v, e));
        std::sort(conj.begin(), conj.end());
        if (!found.count(conj)) {
          Subgroup s;
          s.parent = g;
          s.elems = conj;
          s.member.assign(g->order(), false);
          for (auto e : conj) s.member[e] = true;
          std::vector<std::uint32_t> gg;
          for (auto e : c0.gens) gg.push_back(g->conj(v, e));
          s.gens = gg;
          found[conj] = FoundSubgroup{std::move(s), 1};
        }
      }
      if (notes) {
        notes->push_back("complement fiber: split with vanishing h1, " +
                         std::to_string(found.size()) + " coboundary twists");
      }
    } else {
      throw BudgetExceededError(
          "classifyResiduallyFull: intermediate fiber exceeds the lift-search budget");
    }
  }
  std::vector<FoundSubgroup> out;
  out.reserve(found.size());
  for (auto& [key, v] : found) out.push_back(std::move(v));
  return out;
}

// Partitions subgroups into ambient conjugacy classes.  Conjugation preserves
// order and kernel meet, so transporter searches run only inside buckets.
std::vector<std::vector<std::size_t>> conjClasses(const std::vector<FoundSubgroup>& subs) {
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    buckets[{subs[i].sub.order(), subs[i].meetOrder}].push_back(i);
  }
  for (auto& [key, idxs] : buckets) {
    std::vector<int> cls(idxs.size(), -1);
    for (std::size_t a = 0; a < idxs.size(); ++a) {
      if (cls[a] >= 0) continue;
      cls[a] = int(classes.size());
      classes.push_back({idxs[a]});
      for (std::size_t b = a + 1; b < idxs.size(); ++b) {
        if (cls[b] >= 0) continue;
        if (areConjugate(subs[idxs[a]].sub, subs[idxs[b]].sub)) {
          cls[b] = cls[a];
          classes[cls[a]].push_back(idxs[b]);
        }
      }
    }
  }
  return classes;
}

}  // namespace

ResidualClassification classifyResiduallyFull(const GroupSpec& spec, std::uint64_t seed,
                                              const Budget& budget) {
  ResidualClassification rc;
  ExperimentResult& res = rc.result;
  res.name = "classify_residually_full";
  res.seed = seed;
  auto g = Group::enumerate(spec, budget);
  res.inputs = g->spec().ring->name();
  auto hom = reductionHom(g, 1, budget);
  auto tc = extensionCocycle(hom, budget);
  GModule m = kernelModule(hom, tc);
  auto subs = allSubmodules(m, budget);

  std::vector<FoundSubgroup> found = enumerateProperRF(g, hom, tc, subs, budget, &res.notes);
  found.push_back(FoundSubgroup{fullSubgroup(g), hom.kernel.order()});

  // Global invariant: the kernel meet of every subgroup found is a submodule.
  long long meetOk = 1;
  for (const auto& f : found) {
    FpSpan s = meetSpan(tc, f.sub, hom.kernel);
    bool inLattice = false;
    for (const auto& sub : subs) {
      if (s == sub) inLattice = true;
    }
    if (!inLattice || ipow(tc.p, s.rank()) != f.meetOrder) meetOk = 0;
  }

  auto classes = conjClasses(found);
  std::sort(classes.begin(), classes.end(),
            [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
              return found[a.front()].sub.order() > found[b.front()].sub.order();
            });
  rc.classCount = int(classes.size());
  for (const auto& cls : classes) {
    rc.representatives.push_back(found[cls.front()].sub);
    rc.classSizes.push_back(cls.size());
  }

  // Stability under a seeded random ambient conjugation: each conjugated
  // representative is still residually full and lands back in its own class.
  std::mt19937_64 rng(seed);
  const std::uint32_t a = std::uint32_t(rng() % g->order());
  long long stable = 1;
  for (std::size_t c = 0; c < rc.representatives.size(); ++c) {
    const Subgroup& rep = rc.representatives[c];
    if (rep.order() == g->order()) continue;
    std::vector<std::uint32_t> conj;
    conj.reserve(rep.elems.size());
    for (auto e : rep.elems) conj.push_back(g->conj(a, e));
    Subgroup moved = subgroupFromElems(g, std::move(conj));
    std::set<std::uint32_t> img;
    for (auto e : moved.elems) img.insert(hom.map[e]);
    if (img.size() != hom.dst->order()) stable = 0;
    if (intersect(moved, hom.kernel).order() != found[classes[c].front()].meetOrder) stable = 0;
    if (!areConjugate(moved, rep)) stable = 0;
  }

  // Subgroups containing the whole kernel are preimages of residue subgroups,
  // so the residually full one among them is the full group alone.
  std::vector<std::uint32_t> kgens = hom.kernel.gens;
  for (auto r : hom.dst->smallGens()) kgens.push_back(tc.sigma[r]);
  long long kernelClasses = closureOf(g, kgens).order() == g->order() ? 1 : 0;

  res.add("meet_submodule_ok", meetOk, 1);
  res.add("conjugation_stable", stable, 1);
  res.add("kernel_containing_classes", kernelClasses, 1);
  res.note("ambient order " + std::to_string(g->order()) + ", kernel order " +
           std::to_string(hom.kernel.order()) + ", lattice size " + std::to_string(subs.size()));
  res.finish();
  return rc;
}

ExperimentResult exampleSl2Char2(int d, int q, const Budget& budget) {
  ExperimentResult res;
  res.name = "example_sl2_char2";
  res.inputs = "d=" + std::to_string(d) + ", q=" + std::to_string(q);
  if (q == 4) {
    if (d != 2) throw UnsupportedDescriptorError("exampleSl2Char2: q=4 is checked at d=2");
    // Order formulas only: |SL2(R)| = |SL2(F)| |m|^3 with |m| = q^5, and the
    // generated subgroup has order |SL2(F)| |m| |m'|^2 with |m'| = q^4.
    const long long sl2f = 60;
    const long long mSize = 1024, mPrime = 256;
    const long long ambient = sl2f * mSize * mSize * mSize;
    const long long sub = sl2f * mSize * mPrime * mPrime;
    res.add("ambient_order", ambient, 64424509440LL, true);
    res.add("subgroup_order", sub, 4026531840LL, true);
    res.add("index", ambient / sub, 16, true);
    res.add("index_formula", ambient / sub, ipow(4, 2), true);
    res.note("formula-level: ambient too large to enumerate; index still equals q^{d(d-1)}");
    res.finish();
    return res;
  }
  if (q != 2 || (d != 1 && d != 2)) {
    throw UnsupportedDescriptorError("exampleSl2Char2: enumerated instances are d in {1,2}, q=2");
  }
  auto Rp = Ring::parseSpec("trunc:q=2,d=" + std::to_string(d) + ",k=3");
  const Ring& R = *Rp;
  auto g = Group::enumerate({Family::SL, 2, Rp}, budget);
  const int len = R.len();
  auto hom1 = reductionHom(g, 1, budget);
  auto dst1 = hom1.dst;

  // H1: the constant points.
  std::vector<std::uint32_t> h1e;
  for (std::uint32_t r = 0; r < dst1->order(); ++r) h1e.push_back(constLiftIndex(*g, *dst1, r));

  // m and the span m' of the variables and their squares.
  std::vector<std::vector<Coord>> mR, mPrime;
  std::vector<Coord> a(len);
  const auto& mons = R.monomials();
  for (std::uint64_t i = 0; i < R.card(); ++i) {
    R.elementAt(i, a.data());
    if (!R.inIdealPower(a.data(), 1)) continue;
    mR.push_back(a);
    bool pure = true;
    for (int t = 0; t < len; ++t) {
      if (a[t] == 0) continue;
      const auto& e = mons[t].e;
      const int deg = e[0] + e[1] + e[2];
      bool pureMon = false;
      for (int v = 0; v < 3; ++v) {
        if (int(e[v]) == deg && (deg == 1 || deg == 2)) pureMon = true;
      }
      if (!pureMon) pure = false;
    }
    if (pure) mPrime.push_back(a);
  }

  auto matOf = [&](const std::vector<Coord>& e11, const std::vector<Coord>& e12,
                   const std::vector<Coord>& e21, const std::vector<Coord>& e22) {
    Mat mm;
    mm.a.resize(std::size_t(4) * len);
    std::copy(e11.begin(), e11.end(), mm.a.begin());
    std::copy(e12.begin(), e12.end(), mm.a.begin() + len);
    std::copy(e21.begin(), e21.end(), mm.a.begin() + 2 * len);
    std::copy(e22.begin(), e22.end(), mm.a.begin() + 3 * len);
    return mm;
  };
  std::vector<Coord> one(len), zero(len), sq(len), diag1(len), diag2(len);
  R.one(one.data());
  R.zero(zero.data());

  // H2 = {diag(1 + a + a^2, 1 - a) : a in m}.
  std::vector<std::uint32_t> h2e, h3e, h4e;
  for (const auto& av : mR) {
    R.mul(av.data(), av.data(), sq.data());
    R.add(av.data(), sq.data(), diag1.data());
    R.add(one.data(), diag1.data(), diag1.data());
    R.sub(one.data(), av.data(), diag2.data());
    h2e.push_back(g->indexOf(g->canon(matOf(diag1, zero, zero, diag2))));
  }
  // H3, H4: unipotents over m'.
  for (const auto& bv : mPrime) {
    h3e.push_back(g->indexOf(g->canon(matOf(one, bv, zero, one))));
    h4e.push_back(g->indexOf(g->canon(matOf(one, zero, bv, one))));
  }

  // Product set H1 H2 H3 H4 with duplicate detection: distinctness proves the
  // factorisation is unique.
  std::vector<bool> seen(g->order(), false);
  long long products = 0, duplicates = 0;
  for (auto x1 : h1e) {
    for (auto x2 : h2e) {
      auto y = g->mul(x1, x2);
      for (auto x3 : h3e) {
        auto z = g->mul(y, x3);
        for (auto x4 : h4e) {
          auto w = g->mul(z, x4);
          if (seen[w]) {
            ++duplicates;
          } else {
            seen[w] = true;
            ++products;
          }
        }
      }
    }
  }

  std::vector<std::uint32_t> gens;
  for (const auto* part : {&h1e, &h2e, &h3e, &h4e}) {
    for (auto x : *part) gens.push_back(x);
  }
  auto H = closureOf(g, gens);

  auto hom2 = reductionHom(g, 2, budget);
  std::set<std::uint32_t> img;
  for (auto e : H.elems) img.insert(hom2.map[e]);

  const long long factorProduct =
      (long long)h1e.size() * h2e.size() * (long long)h3e.size() * h4e.size();
  const long long expectedIndex = (long long)ipow(q, d * (d - 1));
  const long long ambient = (long long)g->order();
  res.add("ambient_order", ambient, d == 2 ? 196608 : 384);
  res.add("h1_order", (long long)h1e.size(), 6);
  res.add("h2_order", (long long)h2e.size(), d == 2 ? 32 : 4);
  res.add("h3_order", (long long)h3e.size(), d == 2 ? 16 : 4);
  res.add("h4_order", (long long)h4e.size(), d == 2 ? 16 : 4);
  res.add("subgroup_order", (long long)H.order(), factorProduct);
  res.add("factorisation_duplicates", duplicates, 0);
  res.add("distinct_products", products, factorProduct);
  res.add("index", ambient / (long long)H.order(), expectedIndex);
  res.add("surjects_mod_m2", img.size() == hom2.dst->order() ? 1 : 0, 1);
  res.add("proper", H.order() < g->order() ? 1 : 0, d == 2 ? 1 : 0);
  res.finish();
  return res;
}

ExperimentResult examplePglP(const Budget& budget) {
  ExperimentResult res;
  res.name = "example_pgl_p";
  res.inputs = "PGL2 over F_8[eps]";
  auto Rp = Ring::parseSpec("dual:q=8");
  const Ring& R = *Rp;
  auto g = Group::enumerate({Family::PGL, 2, Rp}, budget);

  // Unit square classes.
  std::set<std::vector<Coord>> squares;
  long long units = 0;
  std::vector<Coord> u(R.len()), s(R.len());
  for (std::uint64_t i = 0; i < R.card(); ++i) {
    R.elementAt(i, u.data());
    if (!R.isUnit(u.data())) continue;
    ++units;
    R.mul(u.data(), u.data(), s.data());
    squares.insert(s);
  }

  // Kernel of the projective determinant: classes whose representative has
  // determinant in the unit squares (well defined: rescaling a representative
  // multiplies the determinant by a square).
  std::vector<std::uint32_t> hElems;
  for (std::uint32_t i = 0; i < g->order(); ++i) {
    if (squares.count(g->matDet(g->elem(i)))) hElems.push_back(i);
  }
  Subgroup H = subgroupFromElems(g, hElems);

  auto hom = reductionHom(g, 1, budget);
  std::set<std::uint32_t> img;
  for (auto e : H.elems) img.insert(hom.map[e]);

  auto D = commutatorSubgroup(H);
  std::vector<std::uint32_t> lifts;
  for (auto r : hom.dst->smallGens()) lifts.push_back(constLiftIndex(*g, *hom.dst, r));
  auto HF = closureOf(g, lifts);
  std::vector<std::uint32_t> eg = HF.gens;
  for (auto x : D.gens) eg.push_back(x);
  auto E = closureOf(g, eg);

  res.add("ambient_order", (long long)g->order(), 258048);
  res.add("unit_count", units, 56);
  res.add("square_class_count", (long long)(units / (long long)squares.size()), 8);
  res.add("kernel_order", (long long)H.order(), 32256);
  res.add("index", (long long)(g->order() / H.order()), 8);
  res.add("index_equals_square_classes",
          (long long)(g->order() / H.order()) == (long long)(units / (long long)squares.size())
              ? 1
              : 0,
          1);
  res.add("surjects_onto_residue", img.size() == hom.dst->order() ? 1 : 0, 1);
  res.add("proper", H.order() < g->order() ? 1 : 0, 1);
  res.add("residue_lift_order", (long long)HF.order(), 504);
  res.add("strictly_contains_residue_lift", H.order() > HF.order() ? 1 : 0, 1);
  res.add("commutator_order", (long long)D.order(), 32256);
  res.add("equals_residue_lift_times_commutator", E.order() == H.order() ? 1 : 0, 1);
  res.finish();
  return res;
}

ExperimentResult tangentDimCheck(int q, int d, const Budget& budget) {
  ExperimentResult res;
  res.name = "tangent_dim_check";
  res.inputs = "SL2, q=" + std::to_string(q) + ", d=" + std::to_string(d);
  const bool canonical = (q == 7 && (d == 0 || d == 1)) || (q == 5 && d == 1);
  if (!canonical) {
    throw UnsupportedDescriptorError("tangentDimCheck: instances are (7,0), (7,1), (5,1)");
  }
  auto Fq = Ring::parseSpec("q=" + std::to_string(q));
  auto gF = Group::enumerate({Family::SL, 2, Fq}, budget);
  auto L = LieAlgebra::build(LieFamily::sl, 2, Fq->fieldPtr());
  Subgroup hF = fullSubgroup(gF);
  hF.gens = gF->smallGens();
  Subgroup carrier = hF;
  GModule adj = adjointModule(carrier, L);
  adj.gens = hF.gens;
  const int f = Fq->field().f();
  const int vanDim = h1Dim(hF, adj, budget);
  const int endDim = homDim(adj, adj);

  if (q == 5) {
    // Negative control: the residue-level cohomology does not vanish, so the
    // dimension identity is not asserted here.
    res.add("van_dim", vanDim, 1);
    res.add("identity_asserted", 0, 0);
    res.note("excluded instance: adjoint h1 of the residue group is nonzero");
    res.finish();
    return res;
  }

  res.add("van_dim", vanDim, 0);
  res.add("end_dim", endDim, f);
  res.add("hom_dim_over_entry_field", endDim / f, 1);
  const long long dPrimeComponents = (long long)d * (endDim / f);
  res.add("d_prime_components", dPrimeComponents, d);

  if (d == 0) {
    // No variables: the level-two shell is the residue group itself and the
    // only deformation is the trivial one.
    res.add("d_prime_direct", vanDim / f, 0);
    res.add("routes_agree", vanDim / f == dPrimeComponents ? 1 : 0, 1);
    res.add("identity_asserted", 1, 1);
    res.finish();
    return res;
  }

  // Direct route at d = 1: lifts of the shell's residue representation
  // correspond to one-cocycles valued in the adjoint module, and their count
  // modulo kernel conjugacy is p^{h1} taken over the whole shell.
  auto Rp = Ring::parseSpec("dual:q=" + std::to_string(q));
  auto shell = Group::enumerate({Family::SL, 2, Rp}, budget);
  auto hom = reductionHom(shell, 1, budget);
  Subgroup hs = fullSubgroup(shell);
  hs.gens = shell->smallGens();
  Subgroup resCarrier = fullSubgroup(hom.dst);
  resCarrier.gens.clear();
  for (auto sgen : hs.gens) resCarrier.gens.push_back(hom.map[sgen]);
  GModule inflated = adjointModule(resCarrier, L);
  inflated.gens = hs.gens;
  const int shellH1 = h1Dim(hs, inflated, shellBudget(budget));
  long long liftClasses = 1;
  for (int i = 0; i < shellH1; ++i) liftClasses *= Fq->field().p();

  res.add("shell_h1", shellH1, f);
  res.add("lift_classes", liftClasses, (long long)ipow(q, 1));
  res.add("d_prime_direct", shellH1 / f, 1);
  res.add("routes_agree", shellH1 / f == dPrimeComponents ? 1 : 0, 1);
  res.add("identity_asserted", 1, 1);
  res.finish();
  return res;
}

ExperimentResult bostonCommutatorCheck(const std::string& ringSpec, const Budget& budget) {
  ExperimentResult res;
  res.name = "boston_commutator_check";
  res.inputs = "SL2 over " + ringSpec;
  auto Rp = Ring::parseSpec(ringSpec);
  const Ring& R = *Rp;
  if (R.kind() == RingKind::Field || R.kind() == RingKind::Witt2) {
    throw UnsupportedDescriptorError("bostonCommutatorCheck: needs a truncated local F-algebra");
  }
  auto g = Group::enumerate({Family::SL, 2, Rp}, budget);
  auto hom1 = reductionHom(g, 1, budget);
  const auto& K1 = hom1.kernel;
  const Field& F = R.field();
  auto L = LieAlgebra::build(LieFamily::sl, 2, R.fieldPtr());
  const int derivedRank = L.derivedSpan().rank();

  if (R.nildeg() <= 2) {
    // m^2 = 0: the first congruence subgroup is abelian, every commutator is
    // trivial, and the target layer is zero.
    long long nontrivial = 0;
    for (auto x : K1.elems) {
      for (auto y : K1.elems) {
        auto c = g->mul(g->mul(x, y), g->inv(g->mul(y, x)));
        if (c != g->identity()) ++nontrivial;
      }
    }
    res.add("kernel_order", (long long)K1.order(), (long long)K1.order());
    res.add("nontrivial_commutators", nontrivial, 0);
    res.add("span_dim", 0, 0);
    res.note("vacuous layer: the square of the maximal ideal vanishes");
    res.finish();
    return res;
  }

  const int top = R.nildeg() - 1;
  const int ld = layerDim(R, 2, top);
  FpSpan S(F.p(), ld);
  for (auto x : K1.elems) {
    for (auto y : K1.elems) {
      auto c = g->mul(g->mul(x, y), g->inv(g->mul(y, x)));
      if (c == g->identity()) continue;
      S.add(layerCoords(R, 2, g->elem(c), top));
    }
  }

  // Reference span: commutators of truncated exponentials of a basis of the
  // entry algebra, which generate exactly the derived-subalgebra layer.
  std::vector<std::vector<int>> basisMats;
  {
    std::vector<int> e12(4, 0), e21(4, 0);
    e12[1] = 1;
    e21[2] = 1;
    basisMats.push_back(e12);
    basisMats.push_back(e21);
    if (F.p() != 2) {
      std::vector<int> h(4, 0);
      h[0] = 1;
      h[3] = F.neg(1);
      basisMats.push_back(h);
    }
  }
  // Level-one scalars: theta^j x_i over a variable basis of m/m^2.
  std::vector<std::vector<Coord>> levelOne;
  {
    std::vector<Coord> a2(R.len());
    for (std::uint64_t i = 0; i < R.card(); ++i) {
      R.elementAt(i, a2.data());
      if (!R.inIdealPower(a2.data(), 1)) continue;
      if (R.inIdealPower(a2.data(), 2)) continue;
      levelOne.push_back(a2);
    }
  }
  FpSpan T(F.p(), ld);
  for (const auto& X : basisMats) {
    for (const auto& Y : basisMats) {
      for (const auto& tx : levelOne) {
        for (const auto& ty : levelOne) {
          auto ex = g->indexOf(g->canon(expLevel(R, 2, X, tx, 1)));
          auto ey = g->indexOf(g->canon(expLevel(R, 2, Y, ty, 1)));
          auto c = g->mul(g->mul(ex, ey), g->inv(g->mul(ey, ex)));
          if (c == g->identity()) continue;
          T.add(layerCoords(R, 2, g->elem(c), top));
        }
      }
    }
  }

  res.add("ambient_order", (long long)g->order(), (long long)g->order());
  res.add("kernel_order", (long long)K1.order(), (long long)K1.order());
  res.add("span_dim", S.rank(), derivedRank);
  res.add("derived_layer_dim", T.rank(), derivedRank);
  res.add("derived_layer_contained", S.containsSpan(T) ? 1 : 0, 1);
  res.add("full_layer", S.rank() == 3 * F.f() ? 1 : 0, derivedRank == 3 * F.f() ? 1 : 0);
  res.finish();
  return res;
}

ExperimentResult w2RigidityCheck(int q, std::uint64_t seed, const Budget& budget) {
  ExperimentResult res;
  res.name = "w2_rigidity_check";
  res.inputs = "SL2 over W2(F_" + std::to_string(q) + ")";
  res.seed = seed;
  struct Frozen {
    int splits, latticeSize;
    long long proper;
    int rigid;
  };
  const std::map<int, Frozen> frozen = {
      {2, {0, 4, 4, 0}}, {3, {1, 2, 27, 0}}, {4, {0, 6, 128, 0}},
      {5, {0, 2, 0, 1}}, {7, {0, 2, 0, 1}},
  };
  auto it = frozen.find(q);
  if (it == frozen.end()) {
    throw UnsupportedDescriptorError("w2RigidityCheck: instances are q in {2,3,4,5,7}");
  }
  auto g = Group::enumerate({Family::SL, 2, Ring::parseSpec("witt2:q=" + std::to_string(q))},
                            budget);
  auto hom = reductionHom(g, 1, budget);
  auto rep = checkSplitting(hom, budget);
  auto tc = extensionCocycle(hom, budget);
  GModule m = kernelModule(hom, tc);
  auto subs = allSubmodules(m, budget);
  auto proper = enumerateProperRF(g, hom, tc, subs, budget, &res.notes);

  const bool irreducible = subs.size() == 2;
  long long properCount = (long long)proper.size();
  long long rigid = properCount == 0 ? 1 : 0;

  // Seeded closure probes: lifts of the residue generators plus one random
  // nonidentity kernel element.  Over an irreducible kernel these closures
  // must saturate, because the meet is then a nonzero submodule.
  std::mt19937_64 rng(seed);
  const int trials = 8;
  int saturated = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::uint32_t> gens;
    for (auto r : hom.dst->smallGens()) {
      std::uint32_t k = hom.kernel.elems[rng() % hom.kernel.order()];
      gens.push_back(g->mul(k, tc.sigma[r]));
    }
    gens.push_back(hom.kernel.elems[1 + rng() % (hom.kernel.order() - 1)]);
    if (closureOf(g, gens).order() == g->order()) ++saturated;
  }

  res.add("splits", rep.splits ? 1 : 0, it->second.splits);
  res.add("lattice_size", (long long)subs.size(), it->second.latticeSize);
  res.add("proper_residually_full", properCount, it->second.proper);
  res.add("rigid", rigid, it->second.rigid);
  if (irreducible) {
    res.add("probes_saturated", saturated, trials);
  } else {
    res.note("probe saturations over reducible kernel: " + std::to_string(saturated) + "/" +
             std::to_string(trials));
  }
  if (q == 2) {
    res.note("splitting refuted exhaustively; a classical footnote asserts a complement here, "
             "and the four proper subgroups found all meet the kernel in the central line");
  }
  if (q == 4) {
    res.note("not rigid: central F_2-lines of the kernel admit proper lifts although the shell "
             "does not split");
  }
  res.finish();
  return res;
}

namespace {

ExperimentResult residualClassesF7(std::uint64_t seed, const Budget& budget) {
  auto rc = classifyResiduallyFull({Family::SL, 2, Ring::parseSpec("dual:q=7")}, seed, budget);
  ExperimentResult res = rc.result;
  res.name = "residual_classes_f7";
  res.add("class_count", rc.classCount, 2);
  long long total = 0;
  for (auto s : rc.classSizes) total += (long long)s;
  res.add("total_subgroups", total, 344);
  res.add("largest_class_order", (long long)rc.representatives.front().order(), 115248);
  res.add("smallest_class_order", (long long)rc.representatives.back().order(), 336);
  res.finish();
  return res;
}

ExperimentResult residualClassesF2(std::uint64_t seed, const Budget& budget) {
  auto rc = classifyResiduallyFull({Family::SL, 2, Ring::parseSpec("dual:q=2")}, seed, budget);
  ExperimentResult res = rc.result;
  res.name = "residual_classes_f2";
  res.add("class_count", rc.classCount, 6);
  res.add("exceeds_two", rc.classCount > 2 ? 1 : 0, 1);
  long long total = 0;
  for (auto s : rc.classSizes) total += (long long)s;
  res.add("total_subgroups", total, 15);
  std::map<std::uint64_t, int> byOrder;
  for (const auto& rep : rc.representatives) byOrder[rep.order()]++;
  res.add("classes_order_48", byOrder[48], 1);
  res.add("classes_order_24", byOrder[24], 2);
  res.add("classes_order_12", byOrder[12], 1);
  res.add("classes_order_6", byOrder[6], 2);
  res.finish();
  return res;
}

using Runner = ExperimentResult (*)(std::uint64_t, const Budget&);

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> reg = {
      {"residual_classes_f7", residualClassesF7},
      {"residual_classes_f2", residualClassesF2},
      {"sl2_index_d1",
       [](std::uint64_t, const Budget& b) { return exampleSl2Char2(1, 2, b); }},
      {"sl2_index_d2",
       [](std::uint64_t, const Budget& b) { return exampleSl2Char2(2, 2, b); }},
      {"sl2_index_q4",
       [](std::uint64_t, const Budget& b) { return exampleSl2Char2(2, 4, b); }},
      {"pdet_kernel_f8", [](std::uint64_t, const Budget& b) { return examplePglP(b); }},
      {"tangent_dims_f7_d1",
       [](std::uint64_t, const Budget& b) { return tangentDimCheck(7, 1, b); }},
      {"tangent_dims_f7_d0",
       [](std::uint64_t, const Budget& b) { return tangentDimCheck(7, 0, b); }},
      {"tangent_dims_f5_d1",
       [](std::uint64_t, const Budget& b) { return tangentDimCheck(5, 1, b); }},
      {"commutator_layers_f3",
       [](std::uint64_t, const Budget& b) { return bostonCommutatorCheck("trunc:q=3,d=1,k=3", b); }},
      {"commutator_layers_f2",
       [](std::uint64_t, const Budget& b) { return bostonCommutatorCheck("trunc:q=2,d=1,k=3", b); }},
      {"commutator_layers_vacuous",
       [](std::uint64_t, const Budget& b) { return bostonCommutatorCheck("dual:q=3", b); }},
      {"w2_rigidity_q2", [](std::uint64_t s, const Budget& b) { return w2RigidityCheck(2, s, b); }},
      {"w2_rigidity_q3", [](std::uint64_t s, const Budget& b) { return w2RigidityCheck(3, s, b); }},
      {"w2_rigidity_q4", [](std::uint64_t s, const Budget& b) { return w2RigidityCheck(4, s, b); }},
      {"w2_rigidity_q5", [](std::uint64_t s, const Budget& b) { return w2RigidityCheck(5, s, b); }},
      {"w2_rigidity_q7", [](std::uint64_t s, const Budget& b) { return w2RigidityCheck(7, s, b); }},
  };
  return reg;
}

}  // namespace

std::vector<std::string> experimentNames() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

ExperimentResult runExperiment(const std::string& name, std::uint64_t seed, const Budget& budget) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) {
      ExperimentResult r = fn(seed, budget);
      if (r.seed == 0) r.seed = seed;
      return r;
    }
  }
  throw UnsupportedDescriptorError("runExperiment: unknown experiment '" + name + "'");
}

std::vector<ExperimentResult> runAllExperiments(std::uint64_t seed, const Budget& budget) {
  std::vector<ExperimentResult> out;
  for (const auto& [name, fn] : registry()) out.push_back(runExperiment(name, seed, budget));
  return out;
}

}  // namespace chevlab
