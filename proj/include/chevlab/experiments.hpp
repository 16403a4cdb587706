// Desk-scale reconstruction experiments: classification of residually full
// subgroups over local rings, index and surjectivity examples, tangent
// dimension counts, congruence-layer commutator checks, and rigidity of
// second Witt shells.  Every experiment measures exact integers against
// expected values and records how each expectation was obtained.
#ifndef CHEVLAB_EXPERIMENTS_HPP
#define CHEVLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chevlab/group.hpp"
#include "chevlab/util.hpp"

namespace chevlab {

/// One measured quantity with its expected value.  `formulaLevel` marks
/// values obtained by pure order arithmetic with no enumeration behind them.
struct MeasuredValue {
  std::string name;
  long long measured = 0;
  long long expected = 0;
  bool formulaLevel = false;
};

/// Outcome of one experiment: pass holds exactly when every measured value
/// equals its expectation.  No tolerances; every value is an exact integer.
struct ExperimentResult {
  std::string name;
  std::string inputs;
  std::vector<MeasuredValue> values;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  bool pass = false;

  void add(const std::string& valueName, long long measured, long long expected,
           bool formulaLevel = false);
  void note(const std::string& text);
  /// Recomputes `pass` from the recorded values.
  void finish();
  const MeasuredValue* find(const std::string& valueName) const;
};

/// Serialises a result as a JSON object (stable key order).
std::string toJson(const ExperimentResult& r);

/// Classification of the subgroups of G(R) that surject onto the residue
/// points G(R/m), up to conjugacy in G(R).
struct ResidualClassification {
  ExperimentResult result;
  int classCount = 0;
  /// One representative per conjugacy class, largest first.
  std::vector<Subgroup> representatives;
  /// Number of distinct subgroups in each class (aligned with representatives).
  std::vector<std::uint64_t> classSizes;
};

/** Classifies the residually full subgroups of G(R) for a local ring R.
 *
 * The route follows the structure the extension itself provides: the
 * congruence kernel K is an F_p-module under conjugation by residue points;
 * for a residually full H the intersection N = H cap K is a submodule
 * (asserted for every subgroup found), and H is generated by N together with
 * one kernel-twisted lift per residue generator.  Small fibers are searched
 * exhaustively; for large fibers the complement case is settled through the
 * splitting test plus one-cocycle enumeration, which is exact when the
 * first cohomology of the kernel module vanishes (BudgetExceededError
 * otherwise).  Conjugacy classes are separated with transporter searches and
 * verified stable under a seeded random ambient conjugation. */
ResidualClassification classifyResiduallyFull(const GroupSpec& spec,
                                              std::uint64_t seed = 2026,
                                              const Budget& budget = defaultBudget());

/** The determinant-one index example in characteristic 2: over
 * R = F[x_1..x_d]/m^3 the subgroup generated by the constant points, the
 * diagonal set {diag(1+a+a^2, 1-a) : a in m}, and the upper and lower
 * unipotents over the span of the variables and their squares has index
 * #F^{d(d-1)} in SL_2(R) and still surjects onto SL_2(R/m^2).  q = 2 runs
 * fully enumerated for d in {1, 2}; q = 4 is checked at the order-formula
 * level only (flagged formulaLevel). */
ExperimentResult exampleSl2Char2(int d, int q, const Budget& budget = defaultBudget());

/** The projective determinant example: pdet : PGL_2(R) -> R^x / R^{x2} for
 * R = F_8[eps].  Its kernel H surjects onto PGL_2(F_8), has index
 * |R^x / R^{x2}| = 8, is a proper subgroup, and satisfies
 * H = H_F [H, H]. */
ExperimentResult examplePglP(const Budget& budget = defaultBudget());

/** Tangent-dimension count for SL_2 over F_q with d polynomial variables:
 * when the adjoint first cohomology of the residue group vanishes and the
 * equivariant endomorphisms of the adjoint module are scalars, the mod-p
 * tangent dimension computed on the level-two shell equals d.  For d = 1 the
 * count is verified directly: lift classes of the shell's residual
 * representation modulo kernel conjugacy number p^{h1}, giving d' = h1 / f.
 * q = 5 is the documented negative control (h1 = 1, identity not asserted). */
ExperimentResult tangentDimCheck(int q, int d, const Budget& budget = defaultBudget());

/** Top congruence-layer commutator check over a ring with m^{n+1} = 0:
 * commutators of the first congruence subgroup land in the top layer and
 * span exactly the derived-subalgebra layer [g, g] tensor m^n (the whole
 * layer when the entry algebra is perfect, the one-dimensional derived line
 * over F_2, and nothing when m^n = 0). */
ExperimentResult bostonCommutatorCheck(const std::string& ringSpec,
                                       const Budget& budget = defaultBudget());

/** Rigidity of SL_2 over the second Witt vectors of F_q: enumerates every
 * proper residually full subgroup through the per-submodule lift search and
 * reports whether the shell is rigid (none exist).  Rigid at q in {5, 7};
 * q = 3 splits; q = 2 and q = 4 admit proper subgroups meeting the kernel
 * in central submodules even though neither shell splits.  Seeded closure
 * probes (lifts of generators plus one random kernel element) cross-check
 * the kernel-saturation argument. */
ExperimentResult w2RigidityCheck(int q, std::uint64_t seed = 2026,
                                 const Budget& budget = defaultBudget());

/// Names accepted by runExperiment, in canonical order.
std::vector<std::string> experimentNames();

/** Runs one named experiment.  Throws UnsupportedDescriptorError for names
 * outside experimentNames(). */
ExperimentResult runExperiment(const std::string& name, std::uint64_t seed = 2026,
                               const Budget& budget = defaultBudget());

/// Runs the whole suite in canonical order.
std::vector<ExperimentResult> runAllExperiments(std::uint64_t seed = 2026,
                                                const Budget& budget = defaultBudget());

}  // namespace chevlab

#endif
