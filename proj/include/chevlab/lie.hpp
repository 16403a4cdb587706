/**
 * @file lie.hpp
 * @brief Classical Lie algebras over small finite fields, and the finite
 *        group modules they carry under conjugation.
 *
 * Algebras are realised concretely as spaces of n x n matrices over an entry
 * field: sl and gl with their standard bases, pgl as gl modulo scalars with a
 * fixed complement basis, sp4 as the kernel of the symplectic constraint, and
 * su3 as the F_2-space of anti-hermitian traceless matrices over F_4.  All
 * module theory is done over the prime field F_p, with exhaustive vector
 * spinning (budgeted) for submodule lattices, socle chains and composition
 * factors.
 */
#ifndef CHEVLAB_LIE_HPP
#define CHEVLAB_LIE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chevlab/group.hpp"
#include "chevlab/linalg.hpp"
#include "chevlab/ring.hpp"
#include "chevlab/util.hpp"

namespace chevlab {

enum class LieFamily { sl, gl, pgl, sp, su3 };

std::string lieFamilyName(LieFamily f);

/// Lie algebra of the derived group of the given point-group family.
LieFamily derivedFamilyOf(Family groupFam);
/// Lie algebra of the full (ambient) group of the given family.
LieFamily ambientFamilyOf(Family groupFam);

/// Report on the center of an algebra and on which isogeny differentials
/// are isomorphisms for the corresponding algebraic group.
struct CenterReport {
  int dimZ = 0;           // over the coefficient field
  int dimZFp = 0;         // over F_p
  int kerScDimFp = 0;     // kernel of (Lie of simply-connected cover) -> g
  int kerAdDimFp = 0;     // kernel of g -> (Lie of adjoint quotient)
  std::string lieClass;   // "Lie-simply-connected" / "Lie-adjoint" / "Lie-intermediate"
};

class LieAlgebra {
public:
  /// Builds the named algebra; entryField is the matrix entry field (F_4 for
  /// su3, whose coefficient field is then F_2).
  static LieAlgebra build(LieFamily fam, int n, FieldPtr entryField);

  LieFamily family() const { return fam_; }
  int n() const { return n_; }
  const Field& entryField() const { return *F_; }
  FieldPtr entryFieldPtr() const { return F_; }
  int p() const { return F_->p(); }
  /// Degree of the coefficient field over F_p (1 for su3).
  int coeffDegree() const { return coeffF_; }
  int dimF() const { return dimF_; }
  int dimFp() const { return dimF_ * coeffF_; }

  /// Basis matrices over the coefficient field, n*n entry codes row-major.
  const std::vector<std::vector<int>>& basisMats() const { return basis_; }
  /// F_p-basis matrix number idx (theta-multiples of the basis).
  std::vector<int> fpBasisMat(int idx) const;

  /// F_p-coordinates of a matrix in the algebra (mod scalars for pgl).
  /// Throws NotStableError when the matrix does not lie in the algebra.
  std::vector<int> coordsOf(const std::vector<int>& mat) const;
  /// Representative matrix of a coordinate vector.
  std::vector<int> matOf(const std::vector<int>& coords) const;

  /// Lie bracket in F_p-coordinates.
  std::vector<int> bracket(const std::vector<int>& a, const std::vector<int>& b) const;
  /// Precomputed bracket of F_p-basis vectors i and j.
  const std::vector<int>& structureRow(int i, int j) const;

  CenterReport center() const;
  /// Span of all basis brackets.
  FpSpan derivedSpan() const;
  bool isPerfectAlgebra() const;

private:
  LieAlgebra() = default;
  void finish();  // expansion matrix, structure constants

  LieFamily fam_ = LieFamily::sl;
  int n_ = 2;
  FieldPtr F_;
  int coeffF_ = 1;
  int dimF_ = 0;
  std::vector<std::vector<int>> basis_;
  FpMat expand_;  // digit columns of the F_p-basis (plus scalars for pgl)
  std::vector<std::vector<std::vector<int>>> structure_;
};

/// A finite group acting F_p-linearly: one action matrix per generator.
/// The generator indices refer to elements of the subgroup's parent group.
struct GModule {
  int p = 2;
  int dim = 0;
  std::vector<std::uint32_t> gens;
  std::vector<FpMat> act;
};

/// Conjugation action of a subgroup on an algebra; the subgroup's ring must
/// be the algebra's entry field.  Throws NotStableError if conjugation by a
/// generator leaves the algebra (cannot happen for the built-in families).
GModule adjointModule(const Subgroup& h, const LieAlgebra& L);

GModule trivialModule(const Subgroup& h, int p, int dim);

/// Contragredient module (inverse transpose on each generator).
GModule dualModule(const GModule& m);

/// Smallest submodule containing v.
FpSpan spinVector(const GModule& m, const std::vector<int>& v);

/// Dimension of the common fixed space of all generators.
int fixedDim(const GModule& m);

/// Dimension of the space of module homomorphisms a -> b.
int homDim(const GModule& a, const GModule& b);

/// Action restricted to a stable subspace, in the subspace's basis
/// coordinates.  Throws NotStableError if the span is not stable.
GModule moduleOnSpan(const GModule& m, const FpSpan& sub);

/// Quotient by a stable subspace with explicit projection and lift maps:
/// proj maps ambient coordinates onto quotient coordinates, lift is a linear
/// section (proj * lift = identity).
struct QuotientModule {
  GModule mod;
  FpMat proj;
  FpMat lift;
};
QuotientModule quotientModule(const GModule& m, const FpSpan& sub);

/// Every submodule, found by spinning all nonzero vectors (budgeted by
/// maxSpinVectors) and closing the cyclic submodules under sums.
std::vector<FpSpan> allSubmodules(const GModule& m, const Budget& budget = defaultBudget());

/// Composition factors as modules, peeled bottom-up by repeatedly removing a
/// minimal submodule (deterministic tie-break: dimension, then basis key).
std::vector<GModule> compositionFactors(const GModule& m, const Budget& budget = defaultBudget());

/// True if every generator fixes the subspace pointwise.
bool actionTrivialOn(const GModule& m, const FpSpan& sub);

struct ModuleAnalysis {
  int dim = 0;
  bool irreducible = false;
  bool nontrivialAction = false;
  int socleDim = 0;
  int radicalDim = 0;
  int cosocleDim = 0;
  bool cosocleIrreducible = false;
  /// Hom(m, trivial) dimension; zero iff the cosocle avoids the trivial module.
  int homToTrivialDim = 0;
  int fixedPointDim = 0;
  int endDimFp = 0;
  std::vector<int> jhDims;       // composition factor dims, peeling order
  std::vector<int> latticeDims;  // dims of all submodules, sorted
  std::vector<FpSpan> submodules;
  FpSpan socle{2, 0};
  FpSpan radical{2, 0};
};
ModuleAnalysis analyzeModule(const GModule& m, const Budget& budget = defaultBudget());

/// Center-triviality check for the ambient algebra of a point group: the
/// fixed space of the conjugation action must match the Lie algebra of the
/// scheme center, and that center must be smooth.
struct CtReport {
  int h0DimFp = 0;
  int expectedDimFp = 0;
  bool centerSmooth = false;
  bool holds = false;
};
CtReport checkCenterTriviality(const Subgroup& hF, const LieAlgebra& ambient);

}  // namespace chevlab

#endif
