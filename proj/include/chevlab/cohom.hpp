/**
 * @file cohom.hpp
 * @brief Low-degree group cohomology of enumerated finite groups, and
 *        splitting analysis of congruence extensions.
 *
 * Degree one works for an arbitrary finite F_p-module action; degree two is
 * for trivial coefficients.  Both parametrise cochains by their values on the
 * chosen generators, propagate expressions along a spanning tree of the
 * Cayley graph and feed one linear constraint per non-tree edge into an
 * incremental eliminator, so memory stays proportional to the number of
 * pivot rows rather than the full cochain space.
 *
 * For a reduction homomorphism with elementary abelian kernel the attached
 * factor set is computed explicitly; deciding whether it is a coboundary
 * yields a constructive complement.  An independent generator-lift search
 * provides the second opinion.
 */
#ifndef CHEVLAB_COHOM_HPP
#define CHEVLAB_COHOM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "chevlab/group.hpp"
#include "chevlab/lie.hpp"
#include "chevlab/linalg.hpp"
#include "chevlab/util.hpp"

namespace chevlab {

/// Invariants of the module, in degree-zero guise.
inline int h0Dim(const GModule& m) { return fixedDim(m); }

/// dim H^1(H, M) for the subgroup with the given module action; m.gens must
/// equal h.gens.  Cochains satisfy c(gh) = c(g) + g c(h).
int h1Dim(const Subgroup& h, const GModule& m, const Budget& budget = defaultBudget());

/// dim Hom(H, F_p), computed from the p-rank of the abelianisation by
/// counting p-torsion cosets (no elimination involved).
int homToFpDim(const Subgroup& h, int p);

/// dim H^2(H, F_p) with trivial action, via normalised factor sets.
int h2TrivialDim(const Subgroup& h, int p, const Budget& budget = defaultBudget());

/// The factor set of a reduction homomorphism with elementary abelian
/// kernel: beta(x, y) = s(x) s(y) s(xy)^{-1} read in kernel coordinates,
/// where s is the lexicographically least section with s(1) = 1.
struct ExtensionCocycle {
  GroupPtr src;
  GroupPtr dst;
  Subgroup quot;                       // the part of dst the factor set lives over
  int p = 2;
  int kdim = 0;                        // F_p-rank of the kernel
  int level = 1;                       // congruence level of the hom
  std::vector<std::uint32_t> sigma;    // section, dst index -> src index
  std::vector<FpMat> act;              // dst index -> action on kernel coords
  std::vector<std::vector<int>> val;   // (x * |dst| + y) -> kdim coordinates
  std::vector<std::vector<int>> kerBasis;  // echelon basis of the kernel layer
  std::vector<int> kerPivots;              // pivot column per basis row

  const std::vector<int>& operator()(std::uint32_t x, std::uint32_t y) const {
    return val[std::size_t(x) * dst->order() + y];
  }
};

/// Coordinates of a kernel element in the factor set's echelon basis.
std::vector<int> kernelCoords(const ExtensionCocycle& tc, std::uint32_t srcElem);

/// Source-group index of the kernel element with the given coordinates
/// (inverse of kernelCoords).
std::uint32_t kernelElement(const ExtensionCocycle& tc, const std::vector<int>& coords);

/// Builds the factor set.  Throws KernelNotAbelianError if the kernel is not
/// elementary abelian, InconsistencyError if the cocycle identity fails on
/// the verification sample.
ExtensionCocycle extensionCocycle(const GroupHom& hom, const Budget& budget = defaultBudget());

/// Same, but restricted to the preimage of a subgroup of the quotient: the
/// factor set lives over quot, and all splitting questions downstream refer
/// to the sub-extension  1 -> ker -> preimage(quot) -> quot -> 1.
ExtensionCocycle extensionCocycle(const GroupHom& hom, const Subgroup& quot,
                                  const Budget& budget = defaultBudget());

/// Attempts to write the factor set as a coboundary c with c(1) = 0 and
/// beta(x,y) = x c(y) - c(xy) + c(x).  Returns the full table of c-values
/// (one kdim-vector per dst element), or nullopt when no solution exists;
/// the answer is exact either way.
std::optional<std::vector<std::vector<int>>> cocycleTrivialisation(
    const ExtensionCocycle& tc, const Budget& budget = defaultBudget());

/// Turns a trivialisation into an explicit complement {l(-c(x)) s(x)} of the
/// kernel inside the source group, verifying the homomorphism property on
/// all pairs.
Subgroup complementFromTrivialisation(const GroupHom& hom, const ExtensionCocycle& tc,
                                      const std::vector<std::vector<int>>& c);

/// Independent splitting oracle: exhaustive search over order-matched lifts
/// of the quotient's generators.  nullopt is a certificate that no
/// complement exists (the search space covers every candidate).
std::optional<Subgroup> findComplement(const GroupHom& hom, const Budget& budget = defaultBudget());

/// Restricted variant: searches for a complement of the kernel inside the
/// preimage of quot, i.e. a subgroup mapped isomorphically onto quot.
std::optional<Subgroup> findComplement(const GroupHom& hom, const Subgroup& quot,
                                       const Budget& budget = defaultBudget());

struct SplittingReport {
  bool splits = false;
  std::optional<Subgroup> complement;
};

/// Cocycle-based splitting decision with constructive witness.
SplittingReport checkSplitting(const GroupHom& hom, const Budget& budget = defaultBudget());

/// Restricted variant over a subgroup of the quotient.
SplittingReport checkSplitting(const GroupHom& hom, const Subgroup& quot,
                               const Budget& budget = defaultBudget());

}  // namespace chevlab

#endif
