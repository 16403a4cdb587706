/**
 * @file group.hpp
 * @brief Finite matrix groups over local rings, enumerated explicitly.
 *
 * Groups are enumerated by breadth-first closure from structured generator
 * lists (elementary transvections for SL, extra unit-diagonal generators for
 * GL, scalar-canonicalised cosets for PGL, symplectic transvections for Sp)
 * or, for the unitary group SU_3 over F_4/F_2, by a full scan of the ambient
 * matrix space.  Elements are stored in a canonical form and addressed by
 * dense indices, so subgroup and homomorphism computations are exact.
 */
#ifndef CHEVLAB_GROUP_HPP
#define CHEVLAB_GROUP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chevlab/ring.hpp"
#include "chevlab/util.hpp"

namespace chevlab {

enum class Family { SL, GL, PGL, Sp, SU };

std::string familyName(Family f);
std::optional<Family> familyFromName(const std::string& s);

struct GroupSpec {
  Family fam = Family::SL;
  int n = 2;
  RingPtr R;

  std::string name() const;
  /// Dimension of the underlying algebraic group.
  int algDim() const;
  /// Predicted order: |G(F)| times |F|^(dim * (len-1)).
  std::uint64_t predictedOrder() const;
};

/// Square matrix over a ring, row-major, len() coords per entry.
struct Mat {
  std::vector<Coord> a;
  bool operator==(const Mat& o) const { return a == o.a; }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// Spanning tree of a Cayley graph walk, used to propagate cocycle values.
struct BfsTree {
  std::vector<std::uint32_t> order;   // visit sequence, order[0] = identity
  std::vector<std::uint32_t> parent;  // indexed by element, root maps to itself
  std::vector<int> genOf;             // generator position used to reach it, -1 at root
  std::vector<std::uint32_t> depth;
  std::vector<bool> visited;
};

/// A subgroup of an enumerated group: sorted element indices, a membership
/// bitmap, and a (possibly small) generating set.
struct Subgroup {
  GroupPtr parent;
  std::vector<std::uint32_t> elems;
  std::vector<std::uint32_t> gens;
  std::vector<bool> member;

  std::uint64_t order() const { return elems.size(); }
  bool contains(std::uint32_t i) const { return member[i]; }
};

/// Group homomorphism given on every element of an enumerated source.
struct GroupHom {
  GroupPtr src;
  GroupPtr dst;
  std::vector<std::uint32_t> map;
  Subgroup kernel;
  int level = 0;  // reduction level for congruence homs

  std::uint32_t operator()(std::uint32_t i) const { return map[i]; }
};

class Group : public std::enable_shared_from_this<Group> {
public:
  /// Enumerates the group of R-points.  Throws UnsupportedFamilyError or
  /// BudgetExceededError.
  static GroupPtr enumerate(const GroupSpec& spec, const Budget& budget = defaultBudget());

  const GroupSpec& spec() const { return spec_; }
  const Ring& ring() const { return *spec_.R; }
  int n() const { return spec_.n; }
  std::uint64_t order() const { return elems_.size(); }
  const Mat& elem(std::uint32_t i) const { return elems_[i]; }
  std::uint32_t identity() const { return idIdx_; }

  /// Structured generator indices used for the enumeration.
  const std::vector<std::uint32_t>& gens() const { return gens_; }
  /// A greedily reduced generating set (computed once, cached).
  const std::vector<std::uint32_t>& smallGens() const;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t conj(std::uint32_t g, std::uint32_t x) const;  // g x g^{-1}
  int elementOrder(std::uint32_t a) const;

  /// Canonical form of a matrix (scalar normalisation for PGL).
  Mat canon(Mat m) const;
  std::optional<std::uint32_t> tryIndexOf(const Mat& m) const;
  std::uint32_t indexOf(const Mat& m) const;

  /// Breadth-first visit order from the identity along `gens`.
  std::vector<std::uint32_t> bfsOrder(const std::vector<std::uint32_t>& gens) const;
  /// Spanning tree of the walk; leftMult explores gen * current instead of
  /// current * gen.
  BfsTree bfsTree(const std::vector<std::uint32_t>& gens, bool leftMult = false) const;

  // --- matrix helpers on this group's (ring, n) context ---
  Mat matIdentity() const;
  Mat matMul(const Mat& x, const Mat& y) const;
  Mat matInv(const Mat& x) const;
  std::vector<Coord> matDet(const Mat& x) const;

private:
  Group() = default;
  std::uint32_t insertUnique(Mat&& m, bool& isNew);
  void rehash(std::size_t want);

  GroupSpec spec_;
  std::vector<Mat> elems_;
  std::vector<std::uint32_t> gens_;
  std::uint32_t idIdx_ = 0;
  std::uint64_t maxElems_ = 0;
  // open-addressed hash of element indices
  std::vector<std::uint32_t> table_;
  std::uint64_t tableMask_ = 0;
  mutable std::vector<std::uint32_t> invCache_;
  mutable std::vector<int> ordCache_;
  mutable std::vector<std::uint32_t> smallGens_;
};

// --- subgroup constructions ---

Subgroup fullSubgroup(GroupPtr g);
Subgroup trivialSubgroup(GroupPtr g);
Subgroup subgroupFromElems(GroupPtr g, std::vector<std::uint32_t> elems);
/// Closure of the given generators inside g; optional size cap aborts early
/// (returns nullopt) when the closure would exceed it.
Subgroup closureOf(GroupPtr g, const std::vector<std::uint32_t>& gens);
std::optional<Subgroup> closureBounded(GroupPtr g, const std::vector<std::uint32_t>& gens,
                                       std::uint64_t maxOrder);
std::vector<std::uint32_t> reduceGenerators(GroupPtr g, const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// Derived subgroup [H,H]: closure of generator commutators, extended to a
/// conjugation-stable fixpoint (verified normal in H).
Subgroup commutatorSubgroup(const Subgroup& h);
bool isPerfect(const Subgroup& h);

/// The reduction homomorphism G(R) -> G(R/m^level).
GroupHom reductionHom(GroupPtr g, int level, const Budget& budget = defaultBudget());

/// Image and preimage helpers.
Subgroup imageOf(const GroupHom& hom, const Subgroup& h);
Subgroup preimageOf(const GroupHom& hom, const Subgroup& h);

/** H^c: the subgroup between [H,H] and H whose image in H/[H,H] maps
 * isomorphically onto the abelianization of the residue-point group.  When
 * that abelianization has order prime to p the lift is the unique prime-to-p
 * torsion subgroup; otherwise a deterministic search picks the lift with the
 * smallest coset labels.  Requires H to surject onto the residue points
 * (NotResiduallyFullError otherwise). */
Subgroup hC(const GroupHom& toResidue, const Subgroup& h);
/// Iterates hC until it stabilises.
Subgroup hPerfection(const GroupHom& toResidue, const Subgroup& h);

/** Lifts a subgroup M of the residue-point group to an isomorphic subgroup of
 * the source, by level-wise averaging of the lift defect (possible because
 * |M| is prime to p; OrderNotCoprimeError otherwise). */
Subgroup liftPrimeOrderSubgroup(const GroupHom& toResidue, const Subgroup& m,
                                const Budget& budget = defaultBudget());

/// Searches for g with g A g^{-1} = B; element-order histograms prune.
std::optional<std::uint32_t> transporter(const Subgroup& a, const Subgroup& b);
bool areConjugate(const Subgroup& a, const Subgroup& b);

// --- congruence layers and truncated exponentials ---

/// F_p-dimension of the layer m^i/m^{i+1} tensored with n x n matrices.
int layerDim(const Ring& R, int n, int i);
/// F_p-coordinates of (g - 1) in the level-i layer; g must be trivial below
/// level i (asserted).
std::vector<int> layerCoords(const Ring& R, int n, const Mat& g, int i);

/** exp(X t) for a residue-field matrix X and t in m^i: exactly I + Xt when
 * 2i >= nildeg, else the truncated exponential sum (requires the needed
 * factorials to be invertible, or X t nilpotent of square zero).
 * Throws NotInIdealPowerError when t is not in m^i. */
Mat expLevel(const Ring& R, int n, const std::vector<int>& X, const std::vector<Coord>& t, int i);

}  // namespace chevlab

#endif
