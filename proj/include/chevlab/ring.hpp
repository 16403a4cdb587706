/**
 * @file ring.hpp
 * @brief Finite local rings: residue fields, length-2 Witt vectors, and
 *        truncated multivariate polynomial rings.
 *
 * Every ring element is a fixed-length sequence of residue-field codes
 * ("coords").  For a field the length is 1; for W_2(F_q) it is 2 (the two
 * Witt components); for F_q[x_1..x_d]/(m^k + extra) it is the number of
 * surviving monomials in graded-lex order.  All operations are exact.
 */
#ifndef CHEVLAB_RING_HPP
#define CHEVLAB_RING_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chevlab/field.hpp"
#include "chevlab/util.hpp"

namespace chevlab {

using Coord = std::uint16_t;

enum class RingKind { Field, Witt2, TruncPoly };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Exponent vector of a monomial in up to three variables.
struct Monomial {
  std::array<std::uint8_t, 3> e{0, 0, 0};
  int deg() const { return e[0] + e[1] + e[2]; }
};

class Ring {
public:
  static RingPtr makeField(int p, int f);
  static RingPtr makeWitt2(int p, int f);
  /// F_{p^f}[x_1..x_d] / (m^k + <extra monomials>), d <= 3, k <= 4.
  static RingPtr makeTruncPoly(int p, int f, int d, int k,
                               const std::vector<std::vector<int>>& extra = {});

  /// Parses ring specs of the form "q=9", "witt2:q=5", "dual:q=7",
  /// "trunc:q=2,d=2,k=3".  Throws Error on malformed input.
  static RingPtr parseSpec(const std::string& spec);

  RingKind kind() const { return kind_; }
  const Field& field() const { return *F_; }
  FieldPtr fieldPtr() const { return F_; }
  int len() const { return len_; }
  std::uint64_t card() const { return card_; }
  /// Smallest N with m^N = 0 (1 for a field, 2 for W_2).
  int nildeg() const { return nildeg_; }
  int d() const { return d_; }
  int k() const { return k_; }
  const std::vector<Monomial>& monomials() const { return basis_; }
  const std::vector<std::vector<int>>& extraIdeal() const { return extra_; }

  // --- element operations (spans of len() coords) ---
  void zero(Coord* r) const;
  void one(Coord* r) const;
  bool isZero(const Coord* a) const;
  void add(const Coord* a, const Coord* b, Coord* r) const;
  void sub(const Coord* a, const Coord* b, Coord* r) const;
  void neg(const Coord* a, Coord* r) const;
  void mul(const Coord* a, const Coord* b, Coord* r) const;
  /// Multiplicative inverse; returns false when a is not a unit.
  bool inv(const Coord* a, Coord* r) const;
  bool isUnit(const Coord* a) const { return residue(a) != 0; }
  /// Image in the residue field.
  int residue(const Coord* a) const { return int(a[0]); }
  /// Multiplicative lift of a residue-field element (Teichmuller for W_2,
  /// the constant-polynomial section otherwise).
  void liftResidue(int fieldCode, Coord* r) const;
  /// Multiplication by the lift of a residue-field scalar.
  void scaleRes(int fieldCode, const Coord* a, Coord* r) const;

  // --- ideal filtration ---
  /// F-basis of m^i as a list of ring elements (i = 0 gives a basis of R).
  std::vector<std::vector<Coord>> idealPowerBasis(int i) const;
  /// F_p-basis of m^i for i >= 1 (these powers are elementary abelian).
  std::vector<std::vector<Coord>> fpIdealBasis(int i) const;
  /// Generators of the additive group (R,+).  For W_2 this group is not
  /// elementary abelian, so this is a generating set, not an F_p-basis.
  std::vector<std::vector<Coord>> additiveGenerators() const;
  /// True if a lies in m^i.
  bool inIdealPower(const Coord* a, int i) const;

  // --- reduction ---
  /// The quotient R/m^i for 1 <= i <= nildeg(); i = 1 is the residue field,
  /// i = nildeg() is R itself.
  RingPtr quotient(int i) const;
  /// Writes the image of a under R -> target, where target came from
  /// quotient() of this ring.
  void project(const Ring& target, const Coord* a, Coord* r) const;

  // --- deterministic element enumeration ---
  void elementAt(std::uint64_t index, Coord* r) const;
  std::uint64_t indexOf(const Coord* a) const;

  /// JSON descriptor round-trip.
  std::string toJson() const;
  static RingPtr fromJson(const std::string& text);

  /// Short human-readable name, e.g. "F_9", "W2(F_4)", "F_2[x1,x2]/m^3".
  std::string name() const;

private:
  Ring() = default;
  static RingPtr finishTruncPoly(FieldPtr F, int d, int k,
                                 std::vector<std::vector<int>> extra);

  RingKind kind_ = RingKind::Field;
  FieldPtr F_;
  int len_ = 1;
  int d_ = 0, k_ = 0;
  std::vector<Monomial> basis_;
  std::vector<std::vector<int>> extra_;
  std::vector<std::int32_t> mulIdx_;  // basis x basis -> index or -1
  std::vector<int> carry_;            // Witt carry coefficients, index 1..p-1
  int nildeg_ = 1;
  std::uint64_t card_ = 0;
};

}  // namespace chevlab

#endif
