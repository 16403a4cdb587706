/**
 * @file field.hpp
 * @brief Finite fields F_{p^f} in a polynomial basis with table-driven arithmetic.
 *
 * Elements are integer codes in [0, p^f): the base-p digits of a code are the
 * coefficients of the representative polynomial, lowest degree first.  The
 * modulus is the lexicographically least monic irreducible polynomial of
 * degree f, comparing coefficient sequences low-degree-first, so every field
 * is constructed deterministically from (p, f) alone.
 */
#ifndef CHEVLAB_FIELD_HPP
#define CHEVLAB_FIELD_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "chevlab/util.hpp"

namespace chevlab {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
  /// Builds F_{p^f}.  Throws NonPrimeError / DegreeTooLargeError (p^f > 2^16).
  static FieldPtr make(int p, int f);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }

  /// Modulus coefficients c_0..c_{f-1} of x^f + c_{f-1}x^{f-1} + ... + c_0.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const {
    return tables_ ? addT_[a * q_ + b] : addSlow(a, b);
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int neg(int a) const { return negT_[a]; }
  int mul(int a, int b) const {
    if (tables_) return mulT_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return expT_[(logT_[a] + logT_[b]) % (q_ - 1)];
  }
  /// Multiplicative inverse; a must be nonzero.
  int inv(int a) const { return invT_[a]; }
  /// a^e for e >= 0.
  int powi(int a, std::uint64_t e) const;
  /// Frobenius x -> x^p.
  int frob(int a) const { return frobT_[a]; }
  /// Inverse of the Frobenius map (a bijection on a finite field).
  int frobInv(int a) const { return frobInvT_[a]; }

  /// Code of the polynomial-basis generator x (requires f > 1).
  int theta() const { return p_; }
  /// Codes of the F_p-basis 1, x, ..., x^{f-1}.
  std::vector<int> fpBasis() const;
  /// A fixed generator of the multiplicative group.
  int primitive() const { return gen_; }

  /// Digit d of the code (coefficient of x^d).
  int digit(int a, int d) const;

private:
  Field() = default;
  int addSlow(int a, int b) const;

  int p_ = 0, f_ = 0, q_ = 0;
  std::vector<int> modulus_;
  int gen_ = 0;
  bool tables_ = false;
  std::vector<std::uint16_t> addT_, mulT_;
  std::vector<std::uint16_t> negT_, invT_, frobT_, frobInvT_;
  std::vector<std::uint32_t> expT_, logT_;
};

}  // namespace chevlab

#endif
