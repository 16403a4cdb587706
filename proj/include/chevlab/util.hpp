/**
 * @file util.hpp
 * @brief Common error types, budget limits, hashing and digest helpers.
 */
#ifndef CHEVLAB_UTIL_HPP
#define CHEVLAB_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chevlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A characteristic argument was not a prime number.
class NonPrimeError : public Error {
public:
  using Error::Error;
};

/// A requested object exceeds a size cap (field degree, ring cardinality, ...).
class DegreeTooLargeError : public Error {
public:
  using Error::Error;
};

/// An enumeration, elimination or search exceeded its configured budget.
class BudgetExceededError : public Error {
public:
  using Error::Error;
};

/// The requested (family, n, ring) combination is not constructible here.
class UnsupportedFamilyError : public Error {
public:
  using Error::Error;
};

/// A subgroup expected to surject onto the residue-field points does not.
class NotResiduallyFullError : public Error {
public:
  using Error::Error;
};

/// A subgroup order was required to be coprime to the residue characteristic.
class OrderNotCoprimeError : public Error {
public:
  using Error::Error;
};

/// A ring element was expected to lie in a given power of the maximal ideal.
class NotInIdealPowerError : public Error {
public:
  using Error::Error;
};

/// Two computations that must agree (table vs oracle, paired oracles) differ.
class InconsistencyError : public Error {
public:
  using Error::Error;
};

/// A classification descriptor is malformed or outside the covered families.
class UnsupportedDescriptorError : public Error {
public:
  using Error::Error;
};

/// A subspace expected to be stable under a group action is not.
class NotStableError : public Error {
public:
  using Error::Error;
};

/// An extension kernel that must be elementary abelian is not.
class KernelNotAbelianError : public Error {
public:
  using Error::Error;
};

/// Size caps shared by enumeration and linear-algebra engines.
struct Budget {
  std::uint64_t maxGroupElements = std::uint64_t(1) << 22;
  std::uint64_t maxRingCard = std::uint64_t(1) << 24;
  std::uint64_t maxElimUnknowns = std::uint64_t(1) << 16;
  std::uint64_t maxSpinVectors = std::uint64_t(1) << 20;
  // Degree-2 group cohomology scans quadratically many pairs; the cap below
  // applies for p = 2 where rows pack into machine words, and is divided by 6
  // for odd p where elimination works on byte vectors.
  std::uint64_t maxH2GroupOrder = 720;
  std::uint64_t maxComplementCombos = std::uint64_t(1) << 22;
};

/// Default budget instance used when callers do not pass one explicitly.
const Budget& defaultBudget();

/// FNV-1a over a byte range; used for hash-map keys of matrix encodings.
inline std::uint64_t fnv1a(const std::uint8_t* data, std::size_t len) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 1099511628211ull;
  }
  return h;
}

/// SHA-256 digest as lowercase hex; used for cache keys and data-file checks.
std::string sha256Hex(const std::string& bytes);

/// True if n is prime (deterministic trial division; n < 2^32).
bool isPrime(std::uint64_t n);

/// a^e mod m with 64-bit safe intermediate values.
std::uint64_t powMod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

}  // namespace chevlab

#endif
