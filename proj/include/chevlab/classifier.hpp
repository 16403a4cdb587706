/**
 * @file classifier.hpp
 * @brief Table-driven and brute-force classification of the workbench
 *        conditions for a group-type descriptor.
 *
 * A descriptor names an almost-simple group shape over a finite field: a
 * Dynkin type with rank, an optional twist, a field size q = p^f, and an
 * isogeny position (simply connected, adjoint, or an intermediate quotient
 * by a central subgroup of given order).  A separate flag selects the
 * central-torus extension of the simply connected form inside GL_n, the
 * shape used by determinant-balanced tuples.
 *
 * Two independent engines produce verdicts for the ten conditions:
 *   - the table engine applies published classification statements plus
 *     exception lists embedded from data/exception_lists.json;
 *   - the oracle engine constructs the named finite matrix group and its
 *     Lie algebra and evaluates each condition definition directly.
 * Verdicts are three-valued; Unknown is a first-class outcome (a table
 * with no applicable clause, or an oracle outside its budget).  When both
 * engines decide and differ, the merged report keeps the oracle verdict,
 * flags the condition, and marks the whole report inconsistent.  Such a
 * flag is a test failure; it is never silently resolved.
 */
#ifndef CHEVLAB_CLASSIFIER_HPP
#define CHEVLAB_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "chevlab/util.hpp"

namespace chevlab {

enum class DynkinType { A, B, C, D, E6, E7, E8, F4, G2 };

const char* dynkinName(DynkinType t);

enum class IsogenyKind { SimplyConnected, Adjoint, Intermediate };

const char* isogenyName(IsogenyKind k);

struct GroupTypeDescriptor {
  DynkinType type = DynkinType::A;
  int rank = 1;
  bool twisted = false;
  int q = 2;
  IsogenyKind isogeny = IsogenyKind::SimplyConnected;
  /// For Intermediate: order of the central kernel of the covering map from
  /// the simply connected form onto this group.
  int kernelOrder = 1;
  /// Central-torus extension of the simply connected form (ambient GL_n);
  /// rank, q apply, isogeny is ignored.
  bool zLieBalanced = false;

  int p() const;
  int f() const;
  /// Matrix size of the defining representation for type A shapes (rank+1).
  int degree() const { return rank + 1; }
  std::string name() const;
};

/// Builds a descriptor from text pieces: type like "A1", "C2", "2A2", "GL3";
/// isogeny "sc", "ad" or "k<order>".  "GL<n>" selects the balanced form and
/// the isogeny text is ignored.  Throws std::invalid_argument on bad input,
/// including rank bounds (A: >=1, B: >=2, C: >=2 with C2 stored as B2,
/// D: >=4) and non-prime-power q.
GroupTypeDescriptor makeDescriptor(const std::string& typeName, int q,
                                   const std::string& isogeny = "sc");

/// Validation used by makeDescriptor; returns an error message or empty.
std::string validateDescriptor(const GroupTypeDescriptor& d);

enum class Verdict { Holds, Fails, Unknown };

const char* verdictName(Verdict v);

enum class ConditionId { Pf, StandardHyp, Ct, LGe, LUn, LCl, Csc, Van, Sch, NS };

const char* conditionName(ConditionId c);

/// All ten condition ids in display order.
const std::vector<ConditionId>& allConditions();

enum class VerdictSource { None, Table, Oracle, Both };

const char* sourceName(VerdictSource s);

struct ConditionReport {
  ConditionId id = ConditionId::Pf;
  Verdict verdict = Verdict::Unknown;
  VerdictSource source = VerdictSource::None;
  Verdict tableVerdict = Verdict::Unknown;
  Verdict oracleVerdict = Verdict::Unknown;
  /// Both engines decided and they differ; verdict then carries the oracle
  /// result and the owning report is marked inconsistent.
  bool disagreement = false;
  /// Literature backing the table verdict; for Unknown it names the clause
  /// that abstained, so the string is always nonempty.
  std::string citation;
  /// Oracle-side details: computed dimensions, group orders, skip reasons.
  std::string note;
};

struct ClassifierReport {
  GroupTypeDescriptor descriptor;
  std::vector<ConditionReport> conditions;
  bool oracleUsed = false;
  bool inconsistent = false;

  const ConditionReport* find(ConditionId id) const;
};

/// Table engine only: applies classification statements and exception lists.
ClassifierReport classifyTable(const GroupTypeDescriptor& d);

/// Oracle engine only: builds the finite group and evaluates definitions.
ClassifierReport classifyOracle(const GroupTypeDescriptor& d,
                                const Budget& budget = defaultBudget());

/// Merged classification; withOracle=false is classifyTable.
ClassifierReport classify(const GroupTypeDescriptor& d, bool withOracle,
                          const Budget& budget = defaultBudget());

struct CrossValidationSummary {
  std::vector<ClassifierReport> reports;
  /// One line per conflicting condition: descriptor, condition, verdicts.
  std::vector<std::string> disagreements;
  /// One line per oracle skipped for budget or capability reasons.
  std::vector<std::string> skips;
  int comparedConditions = 0;
};

CrossValidationSummary crossValidate(const std::vector<GroupTypeDescriptor>& grid,
                                     const Budget& budget = defaultBudget());

/// The descriptor grid with full oracle support at desktop scale.
std::vector<GroupTypeDescriptor> defaultGrid();

/// Raw bytes of the embedded exception data and their digest; the on-disk
/// copy under data/ must match (guarded by a checksum test).
const std::string& exceptionListsJson();
std::string exceptionListsSha256();

/// Membership tests against the embedded lists.  The first is keyed by the
/// simply connected points group of the descriptor's type, the second by
/// (possibly twisted) type name and q, the third by the isogeny-specific
/// group name over W2 reductions.
bool inNonperfectPoints(const GroupTypeDescriptor& d);
bool inSchurNonvanishing(const GroupTypeDescriptor& d);
bool inSplitReductions(const GroupTypeDescriptor& d);

}  // namespace chevlab

#endif
