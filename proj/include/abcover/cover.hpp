#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abcover/group.hpp"

namespace abcover {

/// One irreducible branch component p_alpha: its degree and the vector of
/// exponents (alpha_1, ..., alpha_k) with which it appears in f_1, ..., f_k.
struct BranchDivisor {
  std::int64_t degree = 1;
  GroupElement multiplicity;
  std::string label;  // optional, e.g. "h8"; carried through reports

  friend bool operator==(const BranchDivisor&, const BranchDivisor&) = default;
};

/// Defining data of an abelian cover of P^n: z_i^{n_i} = prod_alpha p_alpha^{alpha_i}.
struct CoverData {
  AbelianGroup group;
  int ambient_dim = 1;
  std::vector<BranchDivisor> branches;
  /// Trusted assertion: every branch is a hyperplane and the arrangement is
  /// normal crossing.
  bool linear_general_position = false;

  friend bool operator==(const CoverData&, const CoverData&) = default;
};

/// l_{e_i} = (sum_alpha alpha_i x_alpha) / n_i.
struct LineBundleDegrees {
  std::vector<std::int64_t> l_e;
  friend bool operator==(const LineBundleDegrees&, const LineBundleDegrees&) = default;
};

enum class ViolationKind {
  EmptyBranchList,
  ZeroMultiplicityColumn,
  NonPositiveDegree,
  NonUnitDegreeInGeneralPosition,
  DivisibilityViolation,
  NotConnected,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t index = 0;   // 1-based factor (divisibility) or branch index
  BigInt subgroup_order;   // NotConnected only
  std::string message;
};

struct ValidationResult {
  std::optional<LineBundleDegrees> degrees;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks integrality of every L_i, connectedness and branch sanity; reports
/// every violated condition rather than stopping at the first.
ValidationResult validate(const CoverData& data);

/// validate() that throws InvalidCoverData on failure.
LineBundleDegrees require_valid(const CoverData& data);

class InvalidCoverData : public std::runtime_error {
 public:
  explicit InvalidCoverData(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Raised for documents that do not match the input schema; what() names the field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the JSON input document. Structural problems (schema, ranges,
/// divisibility chain) throw ParseError; the
/// arithmetic conditions are left to validate().
CoverData parse_cover_document(std::string_view text);

/// Canonical serialization: branches sorted by (degree, multiplicities, label),
/// fixed field order, two-space indentation, trailing newline.
std::string serialize_cover(const CoverData& data);

/// Branches in canonical order.
CoverData normalized(const CoverData& data);

/// Human-readable branch name: its label, or "#<1-based index>".
std::string branch_name(const CoverData& data, std::size_t index);

}  // namespace abcover
