#include "abcover/cover.hpp"

#include <algorithm>

#include "abcover/json_io.hpp"

namespace abcover {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyBranchList: return "EmptyBranchList";
    case ViolationKind::ZeroMultiplicityColumn: return "ZeroMultiplicityColumn";
    case ViolationKind::NonPositiveDegree: return "NonPositiveDegree";
    case ViolationKind::NonUnitDegreeInGeneralPosition: return "NonUnitDegreeInGeneralPosition";
    case ViolationKind::DivisibilityViolation: return "DivisibilityViolation";
    case ViolationKind::NotConnected: return "NotConnected";
  }
  return "Unknown";
}

namespace {

std::string describe(const std::vector<Violation>& v) {
  std::string out = "invalid cover data:";
  for (const auto& x : v) out += " " + std::string(to_string(x.kind)) + "(" + x.message + ");";
  return out;
}

}  // namespace

InvalidCoverData::InvalidCoverData(std::vector<Violation> v)
    : std::runtime_error(describe(v)), violations_(std::move(v)) {}

ValidationResult validate(const CoverData& data) {
  ValidationResult result;
  const AbelianGroup& g = data.group;
  auto add = [&](ViolationKind kind, std::size_t index, std::string msg) {
    result.violations.push_back(Violation{kind, index, 0, std::move(msg)});
  };

  if (data.branches.empty() && g.order() > 1)
    add(ViolationKind::EmptyBranchList, 0, "a nontrivial cover of P^n must branch");

  for (std::size_t b = 0; b < data.branches.size(); ++b) {
    const BranchDivisor& br = data.branches[b];
    if (br.multiplicity.size() != g.rank())
      throw std::invalid_argument("branch " + std::to_string(b + 1) + " multiplicity has wrong length");
    if (br.multiplicity.is_zero())
      add(ViolationKind::ZeroMultiplicityColumn, b + 1, "branch " + branch_name(data, b) + " has alpha = 0");
    if (br.degree < 1)
      add(ViolationKind::NonPositiveDegree, b + 1, "branch " + branch_name(data, b) + " has degree " +
                                                        std::to_string(br.degree));
    else if (data.linear_general_position && br.degree != 1)
      add(ViolationKind::NonUnitDegreeInGeneralPosition, b + 1,
          "branch " + branch_name(data, b) + " has degree " + std::to_string(br.degree) +
              " but linear_general_position is set");
  }

  LineBundleDegrees degrees;
  bool integral = true;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    BigInt sum = 0;
    for (const auto& br : data.branches) sum += BigInt(static_cast<long>(br.multiplicity[i])) * static_cast<long>(br.degree);
    const long n = static_cast<long>(g.factor(i));
    if (sum % n != 0) {
      integral = false;
      add(ViolationKind::DivisibilityViolation, i + 1,
          "n_" + std::to_string(i + 1) + " = " + std::to_string(n) + " does not divide " + sum.get_str());
      continue;
    }
    BigInt q = sum / n;
    if (!q.fits_slong_p()) throw std::overflow_error("l_e" + std::to_string(i + 1) + " exceeds 64 bits");
    degrees.l_e.push_back(q.get_si());
  }

  if (!data.branches.empty() || g.order() > 1) {
    std::vector<GroupElement> gens;
    gens.reserve(data.branches.size());
    for (const auto& br : data.branches) gens.push_back(br.multiplicity);
    BigInt h = generated_subgroup_order(g, gens);
    if (h != g.order()) {
      Violation v{ViolationKind::NotConnected, 0, h,
                  "branch multiplicities generate a subgroup of order " + h.get_str() + " in a group of order " +
                      g.order().get_str()};
      result.violations.push_back(std::move(v));
    }
  }

  if (integral && result.violations.empty()) result.degrees = std::move(degrees);
  return result;
}

LineBundleDegrees require_valid(const CoverData& data) {
  ValidationResult r = validate(data);
  if (!r.ok()) throw InvalidCoverData(std::move(r.violations));
  return *r.degrees;
}

std::string branch_name(const CoverData& data, std::size_t index) {
  const auto& br = data.branches.at(index);
  return br.label.empty() ? "#" + std::to_string(index + 1) : br.label;
}

// ---------------------------------------------------------------------------
// Documents

namespace {

bool branch_less(const BranchDivisor& a, const BranchDivisor& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
  return a.label < b.label;
}

const Json& require_field(const Json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

std::int64_t as_int(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError("field \"" + field + "\" must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

CoverData normalized(const CoverData& data) {
  CoverData out = data;
  std::stable_sort(out.branches.begin(), out.branches.end(), branch_less);
  return out;
}

Json cover_to_json(const CoverData& data) {
  const CoverData canon = normalized(data);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["group"] = Json::array();
  for (std::int64_t n : canon.group.invariant_factors()) doc["group"].push_back(n);
  doc["ambient_dim"] = canon.ambient_dim;
  doc["linear_general_position"] = canon.linear_general_position;
  doc["branches"] = Json::array();
  for (const auto& br : canon.branches) {
    Json b;
    b["degree"] = br.degree;
    b["multiplicities"] = Json::array();
    for (std::int64_t a : br.multiplicity.components()) b["multiplicities"].push_back(a);
    if (!br.label.empty()) b["label"] = br.label;
    doc["branches"].push_back(std::move(b));
  }
  return doc;
}

CoverData cover_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (auto it = doc.find("schema_version"); it != doc.end() && as_int(*it, "schema_version") != kSchemaVersion)
    throw ParseError("unsupported schema_version " + it->dump());

  const Json& group = require_field(doc, "group");
  if (!group.is_array()) throw ParseError("field \"group\" must be a list of integers");
  std::vector<std::int64_t> factors;
  for (std::size_t i = 0; i < group.size(); ++i) factors.push_back(as_int(group[i], "group[" + std::to_string(i) + "]"));

  CoverData data;
  try {
    data.group = AbelianGroup(factors);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field \"group\": ") + e.what());
  }

  data.ambient_dim = static_cast<int>(as_int(require_field(doc, "ambient_dim"), "ambient_dim"));
  if (data.ambient_dim < 1) throw ParseError("field \"ambient_dim\" must be >= 1");

  const Json& lgp = require_field(doc, "linear_general_position");
  if (!lgp.is_boolean()) throw ParseError("field \"linear_general_position\" must be a boolean");
  data.linear_general_position = lgp.get<bool>();

  const Json& branches = require_field(doc, "branches");
  if (!branches.is_array()) throw ParseError("field \"branches\" must be a list");
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const std::string where = "branches[" + std::to_string(b) + "]";
    const Json& entry = branches[b];
    if (!entry.is_object()) throw ParseError("field \"" + where + "\" must be an object");
    BranchDivisor br;
    br.degree = as_int(require_field(entry, "degree"), where + ".degree");
    if (br.degree < 1) throw ParseError("field \"" + where + ".degree\" must be >= 1");
    const Json& mult = require_field(entry, "multiplicities");
    if (!mult.is_array() || mult.size() != data.group.rank())
      throw ParseError("field \"" + where + ".multiplicities\" must list " + std::to_string(data.group.rank()) +
                       " integers");
    std::vector<std::int64_t> alpha;
    for (std::size_t i = 0; i < mult.size(); ++i) {
      std::int64_t a = as_int(mult[i], where + ".multiplicities[" + std::to_string(i) + "]");
      if (a < 0 || a >= data.group.factor(i))
        throw ParseError("field \"" + where + ".multiplicities[" + std::to_string(i) + "]\" = " +
                         std::to_string(a) + " must lie in [0, " + std::to_string(data.group.factor(i)) + ")");
      alpha.push_back(a);
    }
    if (auto it = entry.find("label"); it != entry.end()) {
      if (!it->is_string()) throw ParseError("field \"" + where + ".label\" must be a string");
      br.label = it->get<std::string>();
    }
    br.multiplicity = data.group.element(alpha);
    data.branches.push_back(std::move(br));
  }
  return data;
}

CoverData parse_cover_document(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return cover_from_json(doc);
}

std::string serialize_cover(const CoverData& data) { return cover_to_json(data).dump(2) + "\n"; }

Json big_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Json rational_to_json(const Rational& v) { return Json(v.get_str()); }

}  // namespace abcover
