#include "abcover/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace abcover {

AnalysisReport analyze(const CoverData& data, const AnalysisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport rep;
  rep.data = data;
  rep.validation = validate(data);
  if (rep.valid()) {
    const LineBundleDegrees& lead = *rep.validation.degrees;
    rep.decomposition = decompose(data, lead, options.threads);
    rep.structure = canonical_structure(*rep.decomposition, data.ambient_dim);
    rep.ramification = ramification(data);
    rep.canonical = canonical_test(data, rep.ramification, &*rep.decomposition);
    rep.smoothness = smoothness(data, options.threads);
    rep.minimal = minimality(rep.canonical);
    rep.invariants = invariant_report(data, *rep.decomposition, rep.canonical.is_canonical);
    if (options.verbose) rep.twist_table = twist_table(data, lead);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Json violations_to_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) {
    Json j;
    j["kind"] = to_string(v.kind);
    if (v.kind == ViolationKind::NotConnected)
      j["subgroup_order"] = big_to_json(v.subgroup_order);
    else if (v.index != 0)
      j["index"] = v.index;
    j["message"] = v.message;
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

Json element_to_json(const GroupElement& g) {
  Json a = Json::array();
  for (std::int64_t v : g.components()) a.push_back(v);
  return a;
}

Json branch_refs(const CoverData& data, const std::vector<std::size_t>& idx) {
  Json a = Json::array();
  for (std::size_t i : idx) {
    Json b;
    b["index"] = i + 1;
    b["name"] = branch_name(data, i);
    b["multiplicities"] = element_to_json(data.branches[i].multiplicity);
    a.push_back(std::move(b));
  }
  return a;
}

}  // namespace

Json report_to_json(const AnalysisReport& rep, bool include_timing) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["tool_version"] = kToolVersion;
  out["input"] = cover_to_json(rep.data);
  out["valid"] = rep.valid();
  if (!rep.valid()) {
    out["violations"] = violations_to_json(rep.validation.violations);
  } else {
    const TwistMultiset& ms = *rep.decomposition;
    Json lead = Json::array();
    for (std::int64_t l : rep.validation.degrees->l_e) lead.push_back(l);
    out["line_bundle_degrees"] = lead;

    Json dec;
    dec["total"] = big_to_json(ms.total);
    Json twists = Json::array();
    for (const auto& [t, k] : ms.counts) twists.push_back(Json::array({t, k}));
    dec["twists"] = twists;
    out["decomposition"] = dec;

    Json cs;
    cs["is_symmetric"] = rep.structure.is_symmetric;
    cs["c1_value"] = big_to_json(rep.structure.c1_value);
    cs["pg_from_twists"] = big_to_json(rep.structure.pg_from_twists);
    cs["min_nonzero_twist"] = rep.structure.min_nonzero_twist;
    out["canonical_structure"] = cs;

    Json ram = Json::array();
    for (std::size_t b = 0; b < rep.ramification.branches.size(); ++b) {
      Json r;
      r["name"] = branch_name(rep.data, b);
      r["preimage_count"] = big_to_json(rep.ramification.branches[b].preimage_count);
      r["index"] = rep.ramification.branches[b].index;
      ram.push_back(std::move(r));
    }
    out["ramification"] = ram;

    Json cc;
    cc["hurwitz_lhs"] = rational_to_json(rep.canonical.hurwitz_lhs);
    cc["target"] = rep.canonical.target;
    cc["is_canonical"] = rep.canonical.is_canonical;
    cc["pg_ok"] = rep.canonical.pg_ok;
    out["canonical_certificate"] = cc;

    Json sm;
    sm["status"] = to_string(rep.smoothness.status);
    sm["checked_strata"] = rep.smoothness.checked_strata;
    if (rep.smoothness.status == SmoothnessStatus::Singular)
      sm["stratum"] = branch_refs(rep.data, rep.smoothness.stratum);
    if (!rep.smoothness.reason.empty()) sm["reason"] = rep.smoothness.reason;
    out["smoothness"] = sm;

    Json mn;
    mn["minimal"] = rep.minimal ? Json(true) : Json(nullptr);
    mn["basis"] = rep.minimal ? "K_X is the pullback of an ample class, hence nef"
                              : "not asserted: the cover is not canonical";
    out["minimality"] = mn;

    const InvariantReport& inv = *rep.invariants;
    Json iv;
    iv["p_g"] = inv.p_g ? big_to_json(*inv.p_g) : Json(nullptr);
    iv["q"] = big_to_json(inv.q);
    Json hi0 = Json::object();
    for (std::size_t i = 0; i < inv.h_i0.size(); ++i) hi0["h" + std::to_string(i + 2) + "0"] = big_to_json(inv.h_i0[i]);
    iv["h_i0"] = hi0;
    iv["chi_O"] = big_to_json(inv.chi_O);
    iv["chi_omega"] = big_to_json(inv.chi_omega);
    iv["canonical_degree"] = inv.canonical_degree ? big_to_json(*inv.canonical_degree) : Json(nullptr);
    iv["requires_smoothness"] = inv.requires_smoothness;
    out["invariants"] = iv;

    if (!rep.twist_table.empty()) {
      Json table = Json::array();
      for (const auto& [g, l] : rep.twist_table) table.push_back(Json::array({element_to_json(g), l}));
      out["twist_table"] = table;
    }
  }
  if (include_timing) out["timing"] = Json{{"seconds", rep.seconds}};
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

AnalysisReport verify_fixture(const std::string& path, const AnalysisOptions& options) {
  return analyze(parse_cover_document(read_text_file(path)), options);
}

Json profile_to_json(const RamificationProfile& p) {
  Json j;
  j["m"] = p.m();
  j["d"] = p.d;
  j["r"] = p.r;
  j["degree_sum"] = p.degree_sum();
  j["r_product"] = big_to_json(index_product(p));
  return j;
}

Json bound_report_to_json(const BoundReport& rep, bool include_profiles) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["tool_version"] = kToolVersion;
  out["ambient_dim"] = rep.ambient_dim;
  out["target"] = rep.target;
  out["branch_count_window"] = Json::array({rep.target + 1, 2 * rep.target});
  out["profile_count"] = rep.profiles.size();
  out["max_r_product"] = big_to_json(rep.max_r_product);
  out["max_r_product_all_branch_counts"] = big_to_json(rep.max_r_product_all);
  out["profiles_with_m_at_most_target"] = rep.small_m_profiles;
  out["c1"] = rep.c1;
  out["known_maximum_degree"] = rep.known_maximum_degree ? Json(*rep.known_maximum_degree) : Json(nullptr);
  out["note"] = rep.note;
  if (include_profiles) {
    Json list = Json::array();
    for (const auto& p : rep.profiles) list.push_back(profile_to_json(p));
    out["profiles"] = list;
  }
  return out;
}

}  // namespace abcover
