#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "abcover/report.hpp"

namespace abcover {

/// Bounded search over covers of P^n branched on m hyperplanes in general
/// position. Every branch has degree 1.
struct SearchSpec {
  int ambient_dim = 4;
  std::vector<std::vector<std::int64_t>> groups;  // invariant-factor tuples
  std::size_t m_min = 0;
  std::size_t m_max = 0;
  bool symmetry_reduction = true;
  /// Fix the first k columns to e_1..e_k. Exhaustive up to Aut(G) whenever
  /// some k columns of a hit form a basis (always true for (Z_p)^k).
  bool basis_prefix = true;
  bool require_smooth = true;
  /// Strata of at most this many hyperplanes are required smooth while
  /// columns are chosen. Defaults to n when require_smooth is set, else 0.
  int prune_stratum_size = -1;
  std::uint64_t max_candidates = 0;  // complete column matrices examined
  double max_seconds = 0;
  unsigned threads = 1;

  int effective_prune_size() const;
};

/// Parses a search document. Limits are mandatory and the branch-count
/// window must lie in (B, 2B]; violations throw ParseError.
SearchSpec parse_search_spec(std::string_view text);
Json search_spec_to_json(const SearchSpec& spec);

struct SearchHit {
  std::size_t group_index = 0;
  CoverData data;
  AnalysisReport report;
  std::vector<std::int64_t> canonical_key;
};

struct GroupSearchStats {
  std::vector<std::int64_t> factors;
  std::size_t m = 0;
  std::string status;  // searched | no-compatible-profile | order-bound | interrupted
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;
  std::uint64_t pruned_profile = 0;
  std::uint64_t pruned_smooth = 0;
  std::uint64_t rejected_divisibility = 0;
  std::uint64_t rejected_connected = 0;
  std::uint64_t rejected_structure = 0;  // symmetry, p_g or minimal twist
  std::uint64_t rejected_singular = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t hits = 0;
};

struct SearchSummary {
  bool complete = true;
  std::string stop_reason;  // max_candidates | max_seconds, when incomplete
  std::uint64_t hits = 0;
  std::vector<GroupSearchStats> runs;
  double seconds = 0;
};

using HitSink = std::function<void(const SearchHit&)>;

/// Emits every inequivalent hit of the searched space in a deterministic
/// order. With a limit hit the summary is marked incomplete.
SearchSummary run_search(const SearchSpec& spec, const HitSink& sink);

Json hit_to_json(const SearchHit& hit, std::uint64_t ordinal);
Json summary_to_json(const SearchSummary& summary, bool include_timing = true);

/// Minimum over row permutations inside blocks of equal invariant factors and
/// unit scalings of each row, of the sorted flattened column list. Equal keys
/// imply equivalent covers.
std::vector<std::int64_t> canonical_key(const CoverData& data);

/// Elements of the subgroup generated by `gens`, as mixed-radix indices.
std::vector<std::uint32_t> subgroup_closure(const AbelianGroup& g, std::span<const GroupElement> gens);

}  // namespace abcover
