#include "abcover/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "abcover/bounds.hpp"

namespace abcover {

using Clock = std::chrono::steady_clock;

int SearchSpec::effective_prune_size() const {
  if (prune_stratum_size >= 0) return prune_stratum_size;
  return require_smooth ? ambient_dim : 0;
}

// ---------------------------------------------------------------------------
// spec document

namespace {

std::int64_t spec_int(const Json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  if (!it->is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer");
  return it->get<std::int64_t>();
}

bool spec_bool(const Json& doc, const char* name, bool fallback) {
  auto it = doc.find(name);
  if (it == doc.end()) return fallback;
  if (!it->is_boolean()) throw ParseError(std::string("field \"") + name + "\" must be a boolean");
  return it->get<bool>();
}

constexpr std::uint64_t kMaxSearchOrder = 1u << 16;

}  // namespace

SearchSpec parse_search_spec(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("search document must be a JSON object");
  if (auto it = doc.find("schema_version"); it != doc.end() && *it != kSchemaVersion)
    throw ParseError("unsupported schema_version " + it->dump());

  SearchSpec spec;
  spec.ambient_dim = static_cast<int>(spec_int(doc, "ambient_dim"));
  if (spec.ambient_dim < 1) throw ParseError("field \"ambient_dim\" must be >= 1");

  auto groups = doc.find("groups");
  if (groups == doc.end() || !groups->is_array() || groups->empty())
    throw ParseError("field \"groups\" must be a nonempty list of invariant-factor lists");
  for (std::size_t g = 0; g < groups->size(); ++g) {
    const Json& entry = (*groups)[g];
    const std::string where = "groups[" + std::to_string(g) + "]";
    if (!entry.is_array() || entry.empty()) throw ParseError("field \"" + where + "\" must be a nonempty list");
    std::vector<std::int64_t> factors;
    for (const Json& v : entry) {
      if (!v.is_number_integer()) throw ParseError("field \"" + where + "\" must hold integers");
      factors.push_back(v.get<std::int64_t>());
    }
    try {
      AbelianGroup grp(factors);
      if (grp.order() > static_cast<unsigned long>(kMaxSearchOrder))
        throw ParseError("field \"" + where + "\": group order " + grp.order().get_str() + " exceeds the search cap " +
                         std::to_string(kMaxSearchOrder));
    } catch (const std::invalid_argument& e) {
      throw ParseError("field \"" + where + "\": " + e.what());
    }
    spec.groups.push_back(std::move(factors));
  }

  const std::int64_t target = spec.ambient_dim + 2;
  const std::int64_t m_min = spec_int(doc, "m_min");
  const std::int64_t m_max = spec_int(doc, "m_max");
  if (m_min > m_max) throw ParseError("field \"m_min\" exceeds \"m_max\"");
  if (m_min <= target || m_max > 2 * target)
    throw ParseError("branch-count window [" + std::to_string(m_min) + ", " + std::to_string(m_max) +
                     "] must lie in (B, 2B] = (" + std::to_string(target) + ", " + std::to_string(2 * target) + "]");
  spec.m_min = static_cast<std::size_t>(m_min);
  spec.m_max = static_cast<std::size_t>(m_max);

  spec.symmetry_reduction = spec_bool(doc, "symmetry_reduction", true);
  spec.basis_prefix = spec_bool(doc, "basis_prefix", true);
  spec.require_smooth = spec_bool(doc, "require_smooth", true);
  if (doc.contains("prune_stratum_size")) {
    const std::int64_t s = spec_int(doc, "prune_stratum_size");
    if (s < 0 || s > spec.ambient_dim)
      throw ParseError("field \"prune_stratum_size\" must lie in [0, ambient_dim]");
    if (spec.require_smooth && s != spec.ambient_dim)
      throw ParseError("field \"prune_stratum_size\" must equal ambient_dim when require_smooth is set");
    spec.prune_stratum_size = static_cast<int>(s);
  }

  auto limits = doc.find("limits");
  if (limits == doc.end() || !limits->is_object())
    throw ParseError("field \"limits\" is required: unbounded searches are refused");
  const std::int64_t max_candidates = spec_int(*limits, "max_candidates");
  if (max_candidates <= 0) throw ParseError("field \"limits.max_candidates\" must be positive");
  spec.max_candidates = static_cast<std::uint64_t>(max_candidates);
  auto secs = limits->find("max_seconds");
  if (secs == limits->end() || !secs->is_number() || secs->get<double>() <= 0)
    throw ParseError("field \"limits.max_seconds\" must be a positive number");
  spec.max_seconds = secs->get<double>();
  return spec;
}

Json search_spec_to_json(const SearchSpec& spec) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["ambient_dim"] = spec.ambient_dim;
  doc["groups"] = spec.groups;
  doc["m_min"] = spec.m_min;
  doc["m_max"] = spec.m_max;
  doc["symmetry_reduction"] = spec.symmetry_reduction;
  doc["basis_prefix"] = spec.basis_prefix;
  doc["require_smooth"] = spec.require_smooth;
  doc["prune_stratum_size"] = spec.effective_prune_size();
  doc["limits"] = Json{{"max_candidates", spec.max_candidates}, {"max_seconds", spec.max_seconds}};
  return doc;
}

// ---------------------------------------------------------------------------
// group tables

namespace {

/// Mixed-radix element indices, last component fastest (lexicographic).
struct GroupTable {
  AbelianGroup group;
  std::uint32_t size = 0;
  std::size_t rank = 0;
  std::vector<std::int64_t> digits;  // size * rank
  std::vector<std::uint32_t> stride;
  std::vector<std::int64_t> order;   // element orders

  explicit GroupTable(const AbelianGroup& g) : group(g), rank(g.rank()) {
    size = static_cast<std::uint32_t>(g.order_u64());
    stride.assign(rank, 1);
    for (std::size_t i = rank; i-- > 1;) stride[i - 1] = stride[i] * static_cast<std::uint32_t>(g.factor(i));
    digits.reserve(static_cast<std::size_t>(size) * rank);
    g.for_each_element([&](const GroupElement& x) {
      for (std::int64_t v : x.components()) digits.push_back(v);
      order.push_back(element_order(g, x));
    });
  }

  std::int64_t digit(std::uint32_t x, std::size_t i) const { return digits[static_cast<std::size_t>(x) * rank + i]; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < rank; ++i) {
      std::int64_t s = digit(a, i) + digit(b, i);
      if (s >= group.factor(i)) s -= group.factor(i);
      out += static_cast<std::uint32_t>(s) * stride[i];
    }
    return out;
  }

  std::uint32_t index_of(const GroupElement& x) const {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < rank; ++i) out += static_cast<std::uint32_t>(x[i]) * stride[i];
    return out;
  }

  GroupElement element(std::uint32_t x) const {
    return group.element(std::span<const std::int64_t>(&digits[static_cast<std::size_t>(x) * rank], rank));
  }

  /// H + <gen>, H given as an element list; `mark` is scratch of length size, all zero.
  std::vector<std::uint32_t> extend(const std::vector<std::uint32_t>& h, std::uint32_t gen,
                                    std::vector<std::uint8_t>& mark) const {
    std::vector<std::uint32_t> out = h;
    for (std::uint32_t x : out) mark[x] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::uint32_t y = add(out[i], gen);
      if (!mark[y]) {
        mark[y] = 1;
        out.push_back(y);
      }
    }
    for (std::uint32_t x : out) mark[x] = 0;
    return out;
  }
};

}  // namespace

std::vector<std::uint32_t> subgroup_closure(const AbelianGroup& g, std::span<const GroupElement> gens) {
  GroupTable t(g);
  std::vector<std::uint8_t> mark(t.size, 0);
  std::vector<std::uint32_t> h{0};
  for (const auto& x : gens) h = t.extend(h, t.index_of(x), mark);
  std::sort(h.begin(), h.end());
  return h;
}

// ---------------------------------------------------------------------------
// canonical form

std::vector<std::int64_t> canonical_key(const CoverData& data) {
  const AbelianGroup& g = data.group;
  const std::size_t k = g.rank();
  const std::size_t m = data.branches.size();

  // per-block permutations
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == 0 || g.factor(i) != g.factor(i - 1)) blocks.emplace_back();
    blocks.back().push_back(i);
  }
  std::vector<std::vector<std::int64_t>> units(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::int64_t u = 1; u < g.factor(i); ++u)
      if (std::gcd(u, g.factor(i)) == 1) units[i].push_back(u);

  constexpr double kMaxTransforms = 2e5;
  double transforms = 1;
  for (const auto& b : blocks)
    for (std::size_t j = 1; j <= b.size(); ++j) transforms *= static_cast<double>(j);
  for (const auto& u : units) transforms *= static_cast<double>(u.size());

  auto key_of = [&](const std::vector<std::size_t>& perm, const std::vector<std::int64_t>& scale) {
    std::vector<std::vector<std::int64_t>> cols(m, std::vector<std::int64_t>(k + 1));
    for (std::size_t j = 0; j < m; ++j) {
      cols[j][0] = data.branches[j].degree;
      for (std::size_t i = 0; i < k; ++i)
        cols[j][i + 1] = data.branches[j].multiplicity[perm[i]] * scale[i] % g.factor(i);
    }
    std::sort(cols.begin(), cols.end());
    std::vector<std::int64_t> flat;
    flat.reserve(m * (k + 1));
    for (const auto& c : cols) flat.insert(flat.end(), c.begin(), c.end());
    return flat;
  };

  std::vector<std::size_t> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::int64_t> ones(k, 1);
  std::vector<std::int64_t> best = key_of(identity, ones);
  if (transforms > kMaxTransforms) return best;  // hyperplane permutations only

  std::vector<std::vector<std::size_t>> block_perm(blocks);
  std::vector<std::size_t> perm(k);
  std::vector<std::size_t> uidx(k, 0);
  std::vector<std::int64_t> scale(k);
  for (;;) {
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (std::size_t j = 0; j < blocks[b].size(); ++j) perm[blocks[b][j]] = block_perm[b][j];
    std::fill(uidx.begin(), uidx.end(), 0);
    for (;;) {
      for (std::size_t i = 0; i < k; ++i) scale[i] = units[i][uidx[i]];
      best = std::min(best, key_of(perm, scale));
      std::size_t i = k;
      while (i > 0 && ++uidx[i - 1] == units[i - 1].size()) uidx[--i] = 0;
      if (i == 0) break;
    }
    std::size_t b = blocks.size();
    while (b > 0 && !std::next_permutation(block_perm[b - 1].begin(), block_perm[b - 1].end())) --b;
    if (b == 0) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct Shared {
  const SearchSpec& spec;
  Clock::time_point start;
  std::atomic<std::uint64_t> candidates{0};
  std::atomic<bool> stop{false};
  std::atomic<int> reason{0};  // 1 candidates, 2 seconds

  explicit Shared(const SearchSpec& s) : spec(s), start(Clock::now()) {}

  void halt(int why) {
    int expected = 0;
    reason.compare_exchange_strong(expected, why);
    stop = true;
  }
  void check_clock() {
    if (std::chrono::duration<double>(Clock::now() - start).count() > spec.max_seconds) halt(2);
  }
};

struct LeafHit {
  std::vector<std::uint32_t> columns;
  std::vector<std::int64_t> key;
};

struct TaskResult {
  GroupSearchStats stats;
  std::vector<LeafHit> hits;
};

class Enumerator {
 public:
  Enumerator(const GroupTable& table, const SearchSpec& spec, std::size_t m,
             std::vector<std::vector<int>> kept, std::vector<std::int64_t> slot_orders)
      : t_(table), spec_(spec), m_(m), kept_(std::move(kept)), slot_orders_(std::move(slot_orders)) {
    prune_ = spec.effective_prune_size();
    L_ = t_.group.exponent();
    for (std::uint32_t x = 1; x < t_.size; ++x)
      if (slot_of(t_.order[x]) >= 0) cands_.push_back(x);
    cand_pos_.assign(t_.size, -1);
    for (std::size_t c = 0; c < cands_.size(); ++c) cand_pos_[cands_[c]] = static_cast<int>(c);
    if (spec.basis_prefix)
      for (std::size_t i = 0; i < t_.rank; ++i) prefix_.push_back(t_.index_of(t_.group.unit_vector(i)));
    if (prefix_.size() > m_) prefix_.clear();

    // floor(sum_i g_i alpha_i / n_i) per candidate column and g
    if (static_cast<std::uint64_t>(cands_.size()) * t_.size <= (1u << 26)) {
      auto table = std::make_shared<std::vector<std::uint16_t>>(cands_.size() * static_cast<std::size_t>(t_.size));
      for (std::size_t c = 0; c < cands_.size(); ++c)
        for (std::uint32_t g = 0; g < t_.size; ++g)
          (*table)[c * t_.size + g] = static_cast<std::uint16_t>(floor_term(cands_[c], g));
      floors_ = std::move(table);
    }
  }

  std::size_t free_count() const { return m_ - prefix_.size(); }
  std::size_t candidate_count() const { return cands_.size(); }

  /// Task t fixes the first free column to candidate t; with fewer than two
  /// free columns there is a single task.
  std::size_t task_count() const { return free_count() >= 2 ? cands_.size() : 1; }

  TaskResult run(std::size_t task, Shared& shared) {
    TaskResult res;
    shared_ = &shared;
    res_ = &res;
    mark_.assign(t_.size, 0);
    forbidden_.assign(1, std::vector<std::uint8_t>(t_.size, 0));
    groups_.clear();
    groups_.push_back({{0}, 0});
    counts_.assign(slot_orders_.size(), 0);
    cols_.clear();
    sum_.assign(t_.rank, 0);

    for (std::uint32_t p : prefix_)
      if (!push(p)) return res;
    if (free_count() == 0) {
      leaf();
    } else if (free_count() == 1) {
      close_last(-1);
    } else {
      if (push(cands_[task])) {
        descend(static_cast<int>(task));
        pop();
      }
    }
    return res;
  }

 private:
  struct Sub {
    std::vector<std::uint32_t> elems;
    int size;
  };

  int slot_of(std::int64_t order) const {
    for (std::size_t s = 0; s < slot_orders_.size(); ++s)
      if (slot_orders_[s] == order) return static_cast<int>(s);
    return -1;
  }

  std::int64_t floor_term(std::uint32_t col, std::uint32_t g) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < t_.rank; ++i) s += t_.digit(g, i) * t_.digit(col, i) * (L_ / t_.group.factor(i));
    return s / L_;
  }

  bool profile_ok() const {
    for (const auto& set : kept_) {
      bool fits = true;
      for (std::size_t s = 0; s < set.size() && fits; ++s) fits = counts_[s] <= set[s];
      if (fits) return true;
    }
    return false;
  }

  // Every stratum of size <= prune_ that contains x and earlier columns must
  // be smooth: no nonzero multiple of x in a subgroup spanned by fewer columns.
  bool smooth_ok(std::uint32_t x) const {
    if (prune_ < 2) return true;
    const auto& f = forbidden_.back();
    std::uint32_t y = x;
    while (y != 0) {
      if (f[y]) return false;
      y = t_.add(y, x);
    }
    return true;
  }

  bool push(std::uint32_t x) {
    ++res_->stats.nodes;
    const int slot = slot_of(t_.order[x]);
    if (slot < 0) {
      ++res_->stats.pruned_profile;
      return false;
    }
    ++counts_[slot];
    if (!profile_ok()) {
      --counts_[slot];
      ++res_->stats.pruned_profile;
      return false;
    }
    if (!smooth_ok(x)) {
      --counts_[slot];
      ++res_->stats.pruned_smooth;
      return false;
    }
    frames_.push_back(groups_.size());
    if (prune_ >= 2) {
      std::vector<std::uint8_t> f = forbidden_.back();
      const std::size_t existing = groups_.size();
      for (std::size_t h = 0; h < existing; ++h) {
        if (groups_[h].size > prune_ - 2) continue;
        Sub next{t_.extend(groups_[h].elems, x, mark_), groups_[h].size + 1};
        for (std::uint32_t e : next.elems) f[e] = 1;
        if (next.size <= prune_ - 2) groups_.push_back(std::move(next));
      }
      f[0] = 0;
      forbidden_.push_back(std::move(f));
    }
    cols_.push_back(x);
    for (std::size_t i = 0; i < t_.rank; ++i) sum_[i] += t_.digit(x, i);
    return true;
  }

  void pop() {
    const std::uint32_t x = cols_.back();
    cols_.pop_back();
    for (std::size_t i = 0; i < t_.rank; ++i) sum_[i] -= t_.digit(x, i);
    --counts_[slot_of(t_.order[x])];
    groups_.resize(frames_.back());
    frames_.pop_back();
    if (prune_ >= 2) forbidden_.pop_back();
  }

  bool halted() {
    if (shared_->stop) return true;
    if ((res_->stats.nodes & 0xfff) == 0) shared_->check_clock();
    return shared_->stop;
  }

  // cols_ holds the prefix and free columns up to candidate position `last`.
  void descend(int last) {
    if (halted()) return;
    if (cols_.size() + 1 == m_) {
      close_last(last);
      return;
    }
    const int first = spec_.require_smooth ? last + 1 : last;
    for (int c = std::max(first, 0); c < static_cast<int>(cands_.size()); ++c) {
      if (push(cands_[c])) {
        descend(c);
        pop();
      }
      if (shared_->stop) return;
    }
  }

  // The final column is forced by n_i | sum_j alpha_{j,i}.
  void close_last(int last) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < t_.rank; ++i) {
      const std::int64_t n = t_.group.factor(i);
      x += static_cast<std::uint32_t>((n - sum_[i] % n) % n) * t_.stride[i];
    }
    const int pos = cand_pos_[x];
    const bool ordered = spec_.require_smooth ? pos > last : pos >= last;
    if (x == 0 || pos < 0 || !ordered) {
      ++res_->stats.rejected_divisibility;
      return;
    }
    if (push(x)) {
      leaf();
      pop();
    }
  }

  void leaf() {
    GroupSearchStats& st = res_->stats;
    ++st.candidates;
    if (shared_->candidates.fetch_add(1) + 1 > spec_.max_candidates) {
      shared_->halt(1);
      --st.candidates;
      return;
    }
    // divisibility holds by construction except when every column is fixed
    for (std::size_t i = 0; i < t_.rank; ++i)
      if (sum_[i] % t_.group.factor(i) != 0) {
        ++st.rejected_divisibility;
        return;
      }
    if (!spec_.basis_prefix || prefix_.empty()) {
      std::vector<std::uint32_t> h{0};
      for (std::uint32_t c : cols_) h = t_.extend(h, c, mark_);
      if (h.size() != t_.size) {
        ++st.rejected_connected;
        return;
      }
    }
    if (!structure_ok()) {
      ++st.rejected_structure;
      return;
    }
    std::vector<std::uint32_t> sorted = cols_;
    std::sort(sorted.begin(), sorted.end());
    LeafHit hit{sorted, {}};
    if (spec_.symmetry_reduction) {
      hit.key = canonical_key(cover_of(sorted));
    } else {
      for (std::uint32_t c : sorted) hit.key.push_back(c);
    }
    res_->hits.push_back(std::move(hit));
  }

  bool structure_ok() {
    std::vector<std::int64_t> lead(t_.rank);
    for (std::size_t i = 0; i < t_.rank; ++i) lead[i] = sum_[i] / t_.group.factor(i);
    std::vector<std::uint64_t> tally(m_ + 1, 0);
    std::vector<std::size_t> rows(cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j) rows[j] = static_cast<std::size_t>(cand_pos_[cols_[j]]);
    for (std::uint32_t g = 0; g < t_.size; ++g) {
      std::int64_t l = 0;
      for (std::size_t i = 0; i < t_.rank; ++i) l += t_.digit(g, i) * lead[i];
      for (std::size_t j = 0; j < cols_.size(); ++j)
        l -= floors_ ? (*floors_)[rows[j] * t_.size + g] : floor_term(cols_[j], g);
      if (l < 0 || l > static_cast<std::int64_t>(m_)) throw std::logic_error("twist out of range in search");
      ++tally[static_cast<std::size_t>(l)];
    }
    TwistMultiset ms;
    ms.total = static_cast<unsigned long>(t_.size);
    for (std::size_t l = 0; l < tally.size(); ++l)
      if (tally[l]) ms.counts[static_cast<std::int64_t>(l)] = tally[l];
    const CanonicalStructureReport cs = canonical_structure(ms, spec_.ambient_dim);
    return cs.is_symmetric && cs.min_nonzero_twist >= 2 && cs.pg_from_twists == spec_.ambient_dim + 1;
  }

 public:
  CoverData cover_of(const std::vector<std::uint32_t>& columns) const {
    CoverData d;
    d.group = t_.group;
    d.ambient_dim = spec_.ambient_dim;
    d.linear_general_position = true;
    for (std::size_t j = 0; j < columns.size(); ++j)
      d.branches.push_back(BranchDivisor{1, t_.element(columns[j]), "h" + std::to_string(j + 1)});
    return d;
  }

 private:
  const GroupTable& t_;
  const SearchSpec& spec_;
  std::size_t m_;
  std::vector<std::vector<int>> kept_;
  std::vector<std::int64_t> slot_orders_;
  int prune_ = 0;
  std::int64_t L_ = 1;
  std::vector<std::uint32_t> cands_;
  std::vector<int> cand_pos_;
  std::vector<std::uint32_t> prefix_;
  std::shared_ptr<const std::vector<std::uint16_t>> floors_;

  Shared* shared_ = nullptr;
  TaskResult* res_ = nullptr;
  std::vector<std::uint8_t> mark_;
  std::vector<std::vector<std::uint8_t>> forbidden_;
  std::vector<Sub> groups_;
  std::vector<std::size_t> frames_;
  std::vector<int> counts_;
  std::vector<std::uint32_t> cols_;
  std::vector<std::int64_t> sum_;
};

void accumulate(GroupSearchStats& into, const GroupSearchStats& s) {
  into.nodes += s.nodes;
  into.candidates += s.candidates;
  into.pruned_profile += s.pruned_profile;
  into.pruned_smooth += s.pruned_smooth;
  into.rejected_divisibility += s.rejected_divisibility;
  into.rejected_connected += s.rejected_connected;
  into.rejected_structure += s.rejected_structure;
  into.rejected_singular += s.rejected_singular;
}

/// Runs tasks on up to `threads` workers and hands results to `consume` in
/// task order.
template <typename Work, typename Consume>
void ordered_parallel(std::size_t tasks, unsigned threads, Work&& work, Consume&& consume) {
  if (threads <= 1 || tasks <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) consume(i, work(i));
    return;
  }
  std::vector<std::optional<TaskResult>> slots(tasks);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(threads, tasks); ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < tasks;) {
        TaskResult r = work(i);
        std::lock_guard lock(mu);
        slots[i] = std::move(r);
        cv.notify_all();
      }
    });
  for (std::size_t i = 0; i < tasks; ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return slots[i].has_value(); });
    TaskResult r = std::move(*slots[i]);
    slots[i].reset();
    lock.unlock();
    consume(i, std::move(r));
  }
  for (auto& t : pool) t.join();
}

std::vector<std::int64_t> divisors_above_one(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

SearchSummary run_search(const SearchSpec& spec, const HitSink& sink) {
  if (spec.max_candidates == 0 || spec.max_seconds <= 0)
    throw std::invalid_argument("search limits are mandatory");
  Shared shared(spec);
  SearchSummary summary;
  const std::int64_t target = spec.ambient_dim + 2;

  for (std::size_t gi = 0; gi < spec.groups.size() && !shared.stop; ++gi) {
    const AbelianGroup group(spec.groups[gi]);
    if (group.order() > static_cast<unsigned long>(kMaxSearchOrder))
      throw std::invalid_argument("group order exceeds the search cap");
    const GroupTable table(group);
    const std::vector<std::int64_t> allowed = divisors_above_one(group.exponent());

    for (std::size_t m = spec.m_min; m <= spec.m_max && !shared.stop; ++m) {
      GroupSearchStats stats;
      stats.factors = spec.groups[gi];
      stats.m = m;

      const auto sets = unit_degree_index_sets(target, m, allowed);
      std::vector<std::int64_t> slot_orders;
      std::vector<std::vector<std::int64_t>> kept;
      for (const auto& s : sets) {
        BigInt prod = 1;
        for (std::int64_t r : s) prod *= static_cast<long>(r);
        if (prod >= static_cast<long>(group.exponent())) kept.push_back(s);
      }
      if (sets.empty() || kept.empty()) {
        stats.status = sets.empty() ? "no-compatible-profile" : "order-bound";
        summary.runs.push_back(stats);
        continue;
      }
      for (const auto& s : kept)
        for (std::int64_t r : s)
          if (std::find(slot_orders.begin(), slot_orders.end(), r) == slot_orders.end()) slot_orders.push_back(r);
      std::sort(slot_orders.begin(), slot_orders.end());
      std::vector<std::vector<int>> kept_counts;
      for (const auto& s : kept) {
        std::vector<int> c(slot_orders.size(), 0);
        for (std::int64_t r : s)
          ++c[std::find(slot_orders.begin(), slot_orders.end(), r) - slot_orders.begin()];
        kept_counts.push_back(std::move(c));
      }

      const Enumerator proto(table, spec, m, kept_counts, slot_orders);
      std::set<std::vector<std::int64_t>> seen;
      ordered_parallel(
          proto.task_count(), std::max(1u, spec.threads),
          [&](std::size_t task) {
            Enumerator e = proto;
            return e.run(task, shared);
          },
          [&](std::size_t, TaskResult r) {
            accumulate(stats, r.stats);
            for (const LeafHit& h : r.hits) {
              if (!seen.insert(h.key).second) {
                ++stats.duplicates;
                continue;
              }
              SearchHit hit;
              hit.group_index = gi;
              hit.data = proto.cover_of(h.columns);
              hit.report = analyze(hit.data);
              hit.canonical_key = h.key;
              const AnalysisReport& rep = hit.report;
              if (!rep.valid() || !rep.canonical.is_canonical || !rep.canonical.pg_ok || !rep.structure.is_symmetric)
                throw std::logic_error("search emitted a datum that fails re-verification");
              if (spec.require_smooth && rep.smoothness.status != SmoothnessStatus::CertifiedSmooth) {
                ++stats.rejected_singular;
                continue;
              }
              ++stats.hits;
              ++summary.hits;
              sink(hit);
            }
          });
      stats.status = shared.stop ? "interrupted" : "searched";
      summary.runs.push_back(stats);
    }
  }
  if (shared.stop) {
    summary.complete = false;
    summary.stop_reason = shared.reason == 1 ? "max_candidates" : "max_seconds";
  }
  summary.seconds = std::chrono::duration<double>(Clock::now() - shared.start).count();
  return summary;
}

Json hit_to_json(const SearchHit& hit, std::uint64_t ordinal) {
  Json j;
  j["hit"] = ordinal;
  j["group"] = Json(std::vector<std::int64_t>(hit.data.group.invariant_factors().begin(),
                                              hit.data.group.invariant_factors().end()));
  j["canonical_key"] = hit.canonical_key;
  j["report"] = report_to_json(hit.report, false);
  return j;
}

Json summary_to_json(const SearchSummary& s, bool include_timing) {
  Json runs = Json::array();
  for (const auto& r : s.runs) {
    Json j;
    j["group"] = r.factors;
    j["m"] = r.m;
    j["status"] = r.status;
    j["nodes"] = r.nodes;
    j["candidates"] = r.candidates;
    j["pruned_profile"] = r.pruned_profile;
    j["pruned_smooth"] = r.pruned_smooth;
    j["rejected_divisibility"] = r.rejected_divisibility;
    j["rejected_connected"] = r.rejected_connected;
    j["rejected_structure"] = r.rejected_structure;
    j["rejected_singular"] = r.rejected_singular;
    j["duplicates"] = r.duplicates;
    j["hits"] = r.hits;
    runs.push_back(std::move(j));
  }
  Json body;
  body["scope"] = "within searched space";
  body["complete"] = s.complete;
  if (!s.complete) body["stop_reason"] = s.stop_reason;
  body["hits"] = s.hits;
  body["runs"] = runs;
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["summary"] = body;
  if (include_timing) out["timing"] = Json{{"seconds", s.seconds}};
  return out;
}

}  // namespace abcover
