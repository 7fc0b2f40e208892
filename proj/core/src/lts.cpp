#include "pathmc/lts.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "pathmc/error.hpp"

namespace pathmc {

namespace {

bool all_present(const State& s, const std::vector<SpeciesId>& ids) {
  return std::all_of(ids.begin(), ids.end(),
                     [&](SpeciesId id) { return s.test(id); });
}

std::uint64_t mix(std::uint64_t h) noexcept {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 33;
  return h;
}

}  // namespace

bool enabled(const State& s, const Reaction& r) {
  const bool some_product_absent =
      std::any_of(r.products.begin(), r.products.end(),
                  [&](SpeciesId id) { return !s.test(id); });
  return all_present(s, r.reactants) && some_product_absent &&
         all_present(s, r.catalysts);
}

std::optional<State> step(const State& s, const Reaction& r) {
  if (!enabled(s, r)) return std::nullopt;
  State next = s;
  if (r.catalysed()) {
    for (SpeciesId id : r.reactants) next.set(id, false);
  }
  for (SpeciesId id : r.products) next.set(id);
  return next;
}

BuildOptions BuildOptions::from_environment() {
  BuildOptions options;
  if (const char* env = std::getenv("PATHMC_STATE_CAP")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) options.state_cap = cap;
  }
  return options;
}

State Lts::state(StateIndex i) const {
  const std::size_t width = system_.species.size();
  return State(width, {store_.data() + i * stride_, (width + 63) / 64});
}

std::uint64_t Lts::slot_hash(const std::uint64_t* words) const noexcept {
  std::uint64_t h = 0x2545f4914f6cdd1dull;
  for (std::size_t k = 0; k < stride_; ++k) h = mix(h ^ words[k]) + k;
  return h;
}

std::optional<StateIndex> Lts::lookup(
    const std::uint64_t* words) const noexcept {
  if (table_.empty()) return std::nullopt;
  const std::size_t mask = table_.size() - 1;
  for (std::size_t slot = slot_hash(words) & mask;; slot = (slot + 1) & mask) {
    const StateIndex entry = table_[slot];
    if (entry == 0) return std::nullopt;
    const std::uint64_t* other = store_.data() + (entry - 1) * stride_;
    if (std::equal(words, words + stride_, other)) return entry - 1;
  }
}

void Lts::insert_slot(StateIndex i) {
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = slot_hash(store_.data() + i * stride_) & mask;
  while (table_[slot] != 0) slot = (slot + 1) & mask;
  table_[slot] = i + 1;
}

void Lts::grow_table() {
  const std::size_t count = store_.size() / std::max<std::size_t>(stride_, 1);
  table_.assign(std::max<std::size_t>(table_.size() * 2, 1024), 0);
  for (StateIndex i = 0; i < count; ++i) insert_slot(i);
}

std::optional<StateIndex> Lts::find(const State& s) const {
  if (s.width() != system_.species.size()) return std::nullopt;
  std::vector<std::uint64_t> words(stride_, 0);
  std::copy(s.words().begin(), s.words().end(), words.begin());
  return lookup(words.data());
}

std::vector<std::string> Lts::present_names(StateIndex i) const {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < system_.species.size(); ++s) {
    if (test(i, s)) out.push_back(system_.species[s]);
  }
  return out;
}

std::string Lts::describe(StateIndex i) const {
  std::string out = "{";
  bool first = true;
  for (const std::string& name : present_names(i)) {
    if (!first) out += ", ";
    out += name;
    first = false;
  }
  return out + "}";
}

std::string Lts::stats_line() const {
  std::ostringstream out;
  out << "states=" << state_count() << " edges=" << edge_count()
      << " deadlocks=" << deadlocks_.size();
  return out.str();
}

std::string Lts::dump() const {
  std::ostringstream out;
  for (StateIndex i = 0; i < state_count(); ++i) {
    const std::string source = state(i).bits();
    for (const Edge& e : out_edges(i)) {
      out << source << '\t' << system_.rules[e.rule].label << '\t'
          << state(e.target).bits() << '\n';
    }
  }
  return out.str();
}

Lts build_lts(RuleSystem system, const BuildOptions& options) {
  Lts lts;
  const std::size_t width = system.species.size();
  if (system.initial.width() != width) {
    throw ModelError("initial state width does not match the species table");
  }
  for (const Rule& r : system.rules) {
    if (r.reactants.width() != width || r.products.width() != width ||
        r.catalysts.width() != width) {
      throw ModelError("rule '" + r.label +
                       "' does not match the species table");
    }
  }
  lts.system_ = std::move(system);
  lts.stride_ = std::max<std::size_t>((width + 63) / 64, 1);
  lts.table_.assign(1024, 0);

  const auto intern = [&](const State& s) -> StateIndex {
    std::vector<std::uint64_t> words(lts.stride_, 0);
    std::copy(s.words().begin(), s.words().end(), words.begin());
    if (auto hit = lts.lookup(words.data())) return *hit;
    const std::size_t count = lts.store_.size() / lts.stride_;
    if (count >= options.state_cap) {
      throw ResourceError("state cap of " + std::to_string(options.state_cap) +
                          " states exceeded");
    }
    lts.store_.insert(lts.store_.end(), words.begin(), words.end());
    const auto index = static_cast<StateIndex>(count);
    if ((count + 1) * 2 > lts.table_.size()) {
      lts.grow_table();
    } else {
      lts.insert_slot(index);
    }
    return index;
  };

  intern(lts.system_.initial);
  const auto& rules = lts.system_.rules;
  // States are expanded in index order, so edges land in CSR order.
  for (StateIndex current = 0; current < lts.store_.size() / lts.stride_;
       ++current) {
    const State s = lts.state(current);
    for (std::uint32_t r = 0; r < rules.size(); ++r) {
      if (auto next = rules[r].fire(s)) {
        const StateIndex target = intern(*next);
        lts.edges_.push_back({target, r});
      }
    }
    lts.offsets_.push_back(static_cast<std::uint32_t>(lts.edges_.size()));
    if (lts.offsets_[current] == lts.offsets_[current + 1]) {
      lts.deadlocks_.push_back(current);
    }
  }
  return lts;
}

Lts build_lts(const Pathway& p, const BuildOptions& options) {
  return build_lts(concrete_system(p), options);
}

}  // namespace pathmc
