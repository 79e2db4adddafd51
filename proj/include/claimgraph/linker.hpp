#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "claimgraph/corpus.hpp"

namespace claimgraph {

// Deterministic alias-table linker. Surface forms are normalized by ASCII
// case folding and whitespace collapsing; lookups are greedy longest-match.
// Immutable after build; concurrent lookups are safe.
class AliasTable {
 public:
  struct Candidate {
    EntityId entity;
    std::uint64_t priority = 0;  // corpus mention count of the entity
    auto operator<=>(const Candidate&) const = default;
  };

  AliasTable() = default;

  // One alias per document title (when the page is bound to an entity) and
  // one per distinct mention surface string.
  static AliasTable build(const Corpus& corpus,
                          std::span<const Mention> mentions);

  void add(std::string_view surface, const EntityId& entity,
           std::uint64_t priority);

  bool empty() const { return aliases_.empty(); }
  std::size_t size() const { return aliases_.size(); }

  // Candidates for an already-normalized surface form, best first
  // (highest priority, ties by lexicographically smallest entity id).
  const std::vector<Candidate>* lookup(std::string_view normalized) const;

  // Sorted aliases, for dumps and tests.
  const std::map<std::string, std::vector<Candidate>, std::less<>>& entries()
      const {
    return aliases_;
  }

  // Distinct alias byte lengths, longest first. Drives the greedy scan.
  const std::vector<std::size_t>& alias_lengths() const { return lengths_; }

  // Line-delimited dump/load, fields {alias, entity, priority}.
  void dump(const std::filesystem::path& path) const;
  static AliasTable load(const std::filesystem::path& path);

 private:
  std::map<std::string, std::vector<Candidate>, std::less<>> aliases_;
  std::vector<std::size_t> lengths_;  // distinct alias byte lengths, descending
};

// Case-folds ASCII letters and collapses whitespace runs to single spaces,
// trimming the ends. Idempotent.
std::string normalize_surface(std::string_view text);

struct LinkMatch {
  std::string surface;      // normalized matched span
  std::size_t position;     // scalar offset in the normalized claim text
  EntityId entity;
  bool ambiguous = false;   // tie broken by smallest entity id
};

struct LinkResult {
  std::vector<EntityId> entities;  // M_c: sorted, unique
  std::vector<LinkMatch> matches;  // provenance, in scan order
};

// Greedy longest-match left-to-right scan of `text` against the table.
// Pure: identical inputs yield identical outputs.
LinkResult link_claim(std::string_view text, const AliasTable& table);

}  // namespace claimgraph
