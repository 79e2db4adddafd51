#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "claimgraph/corpus.hpp"

namespace claimgraph {

// Sorted pool of unique strings. A string's id is its lexicographic rank,
// so integer comparisons agree with the canonical string order.
class StringPool {
 public:
  StringPool() = default;
  // `values` may be unsorted and contain duplicates.
  explicit StringPool(std::vector<std::string> values);

  // The lookup map holds views into the value store, so the pool is pinned
  // in place. Share it via shared_ptr.
  StringPool(const StringPool&) = delete;
  StringPool& operator=(const StringPool&) = delete;

  std::uint32_t size() const { return static_cast<std::uint32_t>(values_.size()); }
  const std::string& at(std::uint32_t rank) const { return values_[rank]; }
  const std::vector<std::string>& values() const { return values_; }
  std::optional<std::uint32_t> find(std::string_view value) const;

 private:
  std::vector<std::string> values_;
  std::unordered_map<std::string_view, std::uint32_t> rank_;
};

// Undirected entity co-occurrence multigraph. Nodes are all entities
// mentioned in the corpus; each edge is a triple (u, v, frame) with u < v
// canonically and no self-loops. At most one edge per (pair, frame).
// Immutable once built; concurrent readers are safe.
class EntityGraph {
 public:
  // Compact edge record: entity and document ids are ranks into the
  // node pool / page table.
  struct EdgeRec {
    std::uint32_t u, v;    // node ranks, u < v
    std::uint32_t doc;     // page-table rank of the frame's document
    std::uint32_t frame;   // frame index within the document
    auto operator<=>(const EdgeRec&) const = default;
  };
  struct AdjEntry {
    std::uint32_t neighbor;
    std::uint32_t doc;
    std::uint32_t frame;
    auto operator<=>(const AdjEntry&) const = default;
  };

  EntityGraph() = default;
  // Edges need not be sorted or deduplicated; node ranks must be valid for
  // `nodes` and doc ranks valid for `pages`. `nodes` may include isolated
  // entities.
  EntityGraph(std::shared_ptr<const StringPool> nodes,
              std::shared_ptr<const PageTable> pages,
              std::vector<EdgeRec> edges);

  std::uint32_t node_count() const { return nodes_ ? nodes_->size() : 0; }
  std::uint64_t edge_count() const { return edges_.size(); }

  const StringPool& nodes() const { return *nodes_; }
  const PageTable& pages() const { return *pages_; }
  const std::shared_ptr<const StringPool>& node_pool() const { return nodes_; }
  const std::shared_ptr<const PageTable>& page_table() const { return pages_; }

  bool has_node(const EntityId& e) const { return rank_of(e).has_value(); }
  std::optional<std::uint32_t> rank_of(const EntityId& e) const;
  const std::string& node_name(std::uint32_t rank) const { return nodes_->at(rank); }

  // Edges sorted by (u, v, doc, frame) — the canonical order.
  std::span<const EdgeRec> edges() const { return edges_; }
  // Neighbors of a node, sorted by (neighbor, doc, frame).
  std::span<const AdjEntry> neighbors(std::uint32_t rank) const;

  FrameRef frame_of(const EdgeRec& e) const {
    return FrameRef{pages_->at(e.doc).id, e.frame};
  }
  FrameRef frame_of(const AdjEntry& e) const {
    return FrameRef{pages_->at(e.doc).id, e.frame};
  }

  // F(u, v): frames containing mentions of both u and v. Symmetric in its
  // arguments; unknown entities yield the empty set. Sorted.
  std::vector<FrameRef> frames_between(const EntityId& u,
                                       const EntityId& v) const;

 private:
  std::shared_ptr<const StringPool> nodes_;
  std::shared_ptr<const PageTable> pages_;
  std::vector<EdgeRec> edges_;             // sorted by (u, v, doc, frame)
  std::vector<AdjEntry> adjacency_;        // CSR payload
  std::vector<std::uint64_t> adj_offsets_; // size node_count() + 1
};

// Posting lists: entity -> ordered frames it occurs in, plus mention counts
// (with multiplicity) and derived document sets.
class InvertedIndex {
 public:
  struct Posting {
    std::uint32_t doc;
    std::uint32_t frame;
    auto operator<=>(const Posting&) const = default;
  };

  InvertedIndex() = default;
  InvertedIndex(std::shared_ptr<const StringPool> entities,
                std::shared_ptr<const PageTable> pages,
                std::vector<std::vector<Posting>> postings,
                std::vector<std::uint64_t> mention_counts);

  const StringPool& entities() const { return *entities_; }
  const std::shared_ptr<const StringPool>& entity_pool() const { return entities_; }

  // Frames mentioning `e`, sorted; empty for unknown entities.
  std::vector<FrameRef> frames_of(const EntityId& e) const;
  std::span<const Posting> postings_of(std::uint32_t rank) const;

  // Number of mention records for `e`, counting multiplicity; 0 if unknown.
  std::uint64_t mention_count(const EntityId& e) const;
  std::uint64_t mention_count_at(std::uint32_t rank) const {
    return mention_counts_[rank];
  }

  // Distinct documents mentioning `e`, sorted; empty for unknown entities.
  std::vector<DocumentId> documents_of(const EntityId& e) const;

 private:
  std::shared_ptr<const StringPool> entities_;
  std::shared_ptr<const PageTable> pages_;
  std::vector<Posting> postings_;            // CSR payload
  std::vector<std::uint64_t> offsets_;       // size entities + 1
  std::vector<std::uint64_t> mention_counts_;
};

enum class Granularity { kSentence, kParagraph, kDocument };

std::string_view to_string(Granularity g);
std::optional<Granularity> parse_granularity(std::string_view s);

struct IndexMetadata {
  std::uint32_t format_version = 1;
  Granularity granularity = Granularity::kSentence;
  std::uint64_t document_count = 0;
  std::uint64_t node_count = 0;
  std::uint64_t edge_count = 0;
  bool operator==(const IndexMetadata&) const = default;
};

struct IndexBundle {
  EntityGraph graph;
  InvertedIndex index;
  IndexMetadata meta;
};

// Builds the co-occurrence graph and inverted index. For every frame and
// every unordered pair of distinct entities mentioned in it, exactly one
// edge exists. Deterministic: all output orderings are canonical.
IndexBundle build_graph(const Corpus& corpus, std::span<const Mention> mentions,
                        Granularity granularity = Granularity::kSentence);

// Free-function views mirroring the graph/index member operations.
std::vector<FrameRef> frames_between(const EntityGraph& g, const EntityId& u,
                                     const EntityId& v);
std::uint64_t mention_count(const InvertedIndex& ix, const EntityId& e);

}  // namespace claimgraph
