#include "claimgraph/graph.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "claimgraph/errors.hpp"

namespace claimgraph {

StringPool::StringPool(std::vector<std::string> values)
    : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  rank_.reserve(values_.size());
  for (std::uint32_t r = 0; r < values_.size(); ++r) {
    rank_.emplace(values_[r], r);
  }
}

std::optional<std::uint32_t> StringPool::find(std::string_view value) const {
  auto it = rank_.find(value);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

EntityGraph::EntityGraph(std::shared_ptr<const StringPool> nodes,
                         std::shared_ptr<const PageTable> pages,
                         std::vector<EdgeRec> edges)
    : nodes_(std::move(nodes)), pages_(std::move(pages)),
      edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  // CSR adjacency: count, prefix-sum, scatter, then sort each node's slice.
  const std::uint32_t n = node_count();
  adj_offsets_.assign(n + 1, 0);
  for (const EdgeRec& e : edges_) {
    ++adj_offsets_[e.u + 1];
    ++adj_offsets_[e.v + 1];
  }
  for (std::uint32_t i = 0; i < n; ++i) adj_offsets_[i + 1] += adj_offsets_[i];
  adjacency_.resize(edges_.size() * 2);
  std::vector<std::uint64_t> cursor(adj_offsets_.begin(),
                                    adj_offsets_.end() - 1);
  for (const EdgeRec& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.doc, e.frame};
    adjacency_[cursor[e.v]++] = {e.u, e.doc, e.frame};
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + adj_offsets_[i],
              adjacency_.begin() + adj_offsets_[i + 1]);
  }
}

std::optional<std::uint32_t> EntityGraph::rank_of(const EntityId& e) const {
  if (!nodes_) return std::nullopt;
  return nodes_->find(e.value);
}

std::span<const EntityGraph::AdjEntry> EntityGraph::neighbors(
    std::uint32_t rank) const {
  return {adjacency_.data() + adj_offsets_[rank],
          adjacency_.data() + adj_offsets_[rank + 1]};
}

std::vector<FrameRef> EntityGraph::frames_between(const EntityId& u,
                                                  const EntityId& v) const {
  auto ru = rank_of(u);
  auto rv = rank_of(v);
  if (!ru || !rv || *ru == *rv) return {};
  // Scan the lower-degree endpoint.
  std::uint32_t a = *ru, b = *rv;
  if (neighbors(b).size() < neighbors(a).size()) std::swap(a, b);
  std::vector<FrameRef> frames;
  auto adj = neighbors(a);
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const AdjEntry& e, std::uint32_t target) {
                               return e.neighbor < target;
                             });
  for (; it != adj.end() && it->neighbor == b; ++it) {
    frames.push_back(frame_of(*it));
  }
  return frames;  // already sorted: adjacency is (neighbor, doc, frame)
}

InvertedIndex::InvertedIndex(std::shared_ptr<const StringPool> entities,
                             std::shared_ptr<const PageTable> pages,
                             std::vector<std::vector<Posting>> postings,
                             std::vector<std::uint64_t> mention_counts)
    : entities_(std::move(entities)), pages_(std::move(pages)),
      mention_counts_(std::move(mention_counts)) {
  assert(postings.size() == entities_->size());
  assert(mention_counts_.size() == entities_->size());
  offsets_.assign(entities_->size() + 1, 0);
  for (std::uint32_t i = 0; i < postings.size(); ++i) {
    auto& list = postings[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    offsets_[i + 1] = offsets_[i] + list.size();
  }
  postings_.reserve(offsets_.back());
  for (const auto& list : postings) {
    postings_.insert(postings_.end(), list.begin(), list.end());
  }
}

std::span<const InvertedIndex::Posting> InvertedIndex::postings_of(
    std::uint32_t rank) const {
  return {postings_.data() + offsets_[rank],
          postings_.data() + offsets_[rank + 1]};
}

std::vector<FrameRef> InvertedIndex::frames_of(const EntityId& e) const {
  if (!entities_) return {};
  auto rank = entities_->find(e.value);
  if (!rank) return {};
  std::vector<FrameRef> frames;
  for (const Posting& p : postings_of(*rank)) {
    frames.push_back(FrameRef{pages_->at(p.doc).id, p.frame});
  }
  return frames;
}

std::uint64_t InvertedIndex::mention_count(const EntityId& e) const {
  if (!entities_) return 0;
  auto rank = entities_->find(e.value);
  return rank ? mention_counts_[*rank] : 0;
}

std::vector<DocumentId> InvertedIndex::documents_of(const EntityId& e) const {
  if (!entities_) return {};
  auto rank = entities_->find(e.value);
  if (!rank) return {};
  std::vector<DocumentId> docs;
  std::uint32_t last = UINT32_MAX;
  for (const Posting& p : postings_of(*rank)) {
    if (p.doc != last) {
      docs.push_back(pages_->at(p.doc).id);
      last = p.doc;
    }
  }
  return docs;
}

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::kSentence:
      return "sentence";
    case Granularity::kParagraph:
      return "paragraph";
    case Granularity::kDocument:
      return "document";
  }
  return "sentence";
}

std::optional<Granularity> parse_granularity(std::string_view s) {
  if (s == "sentence") return Granularity::kSentence;
  if (s == "paragraph") return Granularity::kParagraph;
  if (s == "document") return Granularity::kDocument;
  return std::nullopt;
}

IndexBundle build_graph(const Corpus& corpus, std::span<const Mention> mentions,
                        Granularity granularity) {
  const std::shared_ptr<const PageTable>& pages = corpus.page_table();

  // Node set: every mentioned entity, ranked lexicographically.
  std::vector<std::string> names;
  names.reserve(mentions.size());
  for (const Mention& m : mentions) names.push_back(m.entity.value);
  auto nodes = std::make_shared<const StringPool>(std::move(names));

  // Group mention records by frame. Frames are identified by
  // (doc rank, frame index), docs by canonical rank.
  struct FrameKey {
    std::uint32_t doc, frame, entity;
    auto operator<=>(const FrameKey&) const = default;
  };
  std::vector<FrameKey> occurrences;
  occurrences.reserve(mentions.size());
  std::vector<std::uint64_t> mention_counts(nodes->size(), 0);
  for (const Mention& m : mentions) {
    auto doc = pages->rank_of(m.frame.doc);
    if (!doc) throw UnknownDocument(m.frame.doc.value);
    std::uint32_t entity = *nodes->find(m.entity.value);
    occurrences.push_back({*doc, m.frame.frame_index, entity});
    ++mention_counts[entity];
  }
  std::sort(occurrences.begin(), occurrences.end());
  occurrences.erase(std::unique(occurrences.begin(), occurrences.end()),
                    occurrences.end());

  // Postings per entity (distinct frames).
  std::vector<std::vector<InvertedIndex::Posting>> postings(nodes->size());
  for (const FrameKey& occ : occurrences) {
    postings[occ.entity].push_back({occ.doc, occ.frame});
  }

  // One edge per unordered pair of distinct entities within a frame.
  // `occurrences` is sorted by (doc, frame, entity), so each frame is a
  // contiguous run with entities in rank order.
  std::vector<EntityGraph::EdgeRec> edges;
  std::size_t begin = 0;
  while (begin < occurrences.size()) {
    std::size_t end = begin + 1;
    while (end < occurrences.size() &&
           occurrences[end].doc == occurrences[begin].doc &&
           occurrences[end].frame == occurrences[begin].frame) {
      ++end;
    }
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < end; ++j) {
        edges.push_back({occurrences[i].entity, occurrences[j].entity,
                         occurrences[i].doc, occurrences[i].frame});
      }
    }
    begin = end;
  }

  IndexBundle bundle;
  bundle.graph = EntityGraph(nodes, pages, std::move(edges));
  bundle.index = InvertedIndex(nodes, pages, std::move(postings),
                               std::move(mention_counts));
  bundle.meta.granularity = granularity;
  bundle.meta.document_count = pages->size();
  bundle.meta.node_count = bundle.graph.node_count();
  bundle.meta.edge_count = bundle.graph.edge_count();
  return bundle;
}

std::vector<FrameRef> frames_between(const EntityGraph& g, const EntityId& u,
                                     const EntityId& v) {
  return g.frames_between(u, v);
}

std::uint64_t mention_count(const InvertedIndex& ix, const EntityId& e) {
  return ix.mention_count(e);
}

}  // namespace claimgraph
