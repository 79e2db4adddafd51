#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "claimgraph/graph.hpp"

namespace claimgraph {

// Classification of graph nodes relative to a claim's entity set M_c:
// Mentioned nodes are the claim entities themselves, Between nodes sit on a
// length-2 connection between two distinct claim entities, everything else
// is Unrelated.
enum class NodeClass { kMentioned, kBetween, kUnrelated };

std::string_view to_string(NodeClass c);

struct RetrievalConfig {
  // Max hop distance between consecutive claim entities on a path. The
  // classification-based retrieval implements exactly l = 2; other values
  // are served only by the exact enumerator.
  std::uint32_t l = 2;
  // Drop edges connecting two Between nodes before collecting frames. Off
  // by default: the subgraph keeps every edge not incident to an Unrelated
  // node.
  bool strict_paths = false;
  // Add every frame of each page corresponding to a claim entity.
  bool include_claim_pages = true;
};

struct NodeClassCounts {
  std::uint64_t mentioned = 0;
  std::uint64_t between = 0;
  std::uint64_t unrelated = 0;
  bool operator==(const NodeClassCounts&) const = default;
};

struct RetrievalResult {
  std::string claim_id;
  std::vector<FrameRef> frames;       // sorted, unique
  NodeClassCounts node_class_counts;
  std::vector<std::string> warnings;  // sorted; e.g. dropped claim entities
};

// Assigns every node of g exactly one class. `m` must be non-empty.
std::map<EntityId, NodeClass> classify_nodes(const EntityGraph& g,
                                             std::span<const EntityId> m);

// The l = 2 retrieval: classify nodes, keep the subgraph induced on
// Mentioned ∪ Between, collect the frames of its edges, then augment with
// the claim entities' pages. Claim entities absent from the graph are
// dropped with a warning; throws NotEnoughEntities only when nothing
// remains to work with.
RetrievalResult graph_retrieve(const IndexBundle& index,
                               std::span<const EntityId> m,
                               const RetrievalConfig& cfg = {},
                               std::string claim_id = {});

// A path whose endpoints are claim entities and whose hops each carry the
// full frame set between the adjacent nodes.
struct EvidencePath {
  std::vector<EntityId> nodes;
  std::vector<std::vector<FrameRef>> hop_frames;  // size nodes.size() - 1
  bool operator==(const EvidencePath&) const = default;
};

// Exact enumeration of all simple paths that start and end in `m`, contain
// every entity of `m` exactly once, and keep the hop distance between
// consecutive m-entities at most `l`. Exponential-time test oracle, guarded
// by `max_nodes` (throws GraphTooLarge above it). Paths are reported in
// canonical orientation (lexicographically smaller of the two directions)
// and sorted lexicographically by node sequence. Requires |m| >= 2.
std::vector<EvidencePath> enumerate_evidence_paths(const EntityGraph& g,
                                                   std::span<const EntityId> m,
                                                   std::uint32_t l,
                                                   std::uint32_t max_nodes = 20);

// Union of all hop frames over the given paths, sorted.
std::vector<FrameRef> frames_of_paths(std::span<const EvidencePath> paths);

// Serialized form: {claim_id, frames, warnings, node_class_counts}.
std::string retrieval_result_to_json_line(const RetrievalResult& result);

}  // namespace claimgraph
