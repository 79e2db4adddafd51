#include "claimgraph/retrieval.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "claimgraph/errors.hpp"
#include "json.hpp"

namespace claimgraph {

using nlohmann::json;

std::string_view to_string(NodeClass c) {
  switch (c) {
    case NodeClass::kMentioned:
      return "mentioned";
    case NodeClass::kBetween:
      return "between";
    case NodeClass::kUnrelated:
      return "unrelated";
  }
  return "unrelated";
}

namespace {

// Ranks of claim entities present in the graph, sorted and unique.
std::vector<std::uint32_t> mentioned_ranks(const EntityGraph& g,
                                           std::span<const EntityId> m,
                                           std::vector<std::string>* dropped) {
  std::vector<std::uint32_t> ranks;
  for (const EntityId& e : m) {
    if (auto r = g.rank_of(e)) {
      ranks.push_back(*r);
    } else if (dropped) {
      dropped->push_back(e.value);
    }
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  if (dropped) {
    std::sort(dropped->begin(), dropped->end());
    dropped->erase(std::unique(dropped->begin(), dropped->end()),
                   dropped->end());
  }
  return ranks;
}

// Between nodes: non-mentioned nodes adjacent to at least two distinct
// mentioned nodes. Only neighbors of mentioned nodes are candidates, so
// this scans the mentioned adjacency lists rather than all of V.
std::vector<std::uint32_t> between_ranks(
    const EntityGraph& g, const std::vector<std::uint32_t>& mentioned) {
  std::unordered_map<std::uint32_t, std::uint32_t> seen;  // candidate -> count
  std::unordered_set<std::uint32_t> mset(mentioned.begin(), mentioned.end());
  std::vector<std::uint32_t> result;
  for (std::uint32_t m_rank : mentioned) {
    std::uint32_t last = UINT32_MAX;
    for (const auto& adj : g.neighbors(m_rank)) {
      if (adj.neighbor == last) continue;  // parallel edges count once
      last = adj.neighbor;
      if (mset.contains(adj.neighbor)) continue;
      if (++seen[adj.neighbor] == 2) result.push_back(adj.neighbor);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::map<EntityId, NodeClass> classify_nodes(const EntityGraph& g,
                                             std::span<const EntityId> m) {
  if (m.empty()) throw InvalidConfig("classify_nodes: empty entity set");
  std::vector<std::uint32_t> mentioned = mentioned_ranks(g, m, nullptr);
  std::vector<std::uint32_t> between = between_ranks(g, mentioned);

  std::map<EntityId, NodeClass> classes;
  for (std::uint32_t r = 0; r < g.node_count(); ++r) {
    classes.emplace(EntityId{g.node_name(r)}, NodeClass::kUnrelated);
  }
  for (std::uint32_t r : mentioned) {
    classes[EntityId{g.node_name(r)}] = NodeClass::kMentioned;
  }
  for (std::uint32_t r : between) {
    classes[EntityId{g.node_name(r)}] = NodeClass::kBetween;
  }
  return classes;
}

RetrievalResult graph_retrieve(const IndexBundle& index,
                               std::span<const EntityId> m,
                               const RetrievalConfig& cfg,
                               std::string claim_id) {
  if (cfg.l != 2) {
    throw InvalidConfig(
        "graph_retrieve implements l = 2 only; use the path enumerator for "
        "other thresholds");
  }
  const EntityGraph& g = index.graph;
  const PageTable& pages = g.pages();

  RetrievalResult result;
  result.claim_id = std::move(claim_id);

  std::vector<std::string> dropped;
  std::vector<std::uint32_t> mentioned = mentioned_ranks(g, m, &dropped);
  for (const std::string& e : dropped) {
    result.warnings.push_back("entity-not-in-graph:" + e);
  }

  // Claim-entity pages, used both for the augmentation step and for the
  // nothing-to-retrieve check.
  std::vector<std::uint32_t> claim_pages;
  for (const EntityId& e : m) {
    for (std::uint32_t d : pages.pages_of(e)) claim_pages.push_back(d);
  }
  std::sort(claim_pages.begin(), claim_pages.end());
  claim_pages.erase(std::unique(claim_pages.begin(), claim_pages.end()),
                    claim_pages.end());

  if (mentioned.empty() && claim_pages.empty()) {
    throw NotEnoughEntities(
        "no claim entity is in the graph and no claim-entity page exists");
  }

  std::vector<std::uint32_t> between = between_ranks(g, mentioned);
  result.node_class_counts.mentioned = mentioned.size();
  result.node_class_counts.between = between.size();
  result.node_class_counts.unrelated =
      g.node_count() - mentioned.size() - between.size();

  // Surviving node set, with the class of each survivor.
  enum class Kept : std::uint8_t { kMentioned, kBetween };
  std::unordered_map<std::uint32_t, Kept> kept;
  kept.reserve(mentioned.size() + between.size());
  for (std::uint32_t r : mentioned) kept.emplace(r, Kept::kMentioned);
  for (std::uint32_t r : between) kept.emplace(r, Kept::kBetween);

  // Frames of edges with both endpoints surviving. Scanning each survivor's
  // adjacency visits each edge from both sides; keep u < neighbor to visit
  // once.
  std::vector<FrameRef> frames;
  for (const auto& [rank, cls] : kept) {
    for (const auto& adj : g.neighbors(rank)) {
      if (adj.neighbor <= rank) continue;
      auto other = kept.find(adj.neighbor);
      if (other == kept.end()) continue;
      if (cfg.strict_paths && cls == Kept::kBetween &&
          other->second == Kept::kBetween) {
        continue;
      }
      frames.push_back(g.frame_of(adj));
    }
  }

  if (cfg.include_claim_pages) {
    for (std::uint32_t d : claim_pages) {
      const PageTable::Page& page = pages.at(d);
      for (std::uint32_t f = 0; f < page.frame_count; ++f) {
        frames.push_back(FrameRef{page.id, f});
      }
    }
  }

  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());
  result.frames = std::move(frames);
  return result;
}

namespace {

struct PathEnumerator {
  const EntityGraph& g;
  const std::unordered_set<std::uint32_t>& targets;  // m-ranks
  std::uint32_t l;
  std::vector<std::uint32_t> path;
  std::vector<bool> visited;
  std::uint32_t targets_used = 0;
  std::vector<std::vector<std::uint32_t>> found;

  // `dist` is the hop count from the most recent m-entity to `node`
  // (0 when `node` itself is one). A complete path ends at the final
  // m-entity: extending past it would leave a non-m endpoint.
  void dfs(std::uint32_t node, std::uint32_t dist) {
    const bool is_target = targets.contains(node);
    if (is_target) {
      ++targets_used;
      if (targets_used == targets.size()) {
        found.push_back(path);
        --targets_used;
        return;
      }
    }
    const std::uint32_t base = is_target ? 0 : dist;
    std::uint32_t last = UINT32_MAX;
    for (const auto& adj : g.neighbors(node)) {
      if (adj.neighbor == last) continue;  // parallel edges
      last = adj.neighbor;
      if (visited[adj.neighbor]) continue;
      const std::uint32_t next = base + 1;
      if (next > l) continue;
      const bool next_is_target = targets.contains(adj.neighbor);
      // A non-target at distance l can no longer reach the next m-entity.
      if (!next_is_target && next == l) continue;
      visited[adj.neighbor] = true;
      path.push_back(adj.neighbor);
      dfs(adj.neighbor, next);
      path.pop_back();
      visited[adj.neighbor] = false;
    }
    if (is_target) --targets_used;
  }
};

}  // namespace

std::vector<EvidencePath> enumerate_evidence_paths(const EntityGraph& g,
                                                   std::span<const EntityId> m,
                                                   std::uint32_t l,
                                                   std::uint32_t max_nodes) {
  if (m.size() < 2) {
    throw InvalidConfig("enumerate_evidence_paths requires |m| >= 2");
  }
  if (l < 1) throw InvalidConfig("l must be >= 1");
  if (g.node_count() > max_nodes) {
    throw GraphTooLarge("graph has " + std::to_string(g.node_count()) +
                        " nodes, enumerator guard is " +
                        std::to_string(max_nodes));
  }

  std::unordered_set<std::uint32_t> targets;
  for (const EntityId& e : m) {
    auto r = g.rank_of(e);
    if (!r) return {};  // an absent entity can never appear in a path
    targets.insert(*r);
  }
  if (targets.size() < 2) return {};

  PathEnumerator enumerator{g, targets, l};
  enumerator.visited.assign(g.node_count(), false);
  std::vector<std::uint32_t> starts(targets.begin(), targets.end());
  std::sort(starts.begin(), starts.end());
  for (std::uint32_t start : starts) {
    enumerator.path = {start};
    enumerator.visited[start] = true;
    enumerator.targets_used = 0;
    enumerator.dfs(start, 0);
    enumerator.visited[start] = false;
  }

  // Canonical orientation: keep the lexicographically smaller of the two
  // directions, then dedupe and sort.
  std::vector<std::vector<std::uint32_t>> canonical;
  canonical.reserve(enumerator.found.size());
  for (auto& seq : enumerator.found) {
    std::vector<std::uint32_t> reversed(seq.rbegin(), seq.rend());
    canonical.push_back(std::min(seq, reversed));
  }
  std::sort(canonical.begin(), canonical.end());
  canonical.erase(std::unique(canonical.begin(), canonical.end()),
                  canonical.end());

  std::vector<EvidencePath> paths;
  paths.reserve(canonical.size());
  for (const auto& seq : canonical) {
    EvidencePath path;
    for (std::uint32_t rank : seq) path.nodes.push_back(EntityId{g.node_name(rank)});
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
      path.hop_frames.push_back(
          g.frames_between(path.nodes[i], path.nodes[i + 1]));
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

std::vector<FrameRef> frames_of_paths(std::span<const EvidencePath> paths) {
  std::vector<FrameRef> frames;
  for (const EvidencePath& path : paths) {
    for (const auto& hop : path.hop_frames) {
      frames.insert(frames.end(), hop.begin(), hop.end());
    }
  }
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());
  return frames;
}

std::string retrieval_result_to_json_line(const RetrievalResult& result) {
  json record;
  record["claim_id"] = result.claim_id;
  json frames = json::array();
  for (const FrameRef& f : result.frames) {
    frames.push_back(json::array({f.doc.value, f.frame_index}));
  }
  record["frames"] = std::move(frames);
  record["warnings"] = result.warnings;
  record["node_class_counts"] = {
      {"mentioned", result.node_class_counts.mentioned},
      {"between", result.node_class_counts.between},
      {"unrelated", result.node_class_counts.unrelated},
  };
  return record.dump();
}

}  // namespace claimgraph
