#pragma once

#include <span>
#include <vector>

#include "claimgraph/graph.hpp"

namespace claimgraph {

// All frames of every page corresponding to a claim entity. Entities
// without a page contribute nothing.
std::vector<FrameRef> entity_retrieve(const PageTable& pages,
                                      std::span<const EntityId> m);

// All frames that mention at least one claim entity.
std::vector<FrameRef> mention_retrieve(const InvertedIndex& ix,
                                       std::span<const EntityId> m);

// Union of the two baselines.
std::vector<FrameRef> combined_retrieve(const PageTable& pages,
                                        const InvertedIndex& ix,
                                        std::span<const EntityId> m);

}  // namespace claimgraph
