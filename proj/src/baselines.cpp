#include "claimgraph/baselines.hpp"

#include <algorithm>

namespace claimgraph {

namespace {

void sort_unique(std::vector<FrameRef>& frames) {
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());
}

}  // namespace

std::vector<FrameRef> entity_retrieve(const PageTable& pages,
                                      std::span<const EntityId> m) {
  std::vector<FrameRef> frames;
  for (const EntityId& e : m) {
    for (std::uint32_t d : pages.pages_of(e)) {
      const PageTable::Page& page = pages.at(d);
      for (std::uint32_t f = 0; f < page.frame_count; ++f) {
        frames.push_back(FrameRef{page.id, f});
      }
    }
  }
  sort_unique(frames);
  return frames;
}

std::vector<FrameRef> mention_retrieve(const InvertedIndex& ix,
                                       std::span<const EntityId> m) {
  std::vector<FrameRef> frames;
  for (const EntityId& e : m) {
    std::vector<FrameRef> postings = ix.frames_of(e);
    frames.insert(frames.end(), postings.begin(), postings.end());
  }
  sort_unique(frames);
  return frames;
}

std::vector<FrameRef> combined_retrieve(const PageTable& pages,
                                        const InvertedIndex& ix,
                                        std::span<const EntityId> m) {
  std::vector<FrameRef> frames = entity_retrieve(pages, m);
  std::vector<FrameRef> mentions = mention_retrieve(ix, m);
  frames.insert(frames.end(), mentions.begin(), mentions.end());
  sort_unique(frames);
  return frames;
}

}  // namespace claimgraph
