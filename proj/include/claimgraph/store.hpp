#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "claimgraph/graph.hpp"

namespace claimgraph {

// Current on-disk index format. The byte layout is documented in
// docs/index-format.md.
inline constexpr std::uint32_t kIndexFormatVersion = 1;

// Writes the index to `dir` in the page-partitioned layout: metadata.json,
// entities.bin, pages.dat + pages.idx (one block per corpus page, keyed by
// document id), postings.bin. The serialization is canonical: persisting
// equal structures yields identical bytes.
void persist_index(const IndexBundle& bundle, const std::filesystem::path& dir);

// Reads the full index back. load(persist(x)) is structurally equal to x.
IndexBundle load_index(const std::filesystem::path& dir);

struct PageGraphLoad {
  EntityGraph graph;
  // Requested documents missing from the store, in request order. They are
  // skipped with a warning count rather than failing the load.
  std::vector<DocumentId> unknown_documents;
};

// Loads and unions the per-page graphs of the requested documents. The node
// set is the union of the pages' mentioned-entity lists plus the entities
// the pages correspond to; edges are exactly those whose frame lies in a
// requested document.
PageGraphLoad load_page_graphs(const std::filesystem::path& dir,
                               std::span<const DocumentId> docs);

}  // namespace claimgraph
