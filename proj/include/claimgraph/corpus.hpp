#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace claimgraph {

// Opaque identifier of a corpus page.
struct DocumentId {
  std::string value;
  auto operator<=>(const DocumentId&) const = default;
};

// Opaque identifier of a knowledge-base entity.
struct EntityId {
  std::string value;
  auto operator<=>(const EntityId&) const = default;
};

// Address of one frame: (document, 0-based frame position). Ordering is
// lexicographic by (doc, frame_index), which is the canonical frame order
// used throughout the index.
struct FrameRef {
  DocumentId doc;
  std::uint32_t frame_index = 0;
  auto operator<=>(const FrameRef&) const = default;
};

// A corpus page split into ordered frames. Frames are exactly the
// segmentation chosen at ingestion; nothing re-segments them later.
struct Document {
  DocumentId id;
  std::string title;
  std::optional<EntityId> entity;  // the entity this page corresponds to
  std::vector<std::string> frames;
  bool operator==(const Document&) const = default;
};

// One entity occurrence. Span offsets are half-open [start, end) counted in
// Unicode scalar values on the stored frame text.
struct Mention {
  FrameRef frame;
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  EntityId entity;
  bool operator==(const Mention&) const = default;
};

enum class ClaimLabel { kSupported, kRefuted, kNotEnoughInfo };

// One annotated set of frames that by itself suffices as evidence.
struct EvidenceLine {
  std::vector<FrameRef> frames;  // sorted, unique, non-empty
  bool operator==(const EvidenceLine&) const = default;
};

struct Claim {
  std::string id;
  std::string text;
  std::vector<EntityId> mentions;  // M_c, sorted, unique
  ClaimLabel label = ClaimLabel::kNotEnoughInfo;
  std::vector<EvidenceLine> evidence_lines;
  bool operator==(const Claim&) const = default;
};

std::string_view to_string(ClaimLabel label);
std::optional<ClaimLabel> parse_claim_label(std::string_view s);

// Catalog of corpus pages in canonical (lexicographic) document order:
// per page its id, optional entity binding and frame count. This is the
// projection of the corpus the index persists and retrieval needs for
// page augmentation.
class PageTable {
 public:
  struct Page {
    DocumentId id;
    std::optional<EntityId> entity;
    std::uint32_t frame_count = 0;
  };

  PageTable() = default;
  // `pages` need not be sorted; ids must be unique.
  explicit PageTable(std::vector<Page> pages);

  std::uint32_t size() const { return static_cast<std::uint32_t>(pages_.size()); }
  const Page& at(std::uint32_t rank) const { return pages_[rank]; }
  const std::vector<Page>& pages() const { return pages_; }

  // Rank of a document in canonical order, if present.
  std::optional<std::uint32_t> rank_of(const DocumentId& id) const;
  // Ranks of all pages bound to `entity`, in canonical order.
  std::vector<std::uint32_t> pages_of(const EntityId& entity) const;

  bool resolvable(const FrameRef& frame) const;

 private:
  std::vector<Page> pages_;  // sorted by id
  std::unordered_map<std::string, std::uint32_t> rank_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_entity_;
};

// An immutable, validated corpus: documents in file order plus lookup
// structures. Safe to share across threads after construction.
class Corpus {
 public:
  Corpus() = default;
  // Validates id uniqueness (DuplicateDocument) and non-empty frame lists
  // (EmptyDocument).
  static Corpus from_documents(std::vector<Document> docs);

  const std::vector<Document>& documents() const { return docs_; }
  const Document* find(const DocumentId& id) const;
  const Document& require(const DocumentId& id) const;  // throws UnknownDocument

  bool resolvable(const FrameRef& frame) const;
  const std::string& frame_text(const FrameRef& frame) const;

  const std::shared_ptr<const PageTable>& page_table() const { return pages_; }

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::shared_ptr<const PageTable> pages_;
};

// Loaders for the line-delimited JSON input formats. Field names are
// normative: corpus {id, title, entity?, frames}, mentions {doc,
// frame_index, start, end, entity}, claims {id, text, mentions, label,
// evidence}.
Corpus load_corpus(const std::filesystem::path& path);
std::vector<Mention> load_mentions(const std::filesystem::path& path,
                                   const Corpus& corpus);
std::vector<Claim> load_claims(const std::filesystem::path& path,
                               const Corpus& corpus);

// Single-record validation, shared by the loaders and the synthetic
// generator's self-checks.
void validate_mention(const Mention& mention, const Corpus& corpus);

// Serializers emitting one JSON line per record, inverse of the loaders.
std::string document_to_json_line(const Document& doc);
std::string mention_to_json_line(const Mention& mention);
std::string claim_to_json_line(const Claim& claim);

}  // namespace claimgraph

template <>
struct std::hash<claimgraph::DocumentId> {
  std::size_t operator()(const claimgraph::DocumentId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};

template <>
struct std::hash<claimgraph::EntityId> {
  std::size_t operator()(const claimgraph::EntityId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
