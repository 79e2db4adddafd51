#include "claimgraph/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <utility>

#include "claimgraph/errors.hpp"
#include "claimgraph/utf8.hpp"
#include "json.hpp"

namespace claimgraph {

using nlohmann::json;

std::string_view to_string(ClaimLabel label) {
  switch (label) {
    case ClaimLabel::kSupported:
      return "supported";
    case ClaimLabel::kRefuted:
      return "refuted";
    case ClaimLabel::kNotEnoughInfo:
      return "not-enough-info";
  }
  return "not-enough-info";
}

std::optional<ClaimLabel> parse_claim_label(std::string_view s) {
  if (s == "supported") return ClaimLabel::kSupported;
  if (s == "refuted") return ClaimLabel::kRefuted;
  if (s == "not-enough-info") return ClaimLabel::kNotEnoughInfo;
  return std::nullopt;
}

PageTable::PageTable(std::vector<Page> pages) : pages_(std::move(pages)) {
  std::sort(pages_.begin(), pages_.end(),
            [](const Page& a, const Page& b) { return a.id < b.id; });
  rank_.reserve(pages_.size());
  for (std::uint32_t r = 0; r < pages_.size(); ++r) {
    rank_.emplace(pages_[r].id.value, r);
    if (pages_[r].entity) by_entity_[pages_[r].entity->value].push_back(r);
  }
}

std::optional<std::uint32_t> PageTable::rank_of(const DocumentId& id) const {
  auto it = rank_.find(id.value);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> PageTable::pages_of(const EntityId& entity) const {
  auto it = by_entity_.find(entity.value);
  if (it == by_entity_.end()) return {};
  return it->second;
}

bool PageTable::resolvable(const FrameRef& frame) const {
  auto r = rank_of(frame.doc);
  return r && frame.frame_index < pages_[*r].frame_count;
}

Corpus Corpus::from_documents(std::vector<Document> docs) {
  Corpus corpus;
  corpus.docs_ = std::move(docs);
  corpus.by_id_.reserve(corpus.docs_.size());
  std::vector<PageTable::Page> pages;
  pages.reserve(corpus.docs_.size());
  for (std::size_t i = 0; i < corpus.docs_.size(); ++i) {
    const Document& doc = corpus.docs_[i];
    if (doc.frames.empty()) throw EmptyDocument(doc.id.value);
    if (!corpus.by_id_.emplace(doc.id.value, i).second) {
      throw DuplicateDocument(doc.id.value);
    }
    pages.push_back({doc.id, doc.entity,
                     static_cast<std::uint32_t>(doc.frames.size())});
  }
  corpus.pages_ = std::make_shared<const PageTable>(std::move(pages));
  return corpus;
}

const Document* Corpus::find(const DocumentId& id) const {
  auto it = by_id_.find(id.value);
  return it == by_id_.end() ? nullptr : &docs_[it->second];
}

const Document& Corpus::require(const DocumentId& id) const {
  const Document* doc = find(id);
  if (!doc) throw UnknownDocument(id.value);
  return *doc;
}

bool Corpus::resolvable(const FrameRef& frame) const {
  const Document* doc = find(frame.doc);
  return doc && frame.frame_index < doc->frames.size();
}

const std::string& Corpus::frame_text(const FrameRef& frame) const {
  const Document& doc = require(frame.doc);
  if (frame.frame_index >= doc.frames.size()) {
    throw FrameIndexOutOfRange(doc.id.value, frame.frame_index,
                               doc.frames.size());
  }
  return doc.frames[frame.frame_index];
}

namespace {

bool has_control_chars(std::string_view s) {
  for (unsigned char c : s) {
    if (c < 0x20 || c == 0x7F) return true;
  }
  return false;
}

// Runs `fn` on every non-empty line of `path` with its 1-based number.
// JSON parse failures surface as MalformedRecord.
template <typename Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(line_no, e.what());
    }
    if (!record.is_object()) throw MalformedRecord(line_no, "not an object");
    fn(line_no, record);
  }
}

std::string require_string(const json& record, const char* field,
                           std::size_t line_no) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string()) {
    throw MalformedRecord(line_no,
                          std::string("missing string field '") + field + "'");
  }
  return it->get<std::string>();
}

std::uint64_t require_uint(const json& record, const char* field,
                           std::size_t line_no) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_number_unsigned()) {
    throw MalformedRecord(
        line_no, std::string("missing non-negative integer field '") + field +
                     "'");
  }
  return it->get<std::uint64_t>();
}

FrameRef frame_ref_from_json(const json& value, std::size_t line_no) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_string() ||
      !value[1].is_number_unsigned()) {
    throw MalformedRecord(line_no, "frame ref must be [doc, frame_index]");
  }
  return FrameRef{DocumentId{value[0].get<std::string>()},
                  value[1].get<std::uint32_t>()};
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& path) {
  std::vector<Document> docs;
  for_each_record(path, [&](std::size_t line_no, const json& record) {
    Document doc;
    doc.id.value = require_string(record, "id", line_no);
    if (doc.id.value.empty() || has_control_chars(doc.id.value)) {
      throw MalformedRecord(line_no, "invalid document id");
    }
    doc.title = require_string(record, "title", line_no);
    if (auto it = record.find("entity"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) throw MalformedRecord(line_no, "entity must be a string");
      std::string entity = it->get<std::string>();
      if (entity.empty()) throw MalformedRecord(line_no, "empty entity id");
      doc.entity = EntityId{std::move(entity)};
    }
    auto frames = record.find("frames");
    if (frames == record.end() || !frames->is_array()) {
      throw MalformedRecord(line_no, "missing array field 'frames'");
    }
    for (const json& frame : *frames) {
      if (!frame.is_string()) throw MalformedRecord(line_no, "frame must be a string");
      doc.frames.push_back(frame.get<std::string>());
    }
    docs.push_back(std::move(doc));
  });
  return Corpus::from_documents(std::move(docs));
}

void validate_mention(const Mention& mention, const Corpus& corpus) {
  const Document* doc = corpus.find(mention.frame.doc);
  if (!doc) throw UnknownDocument(mention.frame.doc.value);
  if (mention.frame.frame_index >= doc->frames.size()) {
    throw FrameIndexOutOfRange(doc->id.value, mention.frame.frame_index,
                               doc->frames.size());
  }
  const std::string& text = doc->frames[mention.frame.frame_index];
  std::size_t length = utf8::scalar_count(text);
  if (mention.start >= mention.end || mention.end > length) {
    throw SpanOutOfRange("span [" + std::to_string(mention.start) + ", " +
                         std::to_string(mention.end) + ") invalid on frame " +
                         doc->id.value + "/" +
                         std::to_string(mention.frame.frame_index) +
                         " of length " + std::to_string(length));
  }
}

std::vector<Mention> load_mentions(const std::filesystem::path& path,
                                   const Corpus& corpus) {
  std::vector<Mention> mentions;
  for_each_record(path, [&](std::size_t line_no, const json& record) {
    Mention mention;
    mention.frame.doc.value = require_string(record, "doc", line_no);
    mention.frame.frame_index =
        static_cast<std::uint32_t>(require_uint(record, "frame_index", line_no));
    mention.start = static_cast<std::uint32_t>(require_uint(record, "start", line_no));
    mention.end = static_cast<std::uint32_t>(require_uint(record, "end", line_no));
    mention.entity.value = require_string(record, "entity", line_no);
    if (mention.entity.value.empty()) {
      throw MalformedRecord(line_no, "empty entity id");
    }
    validate_mention(mention, corpus);
    mentions.push_back(std::move(mention));
  });
  return mentions;
}

std::vector<Claim> load_claims(const std::filesystem::path& path,
                               const Corpus& corpus) {
  std::vector<Claim> claims;
  for_each_record(path, [&](std::size_t line_no, const json& record) {
    Claim claim;
    claim.id = require_string(record, "id", line_no);
    if (claim.id.empty()) throw MalformedRecord(line_no, "empty claim id");
    claim.text = require_string(record, "text", line_no);

    auto mentions = record.find("mentions");
    if (mentions == record.end() || !mentions->is_array()) {
      throw MalformedRecord(line_no, "missing array field 'mentions'");
    }
    for (const json& m : *mentions) {
      if (!m.is_string()) throw MalformedRecord(line_no, "mention must be a string");
      claim.mentions.push_back(EntityId{m.get<std::string>()});
    }
    // Duplicate entity ids collapse into a set.
    std::sort(claim.mentions.begin(), claim.mentions.end());
    claim.mentions.erase(
        std::unique(claim.mentions.begin(), claim.mentions.end()),
        claim.mentions.end());

    auto label = parse_claim_label(require_string(record, "label", line_no));
    if (!label) throw MalformedRecord(line_no, "unknown label");
    claim.label = *label;

    auto evidence = record.find("evidence");
    if (evidence == record.end() || !evidence->is_array()) {
      throw MalformedRecord(line_no, "missing array field 'evidence'");
    }
    for (const json& line : *evidence) {
      if (!line.is_array() || line.empty()) {
        throw MalformedRecord(line_no, "evidence line must be a non-empty array");
      }
      EvidenceLine ev;
      for (const json& ref : line) {
        FrameRef frame = frame_ref_from_json(ref, line_no);
        if (!corpus.resolvable(frame)) {
          throw UnresolvableEvidence(claim.id, frame.doc.value,
                                     frame.frame_index);
        }
        ev.frames.push_back(std::move(frame));
      }
      std::sort(ev.frames.begin(), ev.frames.end());
      ev.frames.erase(std::unique(ev.frames.begin(), ev.frames.end()),
                      ev.frames.end());
      claim.evidence_lines.push_back(std::move(ev));
    }
    if (claim.evidence_lines.empty() &&
        claim.label != ClaimLabel::kNotEnoughInfo) {
      throw MalformedRecord(line_no,
                            "evidence may be empty only for not-enough-info");
    }
    claims.push_back(std::move(claim));
  });
  return claims;
}

std::string document_to_json_line(const Document& doc) {
  json record;
  record["id"] = doc.id.value;
  record["title"] = doc.title;
  if (doc.entity) record["entity"] = doc.entity->value;
  record["frames"] = doc.frames;
  return record.dump();
}

std::string mention_to_json_line(const Mention& mention) {
  json record;
  record["doc"] = mention.frame.doc.value;
  record["frame_index"] = mention.frame.frame_index;
  record["start"] = mention.start;
  record["end"] = mention.end;
  record["entity"] = mention.entity.value;
  return record.dump();
}

std::string claim_to_json_line(const Claim& claim) {
  json record;
  record["id"] = claim.id;
  record["text"] = claim.text;
  json mentions = json::array();
  for (const EntityId& e : claim.mentions) mentions.push_back(e.value);
  record["mentions"] = std::move(mentions);
  record["label"] = std::string(to_string(claim.label));
  json evidence = json::array();
  for (const EvidenceLine& line : claim.evidence_lines) {
    json frames = json::array();
    for (const FrameRef& f : line.frames) {
      frames.push_back(json::array({f.doc.value, f.frame_index}));
    }
    evidence.push_back(std::move(frames));
  }
  record["evidence"] = std::move(evidence);
  return record.dump();
}

}  // namespace claimgraph
