#include "claimgraph/linker.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>

#include "claimgraph/errors.hpp"
#include "claimgraph/utf8.hpp"
#include "json.hpp"

namespace claimgraph {

using nlohmann::json;

std::string normalize_surface(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

void AliasTable::add(std::string_view surface, const EntityId& entity,
                     std::uint64_t priority) {
  std::string normalized = normalize_surface(surface);
  if (normalized.empty()) return;
  auto& candidates = aliases_[normalized];
  for (Candidate& c : candidates) {
    if (c.entity == entity) {
      c.priority = std::max(c.priority, priority);
      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& a, const Candidate& b) {
                  return a.priority != b.priority ? a.priority > b.priority
                                                  : a.entity < b.entity;
                });
      return;
    }
  }
  candidates.push_back({entity, priority});
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.priority != b.priority ? a.priority > b.priority
                                              : a.entity < b.entity;
            });
  if (std::find(lengths_.begin(), lengths_.end(), normalized.size()) ==
      lengths_.end()) {
    lengths_.push_back(normalized.size());
    std::sort(lengths_.rbegin(), lengths_.rend());
  }
}

AliasTable AliasTable::build(const Corpus& corpus,
                             std::span<const Mention> mentions) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const Mention& m : mentions) ++counts[m.entity.value];
  auto priority_of = [&](const EntityId& e) -> std::uint64_t {
    auto it = counts.find(e.value);
    return it == counts.end() ? 0 : it->second;
  };

  AliasTable table;
  for (const Document& doc : corpus.documents()) {
    if (doc.entity) table.add(doc.title, *doc.entity, priority_of(*doc.entity));
  }
  for (const Mention& m : mentions) {
    const std::string& text = corpus.frame_text(m.frame);
    std::string_view surface = utf8::slice(text, m.start, m.end);
    table.add(surface, m.entity, priority_of(m.entity));
  }
  return table;
}

const std::vector<AliasTable::Candidate>* AliasTable::lookup(
    std::string_view normalized) const {
  auto it = aliases_.find(normalized);
  return it == aliases_.end() ? nullptr : &it->second;
}

void AliasTable::dump(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [alias, candidates] : aliases_) {
    for (const Candidate& c : candidates) {
      json record;
      record["alias"] = alias;
      record["entity"] = c.entity.value;
      record["priority"] = c.priority;
      out << record.dump() << '\n';
    }
  }
}

AliasTable AliasTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  AliasTable table;
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
    if (!record.is_object() || !record.contains("alias") ||
        !record.contains("entity") || !record.contains("priority")) {
      throw MalformedRecord(line_no, "expected {alias, entity, priority}");
    }
    table.add(record["alias"].get<std::string>(),
              EntityId{record["entity"].get<std::string>()},
              record["priority"].get<std::uint64_t>());
  }
  return table;
}

LinkResult link_claim(std::string_view text, const AliasTable& table) {
  LinkResult result;
  std::string normalized = normalize_surface(text);
  std::string_view view = normalized;

  std::size_t byte_pos = 0;
  std::size_t scalar_pos = 0;
  while (byte_pos < view.size()) {
    const std::vector<AliasTable::Candidate>* best = nullptr;
    std::size_t best_len = 0;
    // Longest match first: alias byte lengths are kept descending.
    for (const std::size_t len : table.alias_lengths()) {
      if (len > view.size() - byte_pos) continue;
      const auto* candidates = table.lookup(view.substr(byte_pos, len));
      if (candidates) {
        best = candidates;
        best_len = len;
        break;
      }
    }
    if (best) {
      const AliasTable::Candidate& top = best->front();
      bool ambiguous =
          best->size() > 1 && (*best)[1].priority == top.priority;
      result.matches.push_back({std::string(view.substr(byte_pos, best_len)),
                                scalar_pos, top.entity, ambiguous});
      result.entities.push_back(top.entity);
      scalar_pos += utf8::scalar_count(view.substr(byte_pos, best_len));
      byte_pos += best_len;
    } else {
      // Advance one scalar.
      ++byte_pos;
      while (byte_pos < view.size() &&
             (static_cast<unsigned char>(view[byte_pos]) & 0xC0) == 0x80) {
        ++byte_pos;
      }
      ++scalar_pos;
    }
  }
  std::sort(result.entities.begin(), result.entities.end());
  result.entities.erase(
      std::unique(result.entities.begin(), result.entities.end()),
      result.entities.end());
  return result;
}

}  // namespace claimgraph
