#include "claimgraph/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "claimgraph/errors.hpp"
#include "json.hpp"

namespace claimgraph {

using nlohmann::json;

namespace {

bool spans_multiple_documents(const EvidenceLine& line) {
  for (std::size_t i = 1; i < line.frames.size(); ++i) {
    if (line.frames[i].doc != line.frames[0].doc) return true;
  }
  return false;
}

}  // namespace

std::vector<Claim> filter_claims(std::span<const Claim> claims,
                                 const InvertedIndex& ix,
                                 const FilterConfig& cfg) {
  std::vector<Claim> kept;
  for (const Claim& claim : claims) {
    if (claim.mentions.size() < cfg.min_entities) continue;
    bool too_general = false;
    for (const EntityId& e : claim.mentions) {
      if (ix.mention_count(e) > cfg.max_mentions) {
        too_general = true;
        break;
      }
    }
    if (too_general) continue;
    if (cfg.require_cross_document) {
      bool cross = std::any_of(claim.evidence_lines.begin(),
                               claim.evidence_lines.end(),
                               spans_multiple_documents);
      if (!cross) continue;
    }
    kept.push_back(claim);
  }
  return kept;
}

bool is_hit(const RetrievalResult& result, const Claim& claim) {
  if (claim.evidence_lines.empty()) {
    throw NoEvidence("claim " + claim.id + " has no evidence lines");
  }
  for (const EvidenceLine& line : claim.evidence_lines) {
    bool covered = std::includes(result.frames.begin(), result.frames.end(),
                                 line.frames.begin(), line.frames.end());
    if (covered) return true;
  }
  return false;
}

Metrics evaluate(std::span<const RetrievalResult> results,
                 std::span<const Claim> claims) {
  if (results.size() != claims.size()) {
    throw MismatchedIds("got " + std::to_string(results.size()) +
                        " results for " + std::to_string(claims.size()) +
                        " claims");
  }
  Metrics metrics;
  metrics.n_claims = claims.size();
  if (claims.empty()) return metrics;

  std::unordered_map<std::string, const Claim*> by_id;
  for (const Claim& claim : claims) {
    if (!by_id.emplace(claim.id, &claim).second) {
      throw MismatchedIds("duplicate claim id " + claim.id);
    }
  }

  std::uint64_t hits = 0;
  std::uint64_t total_frames = 0;
  std::uint64_t total_docs = 0;
  std::unordered_set<std::string> seen;
  for (const RetrievalResult& result : results) {
    auto it = by_id.find(result.claim_id);
    if (it == by_id.end() || !seen.insert(result.claim_id).second) {
      throw MismatchedIds("result for unknown or duplicate claim id " +
                          result.claim_id);
    }
    const Claim& claim = *it->second;
    // Claims without evidence can never be hit; count them as misses.
    if (!claim.evidence_lines.empty() && is_hit(result, claim)) ++hits;
    total_frames += result.frames.size();
    std::uint64_t docs = 0;
    for (std::size_t i = 0; i < result.frames.size(); ++i) {
      if (i == 0 || result.frames[i].doc != result.frames[i - 1].doc) ++docs;
    }
    total_docs += docs;
  }
  const double n = static_cast<double>(claims.size());
  metrics.hit_rate = static_cast<double>(hits) / n;
  metrics.avg_sentences = static_cast<double>(total_frames) / n;
  metrics.avg_documents = static_cast<double>(total_docs) / n;
  return metrics;
}

std::string render_report_json(const MethodMetrics& methods) {
  nlohmann::ordered_json report;
  for (const auto& [name, m] : methods) {
    report[name] = {{"hit_rate", m.hit_rate},
                    {"avg_sentences", m.avg_sentences},
                    {"avg_documents", m.avg_documents},
                    {"n_claims", m.n_claims}};
  }
  return report.dump(2) + "\n";
}

std::string render_report_table(const MethodMetrics& methods) {
  std::size_t name_width = 6;  // "Method"
  for (const auto& [name, m] : methods) {
    name_width = std::max(name_width, name.size());
  }

  auto format_row = [&](std::string_view name, const std::string& sentences,
                        const std::string& documents, const std::string& hit,
                        std::string_view note) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-*s  %14s  %14s  %9s%s%.*s\n",
                  static_cast<int>(name_width), std::string(name).c_str(),
                  sentences.c_str(), documents.c_str(), hit.c_str(),
                  note.empty() ? "" : "  ", static_cast<int>(note.size()),
                  note.data());
    return std::string(buf);
  };

  auto fixed1 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return std::string(buf);
  };

  std::string out = format_row("Method", "avg. sentences", "avg. documents",
                               "hit rate", "");
  for (const auto& [name, m] : methods) {
    out += format_row(name, fixed1(m.avg_sentences), fixed1(m.avg_documents),
                      fixed1(m.hit_rate * 100.0) + "%",
                      m.n_claims == 0 ? "(no claims)" : "");
  }
  return out;
}

RetrievalResult retrieval_result_from_json_line(const std::string& line,
                                                std::size_t line_no) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw MalformedRecord(line_no, e.what());
  }
  if (!record.is_object() || !record.contains("claim_id") ||
      !record.contains("frames")) {
    throw MalformedRecord(line_no, "expected {claim_id, frames, ...}");
  }
  RetrievalResult result;
  result.claim_id = record["claim_id"].get<std::string>();
  for (const json& f : record["frames"]) {
    if (!f.is_array() || f.size() != 2) {
      throw MalformedRecord(line_no, "frame ref must be [doc, frame_index]");
    }
    result.frames.push_back(
        FrameRef{DocumentId{f[0].get<std::string>()}, f[1].get<std::uint32_t>()});
  }
  std::sort(result.frames.begin(), result.frames.end());
  result.frames.erase(
      std::unique(result.frames.begin(), result.frames.end()),
      result.frames.end());
  if (record.contains("warnings")) {
    for (const json& w : record["warnings"]) {
      result.warnings.push_back(w.get<std::string>());
    }
  }
  if (record.contains("node_class_counts")) {
    const json& c = record["node_class_counts"];
    result.node_class_counts.mentioned = c.value("mentioned", 0ULL);
    result.node_class_counts.between = c.value("between", 0ULL);
    result.node_class_counts.unrelated = c.value("unrelated", 0ULL);
  }
  return result;
}

std::vector<RetrievalResult> load_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<RetrievalResult> results;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    results.push_back(retrieval_result_from_json_line(line, line_no));
  }
  return results;
}

}  // namespace claimgraph
