#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "claimgraph/corpus.hpp"
#include "claimgraph/graph.hpp"
#include "claimgraph/retrieval.hpp"

namespace claimgraph {

struct FilterConfig {
  std::uint32_t min_entities = 2;      // claims need this many linked entities
  std::uint64_t max_mentions = 1000;   // drop claims with a too-general entity
  bool require_cross_document = true;  // >= 1 evidence line spanning >= 2 docs
};

struct Metrics {
  double hit_rate = 0.0;       // fraction in [0, 1]
  double avg_sentences = 0.0;  // mean retrieved frame count per claim
  double avg_documents = 0.0;  // mean distinct document count per claim
  std::uint64_t n_claims = 0;  // 0 flags a degenerate evaluation
  bool operator==(const Metrics&) const = default;
};

// Keeps claims with enough entities, no too-general entity, and (when
// required) at least one evidence line spanning two or more documents.
// Output preserves input order.
std::vector<Claim> filter_claims(std::span<const Claim> claims,
                                 const InvertedIndex& ix,
                                 const FilterConfig& cfg = {});

// True iff every frame of at least one evidence line was retrieved.
// Throws NoEvidence for claims without evidence lines.
bool is_hit(const RetrievalResult& result, const Claim& claim);

// Aggregates results against claims matched by claim_id (same length,
// ids one-to-one; otherwise MismatchedIds). Claims without evidence lines
// count as misses. Zero claims yields all-zero metrics with n_claims = 0.
Metrics evaluate(std::span<const RetrievalResult> results,
                 std::span<const Claim> claims);

// Per-method metrics in insertion order.
using MethodMetrics = std::vector<std::pair<std::string, Metrics>>;

// Machine-readable report: {method: {hit_rate, avg_sentences,
// avg_documents, n_claims}}.
std::string render_report_json(const MethodMetrics& methods);

// Aligned plain-text table, columns avg. sentences / avg. documents /
// hit rate; the hit rate prints as a percentage with one decimal.
std::string render_report_table(const MethodMetrics& methods);

// Result-file round-trip for the CLI and tests.
RetrievalResult retrieval_result_from_json_line(const std::string& line,
                                                std::size_t line_no);
std::vector<RetrievalResult> load_results(const std::filesystem::path& path);

}  // namespace claimgraph
