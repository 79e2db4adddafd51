#include "claimgraph/synth.hpp"

#include <algorithm>
#include <cmath>

#include "claimgraph/errors.hpp"
#include "claimgraph/rng.hpp"

namespace claimgraph {

namespace {

std::string padded_id(char prefix, std::uint64_t value, int width) {
  std::string digits = std::to_string(value);
  std::string out(1, prefix);
  for (int i = static_cast<int>(digits.size()); i < width; ++i) {
    out.push_back('0');
  }
  out += digits;
  return out;
}

int id_width(std::uint64_t count) {
  int width = 1;
  for (std::uint64_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  return std::max(width, 4);  // zero-padded so ranks sort lexicographically
}

// Frame slot reserved for one planted co-occurrence.
struct PlantedFrame {
  std::uint32_t entity_a, entity_b;
};

// Entity index skewed toward low ranks; uniform at skew 0.
std::uint32_t skewed_entity(Rng& rng, std::uint32_t n, double skew) {
  double u = rng.real01();
  double scaled = std::pow(u, 1.0 + skew);
  auto idx = static_cast<std::uint32_t>(scaled * n);
  return std::min(idx, n - 1);
}

}  // namespace

SynthDataset generate_synthetic(const SynthConfig& cfg) {
  if (cfg.n_entities < 1 || cfg.n_documents < 1 || cfg.frames_per_doc < 1 ||
      cfg.n_claims < 1) {
    throw InvalidConfig("all counts must be >= 1");
  }
  if (cfg.planted_path_length < 1) {
    throw InvalidConfig("planted_path_length must be >= 1");
  }
  if (cfg.generality_skew < 0.0) {
    throw InvalidConfig("generality_skew must be >= 0");
  }
  const std::uint32_t hops = cfg.planted_path_length;
  if (cfg.n_entities < hops + 1) {
    throw InvalidConfig("need at least planted_path_length + 1 entities");
  }
  if (hops >= 2 && cfg.n_documents < 2) {
    throw InvalidConfig(
        "paths of length >= 2 require at least two documents");
  }
  const std::uint64_t planted_total =
      static_cast<std::uint64_t>(cfg.n_claims) * hops;
  const std::uint64_t capacity =
      static_cast<std::uint64_t>(cfg.n_documents) * cfg.frames_per_doc;
  if (planted_total > capacity) {
    throw InvalidConfig("planted paths need " + std::to_string(planted_total) +
                        " frames but the corpus has " +
                        std::to_string(capacity));
  }

  const int entity_width = id_width(cfg.n_entities);
  const int doc_width = id_width(cfg.n_documents);
  const int claim_width = id_width(cfg.n_claims);
  auto entity_id = [&](std::uint32_t e) {
    return EntityId{padded_id('E', e, entity_width)};
  };
  auto doc_id = [&](std::uint32_t d) {
    return DocumentId{padded_id('D', d, doc_width)};
  };

  Rng rng(cfg.seed);

  // Plant one entity path per claim. Hop frames go round-robin over
  // documents, so consecutive hops always land on distinct pages.
  struct DocPlan {
    std::vector<PlantedFrame> planted;
  };
  std::vector<DocPlan> docs(cfg.n_documents);
  SynthDataset data;
  data.claims.reserve(cfg.n_claims);

  std::uint64_t slot = 0;
  for (std::uint32_t c = 0; c < cfg.n_claims; ++c) {
    // Distinct path entities, sampled uniformly.
    std::vector<std::uint32_t> path;
    while (path.size() < hops + 1) {
      auto candidate = static_cast<std::uint32_t>(rng.bounded(cfg.n_entities));
      if (std::find(path.begin(), path.end(), candidate) == path.end()) {
        path.push_back(candidate);
      }
    }

    Claim claim;
    claim.id = padded_id('C', c, claim_width);
    claim.label = ClaimLabel::kSupported;
    const EntityId first = entity_id(path.front());
    const EntityId last = entity_id(path.back());
    claim.text = first.value + " is linked to " + last.value + ".";
    claim.mentions = {first, last};
    std::sort(claim.mentions.begin(), claim.mentions.end());

    EvidenceLine line;
    for (std::uint32_t h = 0; h < hops; ++h) {
      auto d = static_cast<std::uint32_t>(slot % cfg.n_documents);
      auto frame_index =
          static_cast<std::uint32_t>(docs[d].planted.size());
      docs[d].planted.push_back({path[h], path[h + 1]});
      line.frames.push_back(FrameRef{doc_id(d), frame_index});
      ++slot;
    }
    std::sort(line.frames.begin(), line.frames.end());
    claim.evidence_lines.push_back(std::move(line));
    data.claims.push_back(std::move(claim));
  }

  // Materialize documents: planted frames first, then background frames
  // that carry skew-driven noise mentions.
  for (std::uint32_t d = 0; d < cfg.n_documents; ++d) {
    Document doc;
    doc.id = doc_id(d);
    doc.title = "Page " + doc.id.value;
    if (d < cfg.n_entities) doc.entity = entity_id(d);

    for (std::uint32_t f = 0; f < cfg.frames_per_doc; ++f) {
      std::vector<std::uint32_t> frame_entities;
      if (f < docs[d].planted.size()) {
        const PlantedFrame& p = docs[d].planted[f];
        frame_entities = {p.entity_a, p.entity_b};
      } else if (cfg.generality_skew > 0.0) {
        double s = cfg.generality_skew;
        if (rng.real01() < std::min(0.9, 0.6 * s)) {
          frame_entities.push_back(skewed_entity(rng, cfg.n_entities, s));
          // Occasional co-mention pair; adds benign graph edges.
          if (rng.real01() < std::min(0.5, 0.2 * s)) {
            auto second = skewed_entity(rng, cfg.n_entities, s);
            if (second != frame_entities[0]) frame_entities.push_back(second);
          }
        }
      }

      std::string text;
      std::uint32_t frame_index = f;
      for (std::size_t i = 0; i < frame_entities.size(); ++i) {
        const std::string& name = entity_id(frame_entities[i]).value;
        auto start = static_cast<std::uint32_t>(text.size());
        text += name;
        data.mentions.push_back(
            {FrameRef{doc.id, frame_index}, start,
             static_cast<std::uint32_t>(text.size()),
             entity_id(frame_entities[i])});
        text += i + 1 < frame_entities.size() ? " appears with " : "";
      }
      if (frame_entities.empty()) {
        text = "Nothing notable happens here.";
      } else {
        text += " in this frame.";
      }
      doc.frames.push_back(std::move(text));
    }
    data.documents.push_back(std::move(doc));
  }

  return data;
}

}  // namespace claimgraph
