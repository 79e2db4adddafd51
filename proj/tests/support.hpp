#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "claimgraph/corpus.hpp"
#include "claimgraph/graph.hpp"
#include "claimgraph/rng.hpp"

namespace cgtest {

inline claimgraph::DocumentId did(std::string s) { return {std::move(s)}; }
inline claimgraph::EntityId eid(std::string s) { return {std::move(s)}; }
inline claimgraph::FrameRef fref(std::string doc, std::uint32_t index) {
  return {did(std::move(doc)), index};
}

inline std::filesystem::path data_dir() {
  return std::filesystem::path(CLAIMGRAPH_DATA_DIR);
}

inline std::filesystem::path fixture_path(const char* name) {
  return data_dir() / "beatles-mini" / name;
}

// Temporary directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("claimgraph-test-" + tag + "-" + std::to_string(::getpid()) +
             "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path write_lines(
    const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  for (const std::string& line : lines) out << line << '\n';
  return path;
}

struct RandomCorpus {
  claimgraph::Corpus corpus;
  std::vector<claimgraph::Mention> mentions;
  std::vector<claimgraph::EntityId> entity_pool;
};

struct RandomCorpusLimits {
  std::uint32_t max_entities = 12;
  std::uint32_t max_documents = 6;
  std::uint32_t max_frames_per_doc = 5;
  std::uint32_t max_mentions_per_frame = 4;
};

// Small random corpus with valid mentions; page entity bindings are drawn
// from entities that actually get mentioned, so page entities are always
// graph nodes.
inline RandomCorpus random_corpus(claimgraph::Rng& rng,
                                  const RandomCorpusLimits& limits = {}) {
  using namespace claimgraph;
  RandomCorpus out;

  const auto n_entities =
      static_cast<std::uint32_t>(1 + rng.bounded(limits.max_entities));
  for (std::uint32_t e = 0; e < n_entities; ++e) {
    out.entity_pool.push_back(eid("E" + std::to_string(100 + e)));
  }

  const auto n_docs =
      static_cast<std::uint32_t>(1 + rng.bounded(limits.max_documents));
  const std::string frame_text =
      "plain filler text long enough for random mention spans";
  std::vector<Document> docs;
  std::vector<EntityId> mentioned_somewhere;
  for (std::uint32_t d = 0; d < n_docs; ++d) {
    Document doc;
    doc.id = did("D" + std::to_string(10 + d));
    doc.title = "Doc " + doc.id.value;
    const auto n_frames =
        static_cast<std::uint32_t>(1 + rng.bounded(limits.max_frames_per_doc));
    for (std::uint32_t f = 0; f < n_frames; ++f) {
      doc.frames.push_back(frame_text);
      const auto n_mentions = static_cast<std::uint32_t>(
          rng.bounded(limits.max_mentions_per_frame + 1));
      for (std::uint32_t k = 0; k < n_mentions; ++k) {
        const EntityId& entity =
            out.entity_pool[rng.bounded(out.entity_pool.size())];
        auto start = static_cast<std::uint32_t>(
            rng.bounded(frame_text.size() - 3));
        auto end = start + 1 + static_cast<std::uint32_t>(rng.bounded(3));
        out.mentions.push_back({FrameRef{doc.id, f}, start, end, entity});
        mentioned_somewhere.push_back(entity);
      }
    }
    docs.push_back(std::move(doc));
  }
  // Bind roughly half the pages to a mentioned entity.
  if (!mentioned_somewhere.empty()) {
    for (Document& doc : docs) {
      if (rng.bounded(2) == 0) {
        doc.entity = mentioned_somewhere[rng.bounded(mentioned_somewhere.size())];
      }
    }
  }
  out.corpus = Corpus::from_documents(std::move(docs));
  return out;
}

// Random non-empty claim entity set drawn from the pool.
inline std::vector<claimgraph::EntityId> random_entity_set(
    claimgraph::Rng& rng, const std::vector<claimgraph::EntityId>& pool,
    std::uint32_t max_size) {
  std::vector<claimgraph::EntityId> m;
  const auto size = 1 + rng.bounded(max_size);
  for (std::uint64_t i = 0; i < size; ++i) {
    m.push_back(pool[rng.bounded(pool.size())]);
  }
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

}  // namespace cgtest
