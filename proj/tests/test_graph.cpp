#include "claimgraph/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "claimgraph/errors.hpp"
#include "claimgraph/rng.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace claimgraph;
using namespace cgtest;

namespace {

using EdgeTriple = std::tuple<std::string, std::string, std::string, std::uint32_t>;

std::vector<EdgeTriple> edge_triples(const EntityGraph& g) {
  std::vector<EdgeTriple> out;
  for (const auto& e : g.edges()) {
    out.emplace_back(g.node_name(e.u), g.node_name(e.v),
                     g.pages().at(e.doc).id.value, e.frame);
  }
  return out;
}

IndexBundle build_fixture() {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  std::vector<Mention> mentions =
      load_mentions(fixture_path("mentions.jsonl"), corpus);
  return build_graph(corpus, mentions);
}

}  // namespace

TEST_CASE("build_graph: fixture edges match the hand-enumerated list") {
  IndexBundle bundle = build_fixture();
  std::vector<EdgeTriple> expected = {
      {"E:England", "E:Liverpool", "Liverpool", 0},
      {"E:England", "E:Merseyside", "Liverpool", 0},
      {"E:England", "E:Europe", "England", 0},
      {"E:Liverpool", "E:Merseyside", "Liverpool", 0},
      {"E:Liverpool", "E:The_Beatles", "Beatles", 0},
  };
  std::sort(expected.begin(), expected.end());
  std::vector<EdgeTriple> actual = edge_triples(bundle.graph);
  std::sort(actual.begin(), actual.end());
  CHECK(actual == expected);

  CHECK(bundle.graph.nodes().values() ==
        std::vector<std::string>{"E:England", "E:Europe", "E:Liverpool",
                                 "E:Merseyside", "E:The_Beatles"});
  CHECK(bundle.meta.node_count == 5);
  CHECK(bundle.meta.edge_count == 5);
  CHECK(bundle.meta.document_count == 3);
}

TEST_CASE("build_graph: single mention contributes a node but no edge") {
  Corpus corpus = Corpus::from_documents(
      {{did("D1"), "Doc", std::nullopt, {"only one entity here"}}});
  std::vector<Mention> mentions = {{fref("D1", 0), 0, 4, eid("E:Solo")}};
  IndexBundle bundle = build_graph(corpus, mentions);
  CHECK(bundle.graph.node_count() == 1);
  CHECK(bundle.graph.edge_count() == 0);
  CHECK(bundle.index.frames_of(eid("E:Solo")) ==
        std::vector<FrameRef>{fref("D1", 0)});
}

TEST_CASE("build_graph: an entity mentioned twice alone forms no self-loop") {
  Corpus corpus = Corpus::from_documents(
      {{did("D1"), "Doc", std::nullopt, {"repeat repeat"}}});
  std::vector<Mention> mentions = {{fref("D1", 0), 0, 6, eid("E:X")},
                                   {fref("D1", 0), 7, 13, eid("E:X")}};
  IndexBundle bundle = build_graph(corpus, mentions);
  CHECK(bundle.graph.node_count() == 1);
  CHECK(bundle.graph.edge_count() == 0);
  CHECK(bundle.index.mention_count(eid("E:X")) == 2);
}

TEST_CASE("build_graph: duplicate pair in one frame collapses to one edge") {
  Corpus corpus = Corpus::from_documents(
      {{did("D1"), "Doc", std::nullopt, {"a b a b again"}}});
  std::vector<Mention> mentions = {{fref("D1", 0), 0, 1, eid("E:A")},
                                   {fref("D1", 0), 2, 3, eid("E:B")},
                                   {fref("D1", 0), 4, 5, eid("E:A")},
                                   {fref("D1", 0), 6, 7, eid("E:B")}};
  IndexBundle bundle = build_graph(corpus, mentions);
  CHECK(bundle.graph.edge_count() == 1);
}

TEST_CASE("frames_between: fixture pairs") {
  IndexBundle bundle = build_fixture();
  const EntityGraph& g = bundle.graph;
  CHECK(g.frames_between(eid("E:England"), eid("E:Liverpool")) ==
        std::vector<FrameRef>{fref("Liverpool", 0)});
  CHECK(g.frames_between(eid("E:Liverpool"), eid("E:England")) ==
        std::vector<FrameRef>{fref("Liverpool", 0)});
  CHECK(g.frames_between(eid("E:The_Beatles"), eid("E:Europe")).empty());
  CHECK(g.frames_between(eid("E:Nope"), eid("E:England")).empty());
}

TEST_CASE("mention_count: fixture counts and multiplicity") {
  IndexBundle bundle = build_fixture();
  CHECK(mention_count(bundle.index, eid("E:England")) == 2);
  CHECK(mention_count(bundle.index, eid("E:Liverpool")) == 2);
  CHECK(mention_count(bundle.index, eid("E:The_Beatles")) == 1);
  CHECK(mention_count(bundle.index, eid("E:Unknown")) == 0);
}

TEST_CASE("inverted index: fixture postings") {
  IndexBundle bundle = build_fixture();
  CHECK(bundle.index.frames_of(eid("E:Liverpool")) ==
        std::vector<FrameRef>{fref("Beatles", 0), fref("Liverpool", 0)});
  CHECK(bundle.index.documents_of(eid("E:England")) ==
        std::vector<DocumentId>{did("England"), did("Liverpool")});
  CHECK(bundle.index.frames_of(eid("E:Unknown")).empty());
}

TEST_CASE("build_graph: deterministic over repeated builds") {
  IndexBundle a = build_fixture();
  IndexBundle b = build_fixture();
  CHECK(edge_triples(a.graph) == edge_triples(b.graph));
  CHECK(a.meta == b.meta);
}

TEST_CASE("property: frames_between is symmetric") {
  Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    RandomCorpus rc = random_corpus(rng);
    IndexBundle bundle = build_graph(rc.corpus, rc.mentions);
    for (int probe = 0; probe < 8; ++probe) {
      const EntityId& u = rc.entity_pool[rng.bounded(rc.entity_pool.size())];
      const EntityId& v = rc.entity_pool[rng.bounded(rc.entity_pool.size())];
      CHECK(bundle.graph.frames_between(u, v) ==
            bundle.graph.frames_between(v, u));
    }
  }
}

TEST_CASE("property: every edge is backed by mentions of both endpoints") {
  Rng rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    RandomCorpus rc = random_corpus(rng);
    IndexBundle bundle = build_graph(rc.corpus, rc.mentions);

    std::set<std::tuple<std::string, std::string, std::uint32_t>> mentioned_in;
    for (const Mention& m : rc.mentions) {
      mentioned_in.emplace(m.entity.value, m.frame.doc.value,
                           m.frame.frame_index);
    }
    for (const auto& e : bundle.graph.edges()) {
      const std::string& doc = bundle.graph.pages().at(e.doc).id.value;
      CHECK(mentioned_in.contains(
          {bundle.graph.node_name(e.u), doc, e.frame}));
      CHECK(mentioned_in.contains(
          {bundle.graph.node_name(e.v), doc, e.frame}));
    }

    // Mention counts carry multiplicity, so they dominate distinct frames.
    for (std::uint32_t r = 0; r < bundle.graph.node_count(); ++r) {
      CHECK(bundle.index.mention_count_at(r) >=
            bundle.index.postings_of(r).size());
    }

    // And the reverse: every co-mentioned distinct pair has its edge.
    std::uint64_t expected_edges = 0;
    std::map<std::pair<std::string, std::uint32_t>, std::set<std::string>>
        frame_entities;
    for (const Mention& m : rc.mentions) {
      frame_entities[{m.frame.doc.value, m.frame.frame_index}].insert(
          m.entity.value);
    }
    std::set<std::tuple<std::string, std::string, std::string, std::uint32_t>>
        expected;
    for (const auto& [frame, entities] : frame_entities) {
      for (auto it = entities.begin(); it != entities.end(); ++it) {
        for (auto jt = std::next(it); jt != entities.end(); ++jt) {
          expected.insert({*it, *jt, frame.first, frame.second});
          ++expected_edges;
        }
      }
    }
    CHECK(bundle.graph.edge_count() == expected_edges);
  }
}

TEST_CASE("property: adding a document grows the edge set monotonically") {
  Rng rng(103);
  for (int trial = 0; trial < 80; ++trial) {
    RandomCorpus rc = random_corpus(rng);
    if (rc.corpus.documents().size() < 2) continue;

    std::vector<Document> fewer(rc.corpus.documents().begin(),
                                rc.corpus.documents().end() - 1);
    const DocumentId dropped = rc.corpus.documents().back().id;
    std::vector<Mention> restricted;
    for (const Mention& m : rc.mentions) {
      if (m.frame.doc != dropped) restricted.push_back(m);
    }

    IndexBundle small =
        build_graph(Corpus::from_documents(std::move(fewer)), restricted);
    IndexBundle full = build_graph(rc.corpus, rc.mentions);

    std::vector<EdgeTriple> small_edges = edge_triples(small.graph);
    std::vector<EdgeTriple> full_edges = edge_triples(full.graph);
    std::sort(small_edges.begin(), small_edges.end());
    std::sort(full_edges.begin(), full_edges.end());
    CHECK(std::includes(full_edges.begin(), full_edges.end(),
                        small_edges.begin(), small_edges.end()));
  }
}
