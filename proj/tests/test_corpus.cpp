#include "claimgraph/corpus.hpp"

#include <vector>

#include "claimgraph/errors.hpp"
#include "claimgraph/rng.hpp"
#include "claimgraph/utf8.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace claimgraph;
using namespace cgtest;

TEST_CASE("corpus: fixture loads in file order") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  REQUIRE(corpus.documents().size() == 3);
  CHECK(corpus.documents()[0].id == did("Beatles"));
  CHECK(corpus.documents()[1].id == did("Liverpool"));
  CHECK(corpus.documents()[2].id == did("England"));
  CHECK(corpus.documents()[0].title == "The Beatles");
  CHECK(corpus.documents()[0].entity == eid("E:The_Beatles"));
  CHECK(corpus.documents()[0].frames.size() == 2);
  CHECK(corpus.documents()[1].frames[0] ==
        "Liverpool is a city in Merseyside, England.");
}

TEST_CASE("corpus: loading the same bytes twice is deterministic") {
  Corpus a = load_corpus(fixture_path("corpus.jsonl"));
  Corpus b = load_corpus(fixture_path("corpus.jsonl"));
  CHECK(a.documents() == b.documents());
}

TEST_CASE("corpus: duplicate document id aborts the load") {
  TempDir tmp("dup-doc");
  auto path = write_lines(
      tmp.path() / "corpus.jsonl",
      {R"({"id":"Liverpool","title":"Liverpool","frames":["a"]})",
       R"({"id":"Liverpool","title":"Liverpool again","frames":["b"]})"});
  CHECK_THROWS_AS(load_corpus(path), DuplicateDocument);
}

TEST_CASE("corpus: empty frames list is rejected") {
  TempDir tmp("empty-doc");
  auto path = write_lines(tmp.path() / "corpus.jsonl",
                          {R"({"id":"X","title":"X","frames":[]})"});
  CHECK_THROWS_AS(load_corpus(path), EmptyDocument);
}

TEST_CASE("corpus: malformed line reports its number") {
  TempDir tmp("malformed");
  auto path = write_lines(tmp.path() / "corpus.jsonl",
                          {R"({"id":"A","title":"A","frames":["x"]})",
                           R"(this is not json)"});
  try {
    load_corpus(path);
    FAIL("expected MalformedRecord");
  } catch (const MalformedRecord& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("corpus: control characters in document id are rejected") {
  TempDir tmp("ctrl-id");
  auto path = write_lines(tmp.path() / "corpus.jsonl",
                          {"{\"id\":\"A\\tB\",\"title\":\"x\",\"frames\":[\"x\"]}"});
  CHECK_THROWS_AS(load_corpus(path), MalformedRecord);
}

TEST_CASE("mentions: fixture mentions validate and slice to their surfaces") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  std::vector<Mention> mentions =
      load_mentions(fixture_path("mentions.jsonl"), corpus);
  REQUIRE(mentions.size() == 7);

  // Spot check the documented example: [0, 9) on the Liverpool page.
  const Mention& liverpool = mentions[2];
  CHECK(liverpool.frame == fref("Liverpool", 0));
  CHECK(liverpool.start == 0);
  CHECK(liverpool.end == 9);
  CHECK(utf8::slice(corpus.frame_text(liverpool.frame), liverpool.start,
                    liverpool.end) == "Liverpool");

  // Every mention's span slices to a non-empty substring.
  for (const Mention& m : mentions) {
    std::string_view surface =
        utf8::slice(corpus.frame_text(m.frame), m.start, m.end);
    CHECK(!surface.empty());
  }
}

TEST_CASE("mentions: unknown document, bad frame index, bad span") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  TempDir tmp("bad-mentions");

  auto unknown = write_lines(
      tmp.path() / "a.jsonl",
      {R"({"doc":"NoSuchDoc","frame_index":0,"start":0,"end":1,"entity":"E:X"})"});
  CHECK_THROWS_AS(load_mentions(unknown, corpus), UnknownDocument);

  auto oob = write_lines(
      tmp.path() / "b.jsonl",
      {R"({"doc":"England","frame_index":7,"start":0,"end":1,"entity":"E:X"})"});
  CHECK_THROWS_AS(load_mentions(oob, corpus), FrameIndexOutOfRange);

  auto empty_span = write_lines(
      tmp.path() / "c.jsonl",
      {R"({"doc":"England","frame_index":0,"start":5,"end":5,"entity":"E:X"})"});
  CHECK_THROWS_AS(load_mentions(empty_span, corpus), SpanOutOfRange);

  auto past_end = write_lines(
      tmp.path() / "d.jsonl",
      {R"({"doc":"England","frame_index":0,"start":0,"end":32,"entity":"E:X"})"});
  CHECK_THROWS_AS(load_mentions(past_end, corpus), SpanOutOfRange);
}

TEST_CASE("mentions: span offsets are Unicode scalar values, not bytes") {
  TempDir tmp("utf8");
  auto corpus_path = write_lines(
      tmp.path() / "corpus.jsonl",
      {R"({"id":"Koeln","title":"Köln","frames":["Köln is a city."]})"});
  Corpus corpus = load_corpus(corpus_path);
  const std::string& text = corpus.frame_text(fref("Koeln", 0));
  CHECK(text.size() == 16);                     // bytes
  CHECK(utf8::scalar_count(text) == 15);        // scalars

  auto ok = write_lines(
      tmp.path() / "m.jsonl",
      {R"({"doc":"Koeln","frame_index":0,"start":0,"end":4,"entity":"E:Koeln"})"});
  std::vector<Mention> mentions = load_mentions(ok, corpus);
  CHECK(utf8::slice(text, mentions[0].start, mentions[0].end) == "K\xC3\xB6ln");

  auto bad = write_lines(
      tmp.path() / "m2.jsonl",
      {R"({"doc":"Koeln","frame_index":0,"start":0,"end":16,"entity":"E:Koeln"})"});
  CHECK_THROWS_AS(load_mentions(bad, corpus), SpanOutOfRange);
}

TEST_CASE("claims: fixture loads with deduplicated mention sets") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  std::vector<Claim> claims = load_claims(fixture_path("claims.jsonl"), corpus);
  REQUIRE(claims.size() == 2);
  CHECK(claims[0].id == "c1");
  CHECK(claims[0].mentions ==
        std::vector<EntityId>{eid("E:England"), eid("E:The_Beatles")});
  CHECK(claims[0].label == ClaimLabel::kSupported);
  REQUIRE(claims[0].evidence_lines.size() == 1);
  CHECK(claims[0].evidence_lines[0].frames ==
        std::vector<FrameRef>{fref("Beatles", 0), fref("Liverpool", 0)});
}

TEST_CASE("claims: duplicate mention ids collapse into a set") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  TempDir tmp("dup-mentions");
  auto path = write_lines(
      tmp.path() / "claims.jsonl",
      {R"({"id":"x","text":"t","mentions":["E:Beatles","E:England","E:Beatles"],"label":"supported","evidence":[[["England",0]]]})"});
  std::vector<Claim> claims = load_claims(path, corpus);
  CHECK(claims[0].mentions ==
        std::vector<EntityId>{eid("E:Beatles"), eid("E:England")});
}

TEST_CASE("claims: unresolvable evidence frame is an error") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  TempDir tmp("bad-evidence");
  auto path = write_lines(
      tmp.path() / "claims.jsonl",
      {R"({"id":"x","text":"t","mentions":["E:A"],"label":"supported","evidence":[[["NoSuchDoc",0]]]})"});
  CHECK_THROWS_AS(load_claims(path, corpus), UnresolvableEvidence);
}

TEST_CASE("claims: evidence may be empty only for not-enough-info") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  TempDir tmp("nei");
  auto supported = write_lines(
      tmp.path() / "a.jsonl",
      {R"({"id":"x","text":"t","mentions":["E:A"],"label":"supported","evidence":[]})"});
  CHECK_THROWS_AS(load_claims(supported, corpus), MalformedRecord);

  auto nei = write_lines(
      tmp.path() / "b.jsonl",
      {R"({"id":"x","text":"t","mentions":["E:A"],"label":"not-enough-info","evidence":[]})"});
  std::vector<Claim> claims = load_claims(nei, corpus);
  CHECK(claims.size() == 1);
  CHECK(claims[0].evidence_lines.empty());
}

TEST_CASE("frame refs: ordering is a strict total order") {
  Rng rng(7);
  std::vector<FrameRef> refs;
  for (int i = 0; i < 40; ++i) {
    refs.push_back(fref("D" + std::to_string(rng.bounded(5)),
                        static_cast<std::uint32_t>(rng.bounded(4))));
  }
  for (const FrameRef& a : refs) {
    CHECK_FALSE(a < a);
    for (const FrameRef& b : refs) {
      // Totality: exactly one of <, >, == holds.
      int relations = (a < b) + (b < a) + (a == b);
      CHECK(relations == 1);
      for (const FrameRef& c : refs) {
        if (a < b && b < c) CHECK(a < c);
      }
    }
  }
}

TEST_CASE("serializers: corpus round-trips through JSON lines") {
  Corpus corpus = load_corpus(fixture_path("corpus.jsonl"));
  std::vector<Mention> mentions =
      load_mentions(fixture_path("mentions.jsonl"), corpus);
  std::vector<Claim> claims = load_claims(fixture_path("claims.jsonl"), corpus);

  TempDir tmp("roundtrip");
  std::vector<std::string> doc_lines, mention_lines, claim_lines;
  for (const Document& d : corpus.documents()) {
    doc_lines.push_back(document_to_json_line(d));
  }
  for (const Mention& m : mentions) {
    mention_lines.push_back(mention_to_json_line(m));
  }
  for (const Claim& c : claims) claim_lines.push_back(claim_to_json_line(c));

  Corpus corpus2 =
      load_corpus(write_lines(tmp.path() / "c.jsonl", doc_lines));
  std::vector<Mention> mentions2 =
      load_mentions(write_lines(tmp.path() / "m.jsonl", mention_lines), corpus2);
  std::vector<Claim> claims2 =
      load_claims(write_lines(tmp.path() / "cl.jsonl", claim_lines), corpus2);

  CHECK(corpus.documents() == corpus2.documents());
  CHECK(mentions == mentions2);
  CHECK(claims == claims2);
}
