#include "claimgraph/store.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "claimgraph/errors.hpp"
#include "json.hpp"

namespace claimgraph {

using nlohmann::json;

namespace {

constexpr std::string_view kEntitiesMagic = "CGEN";
constexpr std::string_view kPagesMagic = "CGPD";
constexpr std::string_view kPageIndexMagic = "CGPI";
constexpr std::string_view kPostingsMagic = "CGPO";

// --- little-endian primitives ---

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

void put_string(std::string& out, std::string_view s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

class Reader {
 public:
  Reader(std::string_view data, std::string name)
      : data_(data), name_(std::move(name)) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
      v = (v << 8) | static_cast<unsigned char>(data_[pos_ + i]);
    }
    pos_ += 4;
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
      v = (v << 8) | static_cast<unsigned char>(data_[pos_ + i]);
    }
    pos_ += 8;
    return v;
  }

  std::uint8_t u8() {
    need(1);
    return static_cast<unsigned char>(data_[pos_++]);
  }

  std::string str() {
    std::uint32_t len = u32();
    need(len);
    std::string s(data_.substr(pos_, len));
    pos_ += len;
    return s;
  }

  void expect_magic(std::string_view magic) {
    need(magic.size());
    if (data_.substr(pos_, magic.size()) != magic) {
      throw IoError(name_ + ": bad magic");
    }
    pos_ += magic.size();
  }

  void check_version(std::uint32_t expected) {
    std::uint32_t v = u32();
    if (v != expected) throw FormatVersionMismatch(v, expected);
  }

  bool at_end() const { return pos_ == data_.size(); }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos) {
    if (pos > data_.size()) throw IoError(name_ + ": offset out of range");
    pos_ = pos;
  }

 private:
  void need(std::size_t n) {
    if (data_.size() - pos_ < n) throw IoError(name_ + ": truncated");
  }
  std::string_view data_;
  std::string name_;
  std::size_t pos_ = 0;
};

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return bytes;
}

struct PageBlock {
  std::optional<std::string> entity;
  std::uint32_t frame_count = 0;
  std::vector<std::uint32_t> nodes;  // global entity ranks, sorted
  std::vector<EntityGraph::EdgeRec> edges;  // sorted, doc field redundant
};

std::string encode_page_block(const PageBlock& block) {
  std::string out;
  out.push_back(block.entity ? 1 : 0);
  if (block.entity) put_string(out, *block.entity);
  put_u32(out, block.frame_count);
  put_u32(out, static_cast<std::uint32_t>(block.nodes.size()));
  for (std::uint32_t n : block.nodes) put_u32(out, n);
  put_u64(out, block.edges.size());
  for (const auto& e : block.edges) {
    put_u32(out, e.u);
    put_u32(out, e.v);
    put_u32(out, e.frame);
  }
  return out;
}

PageBlock decode_page_block(Reader& r, std::uint32_t doc_rank) {
  PageBlock block;
  if (r.u8()) block.entity = r.str();
  block.frame_count = r.u32();
  std::uint32_t node_count = r.u32();
  block.nodes.reserve(node_count);
  for (std::uint32_t i = 0; i < node_count; ++i) block.nodes.push_back(r.u32());
  std::uint64_t edge_count = r.u64();
  block.edges.reserve(edge_count);
  for (std::uint64_t i = 0; i < edge_count; ++i) {
    std::uint32_t u = r.u32();
    std::uint32_t v = r.u32();
    std::uint32_t frame = r.u32();
    block.edges.push_back({u, v, doc_rank, frame});
  }
  return block;
}

struct PageIndexEntry {
  std::string doc;
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
};

std::vector<PageIndexEntry> read_page_index(const std::filesystem::path& dir) {
  std::string bytes = read_file(dir / "pages.idx");
  Reader r(bytes, "pages.idx");
  r.expect_magic(kPageIndexMagic);
  r.check_version(kIndexFormatVersion);
  std::uint64_t count = r.u64();
  std::vector<PageIndexEntry> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    PageIndexEntry e;
    e.doc = r.str();
    e.offset = r.u64();
    e.length = r.u64();
    entries.push_back(std::move(e));
  }
  return entries;
}

IndexMetadata read_metadata(const std::filesystem::path& dir) {
  std::string bytes = read_file(dir / "metadata.json");
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("metadata.json: ") + e.what());
  }
  IndexMetadata meta;
  meta.format_version = doc.at("format_version").get<std::uint32_t>();
  if (meta.format_version != kIndexFormatVersion) {
    throw FormatVersionMismatch(meta.format_version, kIndexFormatVersion);
  }
  auto granularity = parse_granularity(doc.at("granularity").get<std::string>());
  if (!granularity) throw IoError("metadata.json: unknown granularity");
  meta.granularity = *granularity;
  meta.document_count = doc.at("document_count").get<std::uint64_t>();
  meta.node_count = doc.at("node_count").get<std::uint64_t>();
  meta.edge_count = doc.at("edge_count").get<std::uint64_t>();
  return meta;
}

std::shared_ptr<const StringPool> read_entities(
    const std::filesystem::path& dir) {
  std::string bytes = read_file(dir / "entities.bin");
  Reader r(bytes, "entities.bin");
  r.expect_magic(kEntitiesMagic);
  r.check_version(kIndexFormatVersion);
  std::uint64_t count = r.u64();
  std::vector<std::string> names;
  names.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) names.push_back(r.str());
  return std::make_shared<const StringPool>(std::move(names));
}

}  // namespace

void persist_index(const IndexBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const EntityGraph& graph = bundle.graph;
  const PageTable& pages = graph.pages();
  const StringPool& nodes = graph.nodes();

  // metadata.json
  {
    json meta;
    meta["format_version"] = kIndexFormatVersion;
    meta["granularity"] = std::string(to_string(bundle.meta.granularity));
    meta["document_count"] = bundle.meta.document_count;
    meta["node_count"] = bundle.meta.node_count;
    meta["edge_count"] = bundle.meta.edge_count;
    write_file(dir / "metadata.json", meta.dump(2) + "\n");
  }

  // entities.bin
  {
    std::string out;
    out.append(kEntitiesMagic);
    put_u32(out, kIndexFormatVersion);
    put_u64(out, nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) put_string(out, nodes.at(i));
    write_file(dir / "entities.bin", out);
  }

  // Per-page mentioned-entity lists, derived from the postings.
  std::vector<std::vector<std::uint32_t>> page_nodes(pages.size());
  for (std::uint32_t e = 0; e < nodes.size(); ++e) {
    std::uint32_t last = UINT32_MAX;
    for (const auto& p : bundle.index.postings_of(e)) {
      if (p.doc != last) {
        page_nodes[p.doc].push_back(e);
        last = p.doc;
      }
    }
  }
  for (auto& list : page_nodes) std::sort(list.begin(), list.end());

  // Edges grouped by page. The edge list is sorted by (u, v, doc, frame);
  // regroup and re-sort per page.
  std::vector<std::vector<EntityGraph::EdgeRec>> page_edges(pages.size());
  for (const auto& e : graph.edges()) page_edges[e.doc].push_back(e);
  for (auto& list : page_edges) std::sort(list.begin(), list.end());

  // pages.dat + pages.idx
  {
    std::string dat;
    dat.append(kPagesMagic);
    put_u32(dat, kIndexFormatVersion);

    std::string idx;
    idx.append(kPageIndexMagic);
    put_u32(idx, kIndexFormatVersion);
    put_u64(idx, pages.size());

    for (std::uint32_t d = 0; d < pages.size(); ++d) {
      PageBlock block;
      const PageTable::Page& page = pages.at(d);
      if (page.entity) block.entity = page.entity->value;
      block.frame_count = page.frame_count;
      block.nodes = std::move(page_nodes[d]);
      block.edges = std::move(page_edges[d]);
      std::string encoded = encode_page_block(block);
      put_string(idx, page.id.value);
      put_u64(idx, dat.size());
      put_u64(idx, encoded.size());
      dat.append(encoded);
    }
    write_file(dir / "pages.dat", dat);
    write_file(dir / "pages.idx", idx);
  }

  // postings.bin
  {
    std::string out;
    out.append(kPostingsMagic);
    put_u32(out, kIndexFormatVersion);
    put_u64(out, nodes.size());
    for (std::uint32_t e = 0; e < nodes.size(); ++e) {
      auto postings = bundle.index.postings_of(e);
      put_u64(out, bundle.index.mention_count_at(e));
      put_u64(out, postings.size());
      for (const auto& p : postings) {
        put_u32(out, p.doc);
        put_u32(out, p.frame);
      }
    }
    write_file(dir / "postings.bin", out);
  }
}

IndexBundle load_index(const std::filesystem::path& dir) {
  IndexMetadata meta = read_metadata(dir);
  auto nodes = read_entities(dir);

  std::vector<PageIndexEntry> page_index = read_page_index(dir);
  std::string dat = read_file(dir / "pages.dat");
  Reader dat_reader(dat, "pages.dat");
  dat_reader.expect_magic(kPagesMagic);
  dat_reader.check_version(kIndexFormatVersion);

  std::vector<PageTable::Page> pages;
  pages.reserve(page_index.size());
  std::vector<EntityGraph::EdgeRec> edges;
  for (std::uint32_t d = 0; d < page_index.size(); ++d) {
    dat_reader.seek(page_index[d].offset);
    PageBlock block = decode_page_block(dat_reader, d);
    PageTable::Page page;
    page.id = DocumentId{page_index[d].doc};
    if (block.entity) page.entity = EntityId{*block.entity};
    page.frame_count = block.frame_count;
    pages.push_back(std::move(page));
    edges.insert(edges.end(), block.edges.begin(), block.edges.end());
  }
  auto page_table = std::make_shared<const PageTable>(std::move(pages));

  std::string post = read_file(dir / "postings.bin");
  Reader post_reader(post, "postings.bin");
  post_reader.expect_magic(kPostingsMagic);
  post_reader.check_version(kIndexFormatVersion);
  std::uint64_t entity_count = post_reader.u64();
  if (entity_count != nodes->size()) {
    throw IoError("postings.bin: entity count mismatch");
  }
  std::vector<std::vector<InvertedIndex::Posting>> postings(entity_count);
  std::vector<std::uint64_t> mention_counts(entity_count, 0);
  for (std::uint64_t e = 0; e < entity_count; ++e) {
    mention_counts[e] = post_reader.u64();
    std::uint64_t n = post_reader.u64();
    postings[e].reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint32_t doc = post_reader.u32();
      std::uint32_t frame = post_reader.u32();
      postings[e].push_back({doc, frame});
    }
  }

  IndexBundle bundle;
  bundle.graph = EntityGraph(nodes, page_table, std::move(edges));
  bundle.index = InvertedIndex(nodes, page_table, std::move(postings),
                               std::move(mention_counts));
  bundle.meta = meta;
  if (meta.document_count != page_table->size() ||
      meta.node_count != bundle.graph.node_count() ||
      meta.edge_count != bundle.graph.edge_count()) {
    throw IoError("metadata counts do not match stored structures");
  }
  return bundle;
}

PageGraphLoad load_page_graphs(const std::filesystem::path& dir,
                               std::span<const DocumentId> docs) {
  read_metadata(dir);  // version check
  auto all_entities = read_entities(dir);
  std::vector<PageIndexEntry> page_index = read_page_index(dir);
  std::unordered_map<std::string_view, std::size_t> by_doc;
  by_doc.reserve(page_index.size());
  for (std::size_t i = 0; i < page_index.size(); ++i) {
    by_doc.emplace(page_index[i].doc, i);
  }

  std::string dat = read_file(dir / "pages.dat");
  Reader dat_reader(dat, "pages.dat");
  dat_reader.expect_magic(kPagesMagic);
  dat_reader.check_version(kIndexFormatVersion);

  PageGraphLoad result;
  std::unordered_set<std::string> requested;
  std::vector<std::pair<std::size_t, PageBlock>> blocks;
  for (const DocumentId& doc : docs) {
    if (!requested.insert(doc.value).second) continue;
    auto it = by_doc.find(doc.value);
    if (it == by_doc.end()) {
      result.unknown_documents.push_back(doc);
      continue;
    }
    dat_reader.seek(page_index[it->second].offset);
    blocks.emplace_back(it->second,
                        decode_page_block(dat_reader, 0 /* patched below */));
  }

  // Node names: every entity mentioned in a loaded page, plus the entities
  // the loaded pages correspond to.
  std::vector<std::string> names;
  std::vector<PageTable::Page> pages;
  for (const auto& [index_pos, block] : blocks) {
    for (std::uint32_t rank : block.nodes) names.push_back(all_entities->at(rank));
    if (block.entity) names.push_back(*block.entity);
    PageTable::Page page;
    page.id = DocumentId{page_index[index_pos].doc};
    if (block.entity) page.entity = EntityId{*block.entity};
    page.frame_count = block.frame_count;
    pages.push_back(std::move(page));
  }
  auto nodes = std::make_shared<const StringPool>(std::move(names));
  auto page_table = std::make_shared<const PageTable>(std::move(pages));

  std::vector<EntityGraph::EdgeRec> edges;
  for (const auto& [index_pos, block] : blocks) {
    std::uint32_t doc_rank =
        *page_table->rank_of(DocumentId{page_index[index_pos].doc});
    for (const auto& e : block.edges) {
      std::uint32_t u = *nodes->find(all_entities->at(e.u));
      std::uint32_t v = *nodes->find(all_entities->at(e.v));
      edges.push_back({std::min(u, v), std::max(u, v), doc_rank, e.frame});
    }
  }
  result.graph = EntityGraph(nodes, page_table, std::move(edges));
  return result;
}

}  // namespace claimgraph
