// Command-line front end: build-index, retrieve, evaluate, gen-synth.
// Diagnostics go to stderr; data goes to files only.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "claimgraph/baselines.hpp"
#include "claimgraph/corpus.hpp"
#include "claimgraph/errors.hpp"
#include "claimgraph/eval.hpp"
#include "claimgraph/graph.hpp"
#include "claimgraph/linker.hpp"
#include "claimgraph/manifest.hpp"
#include "claimgraph/retrieval.hpp"
#include "claimgraph/store.hpp"
#include "claimgraph/synth.hpp"

namespace cg = claimgraph;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct BuildArgs {
  std::string corpus_path;
  std::string mentions_path;
  std::string out_dir;
  std::string granularity = "sentence";
};

int run_build_index(const BuildArgs& args) {
  auto start = Clock::now();
  auto granularity = cg::parse_granularity(args.granularity);
  if (!granularity) {
    std::cerr << "unknown granularity: " << args.granularity << "\n";
    return 1;
  }
  cg::Corpus corpus = cg::load_corpus(args.corpus_path);
  std::vector<cg::Mention> mentions =
      cg::load_mentions(args.mentions_path, corpus);
  cg::IndexBundle bundle = cg::build_graph(corpus, mentions, *granularity);
  cg::persist_index(bundle, args.out_dir);

  cg::AliasTable aliases = cg::AliasTable::build(corpus, mentions);
  aliases.dump(std::filesystem::path(args.out_dir) / "aliases.jsonl");

  cg::RunManifest manifest("build-index");
  manifest.set_config("corpus", args.corpus_path);
  manifest.set_config("mentions", args.mentions_path);
  manifest.set_config("out", args.out_dir);
  manifest.set_config("granularity", args.granularity);
  manifest.add_input(args.corpus_path);
  manifest.add_input(args.mentions_path);
  manifest.set_timing("total_ms", elapsed_ms(start));
  manifest.write(std::filesystem::path(args.out_dir) / "manifest.json");

  std::cerr << "indexed " << bundle.meta.document_count << " documents, "
            << bundle.meta.node_count << " nodes, " << bundle.meta.edge_count
            << " edges\n";
  return 0;
}

struct RetrieveArgs {
  std::string index_dir;
  std::string claims_path;
  std::string method = "graph";
  std::uint32_t l = 2;
  bool strict_paths = false;
  std::string out_path;
};

int run_retrieve(const RetrieveArgs& args) {
  auto start = Clock::now();
  cg::IndexBundle index = cg::load_index(args.index_dir);

  // Claims are validated against the page catalog persisted in the index,
  // not a separate corpus file.
  std::vector<cg::PageTable::Page> pages = index.graph.pages().pages();
  std::vector<cg::Document> page_docs;
  page_docs.reserve(pages.size());
  for (const auto& page : pages) {
    cg::Document doc;
    doc.id = page.id;
    doc.entity = page.entity;
    doc.frames.assign(page.frame_count, std::string());
    page_docs.push_back(std::move(doc));
  }
  cg::Corpus catalog = cg::Corpus::from_documents(std::move(page_docs));
  std::vector<cg::Claim> claims = cg::load_claims(args.claims_path, catalog);

  cg::AliasTable aliases;
  auto alias_path = std::filesystem::path(args.index_dir) / "aliases.jsonl";
  if (std::filesystem::exists(alias_path)) {
    aliases = cg::AliasTable::load(alias_path);
  }

  cg::RetrievalConfig cfg;
  cfg.l = args.l;
  cfg.strict_paths = args.strict_paths;
  if (args.method == "graph" && cfg.l != 2) {
    std::cerr << "method graph supports --l 2 only\n";
    return 1;
  }

  std::ofstream out(args.out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "cannot write " << args.out_path << "\n";
    return 1;
  }
  for (const cg::Claim& claim : claims) {
    std::vector<cg::EntityId> m = claim.mentions;
    if (m.empty() && !aliases.empty()) {
      m = cg::link_claim(claim.text, aliases).entities;
    }
    cg::RetrievalResult result;
    result.claim_id = claim.id;
    try {
      if (args.method == "graph") {
        result = cg::graph_retrieve(index, m, cfg, claim.id);
      } else if (args.method == "entity") {
        result.frames = cg::entity_retrieve(index.graph.pages(), m);
      } else if (args.method == "mention") {
        result.frames = cg::mention_retrieve(index.index, m);
      } else {
        result.frames =
            cg::combined_retrieve(index.graph.pages(), index.index, m);
      }
    } catch (const cg::NotEnoughEntities& e) {
      // Per-claim failures are data, not process failures.
      result.frames.clear();
      result.warnings = {std::string("not-enough-entities:") + e.what()};
    }
    out << cg::retrieval_result_to_json_line(result) << '\n';
  }
  out.close();

  cg::RunManifest manifest("retrieve");
  manifest.set_config("index", args.index_dir);
  manifest.set_config("claims", args.claims_path);
  manifest.set_config("method", args.method);
  manifest.set_config("l", args.l);
  manifest.set_config("strict_paths", args.strict_paths);
  manifest.set_config("out", args.out_path);
  manifest.add_input(args.claims_path);
  manifest.set_timing("total_ms", elapsed_ms(start));
  manifest.write(args.out_path + ".manifest.json");

  std::cerr << "retrieved " << claims.size() << " claims with method "
            << args.method << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string index_dir;
  std::string claims_path;
  std::vector<std::string> results;  // method=path
  std::string out_dir = ".";
  std::uint32_t min_entities = 2;
  std::uint64_t max_mentions = 1000;
  bool cross_document = true;
};

int run_evaluate(const EvaluateArgs& args) {
  auto start = Clock::now();
  cg::IndexBundle index = cg::load_index(args.index_dir);

  std::vector<cg::PageTable::Page> pages = index.graph.pages().pages();
  std::vector<cg::Document> page_docs;
  for (const auto& page : pages) {
    cg::Document doc;
    doc.id = page.id;
    doc.entity = page.entity;
    doc.frames.assign(page.frame_count, std::string());
    page_docs.push_back(std::move(doc));
  }
  cg::Corpus catalog = cg::Corpus::from_documents(std::move(page_docs));
  std::vector<cg::Claim> claims = cg::load_claims(args.claims_path, catalog);

  cg::FilterConfig filter;
  filter.min_entities = args.min_entities;
  filter.max_mentions = args.max_mentions;
  filter.require_cross_document = args.cross_document;
  std::vector<cg::Claim> kept = cg::filter_claims(claims, index.index, filter);

  std::map<std::string, bool> claim_ids;
  for (const cg::Claim& claim : claims) claim_ids.emplace(claim.id, true);

  cg::MethodMetrics methods;
  for (const std::string& spec : args.results) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      std::cerr << "--results expects method=path, got: " << spec << "\n";
      return 1;
    }
    std::string method = spec.substr(0, eq);
    std::string path = spec.substr(eq + 1);
    std::vector<cg::RetrievalResult> all = cg::load_results(path);
    std::map<std::string, const cg::RetrievalResult*> by_id;
    for (const cg::RetrievalResult& r : all) {
      if (!claim_ids.contains(r.claim_id)) {
        throw cg::MismatchedIds("result for unknown claim id " + r.claim_id +
                                " in " + path);
      }
      by_id[r.claim_id] = &r;
    }
    // Evaluate the filtered claims in input order.
    std::vector<cg::RetrievalResult> selected;
    for (const cg::Claim& claim : kept) {
      auto it = by_id.find(claim.id);
      if (it == by_id.end()) {
        throw cg::MismatchedIds("no result for claim " + claim.id + " in " +
                                path);
      }
      selected.push_back(*it->second);
    }
    methods.emplace_back(method, cg::evaluate(selected, kept));
  }

  std::filesystem::create_directories(args.out_dir);
  {
    std::ofstream json_out(std::filesystem::path(args.out_dir) / "report.json",
                           std::ios::binary | std::ios::trunc);
    json_out << cg::render_report_json(methods);
    std::ofstream table_out(std::filesystem::path(args.out_dir) / "report.txt",
                            std::ios::binary | std::ios::trunc);
    table_out << cg::render_report_table(methods);
  }

  cg::RunManifest manifest("evaluate");
  manifest.set_config("index", args.index_dir);
  manifest.set_config("claims", args.claims_path);
  manifest.set_config("results", args.results);
  manifest.set_config("out", args.out_dir);
  manifest.set_config("min_entities", args.min_entities);
  manifest.set_config("max_mentions", args.max_mentions);
  manifest.set_config("cross_document", args.cross_document);
  manifest.add_input(args.claims_path);
  manifest.set_timing("total_ms", elapsed_ms(start));
  manifest.write(std::filesystem::path(args.out_dir) / "manifest.json");

  std::cerr << "evaluated " << methods.size() << " methods over "
            << kept.size() << " of " << claims.size() << " claims\n";
  return 0;
}

struct GenSynthArgs {
  cg::SynthConfig cfg;
  std::string out_dir;
};

int run_gen_synth(const GenSynthArgs& args) {
  auto start = Clock::now();
  cg::SynthDataset data = cg::generate_synthetic(args.cfg);

  std::filesystem::create_directories(args.out_dir);
  auto write_lines = [&](const char* name, auto&& serialize, auto&& items) {
    std::ofstream out(std::filesystem::path(args.out_dir) / name,
                      std::ios::binary | std::ios::trunc);
    if (!out) throw cg::IoError(std::string("cannot write ") + name);
    for (const auto& item : items) out << serialize(item) << '\n';
  };
  write_lines("corpus.jsonl", cg::document_to_json_line, data.documents);
  write_lines("mentions.jsonl", cg::mention_to_json_line, data.mentions);
  write_lines("claims.jsonl", cg::claim_to_json_line, data.claims);

  cg::RunManifest manifest("gen-synth");
  manifest.set_config("seed", args.cfg.seed);
  manifest.set_config("entities", args.cfg.n_entities);
  manifest.set_config("documents", args.cfg.n_documents);
  manifest.set_config("frames_per_doc", args.cfg.frames_per_doc);
  manifest.set_config("path_length", args.cfg.planted_path_length);
  manifest.set_config("claims", args.cfg.n_claims);
  manifest.set_config("skew", args.cfg.generality_skew);
  manifest.set_config("out", args.out_dir);
  manifest.set_timing("total_ms", elapsed_ms(start));
  manifest.write(std::filesystem::path(args.out_dir) / "manifest.json");

  std::cerr << "generated " << data.documents.size() << " documents, "
            << data.mentions.size() << " mentions, " << data.claims.size()
            << " claims\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity co-occurrence graph indexing and evidence retrieval"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build = app.add_subcommand(
      "build-index", "Build and persist the graph index from a corpus");
  build->add_option("--corpus", build_args.corpus_path, "Corpus JSONL file")
      ->required();
  build->add_option("--mentions", build_args.mentions_path, "Mentions JSONL file")
      ->required();
  build->add_option("--out", build_args.out_dir, "Index output directory")
      ->required();
  build
      ->add_option("--granularity", build_args.granularity,
                   "Frame granularity recorded in the index")
      ->check(CLI::IsMember({"sentence", "paragraph", "document"}));

  RetrieveArgs retrieve_args;
  auto* retrieve = app.add_subcommand(
      "retrieve", "Retrieve candidate evidence frames for claims");
  retrieve->add_option("--index", retrieve_args.index_dir, "Index directory")
      ->required();
  retrieve->add_option("--claims", retrieve_args.claims_path, "Claims JSONL file")
      ->required();
  retrieve
      ->add_option("--method", retrieve_args.method,
                   "graph | entity | mention | combined")
      ->check(CLI::IsMember({"graph", "entity", "mention", "combined"}));
  retrieve->add_option("--l", retrieve_args.l,
                       "Max hop distance between consecutive claim entities");
  retrieve->add_flag("--strict-paths", retrieve_args.strict_paths,
                     "Drop edges between two between-nodes");
  retrieve->add_option("--out", retrieve_args.out_path, "Results JSONL file")
      ->required();

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Filter claims and compute per-method metrics");
  evaluate->add_option("--index", evaluate_args.index_dir, "Index directory")
      ->required();
  evaluate->add_option("--claims", evaluate_args.claims_path, "Claims JSONL file")
      ->required();
  evaluate
      ->add_option("--results", evaluate_args.results,
                   "method=path result file, repeatable")
      ->required();
  evaluate->add_option("--out", evaluate_args.out_dir, "Report directory");
  evaluate->add_option("--min-entities", evaluate_args.min_entities,
                       "Minimum disambiguated entities per claim");
  evaluate->add_option("--max-mentions", evaluate_args.max_mentions,
                       "Generality threshold on entity mention counts");
  evaluate->add_flag("--cross-document,!--no-cross-document",
                     evaluate_args.cross_document,
                     "Require an evidence line spanning two documents");

  GenSynthArgs synth_args;
  auto* synth = app.add_subcommand(
      "gen-synth", "Generate a synthetic corpus with planted evidence");
  synth->add_option("--seed", synth_args.cfg.seed, "Generator seed");
  synth->add_option("--entities", synth_args.cfg.n_entities, "Entity count");
  synth->add_option("--documents", synth_args.cfg.n_documents, "Document count");
  synth->add_option("--frames-per-doc", synth_args.cfg.frames_per_doc,
                    "Frames per document");
  synth->add_option("--path-length", synth_args.cfg.planted_path_length,
                    "Planted path length in hops");
  synth->add_option("--claims", synth_args.cfg.n_claims, "Claim count");
  synth->add_option("--skew", synth_args.cfg.generality_skew,
                    "Background noise level");
  synth->add_option("--out", synth_args.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*build) return run_build_index(build_args);
    if (*retrieve) return run_retrieve(retrieve_args);
    if (*evaluate) return run_evaluate(evaluate_args);
    if (*synth) return run_gen_synth(synth_args);
  } catch (const cg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
