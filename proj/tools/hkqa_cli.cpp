#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hkqa/evaluator.hpp"
#include "hkqa/service.hpp"

#ifndef HKQA_RESOURCE_DIR
#define HKQA_RESOURCE_DIR "resources"
#endif

namespace {

constexpr int kUsageError = 2;

struct EngineOptions {
  std::string graph;
  std::string index;
  std::string dict;
  std::string emb;
  std::string stopwords = std::string(HKQA_RESOURCE_DIR) + "/stopwords.txt";
  std::string verbs = std::string(HKQA_RESOURCE_DIR) + "/verbs.txt";
  hkqa::PipelineConfig config;
  std::size_t workers = 1;

  void attach(CLI::App* cmd, bool with_workers) {
    cmd->add_option("--graph", graph, "graph image written by 'ingest'")->required()->check(CLI::ExistingFile);
    cmd->add_option("--index", index, "index image written by 'index' (rebuilt when omitted)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--dict", dict, "mention-entity dictionary (TSV)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--emb", emb, "word embeddings (text format)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--stopwords", stopwords, "stopword list")->check(CLI::ExistingFile)->capture_default_str();
    cmd->add_option("--verbs", verbs, "verb lexicon")->check(CLI::ExistingFile)->capture_default_str();
    cmd->add_option("--top-docs", config.top_docs, "documents retrieved per question")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--top-gst", config.top_gst, "Steiner trees per question")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--base-threshold", config.thresholds.base, "similarity threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--pred-align-threshold", config.thresholds.predicate_alignment,
                    "predicate alignment threshold (0.25, 0.375, 0.5, 0.6, 0.75)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_flag("--free-threshold", config.free_threshold, "accept any predicate threshold in [0,1]");
    cmd->add_option("--gst-group-budget", config.group_budget, "largest group count solved exactly")
        ->check(CLI::Range(1, 20))
        ->capture_default_str();
    if (with_workers) {
      cmd->add_option("--workers", workers, "concurrent questions")->check(CLI::PositiveNumber)->capture_default_str();
    }
  }

  hkqa::Engine load() const {
    config.validate();
    hkqa::EnginePaths p{graph, std::nullopt, dict, emb, stopwords, verbs};
    if (!index.empty()) p.index = index;
    return hkqa::load_engine(p);
  }
};

void print_stats(const hkqa::CorpusStats& s) {
  std::printf("stats (documents, sentences, clauses, mentions, entities) = (%zu, %zu, %zu, %zu, %zu)\n", s.documents,
              s.sentences, s.clauses, s.mentions, s.entities);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid knowledge-graph question answering"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "build a graph image from an annotation file");
  std::string corpus, ingest_dict, graph_out, index_out;
  bool strict = false;
  ingest->add_option("--corpus", corpus, "annotations (JSON lines)")->required()->check(CLI::ExistingFile);
  ingest->add_option("--dict", ingest_dict, "mention-entity dictionary (TSV)")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", graph_out, "graph image to write")->required();
  ingest->add_option("--index-out", index_out, "also write the document index here");
  ingest->add_flag("--strict", strict, "fail if any record is rejected");

  auto* index = app.add_subcommand("index", "build the document index for a graph image");
  std::string index_graph, index_path;
  index->add_option("--graph", index_graph, "graph image")->required()->check(CLI::ExistingFile);
  index->add_option("--out", index_path, "index image to write")->required();

  auto* stats = app.add_subcommand("stats", "print vertex counts of a graph image");
  std::string stats_graph;
  stats->add_option("--graph", stats_graph, "graph image")->required()->check(CLI::ExistingFile);

  auto* ask = app.add_subcommand("ask", "answer one question");
  EngineOptions ask_opts;
  ask_opts.attach(ask, false);
  std::string question;
  bool as_json = false, with_scores = false;
  std::size_t limit = 10;
  ask->add_option("question", question, "natural-language question")->required();
  ask->add_flag("--json", as_json, "print the full answer record");
  ask->add_flag("--scores", with_scores, "append score and kb id to each answer");
  ask->add_option("--limit", limit, "answers to print")->check(CLI::PositiveNumber)->capture_default_str();

  auto* eval = app.add_subcommand("eval", "run a benchmark");
  EngineOptions eval_opts;
  eval_opts.attach(eval, true);
  std::string bench, metrics = "mrr,p1,hit5", records;
  bool sweep = false;
  eval->add_option("--benchmark", bench, "benchmark (JSON lines)")->required()->check(CLI::ExistingFile);
  eval->add_option("--metrics", metrics, "columns to report")->capture_default_str();
  eval->add_flag("--sweep", sweep, "repeat over every predicate threshold on the grid");
  eval->add_option("--records", records, "write per-question records (JSON lines) here; '-' for stdout");

  auto* serve = app.add_subcommand("serve", "answer questions over HTTP");
  EngineOptions serve_opts;
  serve_opts.attach(serve, true);
  int port = 8080;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535))->capture_default_str();
  serve->add_option("--host", host, "listen address")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      auto dict = hkqa::MentionEntityDictionary::load(ingest_dict);
      auto result = hkqa::ingest_corpus_file(corpus, dict);
      for (const auto& r : result.rejected) {
        std::fprintf(stderr, "rejected record %zu (%s): %s: %s\n", r.record_index,
                     r.doc_id.empty() ? "?" : r.doc_id.c_str(), r.path.c_str(), r.message.c_str());
      }
      if (strict && !result.rejected.empty()) {
        std::fprintf(stderr, "error: %zu record(s) rejected\n", result.rejected.size());
        return 1;
      }
      hkqa::save_graph(result.graph, graph_out);
      if (!index_out.empty()) {
        std::ofstream out(index_out, std::ios::binary | std::ios::trunc);
        if (!out) throw hkqa::Error("cannot write '" + index_out + "'");
        hkqa::build_index(result.graph).save(out);
      }
      print_stats(result.graph.stats());
      std::printf("rejected %zu\n", result.rejected.size());
    } else if (*index) {
      auto g = hkqa::load_graph(index_graph);
      std::ofstream out(index_path, std::ios::binary | std::ios::trunc);
      if (!out) throw hkqa::Error("cannot write '" + index_path + "'");
      auto idx = hkqa::build_index(g);
      idx.save(out);
      std::printf("indexed %zu documents, %zu terms\n", idx.document_count(), idx.term_count());
    } else if (*stats) {
      print_stats(hkqa::load_graph(stats_graph).stats());
    } else if (*ask) {
      if (hkqa::text::normalize(question).empty()) {
        std::fprintf(stderr, "usage error: question is empty\n");
        return kUsageError;
      }
      auto engine = ask_opts.load();
      auto r = hkqa::answer_question(question, engine, ask_opts.config);
      if (as_json) {
        std::printf("%s\n", hkqa::to_json(r).dump(2).c_str());
      } else if (r.answers.empty()) {
        std::printf("no answer: %s\n", std::string(hkqa::reason_name(r.reason)).c_str());
      } else {
        for (std::size_t i = 0; i < r.answers.size() && i < limit; ++i) {
          const auto& a = r.answers[i];
          if (with_scores) {
            std::printf("%s\t%.6f\t%s\n", a.label.c_str(), a.score, a.kb_id ? a.kb_id->c_str() : "-");
          } else {
            std::printf("%s\n", a.label.c_str());
          }
        }
      }
      for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    } else if (*eval) {
      auto cols = hkqa::parse_metric_list(metrics);
      auto items = hkqa::load_benchmark(std::filesystem::path(bench));
      auto engine = eval_opts.load();
      std::vector<hkqa::MetricsReport> reports;
      if (sweep) {
        reports = hkqa::threshold_sweep(engine, items, eval_opts.config, eval_opts.workers);
      } else {
        reports.push_back(hkqa::run_benchmark(engine, items, eval_opts.config, eval_opts.workers));
      }
      std::printf("%s", hkqa::format_table(reports, cols).c_str());
      if (!records.empty()) {
        std::ofstream file;
        if (records != "-") {
          file.open(records, std::ios::trunc);
          if (!file) throw hkqa::Error("cannot write '" + records + "'");
        }
        std::ostream& out = records == "-" ? std::cout : file;
        for (const auto& rep : reports) {
          for (const auto& rec : hkqa::to_records(rep)) out << rec.dump() << "\n";
        }
      }
    } else if (*serve) {
      auto engine = serve_opts.load();
      httplib::Server server;
      server.new_task_queue = [n = serve_opts.workers] { return new httplib::ThreadPool(n); };
      hkqa::service::install_routes(server, engine, serve_opts.config);
      std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
      if (!server.listen(host, port)) throw hkqa::Error("cannot listen on " + host + ":" + std::to_string(port));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
