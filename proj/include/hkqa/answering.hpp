#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hkqa/doc_index.hpp"
#include "hkqa/graph_io.hpp"
#include "hkqa/graph_store.hpp"
#include "hkqa/gst.hpp"
#include "hkqa/quasi_graph.hpp"
#include "hkqa/question_parser.hpp"
#include "hkqa/similarity.hpp"
#include "hkqa/text.hpp"

namespace hkqa {

struct PipelineConfig {
  std::size_t top_docs = 10;
  std::size_t top_gst = 50;
  Thresholds thresholds;
  bool free_threshold = false;
  std::size_t group_budget = kDefaultGroupBudget;
  Bm25Params bm25;

  void validate() const {
    thresholds.validate(free_threshold);
    if (top_docs < 1) throw Error("top_docs must be >= 1");
    if (top_gst < 1) throw Error("top_gst must be >= 1");
    if (group_budget < 1 || group_budget > 20) throw Error("group budget must lie in [1,20]");
  }
};

/// Immutable resources shared by all questions.
struct Engine {
  PropertyGraph graph;
  InvertedIndex index;
  MentionEntityDictionary dict;
  EmbeddingTable emb{1};
  Lexicons lex;
};

struct EnginePaths {
  std::filesystem::path graph;
  std::optional<std::filesystem::path> index;  // rebuilt from the graph when absent
  std::filesystem::path dict;
  std::filesystem::path emb;
  std::filesystem::path stopwords;
  std::filesystem::path verbs;
};

inline Engine load_engine(const EnginePaths& p) {
  Engine e;
  e.graph = load_graph(p.graph);
  if (p.index) {
    std::ifstream in(*p.index, std::ios::binary);
    if (!in) throw Error("cannot open index '" + p.index->string() + "'");
    e.index = InvertedIndex::load(in);
  } else {
    e.index = build_index(e.graph);
  }
  e.dict = MentionEntityDictionary::load(p.dict);
  e.emb = EmbeddingTable::load(p.emb);
  e.lex = Lexicons::load(p.stopwords, p.verbs);
  return e;
}

enum class ReasonCode { OK, NO_RETRIEVAL, INSUFFICIENT_GROUPS, NO_TREE };

inline std::string_view reason_name(ReasonCode r) {
  switch (r) {
    case ReasonCode::OK: return "OK";
    case ReasonCode::NO_RETRIEVAL: return "NO_RETRIEVAL";
    case ReasonCode::INSUFFICIENT_GROUPS: return "INSUFFICIENT_GROUPS";
    case ReasonCode::NO_TREE: return "NO_TREE";
  }
  return "?";
}

struct AnswerCandidate {
  std::string key;  // "kb:<id>" or "text:<normalized label>"
  std::string label;
  std::optional<std::string> kb_id;
  double score = 0.0;
  double node_weight = 0.0;
  std::vector<std::size_t> trees;    // supporting tree indices, ascending
  std::vector<std::uint32_t> nodes;  // quasi-graph nodes seen in trees, ascending
  std::set<NerType> ner_types;       // from every mention sharing the key
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct AnswerResult {
  std::string question;
  ReasonCode reason = ReasonCode::OK;
  QuestionTerms terms;
  PipelineConfig config;
  std::vector<AnswerCandidate> answers;
  std::vector<std::string> retrieved;
  std::vector<StageTiming> timings;
  std::vector<std::string> warnings;
  std::size_t quasi_nodes = 0;
  std::size_t quasi_edges = 0;
  std::size_t alignment_edges = 0;
  std::size_t lcc_nodes = 0;
  std::size_t lcc_edges = 0;
  std::size_t groups = 0;
  std::set<std::string> cornerstone_keys;  // candidate keys of mention/entity cornerstones
  std::vector<SteinerTree> trees;
};

inline std::string candidate_key(const QuasiNode& n) {
  if (n.kb_id) return "kb:" + *n.kb_id;
  return "text:" + text::normalize(n.label);
}

/// MENTION/ENTITY nodes of the trees, merged by entity (or normalized surface);
/// a key is dropped when any node carrying it is a cornerstone.
inline std::vector<AnswerCandidate> extract_candidates(const std::vector<SteinerTree>& trees, const QuasiGraph& qg,
                                                       const CornerstoneGroups& groups) {
  std::set<std::string> excluded;
  std::map<std::string, std::string> entity_labels;
  std::map<std::string, std::set<NerType>> ner_by_key;
  for (std::uint32_t i = 0; i < qg.node_count(); ++i) {
    const auto& n = qg.node(i);
    if (n.kind != NodeKind::Mention && n.kind != NodeKind::Entity) continue;
    auto key = candidate_key(n);
    if (is_cornerstone(groups, i)) excluded.insert(key);
    if (n.kind == NodeKind::Entity && n.kb_id) entity_labels[*n.kb_id] = n.label;
    if (n.kind == NodeKind::Mention && n.ner_type != NerType::NONE) ner_by_key[key].insert(n.ner_type);
  }

  std::map<std::string, AnswerCandidate> by_key;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    for (auto id : trees[t].nodes) {
      const auto& n = qg.node(id);
      if (n.kind != NodeKind::Mention && n.kind != NodeKind::Entity) continue;
      auto key = candidate_key(n);
      if (excluded.count(key)) continue;
      auto [it, fresh] = by_key.try_emplace(key);
      auto& c = it->second;
      if (fresh) {
        c.key = key;
        c.kb_id = n.kb_id;
        c.label = n.label;
        if (n.kb_id) {
          auto el = entity_labels.find(*n.kb_id);
          if (el != entity_labels.end()) c.label = el->second;
        }
        auto ner = ner_by_key.find(key);
        if (ner != ner_by_key.end()) c.ner_types = ner->second;
      }
      if (c.trees.empty() || c.trees.back() != t) c.trees.push_back(t);
      c.nodes.push_back(id);
      c.node_weight = std::max(c.node_weight, n.weight);
    }
  }
  std::vector<AnswerCandidate> out;
  for (auto& [_, c] : by_key) {
    std::sort(c.nodes.begin(), c.nodes.end());
    c.nodes.erase(std::unique(c.nodes.begin(), c.nodes.end()), c.nodes.end());
    out.push_back(std::move(c));
  }
  return out;
}

/// score = sum over supporting trees of 1/(1+cost); ties by node weight, then label.
inline std::vector<AnswerCandidate> score_candidates(std::vector<AnswerCandidate> cands,
                                                     const std::vector<SteinerTree>& trees) {
  for (auto& c : cands) {
    c.score = 0.0;
    for (auto t : c.trees) c.score += 1.0 / (1.0 + trees.at(t).cost);
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.node_weight != b.node_weight) return a.node_weight > b.node_weight;
    if (a.label != b.label) return a.label < b.label;
    return a.key < b.key;
  });
  return cands;
}

/// A candidate contradicts PERSON/PLACE when it has typed mentions and none is PER/LOC.
inline bool contradicts(const AnswerCandidate& c, AnswerType hint) {
  NerType want;
  if (hint == AnswerType::PERSON) {
    want = NerType::PER;
  } else if (hint == AnswerType::PLACE) {
    want = NerType::LOC;
  } else {
    return false;
  }
  if (c.ner_types.empty()) return false;
  return c.ner_types.count(want) == 0;
}

/// Stable demotion of contradicting candidates below the rest.
inline std::vector<AnswerCandidate> filter_by_type(std::vector<AnswerCandidate> list, AnswerType hint) {
  std::stable_partition(list.begin(), list.end(), [&](const auto& c) { return !contradicts(c, hint); });
  return list;
}

namespace detail {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out), last_(std::chrono::steady_clock::now()) {}
  void mark(std::string stage) {
    auto now = std::chrono::steady_clock::now();
    out_.push_back({std::move(stage), std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& out_;
  std::chrono::steady_clock::time_point last_;
};

}  // namespace detail

/// Retrieval, subgraph, quasi-graph, cornerstones, LCC, top-k GST, ranking.
/// No-answer outcomes come back as an empty list with a reason code.
inline AnswerResult answer_question(std::string_view question, const Engine& engine, const PipelineConfig& config) {
  config.validate();
  if (text::normalize(question).empty()) throw QuestionError("question is empty");
  AnswerResult r;
  r.question = std::string(question);
  r.config = config;
  detail::StageClock clock(r.timings);

  auto docs = retrieve_top_k(engine.index, question, config.top_docs, engine.lex.stopwords, config.bm25);
  for (const auto& d : docs) r.retrieved.push_back(d.doc_id);
  clock.mark("retrieve");
  if (docs.empty()) {
    r.reason = ReasonCode::NO_RETRIEVAL;
    return r;
  }

  try {
    r.terms = parse_question(question, engine.lex);
  } catch (const QuestionError&) {
    r.reason = ReasonCode::INSUFFICIENT_GROUPS;
    return r;
  }
  clock.mark("parse");

  auto sub = document_subgraph(engine.graph, r.retrieved);
  clock.mark("subgraph");

  auto qg = build_quasi_graph(sub, r.terms, engine.dict, engine.emb, engine.lex, config.thresholds);
  r.quasi_nodes = qg.node_count();
  r.quasi_edges = qg.edge_count();
  r.alignment_edges = qg.count_edges(QEdgeKind::Alignment);
  clock.mark("quasi_graph");

  QuasiGraph lcc;
  CornerstoneGroups groups;
  try {
    auto all_groups = select_cornerstones(qg, r.terms, config.thresholds);
    std::tie(lcc, groups) = largest_connected_component(qg, all_groups);
  } catch (const InsufficientGroupsError&) {
    r.reason = ReasonCode::INSUFFICIENT_GROUPS;
    clock.mark("cornerstones");
    return r;
  }
  r.lcc_nodes = lcc.node_count();
  r.lcc_edges = lcc.edge_count();
  r.groups = groups.size();
  for (const auto& g : groups) {
    for (const auto& [n, _] : g.members) {
      auto kind = lcc.node(n).kind;
      if (kind == NodeKind::Mention || kind == NodeKind::Entity) r.cornerstone_keys.insert(candidate_key(lcc.node(n)));
    }
  }
  clock.mark("cornerstones");

  auto inst = make_instance(lcc, groups);
  if (groups.size() > config.group_budget) {
    r.warnings.push_back("group budget exceeded (" + std::to_string(groups.size()) + " > " +
                         std::to_string(config.group_budget) + "); using greedy tree");
    r.trees = {solve_greedy(inst)};
  } else {
    try {
      r.trees = solve_topk(inst, config.top_gst, config.group_budget);
    } catch (const LabelBudgetError&) {
      r.warnings.push_back("exact search exhausted its label budget; using greedy tree");
      r.trees = {solve_greedy(inst)};
    }
  }
  clock.mark("gst");

  auto cands = score_candidates(extract_candidates(r.trees, lcc, groups), r.trees);
  r.answers = filter_by_type(std::move(cands), r.terms.answer_type_hint);
  clock.mark("rank");
  r.reason = r.answers.empty() ? ReasonCode::NO_TREE : ReasonCode::OK;
  return r;
}

inline nlohmann::json to_json(const PipelineConfig& c) {
  return {{"top_docs", c.top_docs},
          {"top_gst", c.top_gst},
          {"base_threshold", c.thresholds.base},
          {"pred_align_threshold", c.thresholds.predicate_alignment},
          {"group_budget", c.group_budget}};
}

/// Answer output record.
inline nlohmann::json to_json(const AnswerResult& r) {
  nlohmann::json answers = nlohmann::json::array();
  for (const auto& a : r.answers) {
    nlohmann::json j = {{"label", a.label}, {"score", a.score}, {"tree_count", a.trees.size()}};
    if (a.kb_id) j["kb_id"] = *a.kb_id;
    answers.push_back(std::move(j));
  }
  nlohmann::json timing = nlohmann::json::object();
  for (const auto& t : r.timings) timing[t.stage] = t.ms;
  nlohmann::json out = {{"question", r.question},
                        {"reason", reason_name(r.reason)},
                        {"answers", std::move(answers)},
                        {"config", to_json(r.config)},
                        {"timing_ms", std::move(timing)},
                        {"terms",
                         {{"entity", r.terms.entity_terms},
                          {"relation", r.terms.relation_terms},
                          {"answer_type", answer_type_name(r.terms.answer_type_hint)}}},
                        {"quasi_graph",
                         {{"nodes", r.quasi_nodes},
                          {"edges", r.quasi_edges},
                          {"alignment_edges", r.alignment_edges},
                          {"lcc_nodes", r.lcc_nodes},
                          {"lcc_edges", r.lcc_edges},
                          {"groups", r.groups},
                          {"trees", r.trees.size()}}},
                        {"retrieved", r.retrieved}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

}  // namespace hkqa
