#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "hkqa/answering.hpp"
#include "hkqa/text.hpp"

namespace hkqa {

struct BenchmarkItem {
  std::string question;
  std::vector<std::string> gold_aliases;
  std::optional<std::string> gold_kb_id;
  std::optional<std::string> category;
};

/// Lowercase, punctuation stripped, one leading article removed.
inline std::string normalize_answer(std::string_view s) {
  auto n = text::normalize(s);
  for (std::string_view art : {"the ", "a ", "an "}) {
    if (n.size() > art.size() && n.compare(0, art.size(), art) == 0) return n.substr(art.size());
  }
  return n;
}

/// Newline-delimited records {question, gold_aliases, gold_kb_id?, category?}.
inline std::vector<BenchmarkItem> load_benchmark(std::istream& in) {
  std::vector<BenchmarkItem> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("benchmark: invalid JSON: ") + e.what(), lineno);
    }
    auto bad = [&](const std::string& what) { throw FormatError("benchmark: " + what, lineno); };
    if (!j.is_object()) bad("record is not an object");
    BenchmarkItem item;
    if (!j.contains("question") || !j["question"].is_string()) bad("missing string field 'question'");
    item.question = j["question"].get<std::string>();
    if (text::normalize(item.question).empty()) bad("empty question");
    if (!j.contains("gold_aliases") || !j["gold_aliases"].is_array() || j["gold_aliases"].empty()) {
      bad("'gold_aliases' must be a non-empty array");
    }
    for (const auto& a : j["gold_aliases"]) {
      if (!a.is_string() || normalize_answer(a.get<std::string>()).empty()) bad("alias is empty after normalization");
      item.gold_aliases.push_back(a.get<std::string>());
    }
    for (const char* key : {"gold_kb_id", "category"}) {
      if (!j.contains(key) || j[key].is_null()) continue;
      if (!j[key].is_string()) bad(std::string("'") + key + "' must be a string");
      (std::string_view(key) == "category" ? item.category : item.gold_kb_id) = j[key].get<std::string>();
    }
    items.push_back(std::move(item));
  }
  return items;
}

inline std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open benchmark '" + path.string() + "'");
  return load_benchmark(in);
}

inline bool answer_match(const AnswerCandidate& cand, const BenchmarkItem& item) {
  if (cand.kb_id && item.gold_kb_id && *cand.kb_id == *item.gold_kb_id) return true;
  auto label = normalize_answer(cand.label);
  for (const auto& a : item.gold_aliases) {
    if (normalize_answer(a) == label) return true;
  }
  return false;
}

/// 1-based rank of the first matching answer; nullopt when none matches.
inline std::optional<std::size_t> first_rank(const std::vector<AnswerCandidate>& answers, const BenchmarkItem& item) {
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (answer_match(answers[i], item)) return i + 1;
  }
  return std::nullopt;
}

using Rank = std::optional<std::size_t>;  // nullopt = never answered correctly

struct Metrics {
  std::size_t q = 0;
  double mrr = 0.0;
  double p_at_1 = 0.0;
  double hit_at_5 = 0.0;
};

inline Metrics compute_metrics(std::span<const Rank> ranks) {
  if (ranks.empty()) throw Error("compute_metrics: no questions");
  Metrics m;
  m.q = ranks.size();
  for (const auto& r : ranks) {
    if (!r) continue;
    if (*r == 0) throw Error("compute_metrics: ranks are 1-based");
    m.mrr += 1.0 / static_cast<double>(*r);
    if (*r == 1) m.p_at_1 += 1.0;
    if (*r <= 5) m.hit_at_5 += 1.0;
  }
  const double q = static_cast<double>(m.q);
  m.mrr /= q;
  m.p_at_1 /= q;
  m.hit_at_5 /= q;
  return m;
}

inline Metrics compute_metrics(std::initializer_list<Rank> ranks) {
  return compute_metrics(std::span<const Rank>(ranks.begin(), ranks.size()));
}

struct QuestionOutcome {
  std::size_t index = 0;
  std::string question;
  std::optional<std::string> category;
  Rank rank;
  std::string reason;
  std::optional<std::string> top_answer;
  std::size_t lcc_nodes = 0;
  std::size_t lcc_edges = 0;
};

struct MetricsReport {
  Metrics overall;
  std::map<std::string, Metrics> by_category;
  std::vector<QuestionOutcome> questions;
  double mean_lcc_nodes = 0.0;
  double mean_lcc_edges = 0.0;
  PipelineConfig config;
};

inline MetricsReport aggregate(std::vector<QuestionOutcome> outcomes, const PipelineConfig& config) {
  MetricsReport rep;
  rep.config = config;
  std::vector<Rank> all;
  std::map<std::string, std::vector<Rank>> per_cat;
  for (const auto& o : outcomes) {
    all.push_back(o.rank);
    if (o.category) per_cat[*o.category].push_back(o.rank);
    rep.mean_lcc_nodes += static_cast<double>(o.lcc_nodes);
    rep.mean_lcc_edges += static_cast<double>(o.lcc_edges);
  }
  rep.overall = compute_metrics(all);
  for (const auto& [cat, ranks] : per_cat) rep.by_category[cat] = compute_metrics(ranks);
  rep.mean_lcc_nodes /= static_cast<double>(outcomes.size());
  rep.mean_lcc_edges /= static_cast<double>(outcomes.size());
  rep.questions = std::move(outcomes);
  return rep;
}

/// Answers every item (up to `workers` at a time) and folds the outcomes in item order.
/// A question that throws counts as unanswered with reason ERROR.
inline MetricsReport run_benchmark(const Engine& engine, const std::vector<BenchmarkItem>& items,
                                   const PipelineConfig& config, std::size_t workers = 1) {
  config.validate();
  if (items.empty()) throw Error("run_benchmark: no questions");
  std::vector<QuestionOutcome> outcomes(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const auto& item = items[i];
      auto& o = outcomes[i];
      o.index = i;
      o.question = item.question;
      o.category = item.category;
      try {
        auto r = answer_question(item.question, engine, config);
        o.rank = first_rank(r.answers, item);
        o.reason = std::string(reason_name(r.reason));
        if (!r.answers.empty()) o.top_answer = r.answers.front().label;
        o.lcc_nodes = r.lcc_nodes;
        o.lcc_edges = r.lcc_edges;
      } catch (const std::exception&) {
        o.rank.reset();
        o.reason = "ERROR";
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, items.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return aggregate(std::move(outcomes), config);
}

/// One report per grid value of the predicate-alignment threshold.
inline std::vector<MetricsReport> threshold_sweep(const Engine& engine, const std::vector<BenchmarkItem>& items,
                                                  PipelineConfig config, std::size_t workers = 1) {
  std::vector<MetricsReport> out;
  for (double t : Thresholds::kPredicateGrid) {
    config.thresholds.predicate_alignment = t;
    out.push_back(run_benchmark(engine, items, config, workers));
  }
  return out;
}

enum class MetricColumn { Mrr, P1, Hit5 };

inline std::vector<MetricColumn> parse_metric_list(std::string_view spec) {
  std::vector<MetricColumn> out;
  std::string item;
  std::stringstream ss{std::string(spec)};
  while (std::getline(ss, item, ',')) {
    auto m = text::to_lower(item);
    if (m == "mrr") {
      out.push_back(MetricColumn::Mrr);
    } else if (m == "p1" || m == "p@1") {
      out.push_back(MetricColumn::P1);
    } else if (m == "hit5" || m == "hit@5") {
      out.push_back(MetricColumn::Hit5);
    } else {
      throw Error("unknown metric '" + item + "' (expected mrr, p1, hit5)");
    }
  }
  if (out.empty()) throw Error("no metrics selected");
  return out;
}

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

inline double metric_value(const Metrics& m, MetricColumn c) {
  switch (c) {
    case MetricColumn::Mrr: return m.mrr;
    case MetricColumn::P1: return m.p_at_1;
    case MetricColumn::Hit5: return m.hit_at_5;
  }
  return 0.0;
}

inline const char* metric_name(MetricColumn c) {
  switch (c) {
    case MetricColumn::Mrr: return "MRR";
    case MetricColumn::P1: return "P@1";
    case MetricColumn::Hit5: return "Hit@5";
  }
  return "?";
}

}  // namespace detail

/// Text table: one row per report (overall, then per category).
inline std::string format_table(const std::vector<MetricsReport>& reports, const std::vector<MetricColumn>& cols) {
  std::string out = detail::pad("threshold", 11) + detail::pad("scope", 16) + detail::pad("Q", 6);
  for (auto c : cols) out += detail::pad(detail::metric_name(c), 8);
  out += detail::pad("#Vertices", 11) + "#Edges\n";
  for (const auto& rep : reports) {
    auto row = [&](const std::string& scope, const Metrics& m, bool graph) {
      out += detail::pad(detail::fmt("%.3f", rep.config.thresholds.predicate_alignment), 11);
      out += detail::pad(scope, 16) + detail::pad(std::to_string(m.q), 6);
      for (auto c : cols) out += detail::pad(detail::fmt("%.3f", detail::metric_value(m, c)), 8);
      if (graph) {
        out += detail::pad(detail::fmt("%.1f", rep.mean_lcc_nodes), 11) + detail::fmt("%.1f", rep.mean_lcc_edges);
      }
      while (!out.empty() && out.back() == ' ') out.pop_back();
      out += "\n";
    };
    row("all", rep.overall, true);
    for (const auto& [cat, m] : rep.by_category) row(cat, m, false);
  }
  return out;
}

inline nlohmann::json to_json(const Metrics& m) {
  return {{"q", m.q}, {"mrr", m.mrr}, {"p_at_1", m.p_at_1}, {"hit_at_5", m.hit_at_5}};
}

/// One JSON record per question followed by one summary record.
inline std::vector<nlohmann::json> to_records(const MetricsReport& rep) {
  std::vector<nlohmann::json> out;
  const double t = rep.config.thresholds.predicate_alignment;
  for (const auto& o : rep.questions) {
    nlohmann::json j = {{"type", "question"},     {"index", o.index},         {"question", o.question},
                        {"reason", o.reason},     {"lcc_nodes", o.lcc_nodes}, {"lcc_edges", o.lcc_edges},
                        {"pred_align_threshold", t}};
    j["rank"] = o.rank ? nlohmann::json(*o.rank) : nlohmann::json(nullptr);
    if (o.category) j["category"] = *o.category;
    if (o.top_answer) j["top_answer"] = *o.top_answer;
    out.push_back(std::move(j));
  }
  nlohmann::json cats = nlohmann::json::object();
  for (const auto& [c, m] : rep.by_category) cats[c] = to_json(m);
  out.push_back({{"type", "summary"},
                 {"pred_align_threshold", t},
                 {"overall", to_json(rep.overall)},
                 {"categories", std::move(cats)},
                 {"mean_lcc_nodes", rep.mean_lcc_nodes},
                 {"mean_lcc_edges", rep.mean_lcc_edges}});
  return out;
}

}  // namespace hkqa
