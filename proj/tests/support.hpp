#pragma once

// Fixture loaders, seeded generators and property checks shared by the unit
// tests and the acceptance binary. Checks return an empty string on success
// and a description of the first violation otherwise.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hkqa/hkqa.hpp"

#ifndef HKQA_FIXTURE_DIR
#error "HKQA_FIXTURE_DIR must be defined"
#endif
#ifndef HKQA_RESOURCE_DIR
#error "HKQA_RESOURCE_DIR must be defined"
#endif

namespace hkqa::support {

inline std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(HKQA_FIXTURE_DIR) / rel; }
inline std::filesystem::path resource(const std::string& rel) {
  return std::filesystem::path(HKQA_RESOURCE_DIR) / rel;
}

inline const Lexicons& lexicons() {
  static const Lexicons lex = Lexicons::load_dir(HKQA_RESOURCE_DIR);
  return lex;
}

inline const char* kDirectorQuestion =
    "Which British stage director is best known for his feature-film directing debut, which starred Kevin Spacey, "
    "Annette Bening, and Thora Birch?";

/// Ingests fixtures/<name>/{annotations.jsonl,dict.tsv,emb.txt}.
inline Engine load_fixture_engine(const std::string& name) {
  Engine e;
  e.dict = MentionEntityDictionary::load(fixture(name + "/dict.tsv"));
  auto ingest = ingest_corpus_file(fixture(name + "/annotations.jsonl"), e.dict);
  if (!ingest.rejected.empty()) throw Error("fixture " + name + " has rejected records");
  e.graph = std::move(ingest.graph);
  e.index = build_index(e.graph);
  e.emb = EmbeddingTable::load(fixture(name + "/emb.txt"));
  e.lex = lexicons();
  return e;
}

inline const Engine& films_engine() {
  static const Engine e = load_fixture_engine("films");
  return e;
}

inline const Engine& synthetic_engine() {
  static const Engine e = load_fixture_engine("synthetic");
  return e;
}

inline std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<nlohmann::json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random annotated corpora

struct RandomCorpus {
  std::vector<nlohmann::json> records;
  MentionEntityDictionary dict;
  EmbeddingTable emb{6};
  std::vector<std::string> names;
  std::vector<std::string> verbs;
};

inline const std::vector<std::string>& random_first_names() {
  static const std::vector<std::string> v = {"Alder", "Brisk", "Corva", "Dunmore", "Elsin", "Farrow", "Gilead",
                                             "Harlow", "Isbel", "Jorun", "Kestrel", "Lumen"};
  return v;
}
inline const std::vector<std::string>& random_last_names() {
  static const std::vector<std::string> v = {"Ashby", "Blackwood", "Cresswell", "Dawlish", "Everard", "Fenn"};
  return v;
}
inline const std::vector<std::string>& random_verbs() {
  static const std::vector<std::string> v = {"admired", "built", "carried", "defended", "painted",
                                             "hired",   "guided", "joined", "founded", "praised"};
  return v;
}

/// Schema-valid records with names drawn from a small pool so that entities,
/// aliases and coreference chains recur across documents.
inline RandomCorpus random_corpus(std::mt19937_64& rng, std::size_t docs) {
  RandomCorpus c;
  auto pick = [&](const auto& v) -> const std::string& { return v[rng() % v.size()]; };
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const auto& v : random_verbs()) {
    Vector x(6);
    for (auto& d : x) d = unit(rng);
    c.emb.add(v, x);
    c.verbs.push_back(v);
  }
  for (const auto& f : random_first_names()) {
    for (const auto& l : random_last_names()) {
      auto full = f + " " + l;
      c.names.push_back(full);
      c.dict.add(full, {f + "_" + l});
    }
  }
  for (const auto& l : random_last_names()) {
    EntitySet ids;
    for (const auto& f : random_first_names()) {
      if (rng() % 3 == 0) ids.insert(f + "_" + l);
    }
    if (!ids.empty()) c.dict.add(l, ids);
  }

  const std::vector<std::string> fillers = {"in", "the", "old", "harbour", "of", "a", "stone", "valley"};
  for (std::size_t d = 0; d < docs; ++d) {
    std::string did = "d" + std::to_string(d);
    nlohmann::json rec = {{"doc_id", did}, {"title", pick(c.names) + " notes"}, {"sentences", nlohmann::json::array()}};
    std::size_t nsent = 1 + rng() % 4, nm = 0, nc = 0;
    std::map<std::string, std::vector<std::string>> by_entity;
    for (std::size_t s = 0; s < nsent; ++s) {
      std::vector<std::string> toks;
      nlohmann::json mentions = nlohmann::json::array();
      auto add_mention = [&](std::size_t b, std::size_t e, bool link, const std::string& ner) {
        std::string surface;
        for (std::size_t i = b; i < e; ++i) surface += (i > b ? " " : "") + toks[i];
        std::string mid = did + ".m" + std::to_string(nm++);
        nlohmann::json m = {{"mention_id", mid}, {"span", {b, e}}, {"surface", surface}, {"ner_type", ner}};
        if (link) {
          std::string kb = surface;
          std::replace(kb.begin(), kb.end(), ' ', '_');
          if (e - b == 1) kb = "Pronoun_" + std::to_string(rng() % 3);
          m["entity_id"] = kb;
          by_entity[kb].push_back(mid);
        }
        mentions.push_back(m);
      };

      bool pronoun = s > 0 && rng() % 4 == 0;
      std::size_t sb = 0;
      if (pronoun) {
        toks.push_back(rng() % 2 ? "He" : "She");
      } else {
        auto name = pick(c.names);
        for (auto& t : text::split_ws(name)) toks.push_back(t);
      }
      std::size_t se = toks.size();
      std::size_t pb = toks.size();
      toks.push_back(pick(c.verbs));
      std::size_t pe = toks.size();
      std::vector<std::pair<std::size_t, std::size_t>> objs;
      std::size_t nfill = rng() % 3;
      for (std::size_t i = 0; i < nfill; ++i) toks.push_back(pick(fillers));
      std::size_t ob = toks.size();
      for (auto& t : text::split_ws(pick(c.names))) toks.push_back(t);
      objs.emplace_back(ob, toks.size());
      std::vector<std::pair<std::size_t, std::size_t>> advs;
      if (rng() % 2) {
        std::size_t ab = toks.size();
        toks.push_back("in");
        toks.push_back(pick(random_last_names()));
        toks.push_back("valley");
        advs.emplace_back(ab, toks.size());
      }
      if (rng() % 3 == 0) {
        toks.push_back(",");
        toks.push_back("a");
        toks.push_back(rng() % 2 ? "painter" : "builder");
        toks.push_back(",");
      }
      toks.push_back(".");

      add_mention(sb, se, rng() % 5 != 0, "PER");
      add_mention(objs[0].first, objs[0].second, rng() % 4 != 0, rng() % 2 ? "PER" : "NONE");
      if (!advs.empty() && rng() % 2) add_mention(advs[0].first + 1, advs[0].first + 2, false, "LOC");

      std::string text;
      for (std::size_t i = 0; i < toks.size(); ++i) text += (i ? " " : "") + toks[i];
      nlohmann::json clause = {{"clause_id", did + ".c" + std::to_string(nc++)},
                               {"subject", {sb, se}},
                               {"predicate", {pb, pe}},
                               {"objects", nlohmann::json::array()},
                               {"adverbials", nlohmann::json::array()}};
      for (auto [b, e] : objs) clause["objects"].push_back({b, e});
      for (auto [b, e] : advs) clause["adverbials"].push_back({b, e});
      rec["sentences"].push_back({{"sent_id", did + ".s" + std::to_string(s)},
                                  {"text", text},
                                  {"tokens", toks},
                                  {"clauses", nlohmann::json::array({clause})},
                                  {"mentions", mentions}});
    }
    nlohmann::json chains = nlohmann::json::array();
    for (const auto& [_, ids] : by_entity) {
      if (ids.size() >= 2 && rng() % 2) chains.push_back(ids);
    }
    if (!chains.empty()) rec["coref_chains"] = chains;
    c.records.push_back(std::move(rec));
  }
  return c;
}

inline PropertyGraph ingest_or_throw(const std::vector<nlohmann::json>& recs, const MentionEntityDictionary& dict) {
  auto r = ingest_corpus(std::span<const nlohmann::json>(recs), dict);
  if (!r.rejected.empty()) throw Error("random corpus rejected: " + r.rejected.front().message);
  return std::move(r.graph);
}

inline Engine random_engine(std::mt19937_64& rng, std::size_t docs) {
  auto c = random_corpus(rng, docs);
  Engine e;
  e.graph = ingest_or_throw(c.records, c.dict);
  e.index = build_index(e.graph);
  e.dict = std::move(c.dict);
  e.emb = std::move(c.emb);
  e.lex = lexicons();
  return e;
}

/// "Who <verb> <Name> and <verb> <Name>?" over the random vocabulary.
inline std::string random_question(std::mt19937_64& rng) {
  const auto& f = random_first_names();
  const auto& l = random_last_names();
  const auto& v = random_verbs();
  return "Who " + v[rng() % v.size()] + " " + f[rng() % f.size()] + " " + l[rng() % l.size()] + " and " +
         v[rng() % v.size()] + " " + f[rng() % f.size()] + " " + l[rng() % l.size()] + "?";
}

// ---------------------------------------------------------------------------
// Random GST instances

/// Connected instance: random spanning tree plus extra edges. Costs are mostly
/// uniform in [0,1]; one instance in four draws from a coarse grid to force ties.
inline GstInstance random_instance(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_groups) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool coarse = rng() % 4 == 0;
  auto cost = [&] { return coarse ? static_cast<double>(rng() % 5) / 4.0 : unit(rng); };
  GstInstance inst;
  inst.node_count = 1 + rng() % max_nodes;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t v = 1; v < inst.node_count; ++v) {
    std::uint32_t u = static_cast<std::uint32_t>(rng() % v);
    seen.emplace(u, v);
    inst.edges.push_back({u, v, cost()});
  }
  std::size_t extra = inst.node_count > 2 ? rng() % (inst.node_count * 2) : 0;
  for (std::size_t i = 0; i < extra; ++i) {
    auto a = static_cast<std::uint32_t>(rng() % inst.node_count);
    auto b = static_cast<std::uint32_t>(rng() % inst.node_count);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.emplace(a, b).second) continue;
    inst.edges.push_back({a, b, cost()});
  }
  std::shuffle(inst.edges.begin(), inst.edges.end(), rng);
  std::size_t groups = 1 + rng() % max_groups;
  for (std::size_t g = 0; g < groups; ++g) {
    std::set<std::uint32_t> members;
    std::size_t size = 1 + rng() % std::min<std::size_t>(3, inst.node_count);
    while (members.size() < size) members.insert(static_cast<std::uint32_t>(rng() % inst.node_count));
    inst.groups.emplace_back(members.begin(), members.end());
  }
  return inst;
}

struct OracleReport {
  std::size_t instances = 0;
  std::size_t bitwise_equal = 0;
  double max_abs_diff = 0.0;
  std::string failure;  // first infeasible or out-of-tolerance instance
};

/// solve_exact against brute_force on `count` seeded instances.
inline OracleReport gst_oracle(std::uint64_t seed, std::size_t count, std::size_t max_nodes = 8,
                               std::size_t max_groups = 3, double tolerance = 1e-12) {
  OracleReport rep;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto inst = random_instance(rng, max_nodes, max_groups);
    auto exact = solve_exact(inst);
    auto brute = brute_force(inst);
    ++rep.instances;
    double diff = std::abs(exact.cost - brute.cost);
    rep.max_abs_diff = std::max(rep.max_abs_diff, diff);
    if (exact.cost == brute.cost) ++rep.bitwise_equal;
    if (rep.failure.empty()) {
      if (!is_feasible(inst, exact)) {
        rep.failure = "instance " + std::to_string(i) + ": exact tree infeasible";
      } else if (diff > tolerance) {
        std::ostringstream o;
        o.precision(17);
        o << "instance " << i << ": exact " << exact.cost << " vs brute force " << brute.cost;
        rep.failure = o.str();
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Property checks

inline std::string check_edge_kinds(const PropertyGraph& g) {
  for (const auto& e : g.edges()) {
    auto sk = e.src.kind, dk = e.dst.kind;
    bool ok = false;
    switch (e.kind) {
      case EdgeKind::Structural:
        ok = (sk == VertexKind::Document && dk == VertexKind::Sentence) ||
             (sk == VertexKind::Sentence && dk == VertexKind::Clause);
        break;
      case EdgeKind::MentionEntity: ok = sk == VertexKind::Mention && dk == VertexKind::Entity; break;
      case EdgeKind::Coref: ok = sk == VertexKind::Mention && dk == VertexKind::Mention && e.src != e.dst; break;
    }
    if (!ok) return "edge " + e.src.str() + " -> " + e.dst.str() + " has an invalid kind";
    if (!g.contains(e.src) || !g.contains(e.dst)) return "edge endpoint missing: " + e.src.str() + " -> " + e.dst.str();
  }
  return {};
}

inline std::string check_order_independence(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto c = random_corpus(rng, 2 + rng() % 6);
  auto a = ingest_or_throw(c.records, c.dict);
  auto shuffled = c.records;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto b = ingest_or_throw(shuffled, c.dict);
  if (canonical_text(a) != canonical_text(b)) return "canonical serializations differ";
  if (!(a == b)) return "graphs differ";
  if (auto err = check_edge_kinds(a); !err.empty()) return err;
  return {};
}

inline std::string check_roundtrip(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto c = random_corpus(rng, 1 + rng() % 6);
  auto g = ingest_or_throw(c.records, c.dict);
  std::stringstream buf;
  save_graph(g, buf);
  auto back = load_graph(buf);
  if (!(back == g)) return "loaded graph differs";
  if (canonical_text(back) != canonical_text(g)) return "canonical serializations differ";
  auto idx = build_index(g);
  std::stringstream ibuf;
  idx.save(ibuf);
  if (!(InvertedIndex::load(ibuf) == idx)) return "loaded index differs";
  return {};
}

inline bool is_connected(const QuasiGraph& qg) {
  if (qg.node_count() == 0) return true;
  std::vector<char> seen(qg.node_count(), 0);
  std::queue<std::uint32_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t n = 1;
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    for (auto ei : qg.incident(u)) {
      auto v = qg.other_end(qg.edges()[ei], u);
      if (!seen[v]) {
        seen[v] = 1;
        ++n;
        q.push(v);
      }
    }
  }
  return n == qg.node_count();
}

inline std::string check_quasi_weights(const QuasiGraph& qg) {
  for (const auto& n : qg.nodes()) {
    if (!(n.weight >= 0.0 && n.weight <= 1.0)) return "node weight outside [0,1]: " + n.label;
  }
  for (const auto& e : qg.edges()) {
    if (!(e.weight > 0.0 && e.weight <= 1.0)) return "edge weight outside (0,1]";
    if (e.src == e.dst) return "self-loop";
    auto ks = qg.node(e.src).kind, kd = qg.node(e.dst).kind;
    if (e.kind == QEdgeKind::Alignment && ks != kd) return "alignment edge between different kinds";
    if (e.kind == QEdgeKind::TypeEdge &&
        !((ks == NodeKind::Mention && kd == NodeKind::Type) || (ks == NodeKind::Type && kd == NodeKind::Mention))) {
      return "type edge not mention-type";
    }
  }
  return {};
}

/// Returns "" or an error; sets `skipped` when the question yields fewer than two groups.
inline std::string check_lcc(std::uint64_t seed, bool& skipped) {
  std::mt19937_64 rng(seed);
  auto e = random_engine(rng, 3 + rng() % 6);
  auto terms = parse_question(random_question(rng), e.lex);
  auto qg = build_quasi_graph(e.graph, terms, e.dict, e.emb, e.lex, Thresholds{});
  if (auto err = check_quasi_weights(qg); !err.empty()) return err;
  skipped = false;
  try {
    auto groups = select_cornerstones(qg, terms, Thresholds{});
    auto [lcc, kept] = largest_connected_component(qg, groups);
    if (!is_connected(lcc)) return "LCC is not connected";
    if (kept.size() < 2) return "LCC kept fewer than two groups";
    auto comps = connected_components(qg);
    for (const auto& c : comps) {
      if (c.size() > lcc.node_count()) return "a larger component exists";
    }
    for (const auto& g : kept) {
      for (const auto& [n, s] : g.members) {
        if (n >= lcc.node_count() || s < Thresholds{}.base) return "bad cornerstone after restriction";
      }
    }
  } catch (const InsufficientGroupsError&) {
    skipped = true;
  }
  return {};
}

/// No cornerstone among the answers; positive scores; sorted within demotion blocks.
inline std::string check_answers(std::uint64_t seed, bool* answered = nullptr) {
  std::mt19937_64 rng(seed);
  auto e = random_engine(rng, 3 + rng() % 6);
  PipelineConfig cfg;
  cfg.top_gst = 1 + rng() % 10;
  auto q = random_question(rng);
  auto r = answer_question(q, e, cfg);
  if (answered) *answered = !r.answers.empty();
  if (r.reason == ReasonCode::OK && r.answers.empty()) return "OK with no answers";
  for (std::size_t i = 0; i < r.answers.size(); ++i) {
    const auto& a = r.answers[i];
    if (r.cornerstone_keys.count(a.key)) return "cornerstone '" + a.label + "' returned as answer";
    if (!(a.score > 0.0)) return "non-positive score";
    if (i > 0) {
      const auto& p = r.answers[i - 1];
      bool pd = contradicts(p, r.terms.answer_type_hint), ad = contradicts(a, r.terms.answer_type_hint);
      if (pd && !ad) return "demoted candidate above a non-demoted one";
      if (pd == ad && p.score < a.score) return "scores increase within a block";
    }
  }
  auto again = answer_question(q, e, cfg);
  if (again.answers.size() != r.answers.size()) return "nondeterministic answer count";
  for (std::size_t i = 0; i < r.answers.size(); ++i) {
    if (again.answers[i].key != r.answers[i].key || again.answers[i].score != r.answers[i].score) {
      return "nondeterministic ranking";
    }
  }
  return {};
}

}  // namespace hkqa::support
