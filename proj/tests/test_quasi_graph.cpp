#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace hkqa;
using nlohmann::json;

namespace {

struct Clause {
  std::array<int, 2> subject;
  std::array<int, 2> predicate;
  std::vector<std::array<int, 2>> objects;
};

struct Mention {
  std::array<int, 2> span;
  std::string entity;  // empty: unlinked
};

json sentence_record(const std::string& id, const std::vector<std::string>& sentences,
                     const std::vector<std::vector<Clause>>& clauses, const std::vector<std::vector<Mention>>& mentions,
                     const std::vector<std::vector<std::string>>& chains = {}) {
  json rec = {{"doc_id", id}, {"title", id}, {"sentences", json::array()}};
  int nc = 0, nm = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto toks = text::split_ws(sentences[s]);
    json sj = {{"sent_id", id + ".s" + std::to_string(s)},
               {"text", sentences[s]},
               {"tokens", toks},
               {"clauses", json::array()},
               {"mentions", json::array()}};
    for (const auto& c : clauses[s]) {
      json cj = {{"clause_id", id + ".c" + std::to_string(nc++)},
                 {"subject", c.subject},
                 {"predicate", c.predicate},
                 {"objects", json::array()}};
      for (const auto& o : c.objects) cj["objects"].push_back(o);
      sj["clauses"].push_back(cj);
    }
    for (const auto& m : mentions[s]) {
      json mj = {{"mention_id", id + ".m" + std::to_string(nm++)},
                 {"span", m.span},
                 {"surface", text::join(toks, m.span[0], m.span[1])}};
      if (!m.entity.empty()) mj["entity_id"] = m.entity;
      sj["mentions"].push_back(mj);
    }
    rec["sentences"].push_back(sj);
  }
  if (!chains.empty()) rec["coref_chains"] = chains;
  return rec;
}

PropertyGraph graph_of(const json& rec, const MentionEntityDictionary& dict = {}) {
  std::vector<json> recs{rec};
  auto r = ingest_corpus(std::span<const json>(recs), dict);
  if (!r.rejected.empty()) throw Error(r.rejected[0].path + ": " + r.rejected[0].message);
  return std::move(r.graph);
}

std::uint32_t find(const QuasiGraph& qg, NodeKind kind, const std::string& label, std::size_t nth = 0) {
  for (std::uint32_t i = 0; i < qg.node_count(); ++i) {
    if (qg.node(i).kind == kind && qg.node(i).label == label && nth-- == 0) return i;
  }
  throw Error("no node " + label);
}

std::uint32_t by_vertex(const QuasiGraph& qg, const VertexId& v) {
  auto n = qg.node_for(v);
  if (!n) throw Error("no node for " + v.str());
  return *n;
}

double weight(const QuasiGraph& qg, std::uint32_t a, std::uint32_t b) {
  auto e = qg.edge_between(a, b);
  return e ? qg.edges()[*e].weight : -1.0;
}

QuasiGraph films_quasi(const QuestionTerms& terms, Thresholds th = {}) {
  const auto& e = support::films_engine();
  return build_quasi_graph(e.graph, terms, e.dict, e.emb, e.lex, th);
}

QuestionTerms director_terms() { return parse_question(support::kDirectorQuestion, support::lexicons()); }

// Vectors read straight from the fixture file, independent of EmbeddingTable.
std::map<std::string, std::vector<double>> raw_vectors() {
  std::ifstream in(support::fixture("films/emb.txt"));
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::vector<double>> out;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string w;
    ss >> w;
    double x;
    while (ss >> x) out[w].push_back(x);
  }
  return out;
}

std::set<std::pair<std::uint32_t, std::uint32_t>> alignment_pairs(const QuasiGraph& qg) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& e : qg.edges()) {
    if (e.kind == QEdgeKind::Alignment) out.emplace(e.src, e.dst);
  }
  return out;
}

}  // namespace

// --- translation -----------------------------------------------------------

TEST(Translate, MentionsOfOneEntityShareTheEntityNode) {
  auto qg = translate_subgraph(support::films_engine().graph);
  auto m5 = by_vertex(qg, mention_id("Sam_Mendes.m0"));
  auto m6 = by_vertex(qg, mention_id("Sam_Mendes.m1"));
  auto ent = by_vertex(qg, entity_id("Sam_Mendes"));
  EXPECT_EQ(qg.node(m5).label, "Sam Mendes");
  EXPECT_EQ(qg.node(m6).label, "Samuel Alexander Mendes");
  EXPECT_EQ(weight(qg, m5, ent), 1.0);
  EXPECT_EQ(weight(qg, m6, ent), 1.0);
  // coreference: weight-1 alignment
  auto e = qg.edge_between(m5, m6);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(qg.edges()[*e].kind, QEdgeKind::Alignment);
  EXPECT_EQ(qg.edges()[*e].weight, 1.0);
}

TEST(Translate, NodeCountsAndIsolatedPredicate) {
  const auto& g = support::films_engine().graph;
  auto qg = translate_subgraph(g);
  EXPECT_EQ(qg.count_nodes(NodeKind::Mention), 28u);
  EXPECT_EQ(qg.count_nodes(NodeKind::Entity), 10u);
  EXPECT_EQ(qg.count_nodes(NodeKind::Predicate), 13u);
  EXPECT_EQ(qg.count_nodes(NodeKind::Type), 0u);
  // "He made his feature film directing debut in 1999": no mention in any role except the subject
  auto p = by_vertex(qg, clause_id("Sam_Mendes.c2"));
  EXPECT_EQ(qg.node(p).label, "made his feature film directing debut");
  EXPECT_EQ(qg.incident(p).size(), 1u);
}

TEST(Translate, EmptySubgraph) {
  auto qg = translate_subgraph(PropertyGraph{});
  EXPECT_EQ(qg.node_count(), 0u);
  EXPECT_EQ(qg.edge_count(), 0u);
}

TEST(Translate, StructureIsQuestionIndependent) {
  auto a = films_quasi(director_terms(), Thresholds{0.25, 0.75});
  auto b = films_quasi(parse_question("Who directed Skyfall?", support::lexicons()), Thresholds{0.25, 0.75});
  auto structural = [](const QuasiGraph& qg) {
    std::set<std::tuple<std::uint32_t, std::uint32_t, double>> out;
    for (const auto& e : qg.edges()) {
      if (e.kind != QEdgeKind::Alignment) out.emplace(e.src, e.dst, e.weight);
    }
    return out;
  };
  EXPECT_EQ(structural(a), structural(b));
  EXPECT_EQ(a.node_count(), b.node_count());
}

// --- type nodes ------------------------------------------------------------

TEST(TypeNodes, IsAPattern) {
  auto qg = films_quasi(director_terms());
  auto actress = find(qg, NodeKind::Type, "American actress");
  auto birch = by_vertex(qg, mention_id("Thora_Birch.m0"));
  auto e = qg.edge_between(birch, actress);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(qg.edges()[*e].kind, QEdgeKind::TypeEdge);
  EXPECT_EQ(qg.edges()[*e].weight, 1.0);
  auto director = find(qg, NodeKind::Type, "British stage director");
  EXPECT_TRUE(qg.edge_between(by_vertex(qg, mention_id("Sam_Mendes.m0")), director).has_value());
  // noun phrase capped at six tokens
  EXPECT_NO_THROW(find(qg, NodeKind::Type, "1999 American black comedy drama film"));
}

TEST(TypeNodes, SuchAsAppositionAndDedup) {
  auto rec = sentence_record("t",
                             {"directors such as Ann Lee met Bob .", "Carl , a director , met Dora .",
                              "Dora is a painter and singer ."},
                             {{}, {}, {}},
                             {{{{3, 5}, ""}, {{6, 7}, ""}}, {{{0, 1}, ""}, {{6, 7}, ""}}, {{{0, 1}, ""}}});
  auto g = graph_of(rec);
  auto qg = translate_subgraph(g);
  add_type_nodes(qg, g, support::lexicons());
  auto directors = find(qg, NodeKind::Type, "directors");
  auto director = find(qg, NodeKind::Type, "director");
  EXPECT_TRUE(qg.edge_between(by_vertex(qg, mention_id("t.m0")), directors).has_value());
  EXPECT_TRUE(qg.edge_between(by_vertex(qg, mention_id("t.m2")), director).has_value());
  // "painter and singer": NP stops at the stopword
  auto painter = find(qg, NodeKind::Type, "painter");
  EXPECT_TRUE(qg.edge_between(by_vertex(qg, mention_id("t.m4")), painter).has_value());
  EXPECT_EQ(qg.count_nodes(NodeKind::Type), 3u);

  auto rec2 = sentence_record("u", {"Ann is a director .", "Bob was a Director ."}, {{}, {}},
                              {{{{0, 1}, ""}}, {{{0, 1}, ""}}});
  auto g2 = graph_of(rec2);
  auto q2 = translate_subgraph(g2);
  add_type_nodes(q2, g2, support::lexicons());
  EXPECT_EQ(q2.count_nodes(NodeKind::Type), 1u);
  EXPECT_EQ(q2.count_edges(QEdgeKind::TypeEdge), 2u);
}

TEST(TypeNodes, NoPatternLeavesGraphUnchanged) {
  auto rec = sentence_record("n", {"Ann met Bob ."}, {{{{0, 1}, {1, 2}, {{2, 3}}}}}, {{{{0, 1}, ""}, {{2, 3}, ""}}});
  auto g = graph_of(rec);
  auto qg = translate_subgraph(g);
  auto before = qg.edge_count();
  add_type_nodes(qg, g, support::lexicons());
  EXPECT_EQ(qg.count_nodes(NodeKind::Type), 0u);
  EXPECT_EQ(qg.edge_count(), before);
}

// --- edge weights ----------------------------------------------------------

TEST(EdgeWeights, InverseDistanceOnFixture) {
  auto qg = films_quasi(director_terms());
  auto starred = by_vertex(qg, clause_id("Sam_Mendes.c3"));
  // "His debut film starred Kevin Spacey , Annette Bening and Thora Birch ."
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("Sam_Mendes.m6")), starred), 1.0);         // d = 0
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("Sam_Mendes.m7")), starred), 0.25);        // d = 3
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("Sam_Mendes.m8")), starred), 1.0 / 7.0);   // d = 6
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("Sam_Mendes.m5")), starred), 1.0 / 3.0);   // "His", d = 2
}

TEST(EdgeWeights, MaxOverClausesSharingAPredicate) {
  // "met" twice in one sentence: Ann is 1 token from the first, 4 from the second
  auto rec = sentence_record("x", {"Ann quickly met Bob then met Carl ."},
                             {{{{0, 1}, {2, 3}, {{3, 4}}}, {{0, 1}, {5, 6}, {{6, 7}}}}},
                             {{{{0, 1}, ""}, {{3, 4}, ""}, {{6, 7}, ""}}});
  auto g = graph_of(rec);
  auto qg = translate_subgraph(g);
  assign_edge_weights(qg, g);
  EXPECT_EQ(qg.count_nodes(NodeKind::Predicate), 1u);
  auto met = by_vertex(qg, clause_id("x.c0"));
  EXPECT_EQ(met, by_vertex(qg, clause_id("x.c1")));
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("x.m0")), met), 0.5);
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("x.m1")), met), 1.0);
  // Carl: d = 0 to the second "met", 3 to the first
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("x.m2")), met), 1.0);
  EXPECT_EQ(qg.edge_count(), 3u);
}

TEST(EdgeWeights, ConnectKeepsHeavierParallelEdge) {
  QuasiGraph qg;
  auto a = qg.add_node({NodeKind::Mention, "a", {}, 0.0, std::nullopt, NerType::NONE});
  auto b = qg.add_node({NodeKind::Mention, "b", {}, 0.0, std::nullopt, NerType::NONE});
  qg.connect(a, b, QEdgeKind::Alignment, 0.3);
  qg.connect(b, a, QEdgeKind::Alignment, 0.7);
  qg.connect(a, b, QEdgeKind::Alignment, 0.5);
  qg.connect(a, a, QEdgeKind::Alignment, 1.0);
  EXPECT_EQ(qg.edge_count(), 1u);
  EXPECT_EQ(weight(qg, a, b), 0.7);
}

TEST(EdgeWeights, CorefBeatsWeakerDictionaryAlignment) {
  MentionEntityDictionary dict;
  dict.add("Birch", {"A", "B"});
  dict.add("Thora Birch", {"A"});
  auto rec = sentence_record("c", {"Thora Birch met Birch ."}, {{{{0, 2}, {2, 3}, {{3, 4}}}}},
                             {{{{0, 2}, ""}, {{3, 4}, ""}}}, {{"c.m0", "c.m1"}});
  auto g = graph_of(rec, dict);
  auto qg = translate_subgraph(g);
  add_alignment_edges(qg, Thresholds{}, dict, EmbeddingTable(1));
  EXPECT_EQ(weight(qg, by_vertex(qg, mention_id("c.m0")), by_vertex(qg, mention_id("c.m1"))), 1.0);
}

// --- vertex weights --------------------------------------------------------

TEST(VertexWeights, PlaysVersusStarredMatchesHandCosine) {
  auto raw = raw_vectors();
  const auto& u = raw.at("plays");
  const auto& v = raw.at("starred");
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  double expected = dot / std::sqrt(nu * nv);

  QuestionTerms terms{{"Thora Birch"}, {"starred"}, AnswerType::OTHER};
  auto qg = films_quasi(terms);
  auto plays = by_vertex(qg, clause_id("Thora_Birch.c2"));
  ASSERT_EQ(qg.node(plays).label, "plays");
  EXPECT_NEAR(qg.node(plays).weight, expected, 1e-12);
  EXPECT_NEAR(expected, 0.925 / std::sqrt(1.01 * 0.8714), 1e-12);
}

TEST(VertexWeights, IdentityAndOutOfVocabulary) {
  QuestionTerms terms{{"Jane Burnham"}, {"xyzzy"}, AnswerType::OTHER};
  auto qg = films_quasi(terms);
  EXPECT_EQ(qg.node(by_vertex(qg, mention_id("Thora_Birch.m3"))).weight, 1.0);
  for (const auto& n : qg.nodes()) {
    if (n.kind == NodeKind::Predicate) {
      EXPECT_EQ(n.weight, 0.0) << n.label;
    }
  }
}

TEST(VertexWeights, MaxOverTermsAndTypeJaccard) {
  QuestionTerms terms{{"Birch", "Thora Birch"}, {"acted"}, AnswerType::OTHER};
  auto qg = films_quasi(terms);
  // "Birch" vs dictionary entry "Birch": 1.0 beats 0.5 from "Thora Birch"
  EXPECT_EQ(qg.node(by_vertex(qg, mention_id("Thora_Birch.m4"))).weight, 1.0);
  auto t = find(qg, NodeKind::Type, "American actress");
  EXPECT_EQ(qg.node(t).weight, 0.0);
  QuestionTerms t2{{"actress"}, {"starred"}, AnswerType::OTHER};
  auto q2 = films_quasi(t2);
  EXPECT_DOUBLE_EQ(q2.node(find(q2, NodeKind::Type, "American actress")).weight, 0.5);
}

// --- alignment -------------------------------------------------------------

TEST(Alignment, SynonymousPredicates) {
  auto rec = sentence_record("p", {"Ann made directional debut .", "It was directed by Bob ."},
                             {{{{0, 1}, {1, 4}, {}}}, {{{0, 1}, {2, 4}, {{4, 5}}}}},
                             {{{{0, 1}, ""}}, {{{0, 1}, ""}, {{4, 5}, ""}}});
  const auto& e = support::films_engine();
  auto g = graph_of(rec);

  // hand: mean(made, directional, debut) vs directed ("by" is not in the table)
  auto raw = raw_vectors();
  std::vector<double> a(8, 0.0);
  for (const char* w : {"made", "directional", "debut"}) {
    for (std::size_t i = 0; i < 8; ++i) a[i] += raw.at(w)[i] / 3.0;
  }
  const auto& b = raw.at("directed");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  double expected = dot / std::sqrt(na * nb);
  ASSERT_GT(expected, 0.6);
  ASSERT_LT(expected, 0.75);

  for (double th : Thresholds::kPredicateGrid) {
    auto qg = translate_subgraph(g);
    add_alignment_edges(qg, Thresholds{0.25, th}, e.dict, e.emb);
    auto w = weight(qg, by_vertex(qg, clause_id("p.c0")), by_vertex(qg, clause_id("p.c1")));
    if (th <= expected) {
      EXPECT_NEAR(w, expected, 1e-12) << th;
    } else {
      EXPECT_EQ(w, -1.0) << th;
    }
  }
}

TEST(Alignment, SharedEntityGivesWeightOne) {
  auto qg = films_quasi(director_terms());
  auto a = by_vertex(qg, mention_id("Sam_Mendes.m0"));
  auto b = by_vertex(qg, mention_id("American_Beauty.m2"));
  EXPECT_EQ(weight(qg, a, b), 1.0);
  for (const auto& e : qg.edges()) {
    const auto& x = qg.node(e.src);
    const auto& y = qg.node(e.dst);
    if (x.kind == NodeKind::Mention && y.kind == NodeKind::Mention && x.kb_id && x.kb_id == y.kb_id) {
      EXPECT_EQ(e.weight, 1.0);
    }
  }
}

TEST(Alignment, AntitoneAcrossTheGridOnFixture) {
  auto terms = director_terms();
  std::set<std::pair<std::uint32_t, std::uint32_t>> prev;
  std::size_t prev_lcc_edges = SIZE_MAX;
  bool first = true;
  for (double th : Thresholds::kPredicateGrid) {
    auto qg = films_quasi(terms, Thresholds{0.25, th});
    auto pairs = alignment_pairs(qg);
    if (!first) {
      EXPECT_TRUE(std::includes(prev.begin(), prev.end(), pairs.begin(), pairs.end())) << th;
    }
    auto [lcc, groups] = largest_connected_component(qg, select_cornerstones(qg, terms, Thresholds{0.25, th}));
    EXPECT_LE(lcc.edge_count(), prev_lcc_edges) << th;
    prev_lcc_edges = lcc.edge_count();
    prev = std::move(pairs);
    first = false;
  }
}

TEST(Alignment, AntitoneInBothThresholdsOnRandomCorpora) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    auto e = support::random_engine(rng, 4);
    auto terms = parse_question(support::random_question(rng), e.lex);
    std::set<std::pair<std::uint32_t, std::uint32_t>> prev;
    bool first = true;
    for (double th : Thresholds::kPredicateGrid) {
      auto pairs = alignment_pairs(build_quasi_graph(e.graph, terms, e.dict, e.emb, e.lex, Thresholds{th, th}));
      if (!first) {
        ASSERT_TRUE(std::includes(prev.begin(), prev.end(), pairs.begin(), pairs.end())) << "seed " << seed;
      }
      prev = std::move(pairs);
      first = false;
    }
  }
}

TEST(QuasiGraphProperties, WeightRangesOnRandomCorpora) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    auto e = support::random_engine(rng, 5);
    auto terms = parse_question(support::random_question(rng), e.lex);
    auto qg = build_quasi_graph(e.graph, terms, e.dict, e.emb, e.lex, Thresholds{});
    EXPECT_EQ(support::check_quasi_weights(qg), "") << "seed " << seed;
  }
}

// --- cornerstones and LCC --------------------------------------------------

TEST(Cornerstones, DirectorQuestionExample) {
  auto terms = director_terms();
  auto qg = films_quasi(terms);
  auto groups = select_cornerstones(qg, terms, Thresholds{});
  auto group = [&](const std::string& term) -> const CornerstoneGroup& {
    for (const auto& g : groups) {
      if (g.term == term) return g;
    }
    throw Error("no group " + term);
  };
  auto has = [&](const CornerstoneGroup& g, std::uint32_t n) {
    return std::any_of(g.members.begin(), g.members.end(), [&](auto& m) { return m.first == n; });
  };
  EXPECT_TRUE(has(group("Thora Birch"), by_vertex(qg, mention_id("Sam_Mendes.m8"))));
  auto played_in = by_vertex(qg, clause_id("Thora_Birch.c1"));
  auto plays = by_vertex(qg, clause_id("Thora_Birch.c2"));
  EXPECT_EQ(qg.node(played_in).label, "played in");
  EXPECT_TRUE(has(group("starred"), played_in));
  EXPECT_TRUE(has(group("starred"), plays));
  for (const auto& g : groups) {
    for (const auto& [n, s] : g.members) {
      EXPECT_GE(s, 0.25);
      EXPECT_EQ(qg.node(n).kind == NodeKind::Predicate, g.relation);
    }
  }
}

TEST(Cornerstones, NoMatchOrSingleGroupThrows) {
  QuestionTerms none{{"Zork"}, {"xyzzy"}, AnswerType::OTHER};
  auto qg = films_quasi(none);
  EXPECT_THROW(select_cornerstones(qg, none, Thresholds{}), InsufficientGroupsError);
  QuestionTerms one{{"Skyfall"}, {"xyzzy"}, AnswerType::OTHER};
  auto q1 = films_quasi(one);
  try {
    select_cornerstones(q1, one, Thresholds{});
    FAIL() << "expected InsufficientGroupsError";
  } catch (const InsufficientGroupsError& e) {
    EXPECT_EQ(e.groups(), 1u);
  }
}

TEST(Cornerstones, OneTermTwoNodes) {
  QuestionTerms terms{{"Skyfall"}, {"directed"}, AnswerType::OTHER};
  auto qg = films_quasi(terms);
  auto groups = select_cornerstones(qg, terms, Thresholds{});
  ASSERT_EQ(groups[0].term, "Skyfall");
  EXPECT_EQ(groups[0].members.size(), 2u);  // the mention and its entity
}

namespace {

// Path components of the given sizes; node ids are assigned component by component.
QuasiGraph paths(const std::vector<std::size_t>& sizes, const std::vector<double>& weights) {
  QuasiGraph qg;
  qg.term_scores().push_back({"t0", false, {}});
  qg.term_scores().push_back({"t1", false, {}});
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    for (std::size_t i = 0; i < sizes[c]; ++i) {
      auto id = qg.add_node({NodeKind::Mention, "n", {}, 0.0, std::nullopt, NerType::NONE});
      if (i > 0) qg.connect(id - 1, id, QEdgeKind::Alignment, weights[c]);
    }
  }
  return qg;
}

CornerstoneGroups two_groups(std::uint32_t a, std::uint32_t b) { return {{"t0", false, {{a, 1.0}}}, {"t1", false, {{b, 1.0}}}}; }

}  // namespace

TEST(LargestComponent, ConnectedGraphIsIdentity) {
  auto qg = paths({4}, {0.5});
  auto [lcc, groups] = largest_connected_component(qg, two_groups(0, 3));
  EXPECT_EQ(lcc.node_count(), 4u);
  EXPECT_EQ(lcc.edge_count(), 3u);
  EXPECT_EQ(groups[1].members[0].first, 3u);
}

TEST(LargestComponent, PicksBiggerThenHeavierThenSmallestId) {
  {
    auto qg = paths({3, 5}, {0.9, 0.1});
    auto [lcc, groups] = largest_connected_component(qg, two_groups(3, 7));
    EXPECT_EQ(lcc.node_count(), 5u);
    EXPECT_EQ(groups[0].members[0].first, 0u);  // remapped
    EXPECT_EQ(groups[1].members[0].first, 4u);
  }
  {
    auto qg = paths({3, 3}, {0.2, 0.4});
    auto [lcc, groups] = largest_connected_component(qg, two_groups(3, 5));
    EXPECT_DOUBLE_EQ(lcc.edges()[0].weight, 0.4);
  }
  {
    auto qg = paths({3, 3}, {0.4, 0.4});
    auto [lcc, groups] = largest_connected_component(qg, two_groups(0, 2));
    EXPECT_EQ(lcc.node_count(), 3u);
    EXPECT_EQ(groups.size(), 2u);
  }
}

TEST(LargestComponent, CornerstoneInDiscardedComponentIsDropped) {
  auto qg = paths({5, 3}, {0.5, 0.5});
  EXPECT_THROW(largest_connected_component(qg, two_groups(0, 6)), InsufficientGroupsError);
  CornerstoneGroups g = {{"t0", false, {{0, 1.0}, {6, 1.0}}}, {"t1", false, {{4, 1.0}}}};
  auto [lcc, kept] = largest_connected_component(qg, g);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].members.size(), 1u);
}

TEST(LargestComponent, TermScoresFollowTheRemap) {
  auto qg = paths({2, 3}, {0.5, 0.5});
  for (auto& ts : qg.term_scores()) ts.by_node = {0, 0, 0.1, 0.2, 0.3};
  auto [lcc, _] = largest_connected_component(qg, two_groups(2, 4));
  EXPECT_EQ(lcc.term_scores()[0].by_node, (std::vector<double>{0.1, 0.2, 0.3}));
}

TEST(LargestComponent, ConnectivityProperty) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    bool skipped = true;
    EXPECT_EQ(support::check_lcc(seed, skipped), "") << "seed " << seed;
    if (!skipped) ++checked;
  }
  EXPECT_GE(checked, 100u);
}
