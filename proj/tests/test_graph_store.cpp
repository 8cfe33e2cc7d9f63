#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace hkqa;
using nlohmann::json;

namespace {

json tiny_record(const std::string& id) {
  return json::parse(R"({"doc_id": ")" + id + R"(", "title": "T", "sentences": [
    {"sent_id": ")" + id + R"(.s0", "text": "Ann met Bob .", "tokens": ["Ann", "met", "Bob", "."],
     "clauses": [{"clause_id": ")" + id + R"(.c0", "subject": [0, 1], "predicate": [1, 2], "objects": [[2, 3]]}],
     "mentions": [
       {"mention_id": ")" + id + R"(.m0", "span": [0, 1], "surface": "Ann", "entity_id": "Ann", "ner_type": "PER"},
       {"mention_id": ")" + id + R"(.m1", "span": [2, 3], "surface": "Bob"}]},
    {"sent_id": ")" + id + R"(.s1", "text": "She left.", "tokens": ["She", "left."],
     "mentions": [{"mention_id": ")" + id + R"(.m2", "span": [0, 1], "surface": "She", "entity_id": "Ann"}]}],
    "coref_chains": [[")" + id + R"(.m0", ")" + id + R"(.m2"]]})");
}

IngestResult ingest(std::vector<json> recs) {
  return ingest_corpus(std::span<const json>(recs), MentionEntityDictionary{});
}

std::string reject_path(json rec) {
  auto r = ingest({std::move(rec)});
  if (r.rejected.size() != 1) return "<accepted>";
  return r.rejected.front().path;
}

}  // namespace

TEST(Ingest, TinyRecordCountsAndEdges) {
  auto r = ingest({tiny_record("a")});
  ASSERT_TRUE(r.rejected.empty());
  const auto& g = r.graph;
  EXPECT_EQ(g.stats(), (CorpusStats{1, 2, 1, 3, 1}));
  EXPECT_EQ(support::check_edge_kinds(g), "");
  auto count = [&](EdgeKind k) { return std::count_if(g.edges().begin(), g.edges().end(), [&](auto& e) { return e.kind == k; }); };
  EXPECT_EQ(count(EdgeKind::Structural), 3);     // doc->s0, doc->s1, s0->c0
  EXPECT_EQ(count(EdgeKind::MentionEntity), 2);  // m0, m2 -> Ann
  EXPECT_EQ(count(EdgeKind::Coref), 2);          // both directions
  EXPECT_EQ(g.entity(entity_id("Ann")).label, "Ann");
  EXPECT_EQ(g.mention(mention_id("a.m1")).ner_type, NerType::NONE);
  auto im0 = *g.index_of(mention_id("a.m0"));
  auto im2 = *g.index_of(mention_id("a.m2"));
  EXPECT_EQ(g.coref_neighbors(im0), std::vector<std::uint32_t>{im2});
  EXPECT_EQ(g.coref_neighbors(im2), std::vector<std::uint32_t>{im0});
}

TEST(Ingest, ClausesAndMentionsAreOptional) {
  auto rec = tiny_record("a");
  rec["sentences"][0].erase("clauses");
  rec["sentences"][0].erase("mentions");
  rec["sentences"][1].erase("mentions");
  rec.erase("coref_chains");
  auto r = ingest({rec});
  ASSERT_TRUE(r.rejected.empty());
  EXPECT_EQ(r.graph.stats(), (CorpusStats{1, 2, 0, 0, 0}));
}

TEST(Ingest, SchemaViolationsAreRejectedWithPath) {
  auto base = tiny_record("a");
  {
    auto r = base;
    r.erase("title");
    EXPECT_EQ(reject_path(r), "title");
  }
  {
    auto r = base;
    r["sentences"][0]["tokens"][1] = "greeted";
    EXPECT_EQ(reject_path(r), "sentences[0].tokens");
  }
  {
    auto r = base;
    r["sentences"][0]["mentions"][0]["span"] = {0, 9};
    EXPECT_EQ(reject_path(r), "sentences[0].mentions[0].span");
  }
  {
    auto r = base;
    r["sentences"][0]["mentions"][0]["span"] = {1, 1};
    EXPECT_EQ(reject_path(r), "sentences[0].mentions[0].span");
  }
  for (const json& bad : {json{-1, 1}, json{0.0, 1}, json{0, 4294967297ull}, json{0}}) {
    auto r = base;
    r["sentences"][0]["mentions"][0]["span"] = bad;
    EXPECT_EQ(reject_path(r), "sentences[0].mentions[0].span") << bad;
  }
  {
    // signed and unsigned integers are both accepted
    auto r = base;
    r["sentences"][0]["mentions"][1]["span"] = json::array({json(std::int64_t{2}), json(std::uint64_t{3})});
    EXPECT_EQ(reject_path(r), "<accepted>");
  }
  {
    auto r = base;
    r["sentences"][0]["mentions"][1]["surface"] = "Robert";
    EXPECT_EQ(reject_path(r), "sentences[0].mentions[1].surface");
  }
  {
    auto r = base;
    r["sentences"][0]["mentions"][1]["ner_type"] = "PERSON";
    EXPECT_EQ(reject_path(r), "sentences[0].mentions[1].ner_type");
  }
  {
    auto r = base;
    r["coref_chains"][0].push_back("a.m9");
    EXPECT_EQ(reject_path(r), "coref_chains[0][2]");
  }
  {
    auto r = base;
    r["sentences"][1]["sent_id"] = "a.s0";
    EXPECT_NE(reject_path(r), "<accepted>");
  }
  {
    auto r = base;
    r["sentences"][0]["clauses"][0]["predicate"] = {3, 7};
    EXPECT_EQ(reject_path(r), "sentences[0].clauses[0].predicate");
  }
}

TEST(Ingest, RejectionDoesNotAbortBatch) {
  auto bad = tiny_record("b");
  bad.erase("sentences");
  auto r = ingest({tiny_record("a"), bad, tiny_record("c")});
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].record_index, 1u);
  EXPECT_EQ(r.rejected[0].doc_id, "b");
  EXPECT_EQ(r.graph.stats().documents, 2u);
}

TEST(Ingest, DuplicateDocumentThrows) {
  EXPECT_THROW(ingest({tiny_record("a"), tiny_record("a")}), DuplicateDocumentError);
}

TEST(Ingest, IdCollisionAcrossDocumentsIsRejected) {
  auto other = tiny_record("b");
  other["sentences"][0]["mentions"][1]["mention_id"] = "a.m1";
  auto r = ingest({tiny_record("a"), other});
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].path, "mention_id");
}

TEST(Ingest, StreamReportsBadJsonLines) {
  std::stringstream in;
  in << tiny_record("a").dump() << "\n{oops\n\n" << tiny_record("b").dump() << "\n";
  auto r = ingest_corpus(in, MentionEntityDictionary{});
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].record_index, 1u);
  EXPECT_EQ(r.rejected[0].path, "$");
  EXPECT_EQ(r.graph.stats().documents, 2u);
}

TEST(Ingest, EntityLabelPrefersDictionaryBackedSurface) {
  MentionEntityDictionary d;
  d.add("Ann Lee", {"Ann"});
  auto rec = tiny_record("a");
  rec["sentences"][0]["mentions"][0]["surface"] = "Ann";
  std::vector<json> recs{rec};
  auto g = ingest_corpus(std::span<const json>(recs), d).graph;
  // no dictionary-backed surface: most frequent, then longer, then smaller
  EXPECT_EQ(g.entity(entity_id("Ann")).label, "Ann");

  std::map<std::string, std::size_t> surfaces{{"She", 3}, {"Ann Lee", 1}, {"Ann", 1}};
  EXPECT_EQ(detail::choose_entity_label("Ann", surfaces, d), "Ann Lee");
  EXPECT_EQ(detail::choose_entity_label("Ann", surfaces, MentionEntityDictionary{}), "She");
}

TEST(Ingest, FilmsCorpusStats) {
  const auto& g = support::films_engine().graph;
  EXPECT_EQ(g.stats(), (CorpusStats{3, 11, 13, 28, 10}));
  EXPECT_EQ(support::check_edge_kinds(g), "");
  EXPECT_EQ(g.entity(entity_id("Sam_Mendes")).label, "Sam Mendes");
  EXPECT_EQ(g.entity(entity_id("Thora_Birch")).label, "Thora Birch");
}

TEST(Ingest, OrderIndependenceProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_EQ(support::check_order_independence(seed), "") << "seed " << seed;
  }
}

TEST(Subgraph, KeepsInternalStructureOnly) {
  auto g = ingest({tiny_record("a"), tiny_record("b")}).graph;
  auto sub = document_subgraph(g, {"b"});
  EXPECT_EQ(sub.stats(), (CorpusStats{1, 2, 1, 3, 1}));
  EXPECT_FALSE(sub.contains(mention_id("a.m0")));
  EXPECT_EQ(support::check_edge_kinds(sub), "");
  EXPECT_THROW(document_subgraph(g, {"zzz"}), Error);
}

TEST(GraphImage, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_EQ(support::check_roundtrip(seed), "") << "seed " << seed;
  }
}

TEST(GraphImage, RejectsCorruptInput) {
  auto g = ingest({tiny_record("a")}).graph;
  std::stringstream buf;
  save_graph(g, buf);
  auto bytes = buf.str();

  std::stringstream empty;
  EXPECT_THROW(load_graph(empty), FormatError);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  std::stringstream m(bad_magic);
  EXPECT_THROW(load_graph(m), FormatError);

  auto bad_version = bytes;
  bad_version[8] = 9;
  std::stringstream v(bad_version);
  EXPECT_THROW(load_graph(v), VersionError);

  std::stringstream t(bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(load_graph(t), FormatError);

  std::stringstream trailing(bytes + "x");
  EXPECT_THROW(load_graph(trailing), FormatError);
}
