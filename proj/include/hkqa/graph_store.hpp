#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hkqa/similarity.hpp"
#include "hkqa/text.hpp"

namespace hkqa {

enum class VertexKind : std::uint8_t { Document = 0, Sentence = 1, Clause = 2, Mention = 3, Entity = 4 };

inline std::string_view kind_tag(VertexKind k) {
  switch (k) {
    case VertexKind::Document: return "doc";
    case VertexKind::Sentence: return "sent";
    case VertexKind::Clause: return "clause";
    case VertexKind::Mention: return "mention";
    case VertexKind::Entity: return "entity";
  }
  return "?";
}

struct VertexId {
  VertexKind kind = VertexKind::Document;
  std::string local_id;

  std::string str() const { return std::string(kind_tag(kind)) + ":" + local_id; }
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline VertexId doc_id(std::string id) { return {VertexKind::Document, std::move(id)}; }
inline VertexId sent_id(std::string id) { return {VertexKind::Sentence, std::move(id)}; }
inline VertexId clause_id(std::string id) { return {VertexKind::Clause, std::move(id)}; }
inline VertexId mention_id(std::string id) { return {VertexKind::Mention, std::move(id)}; }
inline VertexId entity_id(std::string id) { return {VertexKind::Entity, std::move(id)}; }

/// Half-open token range [begin, end).
struct TokenSpan {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  std::uint32_t size() const noexcept { return end - begin; }
  bool overlaps(const TokenSpan& o) const noexcept { return begin < o.end && o.begin < end; }
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

/// Number of tokens strictly between two spans; 0 when they touch or overlap.
inline std::uint32_t tokens_between(const TokenSpan& a, const TokenSpan& b) noexcept {
  if (a.end <= b.begin) return b.begin - a.end;
  if (b.end <= a.begin) return a.begin - b.end;
  return 0;
}

enum class NerType : std::uint8_t { PER = 0, ORG = 1, LOC = 2, MISC = 3, NONE = 4 };

inline std::string_view ner_name(NerType t) {
  static constexpr std::string_view names[] = {"PER", "ORG", "LOC", "MISC", "NONE"};
  return names[static_cast<int>(t)];
}

inline std::optional<NerType> parse_ner(std::string_view s) {
  for (int i = 0; i <= 4; ++i) {
    if (ner_name(static_cast<NerType>(i)) == s) return static_cast<NerType>(i);
  }
  return std::nullopt;
}

struct DocumentVertex {
  VertexId id;
  std::string title;
  std::optional<std::string> url;
  std::optional<std::string> timestamp;
  std::vector<VertexId> sentence_ids;
  friend bool operator==(const DocumentVertex&, const DocumentVertex&) = default;
};

struct SentenceVertex {
  VertexId id;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<VertexId> clause_ids;
  std::vector<VertexId> mention_ids;
  VertexId parent_doc;
  friend bool operator==(const SentenceVertex&, const SentenceVertex&) = default;
};

struct ClauseVertex {
  VertexId id;
  TokenSpan subject;
  TokenSpan predicate;
  std::vector<TokenSpan> objects;
  std::vector<TokenSpan> adverbials;
  VertexId parent_sent;
  friend bool operator==(const ClauseVertex&, const ClauseVertex&) = default;
};

struct MentionVertex {
  VertexId id;
  std::string surface;
  TokenSpan span;
  VertexId sentence;
  NerType ner_type = NerType::NONE;
  std::optional<std::string> pos;
  std::optional<std::string> lemma;
  std::optional<VertexId> entity_id;
  friend bool operator==(const MentionVertex&, const MentionVertex&) = default;
};

struct EntityVertex {
  VertexId id;
  std::string kb_id;
  std::string label;
  friend bool operator==(const EntityVertex&, const EntityVertex&) = default;
};

enum class EdgeKind : std::uint8_t { Structural = 0, MentionEntity = 1, Coref = 2 };

struct GraphEdge {
  VertexId src;
  VertexId dst;
  EdgeKind kind = EdgeKind::Structural;
  friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

/// Vertex counts per kind.
struct CorpusStats {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t clauses = 0;
  std::size_t mentions = 0;
  std::size_t entities = 0;
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

/// Immutable five-kind property graph. Each vertex store is sorted by local id,
/// so two graphs built from the same records in any order are identical.
class PropertyGraph {
 public:
  struct Stores {
    std::vector<DocumentVertex> documents;
    std::vector<SentenceVertex> sentences;
    std::vector<ClauseVertex> clauses;
    std::vector<MentionVertex> mentions;
    std::vector<EntityVertex> entities;
    // Unordered mention pairs (first < second) from coreference chains.
    std::set<std::pair<std::string, std::string>> coref_pairs;
  };

  PropertyGraph() = default;

  /// Sorts, indexes and checks referential integrity. Throws Error on a dangling reference.
  static PropertyGraph assemble(Stores s);

  const std::vector<DocumentVertex>& documents() const noexcept { return s_.documents; }
  const std::vector<SentenceVertex>& sentences() const noexcept { return s_.sentences; }
  const std::vector<ClauseVertex>& clauses() const noexcept { return s_.clauses; }
  const std::vector<MentionVertex>& mentions() const noexcept { return s_.mentions; }
  const std::vector<EntityVertex>& entities() const noexcept { return s_.entities; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  const Stores& stores() const noexcept { return s_; }

  std::optional<std::uint32_t> index_of(const VertexId& id) const {
    const auto& m = index_[static_cast<int>(id.kind)];
    auto it = m.find(id.local_id);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const VertexId& id) const { return index_of(id).has_value(); }

  const DocumentVertex& document(const VertexId& id) const { return s_.documents.at(checked(id, VertexKind::Document)); }
  const SentenceVertex& sentence(const VertexId& id) const { return s_.sentences.at(checked(id, VertexKind::Sentence)); }
  const ClauseVertex& clause(const VertexId& id) const { return s_.clauses.at(checked(id, VertexKind::Clause)); }
  const MentionVertex& mention(const VertexId& id) const { return s_.mentions.at(checked(id, VertexKind::Mention)); }
  const EntityVertex& entity(const VertexId& id) const { return s_.entities.at(checked(id, VertexKind::Entity)); }

  /// Mentions sharing a coreference chain with mention index i.
  const std::vector<std::uint32_t>& coref_neighbors(std::uint32_t mention_index) const {
    return coref_adj_.at(mention_index);
  }

  CorpusStats stats() const noexcept {
    return {s_.documents.size(), s_.sentences.size(), s_.clauses.size(), s_.mentions.size(), s_.entities.size()};
  }

  bool empty() const noexcept { return s_.documents.empty() && s_.entities.empty(); }

  friend bool operator==(const PropertyGraph& a, const PropertyGraph& b) {
    return a.s_.documents == b.s_.documents && a.s_.sentences == b.s_.sentences && a.s_.clauses == b.s_.clauses &&
           a.s_.mentions == b.s_.mentions && a.s_.entities == b.s_.entities && a.edges_ == b.edges_;
  }

 private:
  std::uint32_t checked(const VertexId& id, VertexKind expect) const {
    if (id.kind != expect) throw Error("vertex " + id.str() + " is not a " + std::string(kind_tag(expect)));
    auto i = index_of(id);
    if (!i) throw Error("unknown vertex " + id.str());
    return *i;
  }

  Stores s_;
  std::unordered_map<std::string, std::uint32_t> index_[5];
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<std::uint32_t>> coref_adj_;
};

namespace detail {

template <class V>
void sort_and_index(std::vector<V>& store, std::unordered_map<std::string, std::uint32_t>& index, VertexKind kind) {
  std::sort(store.begin(), store.end(), [](const V& a, const V& b) { return a.id.local_id < b.id.local_id; });
  index.clear();
  index.reserve(store.size());
  for (std::uint32_t i = 0; i < store.size(); ++i) {
    if (store[i].id.kind != kind) throw Error("vertex " + store[i].id.str() + " stored under wrong kind");
    if (!index.emplace(store[i].id.local_id, i).second) throw Error("duplicate vertex id " + store[i].id.str());
  }
}

inline bool span_within(const TokenSpan& s, std::size_t ntokens) { return s.begin < s.end && s.end <= ntokens; }

}  // namespace detail

inline PropertyGraph PropertyGraph::assemble(Stores s) {
  PropertyGraph g;
  g.s_ = std::move(s);
  auto& st = g.s_;
  detail::sort_and_index(st.documents, g.index_[0], VertexKind::Document);
  detail::sort_and_index(st.sentences, g.index_[1], VertexKind::Sentence);
  detail::sort_and_index(st.clauses, g.index_[2], VertexKind::Clause);
  detail::sort_and_index(st.mentions, g.index_[3], VertexKind::Mention);
  detail::sort_and_index(st.entities, g.index_[4], VertexKind::Entity);

  auto require = [&](const VertexId& id, VertexKind kind, const VertexId& from) {
    if (id.kind != kind || !g.index_of(id)) throw Error("dangling reference " + id.str() + " from " + from.str());
  };

  std::set<std::string> kb_ids;
  for (const auto& e : st.entities) {
    if (e.kb_id != e.id.local_id) throw Error("entity " + e.id.str() + " has mismatching kb_id");
    kb_ids.insert(e.kb_id);
  }

  auto& edges = g.edges_;
  for (const auto& d : st.documents) {
    for (const auto& sid : d.sentence_ids) {
      require(sid, VertexKind::Sentence, d.id);
      if (g.sentence(sid).parent_doc != d.id) throw Error("sentence " + sid.str() + " claims another parent");
      edges.push_back({d.id, sid, EdgeKind::Structural});
    }
  }
  for (const auto& sv : st.sentences) {
    require(sv.parent_doc, VertexKind::Document, sv.id);
    for (const auto& cid : sv.clause_ids) {
      require(cid, VertexKind::Clause, sv.id);
      edges.push_back({sv.id, cid, EdgeKind::Structural});
    }
    for (const auto& mid : sv.mention_ids) require(mid, VertexKind::Mention, sv.id);
  }
  for (const auto& c : st.clauses) {
    require(c.parent_sent, VertexKind::Sentence, c.id);
    std::size_t n = g.sentence(c.parent_sent).tokens.size();
    bool ok = detail::span_within(c.subject, n) && detail::span_within(c.predicate, n);
    for (const auto& o : c.objects) ok = ok && detail::span_within(o, n);
    for (const auto& a : c.adverbials) ok = ok && detail::span_within(a, n);
    if (!ok) throw Error("clause " + c.id.str() + " has a span outside its sentence");
  }
  for (const auto& m : st.mentions) {
    require(m.sentence, VertexKind::Sentence, m.id);
    if (!detail::span_within(m.span, g.sentence(m.sentence).tokens.size())) {
      throw Error("mention " + m.id.str() + " span outside its sentence");
    }
    if (m.entity_id) {
      require(*m.entity_id, VertexKind::Entity, m.id);
      edges.push_back({m.id, *m.entity_id, EdgeKind::MentionEntity});
    }
  }

  g.coref_adj_.assign(st.mentions.size(), {});
  for (const auto& [a, b] : st.coref_pairs) {
    VertexId ma = mention_id(a), mb = mention_id(b);
    require(ma, VertexKind::Mention, mb);
    require(mb, VertexKind::Mention, ma);
    if (!(a < b)) throw Error("coreference pair not canonical: " + a + ", " + b);
    edges.push_back({ma, mb, EdgeKind::Coref});
    edges.push_back({mb, ma, EdgeKind::Coref});
    auto ia = *g.index_of(ma), ib = *g.index_of(mb);
    g.coref_adj_[ia].push_back(ib);
    g.coref_adj_[ib].push_back(ia);
  }
  for (auto& adj : g.coref_adj_) std::sort(adj.begin(), adj.end());
  std::sort(edges.begin(), edges.end());
  return g;
}

// ---------------------------------------------------------------------------
// Annotation ingestion

/// A record that failed validation, with the JSON path of the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string doc_id, std::string path, const std::string& message)
      : Error((doc_id.empty() ? std::string("<unknown>") : doc_id) + ": " + path + ": " + message),
        doc_id_(std::move(doc_id)),
        path_(std::move(path)),
        message_(message) {}

  const std::string& doc_id() const noexcept { return doc_id_; }
  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string doc_id_;
  std::string path_;
  std::string message_;
};

class DuplicateDocumentError : public Error {
 public:
  explicit DuplicateDocumentError(const std::string& id) : Error("duplicate doc_id '" + id + "'"), id_(id) {}
  const std::string& doc_id() const noexcept { return id_; }

 private:
  std::string id_;
};

struct RejectedRecord {
  std::size_t record_index = 0;  // 0-based position in the input stream
  std::string doc_id;
  std::string path;
  std::string message;
};

struct IngestResult {
  PropertyGraph graph;
  std::vector<RejectedRecord> rejected;
};

namespace detail {

struct ParsedRecord {
  DocumentVertex doc;
  std::vector<SentenceVertex> sentences;
  std::vector<ClauseVertex> clauses;
  std::vector<MentionVertex> mentions;
  std::vector<std::vector<std::string>> coref_chains;
};

class RecordParser {
 public:
  explicit RecordParser(const nlohmann::json& rec) : rec_(rec) {}

  ParsedRecord parse() {
    if (!rec_.is_object()) fail("$", "record is not an object");
    if (rec_.contains("doc_id") && rec_["doc_id"].is_string()) doc_ = rec_["doc_id"].get<std::string>();
    ParsedRecord out;
    out.doc.id = doc_id(required_id(rec_, "doc_id", "doc_id"));
    out.doc.title = required_string(rec_, "title", "title");
    out.doc.url = optional_string(rec_, "url", "url");
    out.doc.timestamp = optional_string(rec_, "timestamp", "timestamp");

    const auto& sentences = required_array(rec_, "sentences", "sentences");
    std::set<std::string> mention_ids_seen;
    for (std::size_t si = 0; si < sentences.size(); ++si) {
      std::string sp = "sentences[" + std::to_string(si) + "]";
      const auto& sj = sentences[si];
      if (!sj.is_object()) fail(sp, "sentence is not an object");
      SentenceVertex sv;
      sv.id = sent_id(required_id(sj, "sent_id", sp + ".sent_id"));
      sv.parent_doc = out.doc.id;
      sv.text = required_string(sj, "text", sp + ".text");
      const auto& toks = required_array(sj, "tokens", sp + ".tokens");
      for (std::size_t ti = 0; ti < toks.size(); ++ti) {
        if (!toks[ti].is_string()) fail(sp + ".tokens[" + std::to_string(ti) + "]", "token is not a string");
        auto t = toks[ti].get<std::string>();
        if (t.empty() || text::split_ws(t).size() != 1) {
          fail(sp + ".tokens[" + std::to_string(ti) + "]", "token must be non-empty without whitespace");
        }
        sv.tokens.push_back(std::move(t));
      }
      if (strip_ws(sv.text) != text::join(sv.tokens, "")) fail(sp + ".tokens", "tokens do not reconstruct text");

      if (sj.contains("clauses")) {
        const auto& cl = array_at(sj, "clauses", sp + ".clauses");
        for (std::size_t ci = 0; ci < cl.size(); ++ci) {
          std::string cp = sp + ".clauses[" + std::to_string(ci) + "]";
          const auto& cj = cl[ci];
          if (!cj.is_object()) fail(cp, "clause is not an object");
          ClauseVertex c;
          c.id = clause_id(required_id(cj, "clause_id", cp + ".clause_id"));
          c.parent_sent = sv.id;
          c.subject = span(cj, "subject", cp + ".subject", sv.tokens.size(), true).value();
          c.predicate = span(cj, "predicate", cp + ".predicate", sv.tokens.size(), true).value();
          c.objects = spans(cj, "objects", cp + ".objects", sv.tokens.size());
          c.adverbials = spans(cj, "adverbials", cp + ".adverbials", sv.tokens.size());
          sv.clause_ids.push_back(c.id);
          out.clauses.push_back(std::move(c));
        }
      }
      if (sj.contains("mentions")) {
        const auto& ml = array_at(sj, "mentions", sp + ".mentions");
        for (std::size_t mi = 0; mi < ml.size(); ++mi) {
          std::string mp = sp + ".mentions[" + std::to_string(mi) + "]";
          const auto& mj = ml[mi];
          if (!mj.is_object()) fail(mp, "mention is not an object");
          MentionVertex m;
          m.id = mention_id(required_id(mj, "mention_id", mp + ".mention_id"));
          m.sentence = sv.id;
          m.span = span(mj, "span", mp + ".span", sv.tokens.size(), true).value();
          m.surface = required_string(mj, "surface", mp + ".surface");
          if (text::normalize(m.surface) != text::normalize(text::join(sv.tokens, m.span.begin, m.span.end))) {
            fail(mp + ".surface", "surface does not match span tokens");
          }
          if (auto ner = optional_string(mj, "ner_type", mp + ".ner_type")) {
            auto t = parse_ner(*ner);
            if (!t) fail(mp + ".ner_type", "unknown ner_type '" + *ner + "'");
            m.ner_type = *t;
          }
          m.pos = optional_string(mj, "pos", mp + ".pos");
          m.lemma = optional_string(mj, "lemma", mp + ".lemma");
          if (auto e = optional_string(mj, "entity_id", mp + ".entity_id")) {
            if (text::split_ws(*e).size() != 1 || *e != text::split_ws(*e).front()) {
              fail(mp + ".entity_id", "entity_id must be a non-empty identifier");
            }
            m.entity_id = entity_id(*e);
          }
          mention_ids_seen.insert(m.id.local_id);
          sv.mention_ids.push_back(m.id);
          out.mentions.push_back(std::move(m));
        }
      }
      out.doc.sentence_ids.push_back(sv.id);
      out.sentences.push_back(std::move(sv));
    }

    if (rec_.contains("coref_chains")) {
      const auto& chains = array_at(rec_, "coref_chains", "coref_chains");
      for (std::size_t ci = 0; ci < chains.size(); ++ci) {
        std::string cp = "coref_chains[" + std::to_string(ci) + "]";
        if (!chains[ci].is_array()) fail(cp, "chain is not an array");
        std::vector<std::string> chain;
        for (std::size_t k = 0; k < chains[ci].size(); ++k) {
          std::string kp = cp + "[" + std::to_string(k) + "]";
          if (!chains[ci][k].is_string()) fail(kp, "chain member is not a string");
          auto id = chains[ci][k].get<std::string>();
          if (!mention_ids_seen.count(id)) fail(kp, "unknown mention '" + id + "'");
          chain.push_back(std::move(id));
        }
        out.coref_chains.push_back(std::move(chain));
      }
    }
    check_unique_ids(out);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& path, const std::string& msg) const { throw SchemaError(doc_, path, msg); }

  static std::string strip_ws(std::string_view s) {
    std::string out;
    for (char c : s) {
      if (!text::is_space(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
  }

  std::string required_string(const nlohmann::json& j, const char* key, const std::string& path) const {
    if (!j.contains(key)) fail(path, "missing field");
    if (!j[key].is_string()) fail(path, "expected a string");
    return j[key].get<std::string>();
  }

  std::string required_id(const nlohmann::json& j, const char* key, const std::string& path) const {
    auto s = required_string(j, key, path);
    if (s.empty()) fail(path, "identifier is empty");
    return s;
  }

  std::optional<std::string> optional_string(const nlohmann::json& j, const char* key, const std::string& path) const {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_string()) fail(path, "expected a string");
    return j[key].get<std::string>();
  }

  const nlohmann::json& array_at(const nlohmann::json& j, const char* key, const std::string& path) const {
    if (!j[key].is_array()) fail(path, "expected an array");
    return j[key];
  }

  const nlohmann::json& required_array(const nlohmann::json& j, const char* key, const std::string& path) const {
    if (!j.contains(key)) fail(path, "missing field");
    return array_at(j, key, path);
  }

  std::optional<TokenSpan> span(const nlohmann::json& j, const char* key, const std::string& path, std::size_t ntok,
                                bool required) const {
    if (!j.contains(key)) {
      if (required) fail(path, "missing field");
      return std::nullopt;
    }
    return span_value(j[key], path, ntok);
  }

  TokenSpan span_value(const nlohmann::json& v, const std::string& path, std::size_t ntok) const {
    auto natural = [](const nlohmann::json& x) {
      return x.is_number_unsigned() || (x.is_number_integer() && x.get<std::int64_t>() >= 0);
    };
    if (!v.is_array() || v.size() != 2 || !natural(v[0]) || !natural(v[1])) {
      fail(path, "span must be [start, end) of two non-negative integers");
    }
    auto begin = v[0].get<std::uint64_t>(), end = v[1].get<std::uint64_t>();
    if (begin >= end) fail(path, "span start must be < end");
    if (end > ntok) fail(path, "span exceeds sentence length " + std::to_string(ntok));
    return {static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(end)};
  }

  std::vector<TokenSpan> spans(const nlohmann::json& j, const char* key, const std::string& path,
                               std::size_t ntok) const {
    std::vector<TokenSpan> out;
    if (!j.contains(key)) return out;
    const auto& arr = array_at(j, key, path);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(span_value(arr[i], path + "[" + std::to_string(i) + "]", ntok));
    return out;
  }

  void check_unique_ids(const ParsedRecord& r) const {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < r.sentences.size(); ++i) {
      if (!seen.insert(r.sentences[i].id.local_id).second) {
        fail("sentences[" + std::to_string(i) + "].sent_id", "duplicate sent_id");
      }
    }
    seen.clear();
    for (const auto& c : r.clauses) {
      if (!seen.insert(c.id.local_id).second) fail("clause_id", "duplicate clause_id '" + c.id.local_id + "'");
    }
    seen.clear();
    for (const auto& m : r.mentions) {
      if (!seen.insert(m.id.local_id).second) fail("mention_id", "duplicate mention_id '" + m.id.local_id + "'");
    }
  }

  const nlohmann::json& rec_;
  std::string doc_;
};

// Preferred label: the most frequent linked surface, restricted to surfaces the
// dictionary maps to this entity when any exist. Ties: longer, then smaller.
inline std::string choose_entity_label(const std::string& kb_id, const std::map<std::string, std::size_t>& surfaces,
                                       const MentionEntityDictionary& dict) {
  auto backed = [&](const std::string& s) {
    const EntitySet* ids = dict.lookup(s);
    return ids && ids->count(kb_id) > 0;
  };
  bool any_backed = std::any_of(surfaces.begin(), surfaces.end(), [&](const auto& p) { return backed(p.first); });
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [surface, count] : surfaces) {
    if (any_backed && !backed(surface)) continue;
    bool better = !best || count > best_count ||
                  (count == best_count && (surface.size() > best->size() ||
                                           (surface.size() == best->size() && surface < *best)));
    if (better) {
      best = &surface;
      best_count = count;
    }
  }
  return best ? *best : kb_id;
}

}  // namespace detail

/// Builds the property graph from parsed annotation records. Invalid records are
/// rejected and reported; a repeated doc_id throws DuplicateDocumentError.
inline IngestResult ingest_corpus(std::span<const nlohmann::json> records, const MentionEntityDictionary& dict) {
  IngestResult result;
  PropertyGraph::Stores st;
  std::set<std::string> docs, sents, clauses, mentions;
  std::map<std::string, std::map<std::string, std::size_t>> entity_surfaces;

  for (std::size_t ri = 0; ri < records.size(); ++ri) {
    detail::ParsedRecord rec;
    try {
      rec = detail::RecordParser(records[ri]).parse();
    } catch (const SchemaError& e) {
      result.rejected.push_back({ri, e.doc_id(), e.path(), e.message()});
      continue;
    }
    const auto& did = rec.doc.id.local_id;
    if (docs.count(did)) throw DuplicateDocumentError(did);

    auto reject = [&](const std::string& path, const std::string& msg) {
      result.rejected.push_back({ri, did, path, msg});
    };
    bool clash = false;
    for (const auto& s : rec.sentences) {
      if (sents.count(s.id.local_id)) {
        reject("sent_id", "sent_id '" + s.id.local_id + "' already used by another document");
        clash = true;
        break;
      }
    }
    for (const auto& c : rec.clauses) {
      if (!clash && clauses.count(c.id.local_id)) {
        reject("clause_id", "clause_id '" + c.id.local_id + "' already used by another document");
        clash = true;
      }
    }
    for (const auto& m : rec.mentions) {
      if (!clash && mentions.count(m.id.local_id)) {
        reject("mention_id", "mention_id '" + m.id.local_id + "' already used by another document");
        clash = true;
      }
    }
    if (clash) continue;

    docs.insert(did);
    for (auto& s : rec.sentences) {
      sents.insert(s.id.local_id);
      st.sentences.push_back(std::move(s));
    }
    for (auto& c : rec.clauses) {
      clauses.insert(c.id.local_id);
      st.clauses.push_back(std::move(c));
    }
    for (auto& m : rec.mentions) {
      mentions.insert(m.id.local_id);
      if (m.entity_id) entity_surfaces[m.entity_id->local_id][m.surface]++;
      st.mentions.push_back(std::move(m));
    }
    for (const auto& chain : rec.coref_chains) {
      for (std::size_t i = 0; i < chain.size(); ++i) {
        for (std::size_t j = i + 1; j < chain.size(); ++j) {
          if (chain[i] == chain[j]) continue;
          st.coref_pairs.insert(std::minmax(chain[i], chain[j]));
        }
      }
    }
    st.documents.push_back(std::move(rec.doc));
  }

  for (const auto& [kb, surfaces] : entity_surfaces) {
    st.entities.push_back({entity_id(kb), kb, detail::choose_entity_label(kb, surfaces, dict)});
  }
  result.graph = PropertyGraph::assemble(std::move(st));
  return result;
}

/// Newline-delimited records. Unparsable JSON lines are rejected with path "$".
inline IngestResult ingest_corpus(std::istream& in, const MentionEntityDictionary& dict) {
  std::vector<nlohmann::json> records;
  std::vector<RejectedRecord> bad;
  std::string line;
  std::size_t index = 0;
  std::vector<std::size_t> positions;
  while (std::getline(in, line)) {
    if (text::split_ws(line).empty()) continue;
    try {
      records.push_back(nlohmann::json::parse(line));
      positions.push_back(index);
    } catch (const nlohmann::json::parse_error& e) {
      bad.push_back({index, "", "$", std::string("invalid JSON: ") + e.what()});
    }
    ++index;
  }
  auto result = ingest_corpus(std::span<const nlohmann::json>(records), dict);
  for (auto& r : result.rejected) r.record_index = positions[r.record_index];
  result.rejected.insert(result.rejected.end(), bad.begin(), bad.end());
  std::sort(result.rejected.begin(), result.rejected.end(),
            [](const RejectedRecord& a, const RejectedRecord& b) { return a.record_index < b.record_index; });
  return result;
}

inline IngestResult ingest_corpus_file(const std::filesystem::path& path, const MentionEntityDictionary& dict) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open corpus " + path.string());
  return ingest_corpus(in, dict);
}

inline CorpusStats corpus_stats(const PropertyGraph& g) { return g.stats(); }

/// The listed documents with all their sentences, clauses and mentions, the
/// entities those mentions link to, and coreference edges internal to the selection.
inline PropertyGraph document_subgraph(const PropertyGraph& g, std::span<const std::string> doc_ids) {
  PropertyGraph::Stores st;
  std::set<std::string> wanted(doc_ids.begin(), doc_ids.end());
  std::set<std::string> kept_mentions, kept_entities;
  for (const auto& id : wanted) {
    if (!g.contains(doc_id(id))) throw Error("unknown document '" + id + "'");
  }
  for (const auto& id : wanted) {
    const auto& d = g.document(doc_id(id));
    st.documents.push_back(d);
    for (const auto& sid : d.sentence_ids) {
      const auto& s = g.sentence(sid);
      st.sentences.push_back(s);
      for (const auto& cid : s.clause_ids) st.clauses.push_back(g.clause(cid));
      for (const auto& mid : s.mention_ids) {
        const auto& m = g.mention(mid);
        st.mentions.push_back(m);
        kept_mentions.insert(m.id.local_id);
        if (m.entity_id) kept_entities.insert(m.entity_id->local_id);
      }
    }
  }
  for (const auto& kb : kept_entities) st.entities.push_back(g.entity(entity_id(kb)));
  for (const auto& pair : g.stores().coref_pairs) {
    if (kept_mentions.count(pair.first) && kept_mentions.count(pair.second)) st.coref_pairs.insert(pair);
  }
  return PropertyGraph::assemble(std::move(st));
}

inline PropertyGraph document_subgraph(const PropertyGraph& g, std::initializer_list<std::string> doc_ids) {
  std::vector<std::string> ids(doc_ids);
  return document_subgraph(g, std::span<const std::string>(ids));
}

}  // namespace hkqa
