#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hkqa/graph_store.hpp"
#include "hkqa/question_parser.hpp"
#include "hkqa/similarity.hpp"
#include "hkqa/text.hpp"

namespace hkqa {

enum class NodeKind : std::uint8_t { Mention, Entity, Predicate, Type };
enum class QEdgeKind : std::uint8_t { Structural, TypeEdge, Alignment };

inline std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Mention: return "MENTION";
    case NodeKind::Entity: return "ENTITY";
    case NodeKind::Predicate: return "PREDICATE";
    case NodeKind::Type: return "TYPE";
  }
  return "?";
}

struct QuasiNode {
  NodeKind kind = NodeKind::Mention;
  std::string label;
  std::vector<VertexId> provenance;
  double weight = 0.0;
  std::optional<std::string> kb_id;  // entity nodes and linked mentions
  NerType ner_type = NerType::NONE;  // mention nodes
};

struct QuasiEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  QEdgeKind kind = QEdgeKind::Structural;
  double weight = 0.0;
};

/// Per question term, the similarity of every node to that term (0 when the
/// node kind is not comparable with the term).
struct TermScores {
  std::string term;
  bool relation = false;
  std::vector<double> by_node;
};

struct Thresholds {
  double base = 0.25;
  double predicate_alignment = 0.5;

  static constexpr std::array<double, 5> kPredicateGrid = {0.25, 0.375, 0.5, 0.6, 0.75};

  /// Throws Error when out of [0,1], or off the grid unless `free_threshold`.
  void validate(bool free_threshold = false) const {
    if (!(base >= 0.0 && base <= 1.0)) throw Error("base threshold must lie in [0,1]");
    if (!(predicate_alignment >= 0.0 && predicate_alignment <= 1.0)) {
      throw Error("predicate alignment threshold must lie in [0,1]");
    }
    if (!free_threshold && std::find(kPredicateGrid.begin(), kPredicateGrid.end(), predicate_alignment) ==
                               kPredicateGrid.end()) {
      throw Error("predicate alignment threshold must be one of 0.25, 0.375, 0.5, 0.6, 0.75");
    }
  }
};

/// Undirected, simple, weighted graph of mention/entity/predicate/type nodes.
class QuasiGraph {
 public:
  std::uint32_t add_node(QuasiNode n) {
    auto id = static_cast<std::uint32_t>(nodes_.size());
    for (const auto& p : n.provenance) by_vertex_.emplace(p, id);
    nodes_.push_back(std::move(n));
    adjacency_.emplace_back();
    for (auto& ts : term_scores_) ts.by_node.push_back(0.0);
    return id;
  }

  /// Adds an edge, or raises an existing parallel edge to the heavier weight.
  void connect(std::uint32_t a, std::uint32_t b, QEdgeKind kind, double weight) {
    if (a == b) return;
    auto key = edge_key(a, b);
    auto it = edge_index_.find(key);
    if (it != edge_index_.end()) {
      auto& e = edges_[it->second];
      if (weight > e.weight) {
        e.weight = weight;
        e.kind = kind;
      }
      return;
    }
    auto idx = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({std::min(a, b), std::max(a, b), kind, weight});
    edge_index_.emplace(key, idx);
    adjacency_[a].push_back(idx);
    adjacency_[b].push_back(idx);
  }

  std::optional<std::uint32_t> edge_between(std::uint32_t a, std::uint32_t b) const {
    auto it = edge_index_.find(edge_key(a, b));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::uint32_t> node_for(const VertexId& v) const {
    auto it = by_vertex_.find(v);
    if (it == by_vertex_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<QuasiNode>& nodes() const noexcept { return nodes_; }
  std::vector<QuasiNode>& nodes() noexcept { return nodes_; }
  const QuasiNode& node(std::uint32_t i) const { return nodes_.at(i); }
  const std::vector<QuasiEdge>& edges() const noexcept { return edges_; }
  std::vector<QuasiEdge>& edges() noexcept { return edges_; }
  const std::vector<std::uint32_t>& incident(std::uint32_t n) const { return adjacency_.at(n); }
  std::uint32_t other_end(const QuasiEdge& e, std::uint32_t n) const { return e.src == n ? e.dst : e.src; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t count_nodes(NodeKind k) const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [k](auto& n) { return n.kind == k; }));
  }
  std::size_t count_edges(QEdgeKind k) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [k](auto& e) { return e.kind == k; }));
  }

  std::vector<TermScores>& term_scores() noexcept { return term_scores_; }
  const std::vector<TermScores>& term_scores() const noexcept { return term_scores_; }

 private:
  static std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::vector<QuasiNode> nodes_;
  std::vector<QuasiEdge> edges_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index_;
  std::map<VertexId, std::uint32_t> by_vertex_;
  std::vector<TermScores> term_scores_;
};

// ---------------------------------------------------------------------------
// Translation

namespace detail {

template <class F>
void for_each_role_mention(const PropertyGraph& sub, const ClauseVertex& c, F&& f) {
  const auto& sent = sub.sentence(c.parent_sent);
  auto visit = [&](const TokenSpan& role) {
    for (const auto& mid : sent.mention_ids) {
      const auto& m = sub.mention(mid);
      if (m.span.overlaps(role)) f(m);
    }
  };
  visit(c.subject);
  for (const auto& o : c.objects) visit(o);
  for (const auto& a : c.adverbials) visit(a);
}

}  // namespace detail

/// One node per mention, entity and clause predicate; structural edges from clause
/// roles and entity links; coreference pairs become weight-1 alignment edges.
/// Mention-predicate edges carry weight 0 until assign_edge_weights runs.
inline QuasiGraph translate_subgraph(const PropertyGraph& sub) {
  QuasiGraph qg;
  for (const auto& m : sub.mentions()) {
    QuasiNode n{NodeKind::Mention, m.surface, {m.id}, 0.0, std::nullopt, m.ner_type};
    if (m.entity_id) n.kb_id = m.entity_id->local_id;
    qg.add_node(std::move(n));
  }
  for (const auto& e : sub.entities()) qg.add_node({NodeKind::Entity, e.label, {e.id}, 0.0, e.kb_id, NerType::NONE});
  // Clauses of one sentence with the same predicate text share a node.
  std::vector<QuasiNode> predicates;
  std::map<std::pair<std::string, std::string>, std::size_t> predicate_slot;
  for (const auto& c : sub.clauses()) {
    const auto& sent = sub.sentence(c.parent_sent);
    auto label = text::join(sent.tokens, c.predicate.begin, c.predicate.end);
    auto [it, fresh] = predicate_slot.try_emplace({c.parent_sent.local_id, text::normalize(label)}, predicates.size());
    if (fresh) predicates.push_back({NodeKind::Predicate, label, {}, 0.0, std::nullopt, NerType::NONE});
    predicates[it->second].provenance.push_back(c.id);
  }
  for (auto& p : predicates) qg.add_node(std::move(p));
  for (const auto& c : sub.clauses()) {
    auto pred = *qg.node_for(c.id);
    detail::for_each_role_mention(sub, c, [&](const MentionVertex& m) {
      if (m.span.overlaps(c.predicate)) return;
      qg.connect(*qg.node_for(m.id), pred, QEdgeKind::Structural, 0.0);
    });
  }
  for (const auto& m : sub.mentions()) {
    if (m.entity_id) qg.connect(*qg.node_for(m.id), *qg.node_for(*m.entity_id), QEdgeKind::Structural, 1.0);
  }
  for (const auto& [a, b] : sub.stores().coref_pairs) {
    qg.connect(*qg.node_for(mention_id(a)), *qg.node_for(mention_id(b)), QEdgeKind::Alignment, 1.0);
  }
  return qg;
}

namespace detail {

inline constexpr std::size_t kMaxTypePhrase = 6;

inline bool np_token(const std::string& tok, const Lexicons& lex) {
  return !text::is_punct_token(tok) && !lex.is_stopword(tok) && !lex.is_verb(tok);
}

inline std::size_t np_forward(const std::vector<std::string>& toks, std::size_t start, const Lexicons& lex) {
  std::size_t e = start;
  while (e < toks.size() && e - start < kMaxTypePhrase && np_token(toks[e], lex)) ++e;
  return e;
}

inline std::size_t np_backward(const std::vector<std::string>& toks, std::size_t end, const Lexicons& lex) {
  std::size_t b = end;
  while (b > 0 && end - b < kMaxTypePhrase && np_token(toks[b - 1], lex)) --b;
  return b;
}

struct HearstMatch {
  TokenSpan hyponym;  // NP1, aligned with a mention
  TokenSpan type;     // NP2
};

/// "NP1 is/was a/an NP2", "NP2 such as NP1", "NP1, a/an NP2,".
inline std::vector<HearstMatch> hearst_matches(const std::vector<std::string>& toks,
                                               const std::vector<TokenSpan>& mention_spans, const Lexicons& lex) {
  std::vector<HearstMatch> out;
  auto lower = [&](std::size_t i) { return i < toks.size() ? text::to_lower(toks[i]) : std::string(); };
  auto article = [&](std::size_t i) {
    auto w = lower(i);
    return w == "a" || w == "an";
  };
  for (std::size_t i = 0; i < toks.size(); ++i) {
    auto w = lower(i);
    if ((w == "is" || w == "was") && article(i + 1)) {
      std::size_t e = np_forward(toks, i + 2, lex);
      if (e > i + 2) {
        for (const auto& ms : mention_spans) {
          if (ms.end == i) out.push_back({ms, {static_cast<std::uint32_t>(i + 2), static_cast<std::uint32_t>(e)}});
        }
      }
    }
    if (w == "such" && lower(i + 1) == "as") {
      std::size_t end = (i > 0 && toks[i - 1] == ",") ? i - 1 : i;
      std::size_t b = np_backward(toks, end, lex);
      if (b < end) {
        for (const auto& ms : mention_spans) {
          if (ms.begin == i + 2) out.push_back({ms, {static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(end)}});
        }
      }
    }
    if (toks[i] == "," && article(i + 1)) {
      std::size_t e = np_forward(toks, i + 2, lex);
      if (e > i + 2 && e < toks.size() && toks[e] == ",") {
        for (const auto& ms : mention_spans) {
          if (ms.end == i) out.push_back({ms, {static_cast<std::uint32_t>(i + 2), static_cast<std::uint32_t>(e)}});
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Adds TYPE nodes (deduplicated by normalized label) from Hearst patterns and
/// weight-1 type edges from the matching mention.
inline void add_type_nodes(QuasiGraph& qg, const PropertyGraph& sub, const Lexicons& lex) {
  std::map<std::string, std::uint32_t> by_label;
  for (std::uint32_t i = 0; i < qg.node_count(); ++i) {
    if (qg.node(i).kind == NodeKind::Type) by_label.emplace(text::normalize(qg.node(i).label), i);
  }
  for (const auto& s : sub.sentences()) {
    std::vector<TokenSpan> spans;
    std::vector<const MentionVertex*> ms;
    for (const auto& mid : s.mention_ids) {
      ms.push_back(&sub.mention(mid));
      spans.push_back(ms.back()->span);
    }
    for (const auto& match : detail::hearst_matches(s.tokens, spans, lex)) {
      auto label = text::join(s.tokens, match.type.begin, match.type.end);
      auto key = text::normalize(label);
      if (key.empty()) continue;
      auto it = by_label.find(key);
      std::uint32_t type_node;
      if (it == by_label.end()) {
        type_node = qg.add_node({NodeKind::Type, label, {}, 0.0, std::nullopt, NerType::NONE});
        by_label.emplace(key, type_node);
      } else {
        type_node = it->second;
      }
      for (const auto* m : ms) {
        if (m->span == match.hyponym) qg.connect(*qg.node_for(m->id), type_node, QEdgeKind::TypeEdge, 1.0);
      }
    }
  }
}

/// Mention-predicate weight is 1/(1+d), d = tokens strictly between the two
/// spans; parallel edges keep the maximum.
inline void assign_edge_weights(QuasiGraph& qg, const PropertyGraph& sub) {
  for (auto& e : qg.edges()) {
    auto ka = qg.node(e.src).kind, kb = qg.node(e.dst).kind;
    bool mention_predicate = (ka == NodeKind::Mention && kb == NodeKind::Predicate) ||
                             (ka == NodeKind::Predicate && kb == NodeKind::Mention);
    if (e.kind == QEdgeKind::Structural && mention_predicate) e.weight = 0.0;
  }
  for (const auto& c : sub.clauses()) {
    auto pred = *qg.node_for(c.id);
    detail::for_each_role_mention(sub, c, [&](const MentionVertex& m) {
      if (m.span.overlaps(c.predicate)) return;
      auto mn = *qg.node_for(m.id);
      auto idx = qg.edge_between(mn, pred);
      if (!idx) return;
      double w = 1.0 / (1.0 + static_cast<double>(tokens_between(m.span, c.predicate)));
      auto& e = qg.edges()[*idx];
      e.weight = std::max(e.weight, w);
    });
  }
}

/// Node weights and per-term score table. Mentions and entities compare against
/// entity terms, predicates against relation terms (clamped embedding cosine),
/// types against every term (token Jaccard).
inline void assign_vertex_weights(QuasiGraph& qg, const QuestionTerms& terms, const MentionEntityDictionary& dict,
                                  const EmbeddingTable& emb) {
  auto& scores = qg.term_scores();
  scores.clear();
  for (const auto& t : terms.entity_terms) scores.push_back({t, false, std::vector<double>(qg.node_count(), 0.0)});
  for (const auto& t : terms.relation_terms) scores.push_back({t, true, std::vector<double>(qg.node_count(), 0.0)});

  std::vector<std::optional<Vector>> term_vectors;
  for (const auto& t : terms.relation_terms) term_vectors.push_back(phrase_vector(t, emb));

  for (std::uint32_t i = 0; i < qg.node_count(); ++i) {
    auto& n = qg.nodes()[i];
    double best = 0.0;
    switch (n.kind) {
      case NodeKind::Mention:
      case NodeKind::Entity:
        for (std::size_t t = 0; t < terms.entity_terms.size(); ++t) {
          double s = mention_similarity(terms.entity_terms[t], n.label, dict);
          scores[t].by_node[i] = s;
          best = std::max(best, s);
        }
        break;
      case NodeKind::Predicate: {
        auto pv = phrase_vector(n.label, emb);
        for (std::size_t t = 0; t < terms.relation_terms.size(); ++t) {
          double s = 0.0;
          if (pv && term_vectors[t] && norm(*pv) > 0.0 && norm(*term_vectors[t]) > 0.0) {
            s = clamp_unit(cosine(*pv, *term_vectors[t]));
          }
          scores[terms.entity_terms.size() + t].by_node[i] = s;
          best = std::max(best, s);
        }
        break;
      }
      case NodeKind::Type:
        for (const auto* list : {&terms.entity_terms, &terms.relation_terms}) {
          for (const auto& t : *list) best = std::max(best, token_jaccard(t, n.label));
        }
        break;
    }
    n.weight = best;
  }
}

/// Alignment edges between same-kind nodes: mentions by entity identity (weight 1)
/// or mention similarity >= base; predicates by clamped cosine >= predicate
/// threshold; types by clamped cosine >= base.
inline void add_alignment_edges(QuasiGraph& qg, const Thresholds& th, const MentionEntityDictionary& dict,
                                const EmbeddingTable& emb) {
  struct MentionInfo {
    std::uint32_t node;
    const EntitySet* dict_entities;
    std::set<std::string> tokens;
    const std::optional<std::string>* kb;
  };
  std::vector<MentionInfo> mentions;
  std::vector<std::pair<std::uint32_t, Vector>> predicates, types;
  for (std::uint32_t i = 0; i < qg.node_count(); ++i) {
    const auto& n = qg.node(i);
    if (n.kind == NodeKind::Mention) {
      mentions.push_back({i, dict.lookup(n.label), text::token_set(n.label), &n.kb_id});
    } else if (n.kind == NodeKind::Predicate || n.kind == NodeKind::Type) {
      auto pv = phrase_vector(n.label, emb);
      if (!pv) continue;
      double len = norm(*pv);
      if (len == 0.0) continue;
      for (double& x : *pv) x /= len;
      (n.kind == NodeKind::Predicate ? predicates : types).emplace_back(i, std::move(*pv));
    }
  }

  for (std::size_t a = 0; a < mentions.size(); ++a) {
    for (std::size_t b = a + 1; b < mentions.size(); ++b) {
      const auto& ma = mentions[a];
      const auto& mb = mentions[b];
      double sim;
      if (ma.kb->has_value() && *ma.kb == *mb.kb) {
        sim = 1.0;
      } else if (ma.dict_entities && mb.dict_entities) {
        sim = jaccard_sets(*ma.dict_entities, *mb.dict_entities);
      } else {
        sim = jaccard_sets(ma.tokens, mb.tokens);
      }
      if (sim > 0.0 && sim >= th.base) qg.connect(ma.node, mb.node, QEdgeKind::Alignment, sim);
    }
  }

  auto align = [&](const std::vector<std::pair<std::uint32_t, Vector>>& list, double threshold) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < list[a].second.size(); ++i) dot += list[a].second[i] * list[b].second[i];
        double sim = clamp_unit(dot);
        if (sim > 0.0 && sim >= threshold) qg.connect(list[a].first, list[b].first, QEdgeKind::Alignment, sim);
      }
    }
  };
  align(predicates, th.predicate_alignment);
  align(types, th.base);
}

// ---------------------------------------------------------------------------
// Cornerstones and the GST input component

struct CornerstoneGroup {
  std::string term;
  bool relation = false;
  std::vector<std::pair<std::uint32_t, double>> members;  // (node, similarity), ascending node
};

using CornerstoneGroups = std::vector<CornerstoneGroup>;

/// Fewer than two non-empty terminal groups: there is nothing to connect.
class InsufficientGroupsError : public Error {
 public:
  explicit InsufficientGroupsError(std::size_t groups)
      : Error("need at least 2 cornerstone groups, have " + std::to_string(groups)), groups_(groups) {}
  std::size_t groups() const noexcept { return groups_; }

 private:
  std::size_t groups_;
};

inline bool is_cornerstone(const CornerstoneGroups& groups, std::uint32_t node) {
  for (const auto& g : groups) {
    for (const auto& [n, _] : g.members) {
      if (n == node) return true;
    }
  }
  return false;
}

/// One group per question term: compatible nodes whose similarity to the term
/// reaches the base threshold. Empty groups are dropped.
inline CornerstoneGroups select_cornerstones(const QuasiGraph& qg, const QuestionTerms& terms, const Thresholds& th) {
  (void)terms;  // scores were computed per term by assign_vertex_weights
  CornerstoneGroups groups;
  for (const auto& ts : qg.term_scores()) {
    CornerstoneGroup g{ts.term, ts.relation, {}};
    for (std::uint32_t i = 0; i < qg.node_count(); ++i) {
      auto kind = qg.node(i).kind;
      bool compatible = ts.relation ? kind == NodeKind::Predicate : (kind == NodeKind::Mention || kind == NodeKind::Entity);
      double s = ts.by_node[i];
      if (compatible && s > 0.0 && s >= th.base) g.members.emplace_back(i, s);
    }
    if (!g.members.empty()) groups.push_back(std::move(g));
  }
  if (groups.size() < 2) throw InsufficientGroupsError(groups.size());
  return groups;
}

/// Connected components as lists of node ids (each ascending), in order of smallest member.
inline std::vector<std::vector<std::uint32_t>> connected_components(const QuasiGraph& qg) {
  std::vector<std::int64_t> comp(qg.node_count(), -1);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t s = 0; s < qg.node_count(); ++s) {
    if (comp[s] >= 0) continue;
    auto c = static_cast<std::int64_t>(out.size());
    out.emplace_back();
    std::queue<std::uint32_t> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      out.back().push_back(u);
      for (auto ei : qg.incident(u)) {
        auto v = qg.other_end(qg.edges()[ei], u);
        if (comp[v] < 0) {
          comp[v] = c;
          q.push(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Subgraph induced by `keep` (ascending node ids), with term scores carried over.
inline QuasiGraph induced_subgraph(const QuasiGraph& qg, const std::vector<std::uint32_t>& keep,
                                   std::vector<std::int64_t>* remap_out = nullptr) {
  std::vector<std::int64_t> remap(qg.node_count(), -1);
  QuasiGraph out;
  for (const auto& ts : qg.term_scores()) out.term_scores().push_back({ts.term, ts.relation, {}});
  for (auto old : keep) {
    remap[old] = out.add_node(qg.node(old));
    for (std::size_t t = 0; t < qg.term_scores().size(); ++t) {
      out.term_scores()[t].by_node.back() = qg.term_scores()[t].by_node[old];
    }
  }
  for (const auto& e : qg.edges()) {
    if (remap[e.src] >= 0 && remap[e.dst] >= 0) {
      out.connect(static_cast<std::uint32_t>(remap[e.src]), static_cast<std::uint32_t>(remap[e.dst]), e.kind, e.weight);
    }
  }
  if (remap_out) *remap_out = std::move(remap);
  return out;
}

/// Largest component by node count, then total edge weight, then smallest node id.
/// Groups are restricted to surviving nodes; fewer than two left is an error.
inline std::pair<QuasiGraph, CornerstoneGroups> largest_connected_component(const QuasiGraph& qg,
                                                                            const CornerstoneGroups& groups) {
  auto comps = connected_components(qg);
  if (comps.empty()) throw InsufficientGroupsError(0);
  // Components come out ordered by smallest member, so a strict comparison
  // keeps the smallest-id component on full ties.
  std::vector<double> weight(comps.size(), 0.0);
  std::vector<std::size_t> comp_of(qg.node_count());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (auto u : comps[c]) comp_of[u] = c;
  }
  for (const auto& e : qg.edges()) weight[comp_of[e.src]] += e.weight;
  std::size_t best = 0;
  for (std::size_t c = 1; c < comps.size(); ++c) {
    if (comps[c].size() > comps[best].size() ||
        (comps[c].size() == comps[best].size() && weight[c] > weight[best])) {
      best = c;
    }
  }
  std::vector<std::int64_t> remap;
  auto lcc = induced_subgraph(qg, comps[best], &remap);
  CornerstoneGroups restricted;
  for (const auto& g : groups) {
    CornerstoneGroup r{g.term, g.relation, {}};
    for (const auto& [n, s] : g.members) {
      if (remap[n] >= 0) r.members.emplace_back(static_cast<std::uint32_t>(remap[n]), s);
    }
    if (!r.members.empty()) restricted.push_back(std::move(r));
  }
  if (restricted.size() < 2) throw InsufficientGroupsError(restricted.size());
  return {std::move(lcc), std::move(restricted)};
}

/// translate -> type nodes -> edge weights -> vertex weights -> alignment edges.
inline QuasiGraph build_quasi_graph(const PropertyGraph& sub, const QuestionTerms& terms,
                                    const MentionEntityDictionary& dict, const EmbeddingTable& emb,
                                    const Lexicons& lex, const Thresholds& th) {
  auto qg = translate_subgraph(sub);
  add_type_nodes(qg, sub, lex);
  assign_edge_weights(qg, sub);
  assign_vertex_weights(qg, terms, dict, emb);
  add_alignment_edges(qg, th, dict, emb);
  return qg;
}

}  // namespace hkqa
