#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hkqa/graph_io.hpp"
#include "hkqa/graph_store.hpp"
#include "hkqa/text.hpp"

namespace hkqa {

/// Okapi BM25 parameters; the defaults are Lucene's.
struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct Posting {
  std::uint32_t doc = 0;  // position in InvertedIndex::doc_ids
  std::uint32_t tf = 0;
  friend bool operator==(const Posting&, const Posting&) = default;
};

/// Term -> postings over document titles and sentence tokens.
class InvertedIndex {
 public:
  const std::vector<Posting>* postings(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
  }

  std::size_t document_count() const noexcept { return doc_ids_.size(); }
  std::size_t term_count() const noexcept { return postings_.size(); }
  double average_length() const noexcept { return avgdl_; }
  const std::string& doc_id(std::uint32_t i) const { return doc_ids_.at(i); }
  std::uint32_t doc_length(std::uint32_t i) const { return doc_len_.at(i); }

  std::optional<std::uint32_t> length_of(const std::string& id) const {
    auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), id);
    if (it == doc_ids_.end() || *it != id) return std::nullopt;
    return doc_len_[static_cast<std::size_t>(it - doc_ids_.begin())];
  }

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

  static InvertedIndex build(const PropertyGraph& g);
  void save(std::ostream& out) const;
  static InvertedIndex load(std::istream& in);

 private:
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::string> doc_ids_;  // sorted
  std::vector<std::uint32_t> doc_len_;
  double avgdl_ = 0.0;
};

inline InvertedIndex InvertedIndex::build(const PropertyGraph& g) {
  InvertedIndex idx;
  // Graph documents are already sorted by id, so postings come out sorted too.
  for (const auto& d : g.documents()) {
    auto doc = static_cast<std::uint32_t>(idx.doc_ids_.size());
    idx.doc_ids_.push_back(d.id.local_id);
    std::map<std::string, std::uint32_t> tf;
    std::uint32_t len = 0;
    auto add = [&](std::string_view s) {
      for (auto& t : text::normalized_tokens(s)) {
        ++tf[t];
        ++len;
      }
    };
    add(d.title);
    for (const auto& sid : d.sentence_ids) {
      for (const auto& tok : g.sentence(sid).tokens) add(tok);
    }
    for (const auto& [term, f] : tf) idx.postings_[term].push_back({doc, f});
    idx.doc_len_.push_back(len);
  }
  double total = 0;
  for (auto l : idx.doc_len_) total += l;
  idx.avgdl_ = idx.doc_len_.empty() ? 0.0 : total / static_cast<double>(idx.doc_len_.size());
  return idx;
}

inline constexpr std::array<char, 8> kIndexMagic = {'H', 'K', 'Q', 'A', 'I', 'D', 'X', '1'};

inline void InvertedIndex::save(std::ostream& out) const {
  io::Writer w(out);
  w.bytes(kIndexMagic.data(), kIndexMagic.size());
  w.u64(doc_ids_.size());
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    w.str(doc_ids_[i]);
    w.u32(doc_len_[i]);
  }
  std::vector<const std::string*> terms;
  for (const auto& [t, _] : postings_) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) { return *a < *b; });
  w.u64(terms.size());
  for (auto* t : terms) {
    w.str(*t);
    const auto& pl = postings_.at(*t);
    w.u64(pl.size());
    for (const auto& p : pl) {
      w.u32(p.doc);
      w.u32(p.tf);
    }
  }
  if (!w.ok()) throw Error("failed writing index");
}

inline InvertedIndex InvertedIndex::load(std::istream& in) {
  io::Reader r(in, "index image");
  std::array<char, 8> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kIndexMagic) throw FormatError("not an index image (bad magic or version)");
  InvertedIndex idx;
  auto n = r.count();
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    idx.doc_ids_.push_back(r.str());
    idx.doc_len_.push_back(r.u32());
    total += idx.doc_len_.back();
  }
  idx.avgdl_ = n ? total / static_cast<double>(n) : 0.0;
  auto nterms = r.count();
  for (std::size_t i = 0; i < nterms; ++i) {
    auto term = r.str();
    auto np = r.count();
    std::vector<Posting> pl;
    for (std::size_t j = 0; j < np; ++j) {
      Posting p;
      p.doc = r.u32();
      p.tf = r.u32();
      if (p.doc >= n) throw FormatError("corrupt index: posting references unknown document");
      pl.push_back(p);
    }
    idx.postings_.emplace(std::move(term), std::move(pl));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("corrupt index: trailing data");
  return idx;
}

inline InvertedIndex build_index(const PropertyGraph& g) { return InvertedIndex::build(g); }

struct ScoredDocument {
  std::string doc_id;
  double score = 0.0;
  friend bool operator==(const ScoredDocument&, const ScoredDocument&) = default;
};

using RetrievalResult = std::vector<ScoredDocument>;

/// Distinct non-stopword query terms after normalization.
inline std::vector<std::string> query_terms(std::string_view question, const Lexicon& stopwords) {
  std::set<std::string> terms;
  for (auto& t : text::normalized_tokens(question)) {
    if (!stopwords.contains(t)) terms.insert(std::move(t));
  }
  return {terms.begin(), terms.end()};
}

/// BM25 over the whole question as a keyword query. Scores are non-increasing;
/// ties go to the smaller doc id; only positive scores are returned.
inline RetrievalResult retrieve_top_k(const InvertedIndex& index, std::string_view question, std::size_t k,
                                      const Lexicon& stopwords, Bm25Params params = {}) {
  if (k == 0) throw Error("retrieve_top_k: k must be >= 1");
  RetrievalResult out;
  auto terms = query_terms(question, stopwords);
  if (terms.empty() || index.document_count() == 0) return out;
  const double n = static_cast<double>(index.document_count());
  std::vector<double> scores(index.document_count(), 0.0);
  for (const auto& t : terms) {
    const auto* pl = index.postings(t);
    if (!pl) continue;
    const double df = static_cast<double>(pl->size());
    const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    for (const auto& p : *pl) {
      const double tf = p.tf;
      const double norm = params.k1 * (1.0 - params.b + params.b * index.doc_length(p.doc) / index.average_length());
      scores[p.doc] += idf * tf * (params.k1 + 1.0) / (tf + norm);
    }
  }
  std::vector<std::uint32_t> order;
  for (std::uint32_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > 0.0) order.push_back(i);
  }
  // doc positions follow id order, so a stable sort keeps the id tie-break.
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  if (order.size() > k) order.resize(k);
  for (auto i : order) out.push_back({index.doc_id(i), scores[i]});
  return out;
}

}  // namespace hkqa
