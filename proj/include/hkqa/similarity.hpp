#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hkqa/text.hpp"

namespace hkqa {

using EntitySet = std::set<std::string>;
using Vector = std::vector<double>;

/// |a ∩ b| / |a ∪ b| over ordered sets. Two empty sets score 0.
template <class T, class Cmp, class Alloc>
double jaccard_sets(const std::set<T, Cmp, Alloc>& a, const std::set<T, Cmp, Alloc>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  Cmp less = a.key_comp();
  while (ia != a.end() && ib != b.end()) {
    if (less(*ia, *ib)) {
      ++ia;
    } else if (less(*ib, *ia)) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

/// Jaccard over normalized token sets.
inline double token_jaccard(std::string_view a, std::string_view b) {
  return jaccard_sets(text::token_set(a), text::token_set(b));
}

/// Surface form -> candidate KB entities. Keys are normalized.
class MentionEntityDictionary {
 public:
  void add(std::string_view surface, const EntitySet& ids) {
    auto key = text::normalize(surface);
    if (key.empty() || ids.empty()) return;
    entries_[key].insert(ids.begin(), ids.end());
  }

  const EntitySet* lookup(std::string_view surface) const { return lookup_normalized(text::normalize(surface)); }

  const EntitySet* lookup_normalized(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::unordered_map<std::string, EntitySet>& entries() const noexcept { return entries_; }

  friend bool operator==(const MentionEntityDictionary&, const MentionEntityDictionary&) = default;

  // Format: surface<TAB>id[,id...] per line. Repeated surfaces merge by union.
  static MentionEntityDictionary parse(std::istream& in) {
    MentionEntityDictionary dict;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) throw FormatError("dictionary row has no tab separator", lineno);
      auto surface = line.substr(0, tab);
      if (text::normalize(surface).empty()) throw FormatError("dictionary row has empty surface", lineno);
      EntitySet ids;
      std::stringstream ss(line.substr(tab + 1));
      std::string id;
      while (std::getline(ss, id, ',')) {
        auto trimmed = text::split_ws(id);
        if (trimmed.size() > 1) throw FormatError("entity id contains whitespace", lineno);
        if (!trimmed.empty()) ids.insert(trimmed.front());
      }
      if (ids.empty()) throw FormatError("dictionary row has no entity ids", lineno);
      dict.add(surface, ids);
    }
    return dict;
  }

  static MentionEntityDictionary load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open dictionary " + path.string());
    return parse(in);
  }

 private:
  std::unordered_map<std::string, EntitySet> entries_;
};

/// Word vectors of a fixed dimension, keyed by lowercase token.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  // First insertion wins for a key, matching word2vec's frequency ordering.
  void add(std::string_view token, Vector v) {
    if (v.size() != dim_) throw FormatError("embedding dimension mismatch for '" + std::string(token) + "'");
    for (double x : v) {
      if (!std::isfinite(x)) throw FormatError("non-finite embedding component for '" + std::string(token) + "'");
    }
    vectors_.try_emplace(text::to_lower(token), std::move(v));
  }

  const Vector* find(std::string_view token) const {
    auto it = vectors_.find(text::to_lower(token));
    return it == vectors_.end() ? nullptr : &it->second;
  }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

  // Textual word2vec layout: "V D" header, then "token v1 ... vD" rows.
  static EmbeddingTable parse(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw FormatError("empty embedding file", 1);
    std::istringstream header(line);
    long long rows = -1, dim = -1;
    if (!(header >> rows >> dim) || rows < 0 || dim <= 0) throw FormatError("bad embedding header", 1);
    EmbeddingTable table(static_cast<std::size_t>(dim));
    long long seen = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto fields = text::split_ws(line);
      if (fields.empty()) continue;
      if (fields.size() != static_cast<std::size_t>(dim) + 1) {
        throw FormatError("expected " + std::to_string(dim) + " components, got " + std::to_string(fields.size() - 1),
                          lineno);
      }
      Vector v(static_cast<std::size_t>(dim));
      for (std::size_t i = 0; i < v.size(); ++i) {
        try {
          std::size_t used = 0;
          v[i] = std::stod(fields[i + 1], &used);
          if (used != fields[i + 1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw FormatError("unparsable component '" + fields[i + 1] + "'", lineno);
        }
        if (!std::isfinite(v[i])) throw FormatError("non-finite component", lineno);
      }
      table.vectors_.try_emplace(text::to_lower(fields[0]), std::move(v));
      ++seen;
    }
    if (seen != rows) {
      throw FormatError("header declares " + std::to_string(rows) + " rows, found " + std::to_string(seen), lineno);
    }
    return table;
  }

  static EmbeddingTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open embeddings " + path.string());
    return parse(in);
  }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, Vector> vectors_;
};

/// If both strings are dictionary keys, Jaccard of their entity sets;
/// otherwise Jaccard of their normalized token sets.
inline double mention_similarity(std::string_view term, std::string_view surface, const MentionEntityDictionary& dict) {
  const EntitySet* a = dict.lookup(term);
  const EntitySet* b = a ? dict.lookup(surface) : nullptr;
  if (a && b) return jaccard_sets(*a, *b);
  return token_jaccard(term, surface);
}

/// Mean of the in-vocabulary token vectors; nullopt if none is known.
/// Tokens are summed in sorted order so the result is permutation-invariant bit for bit.
inline std::optional<Vector> phrase_vector(std::string_view phrase, const EmbeddingTable& table) {
  auto tokens = text::normalized_tokens(phrase);
  std::sort(tokens.begin(), tokens.end());
  Vector sum(table.dim(), 0.0);
  std::size_t known = 0;
  for (const auto& tok : tokens) {
    if (const Vector* v = table.find(tok)) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
      ++known;
    }
  }
  if (known == 0) return std::nullopt;
  for (double& x : sum) x /= static_cast<double>(known);
  return sum;
}

inline double norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double cosine(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw Error("cosine: dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw Error("cosine: zero vector");
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

/// Similarity used as a graph weight: negative values become 0.
inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace hkqa
