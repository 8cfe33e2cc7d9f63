#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace hkqa {

/// Base class of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed resource or persisted file. Carries the 1-based line when known.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace text {

inline bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }
inline bool is_space(unsigned char c) { return c < 0x80 && std::isspace(c); }

// Lowercases ASCII, maps punctuation to blanks, collapses whitespace and trims.
// Bytes >= 0x80 (UTF-8 continuation) pass through unchanged.
inline std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (is_space(c) || is_ascii_punct(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(c < 0x80 ? std::tolower(c) : c));
  }
  return out;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string> normalized_tokens(std::string_view s) { return split_ws(normalize(s)); }

inline std::set<std::string> token_set(std::string_view s) {
  auto toks = normalized_tokens(s);
  return {toks.begin(), toks.end()};
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

inline std::string join(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end,
                        std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    if (i > begin) out += sep;
    out += tokens[i];
  }
  return out;
}

inline std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ") {
  return join(tokens, 0, tokens.size(), sep);
}

inline bool is_punct_token(std::string_view tok) {
  return !tok.empty() &&
         std::all_of(tok.begin(), tok.end(), [](char c) { return is_ascii_punct(static_cast<unsigned char>(c)); });
}

inline bool starts_upper(std::string_view tok) {
  return !tok.empty() && std::isupper(static_cast<unsigned char>(tok.front()));
}

}  // namespace text

/// A plain word list, one entry per line, matched case-insensitively.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::initializer_list<std::string_view> words) {
    for (auto w : words) add(w);
  }

  static Lexicon load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open lexicon " + path.string());
    Lexicon lex;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.front() == '#') continue;
      auto w = text::normalize(line);
      if (!w.empty()) lex.words_.insert(std::move(w));
    }
    return lex;
  }

  void add(std::string_view w) { words_.insert(text::to_lower(w)); }
  bool contains(std::string_view w) const { return words_.count(text::to_lower(w)) > 0; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Stopwords and verb forms used by question parsing and Hearst matching.
struct Lexicons {
  Lexicon stopwords;
  Lexicon verbs;

  bool is_stopword(std::string_view w) const { return stopwords.contains(w); }
  bool is_verb(std::string_view w) const { return verbs.contains(w); }

  static Lexicons load(const std::filesystem::path& stopwords, const std::filesystem::path& verbs) {
    return {Lexicon::load(stopwords), Lexicon::load(verbs)};
  }
  static Lexicons load_dir(const std::filesystem::path& dir) {
    return load(dir / "stopwords.txt", dir / "verbs.txt");
  }
};

}  // namespace hkqa
