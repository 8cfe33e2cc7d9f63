#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hkqa/text.hpp"

namespace hkqa {

enum class AnswerType { PERSON, PLACE, TEMPORAL, OTHER };

inline std::string_view answer_type_name(AnswerType t) {
  switch (t) {
    case AnswerType::PERSON: return "PERSON";
    case AnswerType::PLACE: return "PLACE";
    case AnswerType::TEMPORAL: return "TEMPORAL";
    case AnswerType::OTHER: return "OTHER";
  }
  return "OTHER";
}

struct QuestionTerms {
  std::vector<std::string> entity_terms;
  std::vector<std::string> relation_terms;
  AnswerType answer_type_hint = AnswerType::OTHER;

  std::size_t size() const noexcept { return entity_terms.size() + relation_terms.size(); }
  friend bool operator==(const QuestionTerms&, const QuestionTerms&) = default;
};

class QuestionError : public Error {
 public:
  using Error::Error;
};

struct QuestionToken {
  std::string text;
  bool punct = false;
};

/// Whitespace split, with leading/trailing punctuation split off as separate
/// tokens and hyphenated words broken into their parts.
inline std::vector<QuestionToken> tokenize_question(std::string_view question) {
  std::vector<QuestionToken> out;
  for (const auto& chunk : text::split_ws(question)) {
    std::size_t b = 0, e = chunk.size();
    std::vector<QuestionToken> trailing;
    while (b < e && text::is_ascii_punct(static_cast<unsigned char>(chunk[b]))) {
      out.push_back({std::string(1, chunk[b]), true});
      ++b;
    }
    while (e > b && text::is_ascii_punct(static_cast<unsigned char>(chunk[e - 1]))) {
      trailing.insert(trailing.begin(), {std::string(1, chunk[e - 1]), true});
      --e;
    }
    std::string word;
    for (std::size_t i = b; i < e; ++i) {
      if (chunk[i] == '-') {
        if (!word.empty()) out.push_back({std::move(word), false});
        word.clear();
      } else {
        word.push_back(chunk[i]);
      }
    }
    if (!word.empty()) out.push_back({std::move(word), false});
    out.insert(out.end(), trailing.begin(), trailing.end());
  }
  return out;
}

inline bool is_wh_word(std::string_view lower) {
  static const std::set<std::string_view> wh = {"who", "whom", "whose", "where", "when", "which", "what", "how", "why"};
  return wh.count(lower) > 0;
}

inline AnswerType answer_type_for(std::string_view wh) {
  if (wh == "who" || wh == "whom") return AnswerType::PERSON;
  if (wh == "where") return AnswerType::PLACE;
  if (wh == "when") return AnswerType::TEMPORAL;
  return AnswerType::OTHER;
}

/// Rule-based decomposition into entity terms (capitalized runs and leftover
/// noun chunks) and relation terms (verb runs plus the nouns that follow them).
inline QuestionTerms parse_question(std::string_view question, const Lexicons& lex) {
  enum class Role { Boundary, Capital, Verb, Content };
  auto tokens = tokenize_question(question);
  std::vector<Role> roles(tokens.size(), Role::Boundary);

  QuestionTerms terms;
  bool hint_set = false;
  bool first_word = true;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (tok.punct) continue;
    auto lower = text::to_lower(tok.text);
    bool wh = is_wh_word(lower);
    if (wh && !hint_set) {
      terms.answer_type_hint = answer_type_for(lower);
      hint_set = true;
    }
    bool stop = wh || lex.is_stopword(lower);
    bool lexical_verb = lex.is_verb(lower);
    bool initial = first_word;
    first_word = false;
    if (text::starts_upper(tok.text) && !(initial && (stop || lexical_verb))) {
      roles[i] = Role::Capital;
    } else if (stop) {
      roles[i] = Role::Boundary;
    } else if (lexical_verb || (lower.size() >= 5 && lower.ends_with("ed")) ||
               (lower.size() >= 6 && lower.ends_with("ing"))) {
      roles[i] = Role::Verb;
    } else if (text::normalize(lower).empty()) {
      roles[i] = Role::Boundary;
    } else {
      roles[i] = Role::Content;
    }
  }

  std::set<std::string> seen_entity, seen_relation;
  auto emit = [&](std::vector<std::string>& dst, std::set<std::string>& seen, std::size_t b, std::size_t e) {
    std::string phrase;
    for (std::size_t i = b; i < e; ++i) {
      if (i > b) phrase += ' ';
      phrase += tokens[i].text;
    }
    if (seen.insert(text::normalize(phrase)).second) dst.push_back(std::move(phrase));
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t j = i + 1;
    switch (roles[i]) {
      case Role::Boundary:
        break;
      case Role::Capital:
        while (j < tokens.size() && roles[j] == Role::Capital) ++j;
        emit(terms.entity_terms, seen_entity, i, j);
        break;
      case Role::Verb:
        while (j < tokens.size() && roles[j] == Role::Verb) ++j;
        while (j < tokens.size() && roles[j] == Role::Content) ++j;
        emit(terms.relation_terms, seen_relation, i, j);
        break;
      case Role::Content:
        while (j < tokens.size() && roles[j] == Role::Content) ++j;
        emit(terms.entity_terms, seen_entity, i, j);
        break;
    }
    i = j;
  }

  if (terms.size() == 0) throw QuestionError("question has no content terms");
  return terms;
}

}  // namespace hkqa
