#include "qfalab/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfalab {

std::string format_word(const std::vector<std::string>& alphabet, const Word& word) {
  bool single = std::all_of(alphabet.begin(), alphabet.end(),
                            [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    int idx = word[i];
    if (idx < 0 || idx >= static_cast<int>(alphabet.size()))
      throw std::invalid_argument("format_word: letter index out of range");
    if (!single && i > 0) out += ' ';
    out += alphabet[idx];
  }
  return out;
}

Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
  bool single = std::all_of(alphabet.begin(), alphabet.end(),
                            [](const std::string& s) { return s.size() == 1; });
  auto index_of = [&](std::string_view sym) {
    for (size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == sym) return static_cast<int>(i);
    throw std::invalid_argument("parse_word: unknown letter '" + std::string(sym) + "'");
  };
  Word word;
  if (single) {
    for (char c : text) {
      if (c == ' ' || c == ',') continue;
      word.push_back(index_of(std::string_view(&c, 1)));
    }
    return word;
  }
  std::string token;
  auto flush = [&] {
    if (!token.empty()) {
      word.push_back(index_of(token));
      token.clear();
    }
  };
  for (char c : text) {
    if (c == ' ' || c == ',') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return word;
}

void for_each_word(int n_letters, int max_len,
                   const std::function<void(const Word&)>& visit) {
  if (max_len < 0) throw std::invalid_argument("for_each_word: max_len must be >= 0");
  Word empty;
  visit(empty);
  if (n_letters <= 0) return;
  for (int len = 1; len <= max_len; ++len) {
    Word w(len, 0);
    for (;;) {
      visit(w);
      int i = len - 1;
      while (i >= 0 && w[i] == n_letters - 1) w[i--] = 0;
      if (i < 0) break;
      ++w[i];
    }
  }
}

std::vector<Word> generate_corpus(int n_letters, int max_len) {
  std::vector<Word> corpus;
  corpus.reserve(static_cast<size_t>(std::min<std::uint64_t>(
      corpus_size(n_letters, max_len), 1u << 22)));
  for_each_word(n_letters, max_len, [&](const Word& w) { corpus.push_back(w); });
  return corpus;
}

std::uint64_t corpus_size(int n_letters, int max_len) {
  if (max_len < 0) throw std::invalid_argument("corpus_size: max_len must be >= 0");
  std::uint64_t total = 0, layer = 1;
  for (int len = 0; len <= max_len; ++len) {
    total += layer;
    layer *= static_cast<std::uint64_t>(std::max(n_letters, 0));
  }
  return total;
}

}  // namespace qfalab
