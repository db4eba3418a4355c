// Test-side oracles, written directly from the informal language
// descriptions so they stay independent of the automata under test.

#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace oracles {

// Number of leading 'a' characters.
inline int leading_a(const std::string& w) {
  int n = 0;
  for (char c : w) {
    if (c != 'a') break;
    ++n;
  }
  return n;
}

// -1 when the word has no 'b'; otherwise the number of 'a' after the first 'b'.
inline int a_after_first_b(const std::string& w) {
  size_t pos = w.find('b');
  if (pos == std::string::npos) return -1;
  int n = 0;
  for (size_t i = pos + 1; i < w.size(); ++i)
    if (w[i] == 'a') ++n;
  return n;
}

// Any number of leading a's; if a b occurs, an odd number of a's follows it.
inline bool in_l1(const std::string& w) {
  int after = a_after_first_b(w);
  return after < 0 || after % 2 == 1;
}

// Even number of leading a's, same suffix condition.
inline bool in_l2(const std::string& w) {
  int after = a_after_first_b(w);
  return leading_a(w) % 2 == 0 && (after < 0 || after % 2 == 1);
}

// Odd number of leading a's, same suffix condition.
inline bool in_l3(const std::string& w) {
  int after = a_after_first_b(w);
  return leading_a(w) % 2 == 1 && (after < 0 || after % 2 == 1);
}

inline bool even_a(const std::string& w) {
  int n = 0;
  for (char c : w) n += (c == 'a');
  return n % 2 == 0;
}

// Words of a1*...an* are exactly the ones whose letter indices never decrease.
inline bool in_ln(const std::vector<int>& word) {
  for (size_t i = 1; i < word.size(); ++i)
    if (word[i] < word[i - 1]) return false;
  return true;
}

inline std::vector<std::string> words_up_to(int max_len) {
  std::vector<std::string> words = {""};
  size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t end = words.size();
    for (size_t i = begin; i < end; ++i) {
      words.push_back(words[i] + "a");
      words.push_back(words[i] + "b");
    }
    begin = end;
  }
  return words;
}

// Brute-force count of Myhill-Nerode classes of a language predicate:
// prefixes up to `prefix_len` are distinguished by extensions up to
// `suffix_len`.
inline int nerode_class_count(const std::function<bool(const std::string&)>& member,
                              int prefix_len, int suffix_len) {
  std::vector<std::string> prefixes = words_up_to(prefix_len);
  std::vector<std::string> suffixes = words_up_to(suffix_len);
  std::set<std::vector<bool>> signatures;
  for (const std::string& p : prefixes) {
    std::vector<bool> sig;
    sig.reserve(suffixes.size());
    for (const std::string& s : suffixes) sig.push_back(member(p + s));
    signatures.insert(std::move(sig));
  }
  return static_cast<int>(signatures.size());
}

}  // namespace oracles
