#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qfalab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Superposition over automaton states, one amplitude per state.
/// May be sub-normalized after halting projections.
using StateVector = Eigen::VectorXcd;

/// A word is a sequence of indices into an automaton's input alphabet.
using Word = std::vector<int>;

// Working-alphabet codes. Nonnegative values index the input alphabet,
// the endmarkers get reserved codes.
inline constexpr int kKappa = -1;
inline constexpr int kDollar = -2;

/// A word over the working alphabet (may contain endmarker codes).
using WorkingWord = std::vector<int>;

std::string format_word(const std::vector<std::string>& alphabet, const Word& word);

/// Inverse of format_word. If every alphabet symbol is a single character the
/// text is read character by character, otherwise symbols must be separated
/// by spaces or commas. Throws std::invalid_argument on unknown symbols.
Word parse_word(const std::vector<std::string>& alphabet, std::string_view text);

/// Visits every word with |w| <= max_len in length-lexicographic order
/// (shortest first, then by letter index).
void for_each_word(int n_letters, int max_len, const std::function<void(const Word&)>& visit);

std::vector<Word> generate_corpus(int n_letters, int max_len);

/// Number of words with |w| <= max_len over an n-letter alphabet.
std::uint64_t corpus_size(int n_letters, int max_len);

}  // namespace qfalab
