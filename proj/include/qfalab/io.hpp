#pragma once

#include <string>
#include <variant>

#include "qfalab/dfa.hpp"
#include "qfalab/qfa.hpp"

namespace qfalab {

using Automaton = std::variant<Qfa, Dfa>;

/// Loads a {"type": "qfa"|"dfa", ...} JSON document. QFAs are validated on
/// load (ValidationError carries the full report); parse failures raise
/// std::runtime_error with the parser position. Validation warnings, if any,
/// are appended to *warnings.
Automaton load_automaton(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Type-checked convenience wrappers around load_automaton.
Qfa load_qfa(const std::string& path, std::vector<std::string>* warnings = nullptr);
Dfa load_dfa(const std::string& path);

void save_qfa(const Qfa& qfa, const std::string& path);
void save_dfa(const Dfa& dfa, const std::string& path);

std::string qfa_to_json_text(const Qfa& qfa);
std::string dfa_to_json_text(const Dfa& dfa);
Qfa qfa_from_json_text(const std::string& text);
Dfa dfa_from_json_text(const std::string& text);

/// 12-significant-digit decimal, annotated with the nearest small fraction
/// when one matches within 1e-9 (e.g. "0.666666666667 (= 2/3)").
std::string format_probability(double p);

}  // namespace qfalab
