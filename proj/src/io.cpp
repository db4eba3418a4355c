#include "qfalab/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qfalab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail_validation(const std::string& what,
                                  std::vector<std::string> violations) {
  std::string message = what;
  for (const auto& v : violations) message += "\n  - " + v;
  throw ValidationError(message, std::move(violations));
}

Complex entry_from_json(const json& j, std::vector<std::string>& problems,
                        const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  problems.push_back(where + ": matrix entry must be a number or [re, im]");
  return Complex(0, 0);
}

Matrix matrix_from_json(const json& j, int n, std::vector<std::string>& problems,
                        const std::string& where) {
  Matrix m = Matrix::Zero(n, n);
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    problems.push_back(where + ": expected " + std::to_string(n) + " matrix rows");
    return m;
  }
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n) {
      problems.push_back(where + ": row " + std::to_string(i) + " must have " +
                         std::to_string(n) + " entries");
      continue;
    }
    for (int k = 0; k < n; ++k) m(i, k) = entry_from_json(j[i][k], problems, where);
  }
  return m;
}

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) {
      Complex v = m(i, j);
      if (v.imag() == 0.0) row.push_back(v.real());
      else row.push_back(ordered_json::array({v.real(), v.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> string_list(const json& j, std::vector<std::string>& problems,
                                     const std::string& where) {
  std::vector<std::string> out;
  if (!j.is_array()) {
    problems.push_back(where + ": expected an array of strings");
    return out;
  }
  for (const auto& item : j) {
    if (!item.is_string()) {
      problems.push_back(where + ": expected an array of strings");
      return out;
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

int resolve_state(const std::vector<std::string>& states, const std::string& name,
                  std::vector<std::string>& problems, const std::string& where) {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  problems.push_back(where + ": unknown state '" + name + "'");
  return 0;
}

Qfa qfa_from_json(const json& j) {
  std::vector<std::string> problems;
  Qfa qfa;
  qfa.states = string_list(j.value("states", json::array()), problems, "states");
  qfa.alphabet = string_list(j.value("alphabet", json::array()), problems, "alphabet");
  if (qfa.states.empty()) problems.push_back("states: must be nonempty");
  if (!j.contains("start") || !j["start"].is_string())
    problems.push_back("start: expected a state name");
  else
    qfa.start = resolve_state(qfa.states, j["start"].get<std::string>(), problems, "start");

  for (const auto& name : string_list(j.value("accept", json::array()), problems, "accept"))
    qfa.accept.push_back(resolve_state(qfa.states, name, problems, "accept"));
  for (const auto& name : string_list(j.value("reject", json::array()), problems, "reject"))
    qfa.reject.push_back(resolve_state(qfa.states, name, problems, "reject"));
  std::sort(qfa.accept.begin(), qfa.accept.end());
  std::sort(qfa.reject.begin(), qfa.reject.end());

  const int n = qfa.n_states();
  if (!j.contains("operators") || !j["operators"].is_object()) {
    problems.push_back("operators: missing object");
  } else {
    const json& ops = j["operators"];
    if (ops.contains("kappa")) qfa.kappa_op = matrix_from_json(ops["kappa"], n, problems, "operators.kappa");
    else problems.push_back("operators: missing 'kappa'");
    if (ops.contains("dollar")) qfa.dollar_op = matrix_from_json(ops["dollar"], n, problems, "operators.dollar");
    else problems.push_back("operators: missing 'dollar'");
    for (const auto& letter : qfa.alphabet) {
      if (ops.contains(letter))
        qfa.letter_ops.push_back(matrix_from_json(ops[letter], n, problems, "operators." + letter));
      else
        problems.push_back("operators: missing '" + letter + "'");
    }
    for (auto it = ops.begin(); it != ops.end(); ++it) {
      const std::string& key = it.key();
      if (key != "kappa" && key != "dollar" &&
          std::find(qfa.alphabet.begin(), qfa.alphabet.end(), key) == qfa.alphabet.end())
        problems.push_back("operators: '" + key + "' is not in the alphabet");
    }
  }
  if (!problems.empty()) fail_validation("automaton file is invalid", std::move(problems));
  return qfa;
}

Dfa dfa_from_json(const json& j) {
  std::vector<std::string> problems;
  Dfa dfa;
  dfa.states = string_list(j.value("states", json::array()), problems, "states");
  dfa.alphabet = string_list(j.value("alphabet", json::array()), problems, "alphabet");
  if (dfa.states.empty()) problems.push_back("states: must be nonempty");
  if (!j.contains("start") || !j["start"].is_string())
    problems.push_back("start: expected a state name");
  else
    dfa.start = resolve_state(dfa.states, j["start"].get<std::string>(), problems, "start");

  dfa.accepting.assign(dfa.states.size(), 0);
  for (const auto& name : string_list(j.value("accept", json::array()), problems, "accept")) {
    int q = resolve_state(dfa.states, name, problems, "accept");
    if (q >= 0 && q < dfa.n_states()) dfa.accepting[q] = 1;
  }

  dfa.delta.assign(dfa.states.size(), std::vector<int>(dfa.alphabet.size(), 0));
  if (!j.contains("delta") || !j["delta"].is_object()) {
    problems.push_back("delta: missing object");
  } else {
    for (int q = 0; q < dfa.n_states(); ++q) {
      const std::string& state = dfa.states[q];
      if (!j["delta"].contains(state)) {
        problems.push_back("delta: missing row for state '" + state + "'");
        continue;
      }
      const json& row = j["delta"][state];
      for (int letter = 0; letter < dfa.n_letters(); ++letter) {
        const std::string& sym = dfa.alphabet[letter];
        if (!row.contains(sym) || !row[sym].is_string()) {
          problems.push_back("delta." + state + ": missing transition on '" + sym + "'");
          continue;
        }
        dfa.delta[q][letter] =
            resolve_state(dfa.states, row[sym].get<std::string>(), problems, "delta." + state);
      }
    }
  }
  if (!problems.empty()) fail_validation("automaton file is invalid", std::move(problems));
  std::vector<std::string> structural = validate_dfa(dfa);
  if (!structural.empty()) fail_validation("automaton file is invalid", std::move(structural));
  return dfa;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("parse error: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

Automaton load_automaton(const std::string& path, std::vector<std::string>* warnings) {
  json j = parse_text(read_file(path));
  std::string type = j.value("type", "");
  if (type == "qfa") {
    Qfa qfa = qfa_from_json(j);
    ValidationReport report = validate_qfa(qfa);
    if (!report.ok())
      fail_validation("'" + path + "' failed validation", std::move(report.violations));
    if (warnings)
      warnings->insert(warnings->end(), report.warnings.begin(), report.warnings.end());
    return qfa;
  }
  if (type == "dfa") return dfa_from_json(j);
  throw std::runtime_error("'" + path + "': unknown automaton type '" + type + "'");
}

Qfa load_qfa(const std::string& path, std::vector<std::string>* warnings) {
  Automaton a = load_automaton(path, warnings);
  if (auto* qfa = std::get_if<Qfa>(&a)) return std::move(*qfa);
  throw std::runtime_error("'" + path + "' is not a qfa file");
}

Dfa load_dfa(const std::string& path) {
  Automaton a = load_automaton(path);
  if (auto* dfa = std::get_if<Dfa>(&a)) return std::move(*dfa);
  throw std::runtime_error("'" + path + "' is not a dfa file");
}

std::string qfa_to_json_text(const Qfa& qfa) {
  ordered_json j;
  j["type"] = "qfa";
  j["states"] = qfa.states;
  j["alphabet"] = qfa.alphabet;
  j["start"] = qfa.states.at(qfa.start);
  ordered_json acc = ordered_json::array(), rej = ordered_json::array();
  for (int q : qfa.accept) acc.push_back(qfa.states.at(q));
  for (int q : qfa.reject) rej.push_back(qfa.states.at(q));
  j["accept"] = std::move(acc);
  j["reject"] = std::move(rej);
  ordered_json ops;
  ops["kappa"] = matrix_to_json(qfa.kappa_op);
  ops["dollar"] = matrix_to_json(qfa.dollar_op);
  for (int letter = 0; letter < qfa.n_letters(); ++letter)
    ops[qfa.alphabet[letter]] = matrix_to_json(qfa.letter_ops[letter]);
  j["operators"] = std::move(ops);
  return j.dump(1) + "\n";
}

std::string dfa_to_json_text(const Dfa& dfa) {
  ordered_json j;
  j["type"] = "dfa";
  j["states"] = dfa.states;
  j["alphabet"] = dfa.alphabet;
  j["start"] = dfa.states.at(dfa.start);
  ordered_json acc = ordered_json::array();
  for (int q = 0; q < dfa.n_states(); ++q)
    if (dfa.accepting[q]) acc.push_back(dfa.states[q]);
  j["accept"] = std::move(acc);
  ordered_json delta;
  for (int q = 0; q < dfa.n_states(); ++q) {
    ordered_json row;
    for (int letter = 0; letter < dfa.n_letters(); ++letter)
      row[dfa.alphabet[letter]] = dfa.states.at(dfa.delta[q][letter]);
    delta[dfa.states[q]] = std::move(row);
  }
  j["delta"] = std::move(delta);
  return j.dump(1) + "\n";
}

Qfa qfa_from_json_text(const std::string& text) {
  Qfa qfa = qfa_from_json(parse_text(text));
  ValidationReport report = validate_qfa(qfa);
  if (!report.ok()) fail_validation("automaton failed validation", std::move(report.violations));
  return qfa;
}

Dfa dfa_from_json_text(const std::string& text) { return dfa_from_json(parse_text(text)); }

void save_qfa(const Qfa& qfa, const std::string& path) {
  write_file(path, qfa_to_json_text(qfa));
}

void save_dfa(const Dfa& dfa, const std::string& path) {
  write_file(path, dfa_to_json_text(dfa));
}

std::string format_probability(double p) {
  std::ostringstream out;
  out.precision(12);
  out << p;
  for (long den = 1; den <= 64; ++den) {
    double scaled = p * static_cast<double>(den);
    long num = std::lround(scaled);
    if (std::abs(p - static_cast<double>(num) / static_cast<double>(den)) <= 1e-9) {
      long g = std::gcd(std::abs(num), den);
      long rn = num / g, rd = den / g;
      if (rd == 1) out << " (= " << rn << ")";
      else out << " (= " << rn << "/" << rd << ")";
      break;
    }
  }
  return out.str();
}

}  // namespace qfalab
