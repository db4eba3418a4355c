// qfalab command line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfalab/analysis.hpp"
#include "qfalab/constructions.hpp"
#include "qfalab/io.hpp"
#include "qfalab/linalg.hpp"
#include "qfalab/report.hpp"

namespace {

using namespace qfalab;
using nlohmann::ordered_json;

double env_tolerance() {
  if (const char* env = std::getenv("QFA_LAB_TOL")) {
    try {
      double v = std::stod(env);
      if (v > 0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid QFA_LAB_TOL value '" << env << "'\n";
  }
  return kDefaultTolerance;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_simulate(const std::string& qfa_path, const std::string& word_text, bool as_json) {
  std::vector<std::string> warnings;
  Qfa qfa = load_qfa(qfa_path, &warnings);
  print_warnings(warnings);
  Word word = parse_word(qfa.alphabet, word_text);
  RunTrace trace = run_word(qfa, word);
  if (as_json) {
    ordered_json j;
    j["word"] = word_text;
    j["p_acc"] = trace.p_acc;
    j["p_rej"] = trace.p_rej;
    j["p_undecided"] = trace.p_undecided;
    j["outcome"] = outcome_name(trace.outcome);
    ordered_json events = ordered_json::array();
    for (const StepEvent& e : trace.events) {
      ordered_json ev;
      ev["letter"] = e.letter == kKappa    ? "kappa"
                     : e.letter == kDollar ? "dollar"
                                           : qfa.alphabet[e.letter];
      ev["d_acc"] = e.d_acc;
      ev["d_rej"] = e.d_rej;
      ev["live_norm2"] = e.live_norm2;
      events.push_back(std::move(ev));
    }
    j["events"] = std::move(events);
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "word    : '" << word_text << "'\n";
    std::cout << "p_acc   : " << format_probability(trace.p_acc) << "\n";
    std::cout << "p_rej   : " << format_probability(trace.p_rej) << "\n";
    std::cout << "p_undec : " << format_probability(trace.p_undecided) << "\n";
    std::cout << "outcome : " << outcome_name(trace.outcome) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& qfa_path, const std::string& oracle_path, int max_len,
               double tol, bool as_json) {
  std::vector<std::string> warnings;
  Qfa qfa = load_qfa(qfa_path, &warnings);
  print_warnings(warnings);
  Dfa oracle = load_dfa(oracle_path);
  MarginResult margin = recognition_margin(qfa, oracle, max_len);
  bool recognizes = margin.p > 0.5 + tol;
  if (as_json) {
    ordered_json j;
    j["max_len"] = max_len;
    j["margin"] = margin.p;
    j["worst_word"] = format_word(qfa.alphabet, margin.worst_word);
    j["recognizes"] = recognizes;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "margin over |w| <= " << max_len << " : " << format_probability(margin.p)
              << "\n";
    std::cout << "worst word              : '"
              << format_word(qfa.alphabet, margin.worst_word) << "'\n";
    std::cout << (recognizes ? "recognizes the oracle language with p > 1/2\n"
                             : "does NOT recognize with an isolated cut point\n");
  }
  return recognizes ? 0 : 1;
}

int cmd_check_t12(const std::string& dfa_path, bool as_json) {
  Dfa dfa = load_dfa(dfa_path);
  T12Report report = check_t12(dfa);
  auto verdicts = report.verdicts();
  if (as_json) {
    ordered_json j;
    j["conditions_1_to_4"] = report.conditions_1_to_4;
    j["condition_5"] = report.condition_5;
    if (report.conditions_1_to_4) {
      j["q1"] = report.q1;
      j["q2"] = report.q2;
      j["x"] = format_word(report.minimized.alphabet, report.x);
      if (report.y) j["y"] = format_word(report.minimized.alphabet, *report.y);
    }
    j["minimized_states"] = report.minimized.states;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "minimal automaton: " << report.minimized.n_states() << " states\n";
    for (int i = 0; i < 5; ++i)
      std::cout << "condition " << (i + 1) << " : " << (verdicts[i] ? "holds" : "not found")
                << "\n";
    if (report.conditions_1_to_4) {
      std::cout << "witness    : q1 = " << report.q1 << ", q2 = " << report.q2 << ", x = '"
                << format_word(report.minimized.alphabet, report.x) << "'";
      if (report.y)
        std::cout << ", y = '" << format_word(report.minimized.alphabet, *report.y) << "'";
      std::cout << "\n";
      std::cout << (report.condition_5
                        ? "pattern forbids recognition by any measure-many automaton\n"
                        : "pattern forbids recognition with probability 7/9 + eps\n");
    } else {
      std::cout << "no forbidden pattern found\n";
    }
  }
  return 0;
}

int cmd_decompose(const std::string& qfa_path, bool as_json) {
  std::vector<std::string> warnings;
  Qfa qfa = load_qfa(qfa_path, &warnings);
  print_warnings(warnings);
  DecompositionReport report = decompose_nonhalting(qfa);
  auto basis_to_json = [&](const SubspaceBasis& basis) {
    ordered_json cols = ordered_json::array();
    for (int j = 0; j < basis.dim(); ++j) {
      ordered_json col = ordered_json::array();
      for (int i = 0; i < basis.columns.rows(); ++i) {
        Complex v = basis.columns(i, j);
        if (v.imag() == 0.0) col.push_back(v.real());
        else col.push_back(ordered_json::array({v.real(), v.imag()}));
      }
      cols.push_back(std::move(col));
    }
    return cols;
  };
  if (as_json) {
    ordered_json j;
    j["dims"] = report.dims;
    j["iterations_used"] = report.iterations_used;
    j["dim_e1"] = report.e1.dim();
    j["dim_e2"] = report.e2.dim();
    j["e1"] = basis_to_json(report.e1);
    j["e2"] = basis_to_json(report.e2);
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "subspace dimensions per iteration:";
    for (int d : report.dims) std::cout << " " << d;
    std::cout << "\niterations used: " << report.iterations_used << "\n";
    std::cout << "dim E1 = " << report.e1.dim() << ", dim E2 = " << report.e2.dim() << "\n";
    auto print_basis = [&](const char* name, const SubspaceBasis& basis) {
      std::cout << name << " basis columns:\n";
      for (int j = 0; j < basis.dim(); ++j) {
        std::cout << " ";
        for (int i = 0; i < basis.columns.rows(); ++i) {
          Complex v = basis.columns(i, j);
          std::cout << " " << v.real();
          if (v.imag() != 0.0) std::cout << (v.imag() < 0 ? "-" : "+")
                                         << std::abs(v.imag()) << "i";
        }
        std::cout << "\n";
      }
    };
    print_basis("E1", report.e1);
    print_basis("E2", report.e2);
  }
  return 0;
}

int cmd_union_build(const std::string& k1_path, double p1, const std::string& k2_path,
                    double p2, const std::string& out_path, bool as_json) {
  std::vector<std::string> warnings;
  Qfa k1 = load_qfa(k1_path, &warnings);
  Qfa k2 = load_qfa(k2_path, &warnings);
  print_warnings(warnings);
  UnionWeights w = union_weights(p1, p2);
  Qfa combined = probabilistic_union(k1, p1, k2, p2);
  save_qfa(combined, out_path);
  if (as_json) {
    ordered_json j;
    j["output"] = out_path;
    j["states"] = combined.n_states();
    j["alpha1"] = w.alpha1;
    j["alpha2"] = w.alpha2;
    j["alpha3"] = w.alpha3;
    j["guaranteed_p"] = w.guaranteed_p;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "wrote " << out_path << " (" << combined.n_states() << " states)\n";
    std::cout << "weights: " << format_probability(w.alpha1) << ", "
              << format_probability(w.alpha2) << ", " << format_probability(w.alpha3) << "\n";
    std::cout << "guaranteed p: " << format_probability(w.guaranteed_p) << "\n";
  }
  return 0;
}

int cmd_points(const std::string& k1_path, const std::string& k2_path,
               const std::string& oracle_path, int max_len, const std::string& out_path) {
  std::vector<std::string> warnings;
  Qfa k1 = load_qfa(k1_path, &warnings);
  Qfa k2 = load_qfa(k2_path, &warnings);
  print_warnings(warnings);
  Dfa oracle = load_dfa(oracle_path);
  std::vector<ProbabilityPoint> points = probability_points(k1, k2, oracle, max_len);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << "word,x,y,member\n";
  out.precision(17);
  for (const ProbabilityPoint& p : points)
    out << format_word(k1.alphabet, p.word) << "," << p.x << "," << p.y << ","
        << (p.member ? 1 : 0) << "\n";
  std::cout << "wrote " << points.size() << " points to " << out_path << "\n";
  return 0;
}

int cmd_separability(const std::string& points_path, bool as_json) {
  std::ifstream in(points_path);
  if (!in) throw std::runtime_error("cannot open '" + points_path + "'");
  std::vector<Point2> members, non_members;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string word, x_text, y_text, member_text;
    std::getline(ss, word, ',');
    std::getline(ss, x_text, ',');
    std::getline(ss, y_text, ',');
    std::getline(ss, member_text, ',');
    if (line_no == 1 && (x_text == "x" || member_text == "member")) continue;  // header
    try {
      Point2 p{std::stod(x_text), std::stod(y_text)};
      bool member = member_text == "1" || member_text == "true";
      (member ? members : non_members).push_back(p);
    } catch (...) {
      throw std::runtime_error(points_path + ":" + std::to_string(line_no) +
                               ": expected word,x,y,member");
    }
  }
  auto line_opt = separating_line(non_members, members);
  if (as_json) {
    ordered_json j;
    j["separable"] = line_opt.has_value();
    if (line_opt) {
      j["a"] = line_opt->a;
      j["b"] = line_opt->b;
      j["c"] = line_opt->c;
      j["margin"] = line_opt->margin;
    }
    std::cout << j.dump(1) << "\n";
  } else if (line_opt) {
    std::cout << "separable: " << line_opt->a << " * x + " << line_opt->b
              << " * y = " << line_opt->c << "  (margin " << line_opt->margin << ")\n";
  } else {
    std::cout << "none\n";
  }
  return 0;
}

int cmd_tv_check(int trials, double eps, bool as_json) {
  if (trials < 1 || !(eps > 0)) throw std::runtime_error("tv-check: need trials >= 1, eps > 0");
  std::mt19937_64 rng(0x7fb1);
  double worst_ratio = 0;
  int violations = 0;
  for (int trial = 0; trial < trials; ++trial) {
    int dim = 2 + trial % 15;
    StateVector psi = linalg::random_unit_vector(dim, rng);
    StateVector phi;
    double diff;
    do {
      StateVector dir = linalg::random_unit_vector(dim, rng);
      phi = psi + 0.5 * eps * dir;
      phi /= phi.norm();
      diff = (psi - phi).norm();
    } while (!(diff < eps) || diff == 0.0);
    std::vector<double> p(dim), r(dim);
    for (int i = 0; i < dim; ++i) {
      p[i] = std::norm(psi(i));
      r[i] = std::norm(phi(i));
    }
    double delta = tv_distance(p, r);
    worst_ratio = std::max(worst_ratio, delta / eps);
    if (!(delta < 2 * eps)) ++violations;
  }
  if (as_json) {
    ordered_json j;
    j["trials"] = trials;
    j["eps"] = eps;
    j["max_ratio"] = worst_ratio;
    j["violations"] = violations;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "max observed delta/eps over " << trials << " trials: " << worst_ratio
              << " (bound 2)\n";
    std::cout << "violations of delta < 2*eps: " << violations << "\n";
  }
  return violations == 0 ? 0 : 1;
}

int cmd_reproduce(const std::string& fixtures, double tol, bool as_json) {
  ReproduceOptions options;
  options.fixtures_dir = fixtures;
  options.tol = tol;
  std::vector<ReportRow> rows = reproduce_paper(options);
  if (as_json) std::cout << format_report_json(rows);
  else std::cout << format_report_table(rows);
  return all_rows_pass(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measure-many quantum finite automata laboratory"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");
  double tol = env_tolerance();

  std::string qfa_path, word_text, oracle_path, dfa_path, out_path, points_path;
  std::string k1_path, k2_path;
  std::string fixtures = "fixtures";
  int max_len = 12;
  double p1 = 0, p2 = 0, eps = 0.01;
  int trials = 1000;

  auto* simulate = app.add_subcommand("simulate", "run one word through a qfa");
  simulate->add_option("qfa", qfa_path, "automaton file")->required();
  simulate->add_option("word", word_text, "input word (may be empty)");

  auto* verify = app.add_subcommand("verify", "scan the recognition margin against a dfa oracle");
  verify->add_option("qfa", qfa_path)->required();
  verify->add_option("--oracle", oracle_path, "dfa oracle file")->required();
  verify->add_option("--max-len", max_len, "maximum word length");

  auto* t12 = app.add_subcommand("check-t12", "forbidden-pattern check on the minimal automaton");
  t12->add_option("dfa", dfa_path)->required();

  auto* decompose = app.add_subcommand("decompose", "E1/E2 split of the non-halting space");
  decompose->add_option("qfa", qfa_path)->required();

  auto* union_build = app.add_subcommand("union-build", "probabilistic union of two qfas");
  union_build->add_option("--k1", k1_path)->required();
  union_build->add_option("--p1", p1, "recognition probability of k1")->required();
  union_build->add_option("--k2", k2_path)->required();
  union_build->add_option("--p2", p2, "recognition probability of k2")->required();
  union_build->add_option("-o,--output", out_path)->required();

  auto* points = app.add_subcommand("points", "write word probability points as csv");
  points->add_option("--k1", k1_path)->required();
  points->add_option("--k2", k2_path)->required();
  points->add_option("--oracle", oracle_path)->required();
  points->add_option("--max-len", max_len);
  points->add_option("-o,--output", out_path)->required();

  auto* separability = app.add_subcommand("separability", "max-margin line between word points");
  separability->add_option("--points", points_path, "csv rows word,x,y,member")->required();

  auto* tv = app.add_subcommand("tv-check", "sample the total-variation bound");
  tv->add_option("--trials", trials);
  tv->add_option("--eps", eps);

  auto* reproduce = app.add_subcommand("reproduce-paper", "run every bundled claim check");
  reproduce->add_option("--fixtures", fixtures, "fixtures directory");

  // Let `--json` be written after the subcommand as well.
  for (CLI::App* sub : {simulate, verify, t12, decompose, union_build, points, separability,
                        tv, reproduce})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(qfa_path, word_text, as_json);
    if (verify->parsed()) return cmd_verify(qfa_path, oracle_path, max_len, tol, as_json);
    if (t12->parsed()) return cmd_check_t12(dfa_path, as_json);
    if (decompose->parsed()) return cmd_decompose(qfa_path, as_json);
    if (union_build->parsed())
      return cmd_union_build(k1_path, p1, k2_path, p2, out_path, as_json);
    if (points->parsed()) return cmd_points(k1_path, k2_path, oracle_path, max_len, out_path);
    if (separability->parsed()) return cmd_separability(points_path, as_json);
    if (tv->parsed()) return cmd_tv_check(trials, eps, as_json);
    if (reproduce->parsed()) return cmd_reproduce(fixtures, tol, as_json);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
