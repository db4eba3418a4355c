// Regenerates the bundled automaton fixtures from the built-in constructions.

#include <iostream>
#include <string>

#include "qfalab/constructions.hpp"
#include "qfalab/dfa.hpp"
#include "qfalab/io.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  using namespace qfalab;
  save_qfa(build_k2(), dir + "/k2.qfa");
  save_qfa(build_k3(), dir + "/k3.qfa");
  save_qfa(build_even_a_qfa(), dir + "/even_a.qfa");
  save_dfa(build_g1(), dir + "/g1.dfa");
  save_dfa(build_g2(), dir + "/g2.dfa");
  save_dfa(build_g3(), dir + "/g3.dfa");
  save_dfa(build_even_a_dfa(), dir + "/even_a.dfa");
  std::cout << "wrote 7 fixture files to " << dir << "\n";
  return 0;
}
