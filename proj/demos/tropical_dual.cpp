// A seeded generic lifting matrix, its tropical line arrangement, and the
// dual fine mixed subdivision drawn as a labeled tiling.

#include "cayley/cayley.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace cayley;
  const int k = argc > 1 ? std::stoi(argv[1]) : 4;
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 2024;
  const LiftMatrix m = random_lift_matrix(k, seed);
  std::cout << "seed " << seed << "\nmatrix " << lift_matrix_json(m) << "\n\n";

  for (const ArrangementVertex& v : arrangement_vertices(m)) {
    std::cout << "(" << v.x[0] << ", " << v.x[1] << ")  type";
    for (auto s : v.type) std::cout << ' ' << summand_name(static_cast<Summand>(s));
    std::cout << '\n';
  }

  const MixedSubdivision ms = coherent_subdivision(m);
  const LabeledTiling lt = to_labeled_tiling(ms);
  std::cout << '\n' << render_ascii(lt) << '\n';
  std::cout << "cells " << ms.cells.size() << ", heights from the matrix "
            << (matrix_certifies(m, ms) ? "certify" : "do not certify") << " regularity\n";
}
