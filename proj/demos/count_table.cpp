// Tilings of T_k and triangulations of Delta^2 x Delta^(k-1), with the
// entropy ratio and the upper bound on regular subdivisions.

#include "cayley/cayley.hpp"

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
  using namespace cayley;
  const int k_max = argc > 1 ? std::stoi(argv[1]) : 16;
  std::printf("%3s  %30s  %10s  %10s\n", "k", "tilings", "ln/(k^2/2)", "ln 3 bound");
  for (const EntropyRow& r : entropy_report(k_max))
    std::printf("%3d  %30s  %10.6f  %10.6f\n", r.k, r.count.str().c_str(), r.ratio, r.upper_ratio);
  std::printf("beta = %.9f\n\n", beta_constant(1e-9));

  std::printf("%3s  %22s  %s\n", "k", "triangulations", "regular bound (l=3)");
  for (int k = 2; k <= std::min(k_max, 8); ++k)
    std::cout << "  " << k << "  " << count_triangulations(k) << "  " << count_regular_bound(k, 3) << '\n';
}
