// Picks a tiling of T_4 and prints its zones, then writes one SVG per zone.

#include "cayley/cayley.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace cayley;
  const int k = argc > 1 ? std::stoi(argv[1]) : 4;
  const int pick = argc > 2 ? std::stoi(argv[2]) : 100;
  const auto all = enumerate_tilings(k);
  const LabeledTiling lt = with_default_labels(all[pick % all.size()]);

  std::cout << serialize(lt) << "\n\n" << render_ascii(lt) << '\n';
  for (int label = 1; label <= k; ++label) {
    const Zone z = compute_zone(lt, label);
    std::cout << "zone " << label << ": core " << to_string(z.core);
    for (Dir d : {Dir::Hyp, Dir::E, Dir::N}) std::cout << "  " << dir_name(d) << " arm " << z.arm(d).size();
    std::cout << '\n' << render_ascii(lt, label) << '\n';

    RenderOptions opt;
    opt.zone = label;
    std::ofstream("zone_" + std::to_string(label) + ".svg") << render_svg(lt, opt);
  }

  std::cout << "mixed labeling:\n";
  const MixedSubdivision ms = label_cells(lt);
  for (const MixedCell& c : ms.cells) {
    std::cout << " ";
    for (const GridCoord& t : c.support) std::cout << ' ' << to_string(t);
    std::cout << "  ->";
    for (Summand s : c.summands) std::cout << ' ' << summand_name(s);
    std::cout << '\n';
  }
}
