#pragma once

// SVG and ASCII pictures of lozenge tilings, optionally shading one zone.

#include "cayley/minkowski.hpp"
#include "cayley/trigrid.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace cayley {

struct RenderOptions {
  double scale = 60.0;
  double margin = 10.0;
  std::optional<int> zone;  // label whose zone is shaded
};

namespace detail {

inline std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/// Cells of the zone of `label`: the core, then each arm lozenge's two triangles.
inline std::vector<GridCoord> zone_cells(const LabeledTiling& lt, int label) {
  const Zone z = compute_zone(lt, label);
  std::vector<GridCoord> out{z.core};
  for (const auto& arm : z.arms)
    for (const GridCoord& d : arm) {
      out.push_back(d);
      out.push_back(lt.tiling.partner(d));
    }
  return out;
}

inline char label_char(int label) {
  if (label < 10) return static_cast<char>('0' + label);
  if (label < 36) return static_cast<char>('A' + label - 10);
  return '?';
}

}  // namespace detail

/// SVG 1.1: lozenges coloured by direction, free triangles white and
/// numbered, zone triangles overlaid in translucent teal.
inline std::string render_svg(const LabeledTiling& lt, const RenderOptions& opt = {}) {
  require_valid(lt);
  const int k = lt.k();
  const double h = std::sqrt(3.0) / 2.0;
  auto px = [&](int x, int y) {
    return detail::fixed3(opt.margin + opt.scale * (x + y / 2.0)) + "," +
           detail::fixed3(opt.margin + opt.scale * (k - y) * h);
  };
  auto polygon = [&](const std::vector<std::array<int, 2>>& pts, const std::string& attrs) {
    std::string s = "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) s += ' ';
      s += px(pts[i][0], pts[i][1]);
    }
    return s + "\" " + attrs + "/>\n";
  };
  const std::string width = detail::fixed3(2 * opt.margin + opt.scale * k);
  const std::string height = detail::fixed3(2 * opt.margin + opt.scale * k * h);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + width + "\" height=\"" +
         height + "\" viewBox=\"0 0 " + width + " " + height + "\">\n";
  out += "<g stroke=\"#222222\" stroke-width=\"1.5\" stroke-linejoin=\"round\">\n";
  static const char* fill[] = {"#f6e3a1", "#a8d5e2", "#f9a99b"};
  for (const GridCoord& d : down_cells(k)) {
    const GridCoord u = lt.tiling.partner(d);
    const auto dc = corners(d), uc = corners(u);
    std::vector<std::array<int, 2>> shared;
    std::array<int, 2> far_d{}, far_u{};
    for (const auto& p : dc) {
      if (std::find(uc.begin(), uc.end(), p) != uc.end())
        shared.push_back(p);
      else
        far_d = p;
    }
    for (const auto& p : uc)
      if (std::find(dc.begin(), dc.end(), p) == dc.end()) far_u = p;
    out += polygon({shared[0], far_u, shared[1], far_d},
                   std::string("fill=\"") + fill[static_cast<int>(lt.tiling.dir(d))] + "\"");
  }
  for (const GridCoord& u : lt.labels) {
    const auto c = corners(u);
    out += polygon({c[0], c[1], c[2]}, "fill=\"#ffffff\"");
  }
  out += "</g>\n";
  if (opt.zone) {
    out += "<g fill=\"#3c6e71\" fill-opacity=\"0.45\" stroke=\"none\">\n";
    for (const GridCoord& t : detail::zone_cells(lt, *opt.zone)) {
      const auto c = corners(t);
      out += polygon({c[0], c[1], c[2]}, "class=\"zone\"");
    }
    out += "</g>\n";
  }
  out += "<g font-family=\"sans-serif\" font-size=\"" + detail::fixed3(opt.scale * 0.35) +
         "\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
  for (std::size_t i = 0; i < lt.labels.size(); ++i) {
    const GridCoord& u = lt.labels[i];
    const double cx = opt.margin + opt.scale * (u.x + 0.5 + u.y / 2.0);
    const double cy = opt.margin + opt.scale * (k - u.y - 1.0 / 3.0) * h;
    out += "<text x=\"" + detail::fixed3(cx) + "\" y=\"" + detail::fixed3(cy) + "\">" + std::to_string(i + 1) +
           "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

/// One character per unit triangle, apex row first. Free triangles show
/// their label (1-9, then A-Z); both halves of a lozenge show the slope of
/// their shared edge: '\' (HYP), '/' (E), '=' (N). Zone triangles other
/// than the core show '#'.
inline std::string render_ascii(const LabeledTiling& lt, std::optional<int> zone = {}) {
  require_valid(lt);
  const int k = lt.k();
  std::vector<char> glyph(static_cast<std::size_t>(k) * k, '?');
  static const char dir_glyph[] = {'\\', '/', '='};
  for (const GridCoord& d : down_cells(k)) {
    const char g = dir_glyph[static_cast<int>(lt.tiling.dir(d))];
    glyph[cell_index(k, d)] = g;
    glyph[cell_index(k, lt.tiling.partner(d))] = g;
  }
  for (std::size_t i = 0; i < lt.labels.size(); ++i)
    glyph[cell_index(k, lt.labels[i])] = detail::label_char(static_cast<int>(i) + 1);
  if (zone) {
    const auto cells = detail::zone_cells(lt, *zone);
    for (std::size_t i = 1; i < cells.size(); ++i) glyph[cell_index(k, cells[i])] = '#';
  }
  std::string out;
  for (int y = k - 1; y >= 0; --y) {
    out.append(static_cast<std::size_t>(y), ' ');
    for (int x = 0; x < k - y; ++x) {
      out += glyph[cell_index(k, up(x, y))];
      if (x + 1 < k - y) out += glyph[cell_index(k, down(x, y))];
    }
    out += '\n';
  }
  return out;
}

}  // namespace cayley
