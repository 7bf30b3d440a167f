#pragma once

// JSON documents for tilings:
//   {"k":2,"lozenges":[{"down":[0,0],"dir":"N"}],"labels":{"1":[0,0],"2":[1,0]}}
// Lozenges are listed in row-major DOWN order, labels in increasing order.
// "labels" is optional; a document without it describes an unlabeled tiling.

#include "cayley/trigrid.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <vector>

namespace cayley {

struct TilingDocument {
  Tiling tiling;
  std::optional<std::vector<GridCoord>> labels;

  LabeledTiling labeled() const {
    return labels ? LabeledTiling{tiling, *labels} : with_default_labels(tiling);
  }
};

namespace detail {

inline void append_lozenges(std::string& out, const Tiling& t) {
  out += "\"lozenges\":[";
  bool first = true;
  for (const GridCoord& d : down_cells(t.k())) {
    if (!first) out += ',';
    first = false;
    out += "{\"down\":[" + std::to_string(d.x) + "," + std::to_string(d.y) + "],\"dir\":\"" +
           dir_name(t.dir(d)) + "\"}";
  }
  out += ']';
}

}  // namespace detail

inline std::string serialize(const Tiling& t) {
  std::string out = "{\"k\":" + std::to_string(t.k()) + ",";
  detail::append_lozenges(out, t);
  out += '}';
  return out;
}

inline std::string serialize(const LabeledTiling& t) {
  std::string out = "{\"k\":" + std::to_string(t.k()) + ",";
  detail::append_lozenges(out, t.tiling);
  out += ",\"labels\":{";
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    if (i) out += ',';
    out += "\"" + std::to_string(i + 1) + "\":[" + std::to_string(t.labels[i].x) + "," +
           std::to_string(t.labels[i].y) + "]";
  }
  out += "}}";
  return out;
}

inline std::string serialize(const TilingDocument& doc) {
  return doc.labels ? serialize(LabeledTiling{doc.tiling, *doc.labels}) : serialize(doc.tiling);
}

namespace detail {

inline std::array<int, 2> read_pair(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw MalformedInput(where + ": expected [x,y] integer pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace detail

/// Parses a tiling document. Syntax errors carry the byte offset; semantic
/// errors name the JSON location. Duplicate object keys are rejected.
inline TilingDocument parse_tiling(std::string_view text) {
  using nlohmann::json;
  std::vector<std::set<std::string>> key_stack;
  std::optional<std::string> duplicate;
  json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t ev, json& parsed) {
    switch (ev) {
      case json::parse_event_t::object_start: key_stack.emplace_back(); break;
      case json::parse_event_t::object_end: key_stack.pop_back(); break;
      case json::parse_event_t::key: {
        auto key = parsed.get<std::string>();
        if (!key_stack.back().insert(key).second && !duplicate) duplicate = key;
        break;
      }
      default: break;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), cb);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("JSON syntax error: ") + e.what(), e.byte);
  }
  if (duplicate) throw MalformedInput("duplicate key \"" + *duplicate + "\"");
  if (!doc.is_object()) throw MalformedInput("/: expected an object");
  if (!doc.contains("k") || !doc["k"].is_number_integer())
    throw MalformedInput("/k: missing or not an integer");
  const int k = doc["k"].get<int>();
  if (k < 1) throw MalformedInput("/k: must be >= 1");
  if (!doc.contains("lozenges") || !doc["lozenges"].is_array())
    throw MalformedInput("/lozenges: missing or not an array");

  std::vector<std::optional<Dir>> match(down_count(k));
  const auto& lozenges = doc["lozenges"];
  for (std::size_t i = 0; i < lozenges.size(); ++i) {
    const std::string where = "/lozenges/" + std::to_string(i);
    const auto& l = lozenges[i];
    if (!l.is_object() || !l.contains("down") || !l.contains("dir") || !l["dir"].is_string())
      throw MalformedInput(where + ": expected {\"down\":[x,y],\"dir\":...}");
    auto [x, y] = detail::read_pair(l["down"], where + "/down");
    const GridCoord d = down(x, y);
    if (!in_grid(d, k)) throw MalformedInput(where + ": " + to_string(d) + " outside T_k");
    auto dir = dir_from_name(l["dir"].get<std::string>());
    if (!dir) throw MalformedInput(where + "/dir: expected HYP, E or N");
    auto& slot = match[down_index(k, d)];
    if (slot) throw MalformedInput(where + ": " + to_string(d) + " assigned twice");
    slot = *dir;
  }
  std::vector<Dir> dirs;
  dirs.reserve(match.size());
  const auto downs = down_cells(k);
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (!match[i]) throw MalformedInput("/lozenges: no entry for " + to_string(downs[i]));
    dirs.push_back(*match[i]);
  }
  TilingDocument out{Tiling(k, std::move(dirs)), std::nullopt};
  if (auto v = validate_tiling(out.tiling))
    throw MalformedInput("/lozenges: " + to_string(v->up_cell) + " used by two lozenges");

  if (doc.contains("labels")) {
    const auto& labels = doc["labels"];
    if (!labels.is_object()) throw MalformedInput("/labels: expected an object");
    std::vector<std::optional<GridCoord>> slots(k);
    for (auto it = labels.begin(); it != labels.end(); ++it) {
      const std::string where = "/labels/" + it.key();
      int idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoi(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw MalformedInput(where + ": label index is not an integer");
      }
      if (idx < 1 || idx > k) throw MalformedInput(where + ": label index out of range");
      auto [x, y] = detail::read_pair(it.value(), where);
      slots[idx - 1] = up(x, y);
    }
    std::vector<GridCoord> lab;
    for (int i = 0; i < k; ++i) {
      if (!slots[i]) throw MalformedInput("/labels: label " + std::to_string(i + 1) + " missing");
      lab.push_back(*slots[i]);
    }
    if (!labels_valid(LabeledTiling{out.tiling, lab}))
      throw MalformedInput("/labels: not a bijection onto the free triangles");
    out.labels = std::move(lab);
  }
  return out;
}

}  // namespace cayley
