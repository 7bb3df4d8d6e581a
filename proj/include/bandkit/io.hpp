#ifndef BANDKIT_IO_HPP_
#define BANDKIT_IO_HPP_

#include <fstream>
#include <string>

#include <json.hpp>

#include "finite_band.hpp"
#include "scheme.hpp"
#include "word.hpp"

namespace bandkit {

//! Scheme files: {"n": 5, "entries": {"1,2": "x2 x2 x3 x4 x5", ...}} with
//! one entry per pair i < j, words in the usual text syntax.
inline nlohmann::json scheme_to_json(const Scheme& s) {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, w] : s.entries()) {
    entries[std::to_string(key.first) + "," + std::to_string(key.second)] =
        w.str_tokens();
  }
  return nlohmann::json{{"n", s.arity()}, {"entries", entries}};
}

inline Scheme scheme_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")
      || !j["n"].is_number_unsigned() || !j["entries"].is_object()) {
    throw parse_error("scheme file: expected {\"n\": ..., \"entries\": {...}}");
  }
  const auto n = j["n"].get<std::uint32_t>();
  Scheme::map_type entries;
  for (const auto& [key, value] : j["entries"].items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos) {
      throw parse_error("scheme file: bad entry key \"" + key + "\"");
    }
    std::uint32_t i, jj;
    try {
      i = static_cast<std::uint32_t>(std::stoul(key.substr(0, comma)));
      jj = static_cast<std::uint32_t>(std::stoul(key.substr(comma + 1)));
    } catch (const std::exception&) {
      throw parse_error("scheme file: bad entry key \"" + key + "\"");
    }
    if (i == 0 || i >= jj || jj > n) {
      throw parse_error("scheme file: entry key \"" + key
                        + "\" is not a pair 1 <= i < j <= n");
    }
    if (!value.is_string()) {
      throw parse_error("scheme file: entry \"" + key + "\" is not a word string");
    }
    entries.emplace(Scheme::key_type{i, jj}, Word::parse(value.get<std::string>()));
  }
  return Scheme(n, std::move(entries));
}

//! Band files: {"size": 3, "table": [[...],...], "names": [...]}; row i,
//! column j holds the index of (element i)*(element j). Names optional.
inline nlohmann::json band_to_json(const FiniteBand& s) {
  nlohmann::json table = nlohmann::json::array();
  for (std::uint32_t a = 0; a < s.size(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::uint32_t b = 0; b < s.size(); ++b) {
      row.push_back(s.product(a, b));
    }
    table.push_back(std::move(row));
  }
  return nlohmann::json{{"size", s.size()}, {"table", table}, {"names", s.names()}};
}

inline FiniteBand band_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("table")
      || !j["size"].is_number_unsigned() || !j["table"].is_array()) {
    throw parse_error("band file: expected {\"size\": ..., \"table\": [[...]]}");
  }
  const auto size = j["size"].get<std::uint32_t>();
  std::vector<std::vector<std::uint32_t>> table;
  for (const auto& row : j["table"]) {
    if (!row.is_array()) {
      throw parse_error("band file: table rows must be arrays");
    }
    std::vector<std::uint32_t> r;
    for (const auto& cell : row) {
      if (!cell.is_number_unsigned()) {
        throw parse_error("band file: table entries must be element indices");
      }
      r.push_back(cell.get<std::uint32_t>());
    }
    table.push_back(std::move(r));
  }
  if (table.size() != size) {
    throw parse_error("band file: table has " + std::to_string(table.size())
                      + " rows, size says " + std::to_string(size));
  }
  std::vector<std::string> names;
  if (j.contains("names")) {
    if (!j["names"].is_array()) {
      throw parse_error("band file: names must be an array of strings");
    }
    for (const auto& name : j["names"]) {
      if (!name.is_string()) {
        throw parse_error("band file: names must be an array of strings");
      }
      names.push_back(name.get<std::string>());
    }
  }
  return FiniteBand::make(table, std::move(names));
}

//! Operation files: {"arity": 2, "values": [...]} with the flat row-major
//! table (first coordinate slowest); an optional "witness" word.
inline nlohmann::json operation_to_json(const WordOperation& f) {
  nlohmann::json out{{"arity", f.arity()}, {"values", f.values()}};
  if (f.witness()) {
    out["witness"] = f.witness()->str_tokens();
  }
  return out;
}

inline WordOperation operation_from_json(const nlohmann::json& j,
                                         std::uint32_t band_size) {
  if (!j.is_object() || !j.contains("arity") || !j.contains("values")
      || !j["arity"].is_number_unsigned() || !j["values"].is_array()) {
    throw parse_error("operation file: expected {\"arity\": ..., \"values\": [...]}");
  }
  std::vector<std::uint32_t> values;
  for (const auto& cell : j["values"]) {
    if (!cell.is_number_unsigned() || cell.get<std::uint64_t>() >= band_size) {
      throw parse_error("operation file: values must be element indices");
    }
    values.push_back(cell.get<std::uint32_t>());
  }
  std::optional<Word> witness;
  if (j.contains("witness") && j["witness"].is_string()) {
    witness = Word::parse(j["witness"].get<std::string>());
  }
  try {
    return WordOperation(band_size, j["arity"].get<std::uint32_t>(),
                         std::move(values), std::move(witness));
  } catch (const error& e) {
    throw parse_error(std::string("operation file: ") + e.what());
  }
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) {
    throw error("cannot write file: " + path);
  }
  out << j.dump(2) << "\n";
}

}  // namespace bandkit

#endif  // BANDKIT_IO_HPP_
