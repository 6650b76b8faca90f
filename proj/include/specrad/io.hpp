// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specrad/bounds.hpp"
#include "specrad/hypergraph.hpp"
#include "specrad/sparse_tensor.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace specrad {

/// Doubles are emitted with 17 significant digits so every payload
/// round-trips losslessly.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline nlohmann::json parse_json(std::istream& in, const std::string& what) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
}

}  // namespace detail

/// Tensor JSON: {"order": m, "dim": n, "entries": [{"idx": [m ints, 1-based],
/// "val": positive number}, ...]}. Indices are 1-based on disk, 0-based in
/// memory.
inline SparseTensor<double> read_tensor_json(std::istream& in) {
  const nlohmann::json j = detail::parse_json(in, "tensor file");
  if (!j.is_object() || !j.contains("order") || !j.contains("dim") || !j.contains("entries"))
    throw std::invalid_argument("tensor file: expected object with order, dim, entries");
  if (!j["order"].is_number_integer() || !j["dim"].is_number_integer())
    throw std::invalid_argument("tensor file: order and dim must be integers");
  if (!j["entries"].is_array())
    throw std::invalid_argument("tensor file: entries must be an array");

  const Index order = j["order"].get<Index>();
  const Index dim = j["dim"].get<Index>();
  std::vector<Index> subs;
  std::vector<double> vals;
  for (std::size_t e = 0; e < j["entries"].size(); ++e) {
    const auto& item = j["entries"][e];
    const std::string where = "tensor file: entries[" + std::to_string(e) + "]";
    if (!item.is_object() || !item.contains("idx") || !item.contains("val"))
      throw std::invalid_argument(where + " must have idx and val");
    const auto& idx = item["idx"];
    if (!idx.is_array() || static_cast<Index>(idx.size()) != order)
      throw std::invalid_argument(where + ": idx must hold exactly " + std::to_string(order) +
                                  " indices");
    for (const auto& i : idx) {
      if (!i.is_number_integer()) throw std::invalid_argument(where + ": indices must be integers");
      const Index v = i.get<Index>();
      if (v < 1 || v > dim) throw std::invalid_argument(where + ": index out of range [1, dim]");
      subs.push_back(v - 1);
    }
    if (!item["val"].is_number()) throw std::invalid_argument(where + ": val must be a number");
    const double val = item["val"].get<double>();
    if (!(val > 0)) throw std::invalid_argument(where + ": val must be strictly positive");
    vals.push_back(val);
  }
  try {
    return SparseTensor<double>::from_coordinates(order, dim, std::move(subs), std::move(vals));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("tensor file: ") + e.what());
  }
}

inline std::string write_tensor_json(const SparseTensor<double>& t) {
  std::string out = "{\"order\": " + std::to_string(t.order()) +
                    ", \"dim\": " + std::to_string(t.dim()) + ", \"entries\": [";
  for (Index e = 0; e < t.nnz(); ++e) {
    if (e > 0) out += ", ";
    out += "{\"idx\": [";
    const auto tup = t.tuple(e);
    for (Index j = 0; j < t.order(); ++j) {
      if (j > 0) out += ", ";
      out += std::to_string(tup[j] + 1);
    }
    out += "], \"val\": " + format_double(t.value(e)) + "}";
  }
  out += "]}";
  return out;
}

/// Hypergraph text: first line "k n", then one edge per line as k distinct
/// 1-based vertex indices. Blank lines and lines starting with '#' are
/// skipped.
inline UniformHypergraph read_hypergraph_text(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_content_line())
    throw std::invalid_argument("hypergraph file: missing header line \"k n\"");
  Index k = 0, n = 0;
  {
    std::istringstream head(line);
    std::string extra;
    if (!(head >> k >> n) || (head >> extra))
      throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) +
                                  ": header must be \"k n\"");
  }

  std::vector<std::vector<Index>> edges;
  while (next_content_line()) {
    std::istringstream row(line);
    std::vector<Index> edge;
    Index v;
    while (row >> v) {
      if (v < 1 || v > n)
        throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) +
                                    ": vertex out of range [1, n]");
      edge.push_back(v - 1);
    }
    if (!row.eof())
      throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) +
                                  ": expected vertex indices");
    if (static_cast<Index>(edge.size()) != k)
      throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(k) + " vertices, got " +
                                  std::to_string(edge.size()));
    edges.push_back(std::move(edge));
  }
  try {
    return UniformHypergraph(k, n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("hypergraph file: ") + e.what());
  }
}

/// Positive vector file: a JSON array of n positive numbers.
inline VectorX<double> read_vector_json(std::istream& in, Index expected_size) {
  const nlohmann::json j = detail::parse_json(in, "vector file");
  if (!j.is_array()) throw std::invalid_argument("vector file: expected a JSON array");
  if (static_cast<Index>(j.size()) != expected_size)
    throw std::invalid_argument("vector file: expected " + std::to_string(expected_size) +
                                " components, got " + std::to_string(j.size()));
  VectorX<double> x(expected_size);
  for (Index i = 0; i < expected_size; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number())
      throw std::invalid_argument("vector file: components must be numbers");
    x[i] = j[static_cast<std::size_t>(i)].get<double>();
    if (!(x[i] > 0) || !std::isfinite(x[i]))
      throw std::invalid_argument("vector file: components must be finite and positive");
  }
  return x;
}

template <typename T>
T read_file_as(const std::string& path, T (*reader)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return reader(in);
}

namespace detail {

inline std::string circuit_json(const std::optional<Circuit>& c) {
  if (!c) return "null";
  std::string out = "[";
  for (std::size_t i = 0; i < c->vertices.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(c->vertices[i] + 1);  // 1-based on the wire
  }
  return out + "]";
}

inline std::string circuit_text(const std::optional<Circuit>& c) {
  if (!c) return "-";
  std::string out;
  for (std::size_t i = 0; i < c->vertices.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(c->vertices[i] + 1);
  }
  return out;
}

}  // namespace detail

inline std::string bounds_report_json(const BoundsReport<double>& report) {
  std::string out = "{\"rho\": " + format_double(report.rho) + ", \"intervals\": [";
  for (std::size_t i = 0; i < report.intervals.size(); ++i) {
    const auto& iv = report.intervals[i];
    if (i > 0) out += ", ";
    out += "{\"theorem\": \"" + std::string(theorem_tag_name(iv.tag)) + "\"";
    out += ", \"low\": " + format_double(iv.low);
    out += ", \"high\": " + format_double(iv.high);
    out += ", \"low_witness\": " + detail::circuit_json(iv.low_witness);
    out += ", \"high_witness\": " + detail::circuit_json(iv.high_witness);
    out += "}";
  }
  out += "], \"all_contain_rho\": ";
  out += report.all_contain_rho ? "true" : "false";
  out += "}";
  return out;
}

inline std::string bounds_report_table(const BoundsReport<double>& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"theorem", "low", "high", "contains_rho", "low_witness", "high_witness"});
  for (const auto& iv : report.intervals) {
    rows.push_back({theorem_tag_name(iv.tag), format_double(iv.low), format_double(iv.high),
                    interval_contains(iv, report.rho) ? "yes" : "no",
                    detail::circuit_text(iv.low_witness), detail::circuit_text(iv.high_witness)});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out += "\n";
  }
  out += "rho = " + format_double(report.rho) + "\n";
  out += std::string("all_contain_rho = ") + (report.all_contain_rho ? "yes" : "no") + "\n";
  return out;
}

}  // namespace specrad
