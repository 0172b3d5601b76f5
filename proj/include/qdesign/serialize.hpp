#pragma once

// JSON building blocks shared by the file formats.  JSON is the canonical
// machine format; integers that may exceed 64 bits are written as decimal
// strings and accepted in either form.

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qdesign/groups.hpp"

namespace qdesign {

using Json = nlohmann::ordered_json;

inline Json json_int(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::int64_t>::max())) return Json(mpz_get_si(v.get_mpz_t()));
  return Json(v.get_str());
}

inline BigInt int_from_json(const Json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  throw std::invalid_argument("expected an integer or a decimal string");
}

inline Json matrix_to_json(const MatFq& m) {
  Json rows = Json::array();
  for (unsigned i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (unsigned j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatFq matrix_from_json(const Gf& field, const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a non-empty array of rows");
  const unsigned rows = static_cast<unsigned>(j.size());
  const unsigned cols = static_cast<unsigned>(j[0].size());
  MatFq m(field, rows, cols);
  for (unsigned i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
    for (unsigned c = 0; c < cols; ++c) {
      Fe v = j[i][c].get<Fe>();
      if (!field.valid(v)) throw std::invalid_argument("matrix: entry out of range");
      m.at(i, c) = v;
    }
  }
  return m;
}

inline Json pivots_to_json(const std::vector<unsigned>& pivots) {
  Json a = Json::array();
  for (unsigned v : pivots) a.push_back(v);
  return a;
}

inline std::vector<unsigned> pivots_from_json(const Json& j) {
  std::vector<unsigned> v;
  for (const auto& e : j) v.push_back(e.get<unsigned>());
  return v;
}

inline Json group_to_json(const GroupDesc& d) {
  Json j;
  j["kind"] = d.kind;
  if (d.kind == "matrices") {
    Json mats = Json::array();
    for (const MatFq& m : d.matrices) mats.push_back(matrix_to_json(m));
    j["matrices"] = std::move(mats);
  }
  if (d.poly) {
    Json p = Json::array();
    for (Fe c : *d.poly) p.push_back(c);
    j["poly"] = std::move(p);
  }
  return j;
}

inline GroupDesc group_from_json(const Json& j, const Gf& field) {
  GroupDesc d;
  d.kind = j.at("kind").get<std::string>();
  if (j.contains("matrices"))
    for (const auto& m : j["matrices"]) d.matrices.push_back(matrix_from_json(field, m));
  if (j.contains("poly")) {
    std::vector<Fe> p;
    for (const auto& c : j["poly"]) p.push_back(c.get<Fe>());
    d.poly = std::move(p);
  }
  return d;
}

}  // namespace qdesign
