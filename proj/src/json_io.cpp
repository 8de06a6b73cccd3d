#include "sh3/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace sh3 {

namespace {

using nlohmann::json;

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SphereFunction parse_density(const json &rows, int L) {
  SphereFunction f(L);
  for (const auto &row : rows) {
    if (!row.is_array() || row.size() != 4)
      throw std::runtime_error("density row must be [l, m, re, im]");
    int l = row[0].get<int>();
    int m = row[1].get<int>();
    if (l < 0 || l > L || std::abs(m) > l)
      throw std::runtime_error("density row with invalid (l, m)");
    f.coeff(l, m) += Complex(row[2].get<double>(), row[3].get<double>());
  }
  return f;
}

}  // namespace

std::string identity_report_to_json(const IdentitySuiteReport &report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto &e : report.entries) {
    nlohmann::ordered_json row;
    row["identity_id"] = e.id;
    row["trials"] = e.trials;
    row["max_residual"] = e.max_residual;
    row["seed"] = e.seed;
    rows.push_back(row);
  }
  return rows.dump(2);
}

BoundaryDensityPair parse_pair_json(const std::string &text) {
  json doc = json::parse(text);
  if (!doc.contains("L")) throw std::runtime_error("pair document missing L");
  int L = doc["L"].get<int>();
  if (L < 0 || L > 256) throw std::runtime_error("pair document: L out of range");
  BoundaryDensityPair pair;
  pair.g_minus = parse_density(doc.value("g_minus", json::array()), L);
  pair.g_plus = parse_density(doc.value("g_plus", json::array()), L);
  return pair;
}

BoundaryDensityPair load_pair_json(const std::string &path) { return parse_pair_json(slurp(path)); }

std::string pair_to_json(const BoundaryDensityPair &pair) {
  json doc;
  int L = pair.degree_cap();
  doc["L"] = L;
  for (const char *key : {"g_minus", "g_plus"}) {
    const SphereFunction &g = (std::string(key) == "g_minus") ? pair.g_minus : pair.g_plus;
    json rows = json::array();
    for (int l = 0; l <= g.degree_cap(); ++l)
      for (int m = -l; m <= l; ++m) {
        Complex c = g.coeff(l, m);
        if (c != 0.0) rows.push_back({l, m, c.real(), c.imag()});
      }
    doc[key] = rows;
  }
  return doc.dump(2);
}

std::vector<ClosedGeodesicRecord> parse_records_json(const std::string &text) {
  json doc = json::parse(text);
  if (!doc.is_array()) throw std::runtime_error("records document must be an array");
  std::vector<ClosedGeodesicRecord> out;
  for (const auto &item : doc) {
    ClosedGeodesicRecord rec;
    rec.T = item.at("T").get<double>();
    const auto &rows = item.at("P");
    if (!rows.is_array() || rows.size() != 4) throw std::runtime_error("P must be a 4x4 matrix");
    for (int i = 0; i < 4; ++i) {
      if (!rows[i].is_array() || rows[i].size() != 4) throw std::runtime_error("P must be 4x4");
      for (int j = 0; j < 4; ++j) rec.P(i, j) = rows[i][j].get<double>();
    }
    if (item.contains("multiplicity_cap")) rec.multiplicity_cap = item["multiplicity_cap"].get<int>();
    rec.validate();
    out.push_back(rec);
  }
  return out;
}

std::vector<ClosedGeodesicRecord> load_records_json(const std::string &path) {
  return parse_records_json(slurp(path));
}

}  // namespace sh3
