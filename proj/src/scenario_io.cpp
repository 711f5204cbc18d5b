#include "minsum/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "minsum/errors.hpp"

namespace minsum {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

double real(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Vec vector_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = real(j[k], where);
  return v;
}

Mat matrix_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Mat m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vec row = vector_of(j[static_cast<std::size_t>(r)], where);
    if (row.size() != rows) throw DimensionMismatch(where + ": matrix must be square");
    m.row(r) = row.transpose();
  }
  return m;
}

double smoothness(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw ParseError(where + ": the only accepted non-numeric L is \"inf\"");
  }
  return real(j, where);
}

json vector_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario: top level must be an object");
  const json& list = field(doc, "summands", "scenario");
  if (!list.is_array() || list.empty()) throw ParseError("scenario: \"summands\" must be a non-empty array");

  Scenario sc;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "summands[" + std::to_string(i) + "]";
    const json& s = list[i];
    if (!s.is_object()) throw ParseError(where + ": expected an object");
    Vec x_star = vector_of(field(s, "x_star", where), where + ".x_star");
    const double mu = real(field(s, "mu", where), where + ".mu");
    const double L = smoothness(field(s, "L", where), where + ".L");
    std::optional<KnownFunction> known;
    if (const auto it = s.find("known"); it != s.end() && !it->is_null()) {
      const std::string kw = where + ".known";
      if (!it->is_object()) throw ParseError(kw + ": expected an object");
      const json& kind = field(*it, "kind", kw);
      if (!kind.is_string() || kind.get<std::string>() != "quadratic") {
        throw ParseError(kw + ": only kind \"quadratic\" is supported");
      }
      Mat A = matrix_of(field(*it, "A", kw), kw + ".A");
      Vec center = vector_of(field(*it, "center", kw), kw + ".center");
      if (A.rows() != center.size()) throw DimensionMismatch(kw + ": A and center dimensions differ");
      known = KnownFunction::quadratic(std::move(A), std::move(center));
    }
    sc.summands.push_back(Summand{std::move(x_star), ClassParams(mu, L), std::move(known)});
  }
  if (const auto it = doc.find("bound_B"); it != doc.end() && !it->is_null()) {
    sc.bound_B = real(*it, "bound_B");
  }
  sc.validate();
  return sc;
}

Scenario read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& scenario) {
  json doc;
  doc["summands"] = json::array();
  for (const auto& s : scenario.summands) {
    json j;
    j["x_star"] = vector_json(s.x_star);
    j["mu"] = s.params.mu();
    if (s.params.smooth()) {
      j["L"] = s.params.L();
    } else {
      j["L"] = "inf";
    }
    if (s.known) {
      json rows = json::array();
      const Mat& A = s.known->matrix();
      for (Eigen::Index r = 0; r < A.rows(); ++r) rows.push_back(vector_json(A.row(r).transpose()));
      j["known"] = {{"kind", "quadratic"}, {"A", rows}, {"center", vector_json(s.known->center())}};
    }
    doc["summands"].push_back(std::move(j));
  }
  if (scenario.bound_B) doc["bound_B"] = *scenario.bound_B;
  return doc.dump(2) + "\n";
}

}  // namespace minsum
