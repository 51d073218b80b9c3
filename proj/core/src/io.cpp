#include "gerbelab/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gerbelab::io {

using nlohmann::json;

namespace {

json cochain_to_json(const Cochain& c) {
  json j;
  j["degree"] = c.degree;
  j["ring"] = to_string(c.ring);
  if (c.ring == Ring::Int)
    j["values"] = c.zvals;
  else
    j["values"] = c.rvals;
  return j;
}

Cochain cochain_from_json(const json& j, const Nerve& nerve) {
  Cochain c;
  c.degree = j.at("degree").get<int>();
  std::string ring = j.at("ring").get<std::string>();
  if (ring == "Z")
    c.ring = Ring::Int;
  else if (ring == "R")
    c.ring = Ring::Real;
  else if (ring == "R/Z")
    c.ring = Ring::Circle;
  else
    throw std::invalid_argument("cochain ring must be Z, R or R/Z");
  if (c.ring == Ring::Int)
    c.zvals = j.at("values").get<std::vector<long long>>();
  else
    c.rvals = j.at("values").get<std::vector<double>>();
  if (c.size() != nerve.count(c.degree))
    throw std::invalid_argument("cochain length does not match the nerve");
  if (c.ring == Ring::Circle)
    for (double& v : c.rvals) v = frac(v);
  return c;
}

}  // namespace

std::string nerve_to_json(const Nerve& nerve,
                          const std::map<std::string, Cochain>& cochains) {
  json j;
  j["vertices"] = nerve.vertex_count();
  json simps = json::object();
  for (int degree = 1; degree <= nerve.max_degree(); ++degree)
    simps[std::to_string(degree)] = nerve.simplices(degree);
  j["simplices"] = simps;
  if (!cochains.empty()) {
    json cj = json::object();
    for (const auto& [name, c] : cochains) cj[name] = cochain_to_json(c);
    j["cochains"] = cj;
  }
  return j.dump(2);
}

Nerve nerve_from_json(const std::string& text) {
  json j = json::parse(text);
  int vertices = j.at("vertices").get<int>();
  int max_degree = 3;
  if (j.contains("simplices"))
    for (const auto& [key, value] : j.at("simplices").items())
      max_degree = std::max(max_degree, std::stoi(key));
  std::vector<std::vector<std::vector<int>>> levels(max_degree + 1);
  for (int v = 0; v < vertices; ++v) levels[0].push_back({v});
  if (j.contains("simplices"))
    for (const auto& [key, value] : j.at("simplices").items()) {
      int degree = std::stoi(key);
      if (degree < 1) throw std::invalid_argument("simplex degree keys start at 1");
      auto tuples = value.get<std::vector<std::vector<int>>>();
      for (auto& t : tuples) {
        if (static_cast<int>(t.size()) != degree + 1)
          throw std::invalid_argument("simplex tuple length does not match its degree");
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (t[i] < 0 || t[i] >= vertices)
            throw std::invalid_argument("simplex vertex out of range");
          if (i > 0 && t[i] <= t[i - 1])
            throw std::invalid_argument("simplex tuples must strictly increase");
        }
      }
      std::sort(tuples.begin(), tuples.end());
      levels[degree] = std::move(tuples);
    }
  return Nerve(vertices, std::move(levels));
}

std::map<std::string, Cochain> cochains_from_json(const std::string& text,
                                                  const Nerve& nerve) {
  json j = json::parse(text);
  std::map<std::string, Cochain> out;
  if (!j.contains("cochains")) return out;
  for (const auto& [name, value] : j.at("cochains").items())
    out.emplace(name, cochain_from_json(value, nerve));
  return out;
}

std::string gerbe_to_json(const CechGerbe& gerbe) {
  return nerve_to_json(gerbe.nerve, {{"g", gerbe.g}, {"winding", gerbe.winding}});
}

CechGerbe gerbe_from_json(const std::string& text) {
  Nerve nerve = nerve_from_json(text);
  auto cochains = cochains_from_json(text, nerve);
  auto g = cochains.find("g");
  if (g == cochains.end() || g->second.ring != Ring::Circle || g->second.degree != 2)
    throw std::invalid_argument("gerbe file needs a circle 2-cochain named g");
  auto w = cochains.find("winding");
  if (w == cochains.end()) return from_cocycle(nerve, g->second, 1e-8);
  if (w->second.ring != Ring::Int || w->second.degree != 3)
    throw std::invalid_argument("gerbe winding must be an integral 3-cochain");
  if (!is_cocycle(w->second, nerve))
    throw std::invalid_argument("gerbe winding is not a cocycle");
  CechGerbe out;
  out.nerve = std::move(nerve);
  out.g = g->second;
  out.winding = w->second;
  return out;
}

std::string matrix_to_json(const IntMatrix& m) {
  json j;
  j["matrix"] = {{"rows", m.rows}, {"cols", m.cols}, {"entries", m.a}};
  return j.dump(2);
}

IntMatrix matrix_from_json(const std::string& text) {
  json j = json::parse(text);
  const json& mj = j.at("matrix");
  IntMatrix m(mj.at("rows").get<int>(), mj.at("cols").get<int>());
  auto entries = mj.at("entries").get<std::vector<long long>>();
  if (entries.size() != m.a.size())
    throw std::invalid_argument("matrix entry count mismatch");
  m.a = std::move(entries);
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace gerbelab::io
