#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "deadend/abelian.hpp"
#include "deadend/core.hpp"
#include "deadend/error.hpp"
#include "deadend/euclidean.hpp"
#include "deadend/free_group.hpp"
#include "deadend/geolang.hpp"
#include "deadend/heis.hpp"
#include "deadend/search.hpp"
#include "deadend/sol.hpp"
#include "deadend/wreath.hpp"

namespace deadend {

using json = nlohmann::ordered_json;

/// 64-bit FNV-1a, used to tag reports with the spec they came from.
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  auto out = os.str();
  return std::string(16 - out.size(), '0') + out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad JSON: ") + e.what());
  }
}

/// Quote a CSV field when it contains a separator or a quote.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace detail {

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidInput, std::string("bad field '") + key + "'");
  }
}

inline std::vector<long long> int_vector(const json& j, const char* what) {
  try {
    return j.get<std::vector<long long>>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidInput, std::string("expected an integer array for ") + what);
  }
}

inline IntMatrix int_matrix(const json& j, const char* what) {
  try {
    return j.get<IntMatrix>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidInput, std::string("expected an integer matrix for ") + what);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Weighted generating sets, euclidean specs, 2x2 matrices
// ---------------------------------------------------------------------------

inline json to_json(const WeightedGenSet& ws) {
  json gens = json::array();
  for (const auto& g : ws.gens) gens.push_back({{"v", g.v.x}, {"w", g.w}});
  return {{"n", ws.n}, {"gens", gens}};
}

inline WeightedGenSet weighted_gen_set_from_json(const json& j) {
  WeightedGenSet ws;
  ws.n = detail::get_field<int>(j, "n");
  if (!j.contains("gens")) return WeightedGenSet::standard(ws.n);
  if (!j.at("gens").is_array()) throw Error(ErrorKind::InvalidInput, "gens must be an array");
  for (const auto& g : j.at("gens")) {
    if (!g.contains("v")) throw Error(ErrorKind::InvalidInput, "generator without 'v'");
    ZVec v{detail::int_vector(g.at("v"), "v")};
    const long long w = g.contains("w") ? detail::get_field<long long>(g, "w") : 1;
    ws.gens.push_back({v, w});
  }
  return ws;
}

inline Mat2 mat2_from_json(const json& j) {
  auto m = detail::int_matrix(j, "R");
  if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
    throw Error(ErrorKind::InvalidInput, "R must be a 2x2 integer matrix");
  }
  return {m[0][0], m[0][1], m[1][0], m[1][1]};
}

inline json to_json(const Mat2& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

inline json to_json(const EuclideanSpec& s) {
  json gens = json::array();
  for (const auto& g : s.gens) gens.push_back({{"t", g.t.x}, {"A", g.A}});
  json out = {{"n", s.n}, {"gens", gens}};
  if (!s.point_group.empty()) out["point_group"] = s.point_group;
  if (!s.coset_reps.empty()) {
    const auto alpha = GenAlphabet::standard(static_cast<int>(s.gens.size()));
    json reps = json::array();
    for (const auto& w : s.coset_reps) reps.push_back(alpha.render(w));
    out["coset_reps"] = reps;
  }
  return out;
}

inline EuclideanSpec euclidean_spec_from_json(const json& j) {
  EuclideanSpec s;
  s.n = detail::get_field<int>(j, "n");
  if (!j.contains("gens") || !j.at("gens").is_array()) throw Error(ErrorKind::InvalidInput, "gens must be an array");
  for (const auto& g : j.at("gens")) {
    if (!g.contains("t") || !g.contains("A")) throw Error(ErrorKind::InvalidInput, "generator needs 't' and 'A'");
    s.gens.push_back({ZVec{detail::int_vector(g.at("t"), "t")}, detail::int_matrix(g.at("A"), "A")});
  }
  if (j.contains("point_group")) {
    for (const auto& m : j.at("point_group")) s.point_group.push_back(detail::int_matrix(m, "point_group"));
  }
  if (j.contains("coset_reps")) {
    const auto alpha = GenAlphabet::standard(static_cast<int>(s.gens.size()));
    for (const auto& w : j.at("coset_reps")) {
      if (!w.is_string()) throw Error(ErrorKind::InvalidInput, "coset_reps entries are words");
      s.coset_reps.push_back(alpha.parse(w.get<std::string>()));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// DFAs
// ---------------------------------------------------------------------------

inline Dfa dfa_from_json(const json& j, const GenAlphabet& alpha) {
  const int states = detail::get_field<int>(j, "states");
  const int start = detail::get_field<int>(j, "start");
  Dfa d(states, start, alpha.size());
  for (int s : detail::get_field<std::vector<int>>(j, "accept")) d.set_accepting(s);
  if (!j.contains("trans") || !j.at("trans").is_array()) throw Error(ErrorKind::InvalidInput, "trans must be an array");
  for (const auto& t : j.at("trans")) {
    d.set_transition(detail::get_field<int>(t, "from"), alpha.parse_letter(detail::get_field<std::string>(t, "letter")),
                     detail::get_field<int>(t, "to"));
  }
  return d;
}

inline json to_json(const Dfa& d, const GenAlphabet& alpha) {
  json accept = json::array(), trans = json::array();
  for (int s = 0; s < d.states(); ++s) {
    if (d.accepting(s)) accept.push_back(s);
  }
  for (const auto& t : d.transitions()) {
    trans.push_back({{"from", t.from}, {"letter", alpha.render(t.letter)}, {"to", t.to}});
  }
  return {{"states", d.states()}, {"start", d.start()}, {"accept", accept}, {"trans", trans}};
}

// ---------------------------------------------------------------------------
// Group spec files
// ---------------------------------------------------------------------------

using AnyGroup = std::variant<Heisenberg, SolGroup, WeightedZn, EuclideanGroup, WreathZ2Z, FreeGroup>;

struct GroupSpecFile {
  std::string kind;
  json params;
  std::string hash;  // of the file contents
};

inline GroupSpecFile load_spec_text(const std::string& text) {
  GroupSpecFile f;
  f.params = parse_json(text);
  f.kind = detail::get_field<std::string>(f.params, "kind");
  f.hash = fnv1a_hex(text);
  return f;
}

inline GroupSpecFile load_spec_file(const std::string& path) { return load_spec_text(read_file(path)); }

/// Builds the group, running the kind's own validation.
inline AnyGroup make_group(const GroupSpecFile& f) {
  const auto& p = f.params;
  if (f.kind == "heisenberg") return Heisenberg{};
  if (f.kind == "sol") {
    if (!p.contains("R")) throw Error(ErrorKind::InvalidInput, "sol spec needs R");
    return SolGroup(HypMatrix(mat2_from_json(p.at("R"))));
  }
  if (f.kind == "zn_weighted") return WeightedZn(weighted_gen_set_from_json(p));
  if (f.kind == "euclidean") return EuclideanGroup(euclidean_spec_from_json(p));
  if (f.kind == "wreath_z2_z") return WreathZ2Z{};
  if (f.kind == "free") return FreeGroup(p.contains("rank") ? detail::get_field<int>(p, "rank") : 2);
  throw Error(ErrorKind::InvalidInput, "unknown kind '" + f.kind + "'");
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Rendered elements are JSON text for every built-in group.
template <MarkedGroup G>
json element_json(const G& g, const typename G::Element& e) {
  return json::parse(g.render(e));
}

template <MarkedGroup G>
std::string spheres_csv(const BallIndex<G>& b) {
  std::string out = "distance,count\n";
  const auto& s = b.spheres();
  for (std::size_t d = 0; d < s.size(); ++d) out += std::to_string(d) + "," + std::to_string(s[d]) + "\n";
  return out;
}

template <MarkedGroup G>
json to_json(const G& g, const BallIndex<G>& b) {
  json elems = json::array();
  for (std::size_t i = 0; i < b.size(); ++i) {
    elems.push_back({{"element", element_json(g, b.elements()[i])}, {"distance", b.distance_at(i)}});
  }
  return {{"radius", b.radius()}, {"size", b.size()}, {"spheres", b.spheres()}, {"elements", elems}};
}

template <MarkedGroup G>
json to_json(const G& g, const DepthReport<G>& r) {
  json out = {{"element", element_json(g, r.element)},
              {"distance_from_identity", r.distance_from_identity},
              {"depth", r.depth},
              {"exceeds_cap", r.exceeds_cap}};
  if (r.witness) {
    out["witness"] = element_json(g, *r.witness);
    out["witness_distance_from_identity"] = r.witness_distance_from_identity;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline json to_json(const HeisFamilyRow& r) {
  return {{"n", r.n},
          {"distance", r.distance},
          {"depth_lower_bound", r.bound},
          {"bfs_depth", r.report.depth},
          {"exceeds_cap", r.report.exceeds_cap}};
}

}  // namespace deadend
