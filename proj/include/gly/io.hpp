#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gly/chaos.hpp"
#include "gly/covering.hpp"
#include "gly/errors.hpp"
#include "gly/gsystem.hpp"
#include "gly/version.hpp"

namespace gly {

// Machine documents use insertion-ordered JSON so that re-runs with the
// same inputs emit byte-identical text.
using json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file \"" + path + "\"");
  out << text;
}

inline std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------- rationals

inline json rational_to_json(const Rational& r) { return json(r.str()); }

inline Rational rational_from_json(const json& j, const std::string& field) {
  if (!j.is_string()) throw ParseError("field \"" + field + "\": rationals are \"p/q\" strings");
  return parse_rational(j.get<std::string>(), field);
}

inline json interval_to_json(const Interval& iv) {
  return json::array({iv.lo.str(), iv.hi.str()});
}

inline Interval interval_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("field \"" + field + "\": intervals are [lo, hi]");
  return Interval(rational_from_json(j[0], field), rational_from_json(j[1], field));
}

// ------------------------------------------------------------- system files

inline json graph_to_json(const PLMap& m) {
  json graph = json::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    graph.push_back(json::array({m.breakpoints()[i].str(), m.values()[i].str()}));
  return graph;
}

inline PLMap graph_from_json(const json& j, const Interval& codomain, const std::string& field) {
  if (!j.is_array() || j.size() < 2)
    throw ParseError("field \"" + field + "\": PL graph needs >= 2 [t, v] pairs");
  std::vector<PLMap::Node> nodes;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("field \"" + field + "\": PL graph entries are [t, v]");
    nodes.emplace_back(rational_from_json(pair[0], field), rational_from_json(pair[1], field));
  }
  try {
    return PLMap(std::move(nodes), codomain);
  } catch (const DomainError& e) {
    throw ParseError("field \"" + field + "\": " + e.what());
  }
}

inline json system_to_json(const GSystem& sys) {
  json doc;
  if (is_circle(sys.space)) {
    doc["space"] = {{"kind", "circle"}};
  } else {
    const Interval& b = interval_bounds(sys.space);
    doc["space"] = {{"kind", "interval"}, {"lo", b.lo.str()}, {"hi", b.hi.str()}};
  }
  switch (sys.dynamics.kind) {
    case Dynamics::Kind::Identity:
      doc["dynamics"] = {{"kind", "identity"}};
      break;
    case Dynamics::Kind::Rotation:
      doc["dynamics"] = {{"kind", "rotation"}, {"angle", sys.dynamics.angle.str()}};
      break;
    case Dynamics::Kind::PL:
      doc["dynamics"] = {{"kind", "pl"}, {"graph", graph_to_json(*sys.dynamics.pl)}};
      break;
  }
  json gens = json::array();
  for (const auto& g : sys.generators.all()) {
    if (const auto* rot = std::get_if<CircleRotation>(&g.map))
      gens.push_back({{"name", g.name}, {"kind", "rotation"}, {"angle", rot->angle.str()}});
    else
      gens.push_back(
          {{"name", g.name}, {"kind", "pl"}, {"graph", graph_to_json(std::get<PLMap>(g.map))}});
  }
  doc["generators"] = std::move(gens);
  return doc;
}

/// Parse and structurally validate a system document. Throws ParseError
/// for malformed text and ValidationError for well-formed systems that
/// break the space/dynamics/generator contracts.
inline GSystem system_from_json(const json& doc, const std::string& name) {
  GSystem sys;
  sys.name = name;
  if (!doc.is_object() || !doc.contains("space") || !doc["space"].contains("kind"))
    throw ParseError("system document needs space.kind");
  const std::string space_kind = doc["space"]["kind"].get<std::string>();
  if (space_kind == "circle") {
    sys.space = CircleSpace{};
  } else if (space_kind == "interval") {
    if (!doc["space"].contains("lo") || !doc["space"].contains("hi"))
      throw ParseError("interval space needs lo and hi");
    const Rational lo = rational_from_json(doc["space"]["lo"], "space.lo");
    const Rational hi = rational_from_json(doc["space"]["hi"], "space.hi");
    if (!(lo < hi)) throw ParseError("space needs lo < hi");
    sys.space = IntervalSpace{Interval(lo, hi)};
  } else {
    throw ParseError("unknown space kind \"" + space_kind + "\"");
  }

  const Interval bounds = is_circle(sys.space) ? Interval(Rational(0), Rational(1))
                                               : interval_bounds(sys.space);
  if (!doc.contains("dynamics") || !doc["dynamics"].contains("kind"))
    throw ParseError("system document needs dynamics.kind");
  const std::string dyn_kind = doc["dynamics"]["kind"].get<std::string>();
  if (dyn_kind == "identity") {
    sys.dynamics = Dynamics::identity();
  } else if (dyn_kind == "rotation") {
    if (!doc["dynamics"].contains("angle")) throw ParseError("rotation dynamics needs angle");
    sys.dynamics = Dynamics::rotation(rational_from_json(doc["dynamics"]["angle"],
                                                         "dynamics.angle"));
  } else if (dyn_kind == "pl") {
    if (!doc["dynamics"].contains("graph")) throw ParseError("pl dynamics needs graph");
    sys.dynamics = Dynamics::from_pl(graph_from_json(doc["dynamics"]["graph"], bounds,
                                                     "dynamics.graph"));
  } else {
    throw ParseError("unknown dynamics kind \"" + dyn_kind + "\"");
  }

  if (doc.contains("generators")) {
    if (!doc["generators"].is_array()) throw ParseError("generators must be an array");
    for (const auto& g : doc["generators"]) {
      if (!g.contains("name")) throw ParseError("generator needs a name");
      const std::string gname = g["name"].get<std::string>();
      const std::string kind = g.contains("kind") ? g["kind"].get<std::string>()
                                                  : (g.contains("angle") ? "rotation" : "pl");
      try {
        if (kind == "rotation") {
          if (!g.contains("angle")) throw ParseError("rotation generator needs angle");
          sys.generators.add(gname, CircleRotation(rational_from_json(g["angle"],
                                                                      "generator angle")));
        } else if (kind == "pl") {
          if (!g.contains("graph")) throw ParseError("pl generator needs graph");
          sys.generators.add(gname,
                             graph_from_json(g["graph"], bounds, "generator \"" + gname + "\""));
        } else {
          throw ParseError("unknown generator kind \"" + kind + "\"");
        }
      } catch (const NotInvertibleError& e) {
        throw ValidationError("generator \"" + gname + "\" is not a homeomorphism: " + e.what());
      }
    }
  }
  validate_system(sys);
  return sys;
}

inline GSystem load_system(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("system file \"" + path + "\": " + e.what());
  }
  std::string name = path;
  if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (const auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
  return system_from_json(doc, name);
}

// ----------------------------------------------------------------- reports

inline json report_header(const std::string& analysis, const std::string& system_name) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["analysis"] = analysis;
  doc["system"] = system_name;
  return doc;
}

inline json word_json(const GeneratorSet& gens, const Word& w) {
  return json(word_to_string(gens, w));
}

inline json profile_to_json(const GeneratorSet& gens, const DistanceProfile& p) {
  json doc;
  doc["x"] = p.x.str();
  doc["y"] = p.y.str();
  doc["horizon"] = p.horizon;
  doc["radius"] = p.radius;
  doc["exact"] = p.exact;
  doc["beam"] = p.beam_width ? json(*p.beam_width) : json(nullptr);
  doc["base_distance"] = p.base_distance.str();
  json steps = json::array();
  for (int n = 1; n <= p.horizon; ++n) {
    const ProfileEntry& e = p.at(n);
    steps.push_back({{"n", n},
                     {"min", e.min_dist.str()},
                     {"max", e.max_dist.str()},
                     {"argmin", word_to_string(gens, e.argmin)},
                     {"argmax", word_to_string(gens, e.argmax)}});
  }
  doc["steps"] = std::move(steps);
  return doc;
}

/// Figure data for external plotting: header n,m_n,M_n,argmin,argmax,exact.
inline std::string profile_to_csv(const GeneratorSet& gens, const DistanceProfile& p) {
  std::string csv = "n,m_n,M_n,argmin,argmax,exact\n";
  for (int n = 1; n <= p.horizon; ++n) {
    const ProfileEntry& e = p.at(n);
    csv += std::to_string(n) + "," + e.min_dist.str() + "," + e.max_dist.str() + "," +
           word_to_string(gens, e.argmin) + "," + word_to_string(gens, e.argmax) + "," +
           (p.exact ? "true" : "false") + "\n";
  }
  return csv;
}

inline json classify_params_to_json(const ClassifyParams& c) {
  return {{"eps_prox", c.eps_prox.str()},
          {"delta_sep", c.delta_sep.str()},
          {"tail_window", c.tail_window}};
}

inline json verdict_to_json(const PairVerdict& v) {
  json doc;
  doc["classification"] = to_string(v.cls);
  doc["exact"] = v.exact;
  doc["tail_min"] = v.tail_min.str();
  doc["tail_min_n"] = v.tail_min_n;
  doc["tail_max"] = v.tail_max.str();
  doc["tail_max_n"] = v.tail_max_n;
  return doc;
}

inline json witness_to_json(const GeneratorSet& gens, const WitnessSequence& w) {
  json doc;
  json entries = json::array();
  for (const int n : w.proximal_idx)
    entries.push_back({{"n", n},
                       {"role", "proximal"},
                       {"word", word_to_string(gens, w.words[static_cast<std::size_t>(n - 1)])}});
  for (const int n : w.separated_idx)
    entries.push_back({{"n", n},
                       {"role", "separated"},
                       {"word", word_to_string(gens, w.words[static_cast<std::size_t>(n - 1)])}});
  doc["assignments"] = std::move(entries);
  doc["proximal_count"] = w.proximal_idx.size();
  doc["separated_count"] = w.separated_idx.size();
  return doc;
}

inline json equivariance_to_json(const EquivarianceReport& r) {
  json doc;
  doc["equivariant"] = r.equivariant;
  if (!r.equivariant) {
    doc["generator"] = *r.generator;
    doc["witness_x"] = r.witness_x->str();
    doc["f_g_x"] = r.f_g_x->str();
    doc["g_f_x"] = r.g_f_x->str();
  }
  return doc;
}

inline json action_to_json(const ActionReport& r) {
  json doc;
  doc["pass"] = r.pass;
  doc["failures"] = r.failures;
  return doc;
}

inline json transitivity_to_json(const GeneratorSet& gens, const TransitivityReport& r) {
  json doc;
  doc["pass"] = r.pass;
  doc["scope_note"] = "reachability checked on the full declared space";
  doc["parameters"] = {{"grid_delta", r.grid_delta.str()},
                       {"horizon", r.horizon},
                       {"radius", r.radius},
                       {"cells", r.cell_count}};
  if (r.unreached)
    doc["unreached"] = {{"from", r.unreached->first}, {"to", r.unreached->second}};
  else
    doc["unreached"] = nullptr;
  json matrix = json::array();
  for (const auto& row : r.matrix) {
    json jrow = json::array();
    for (const auto& hit : row) {
      if (hit)
        jrow.push_back(json::array({hit->steps, word_to_string(gens, hit->word)}));
      else
        jrow.push_back(nullptr);
    }
    matrix.push_back(std::move(jrow));
  }
  doc["matrix"] = std::move(matrix);
  return doc;
}

inline json interval_set_to_json(const IntervalSet& s) {
  json arr = json::array();
  for (const auto& c : s.components()) arr.push_back(interval_to_json(c));
  return arr;
}

inline json recurrence_to_json(const GeneratorSet& gens, const RecurrenceResult& r) {
  json doc;
  doc["recurrent"] = r.recurrent;
  doc["eps"] = r.eps.str();
  doc["best"] = {{"n", r.best_n},
                 {"word", word_to_string(gens, r.best_word)},
                 {"distance", r.best_distance.str()}};
  return doc;
}

// -------------------------------------------------------------- certificates

inline json covering_to_json(const GeneratorSet& gens, const CoveringStructure& s) {
  json doc;
  doc["depth"] = s.depth();
  json A = json::array(), B = json::array(), times = json::array(), words = json::array();
  for (const auto& iv : s.A) A.push_back(interval_to_json(iv));
  for (const auto& iv : s.B) B.push_back(interval_to_json(iv));
  for (const int n : s.times) times.push_back(n);
  for (const auto& w : s.words) words.push_back(word_to_string(gens, w));
  doc["A"] = std::move(A);
  doc["B"] = std::move(B);
  doc["times"] = std::move(times);
  doc["words"] = std::move(words);
  return doc;
}

inline CoveringStructure covering_from_json(const GeneratorSet& gens, const json& doc) {
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("B") || !doc.contains("times") ||
      !doc.contains("words"))
    throw ParseError("certificate needs A, B, times, words");
  CoveringStructure s;
  for (const auto& iv : doc["A"]) s.A.push_back(interval_from_json(iv, "A"));
  for (const auto& iv : doc["B"]) s.B.push_back(interval_from_json(iv, "B"));
  for (const auto& n : doc["times"]) {
    if (!n.is_number_integer()) throw ParseError("times must be integers");
    s.times.push_back(n.get<int>());
  }
  for (const auto& w : doc["words"]) s.words.push_back(parse_word(gens, w.get<std::string>()));
  if (s.A.size() != s.B.size() || s.A.size() != s.times.size() + 1 ||
      s.words.size() != s.times.size())
    throw ParseError("certificate with inconsistent lengths");
  return s;
}

inline json covering_verdict_to_json(const CoveringVerdict& v) {
  json doc;
  doc["pass"] = v.pass;
  if (v.pass) {
    doc["separation"] = v.separation.str();
  } else {
    doc["fail_level"] = v.fail_level;
    doc["fail_what"] = v.fail_what;
  }
  return doc;
}

inline json enclosure_to_json(const PointEnclosure& e) {
  return {{"code", e.code},
          {"interval", interval_to_json(e.interval)},
          {"depth", e.depth},
          {"midpoint", e.interval.midpoint().str()}};
}

inline json scan_to_json(const GeneratorSet& gens, const ScanResult& r) {
  json doc;
  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back(s.str());
  doc["samples"] = std::move(samples);
  doc["classify"] = classify_params_to_json(r.params);
  doc["exact"] = r.exact;
  json pairs = json::array();
  for (const auto& cell : r.pairs) {
    json p = verdict_to_json(cell.verdict);
    p["i"] = cell.i;
    p["j"] = cell.j;
    pairs.push_back(std::move(p));
  }
  doc["pairs"] = std::move(pairs);
  doc["clique"] = r.clique;
  (void)gens;
  return doc;
}

}  // namespace gly
