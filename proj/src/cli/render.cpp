#include "orbitforge/cli.hpp"

#include <sstream>
#include <stdexcept>

namespace orbitforge::cli {

namespace {

Json int_list(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json cycle_list(const std::vector<Cycle>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(int_list(c.points()));
  return a;
}

Int int_from(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a decimal string, got " + j.dump());
  return parse_int(j.get<std::string>());
}

std::vector<Cycle> cycles_from(const Json& j) {
  std::vector<Cycle> out;
  for (const auto& c : j) {
    std::vector<Int> pts;
    for (const auto& p : c) pts.push_back(int_from(p));
    out.push_back(Cycle::canonical(std::move(pts)));
  }
  return out;
}

std::string join(const std::vector<Int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s;
}

}  // namespace

Json map_to_json(const IntegerMap& f) {
  Json j;
  if (const auto* p = std::get_if<PowerMap>(&f)) {
    j["family"] = "power";
    j["m"] = p->m;
    j["k"] = to_string(p->k);
  } else {
    const auto& q = std::get<QuadMap>(f);
    j["family"] = "quad";
    j["a"] = to_string(q.a);
    j["b"] = to_string(q.b);
    j["c"] = to_string(q.c);
  }
  return j;
}

IntegerMap map_from_json(const Json& j) {
  const auto family = j.at("family").get<std::string>();
  if (family == "power") return PowerMap{j.at("m").get<long>(), int_from(j.at("k"))};
  if (family == "quad") return QuadMap{int_from(j.at("a")), int_from(j.at("b")), int_from(j.at("c"))};
  throw std::invalid_argument("unknown map family '" + family + "'");
}

Json classification_to_json(const IntegerMap& f, const OrbitClassification& c) {
  Json j;
  j["map"] = map_to_json(f);
  j["fixed_points"] = int_list(c.fixed_points);
  j["two_cycles"] = cycle_list(c.two_cycles);
  j["higher_cycles"] = cycle_list(c.higher_cycles);
  j["verdict"] = c.behavior ? Json(std::string(to_string(*c.behavior))) : Json(nullptr);
  if (c.witness) {
    Json w;
    w["condition"] = c.witness->condition;
    w["j"] = c.witness->j ? Json(to_string(*c.witness->j)) : Json(nullptr);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

ParsedClassification classification_from_json(const Json& j) {
  try {
    ParsedClassification p{map_from_json(j.at("map")), {}};
    auto& c = p.classification;
    for (const auto& x : j.at("fixed_points")) c.fixed_points.push_back(int_from(x));
    c.two_cycles = cycles_from(j.at("two_cycles"));
    c.higher_cycles = cycles_from(j.at("higher_cycles"));
    if (const auto& v = j.at("verdict"); !v.is_null()) {
      c.behavior = behavior_from_string(v.get<std::string>());
      if (!c.behavior) throw std::invalid_argument("unknown verdict " + v.dump());
    }
    if (const auto& w = j.at("witness"); !w.is_null()) {
      Witness wit{w.at("condition").get<std::string>(), std::nullopt};
      if (!w.at("j").is_null()) wit.j = int_from(w.at("j"));
      c.witness = wit;
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed classification JSON: ") + e.what());
  }
}

std::string render_table(const IntegerMap& f, const OrbitClassification& c) {
  std::ostringstream o;
  auto cycles = [](const std::vector<Cycle>& v) {
    if (v.empty()) return std::string("(none)");
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + ("{" + join(v[i].points()) + "}");
    return s;
  };
  o << "map:           " << describe(f) << '\n';
  if (c.behavior == Behavior::all_seeds_fixed)
    o << "fixed points:  all seeds fixed (every integer)\n";
  else
    o << "fixed points:  " << (c.fixed_points.empty() ? "(none)" : join(c.fixed_points)) << '\n';
  o << "2-cycles:      " << cycles(c.two_cycles) << '\n';
  o << "higher cycles: " << cycles(c.higher_cycles) << '\n';
  if (c.behavior) o << "verdict:       " << to_string(*c.behavior) << '\n';
  if (c.witness) {
    o << "witness:       " << c.witness->condition;
    if (c.witness->j) o << ", j = " << to_string(*c.witness->j);
    o << '\n';
  }
  return o.str();
}

std::string render_table(const IntegerMap& f, const EscapeBound& bound, const OrbitTrace& t) {
  std::ostringstream o;
  o << "map:          " << describe(f) << '\n';
  o << "escape bound: " << to_string(bound.bound) << " (" << to_string(bound.justification) << ")\n";
  o << "trace:        " << join(t.points) << '\n';
  o << "outcome:      ";
  if (const auto* e = std::get_if<EntersCycle>(&t.outcome)) {
    o << "enters cycle {" << join(e->cycle.points()) << "} (period " << e->cycle.period() << ") after tail "
      << e->tail_length;
  } else if (const auto* x = std::get_if<Escapes>(&t.outcome)) {
    o << "escapes at step " << x->step << ": " << x->certificate;
  } else {
    o << "truncated at cap " << std::get<Truncated>(t.outcome).cap;
  }
  o << '\n';
  return o.str();
}

Json trace_to_json(const IntegerMap& f, const EscapeBound& bound, const OrbitTrace& t) {
  Json j;
  j["map"] = map_to_json(f);
  j["seed"] = to_string(t.seed);
  j["escape_bound"] = to_string(bound.bound);
  j["justification"] = std::string(to_string(bound.justification));
  j["points"] = int_list(t.points);
  Json o;
  if (const auto* e = std::get_if<EntersCycle>(&t.outcome)) {
    o["kind"] = "enters_cycle";
    o["cycle"] = int_list(e->cycle.points());
    o["tail_length"] = e->tail_length;
  } else if (const auto* x = std::get_if<Escapes>(&t.outcome)) {
    o["kind"] = "escapes";
    o["step"] = x->step;
    o["certificate"] = x->certificate;
  } else {
    o["kind"] = "truncated";
    o["cap"] = std::get<Truncated>(t.outcome).cap;
  }
  j["outcome"] = o;
  return j;
}

}  // namespace orbitforge::cli
