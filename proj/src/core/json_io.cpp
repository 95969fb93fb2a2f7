#include "core/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "core/errors.hpp"

namespace compro {

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

Json id_json(const ElementId& id) { return Json::array({id.coord, id.index}); }

ElementId id_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw usage_error("element id must be [coord, index]");
  return ElementId{j[0].get<int>(), j[1].get<int>()};
}

namespace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

Json witness_json(const AxiomWitness& w) {
  Json ids = Json::array();
  for (const auto& e : w.elements) ids.push_back(id_json(e));
  Json vals = Json::array();
  for (const auto& v : w.values) vals.push_back(v.str());
  return Json{{"elements", ids}, {"values", vals}, {"detail", w.detail}};
}

}  // namespace

Json report_json(const AxiomReport& rep) {
  Json ax = Json::object();
  for (const auto& [name, v] : rep.axioms) {
    Json wits = Json::array();
    for (const auto& w : v.witnesses) wits.push_back(witness_json(w));
    ax[name] = Json{{"verdict", verdict_name(v.verdict)},
                    {"checked", v.checked},
                    {"inconclusive", v.inconclusive},
                    {"witnesses", wits}};
  }
  Json cover = Json::array();
  for (const auto& e : rep.filling_cover) cover.push_back(id_json(e));
  Json j{{"theta", rep.theta.str()},
         {"axioms", ax},
         {"filling_cover", cover},
         {"inconclusive_total", rep.inconclusive_total},
         {"pass", rep.pass()}};
  j["minimal_theta"] = rep.minimal_theta ? Json(rep.minimal_theta->str()) : Json();
  return j;
}

Json ladder_json(const Ladder& ladder) {
  Json L = Json::array();
  for (const auto& v : ladder.L) L.push_back(v.str());
  Json Lj = Json::array();
  for (const auto& t : ladder.Lj) {
    Json row = Json::array();
    for (const auto& v : t) row.push_back(v.str());
    Lj.push_back(row);
  }
  return Json{{"theta", ladder.theta.str()},   {"kappa", ladder.kappa.str()},
              {"Theta", ladder.Theta.str()},   {"c_star", ladder.c_star.str()},
              {"Theta_P", ladder.Theta_P.str()}, {"Theta_Rot", ladder.Theta_Rot.str()},
              {"K", ladder.K.str()},           {"L", L},
              {"L_shifts", Lj}};
}

Ladder ladder_from_json(const Json& j) {
  Ladder l;
  l.theta = Rational::parse(j.at("theta").get<std::string>());
  l.kappa = Rational::parse(j.at("kappa").get<std::string>());
  l.Theta = Rational::parse(j.at("Theta").get<std::string>());
  l.derive(static_cast<int>(j.at("L").size()));
  return l;
}

CompositeSystem load_system_json(const Json& doc, const LoadOptions& opt,
                                 LoadOutcome* outcome) {
  if (!doc.is_object()) throw usage_error("instance document must be an object");
  auto require = [&](const char* field) -> const Json& {
    auto it = doc.find(field);
    if (it == doc.end())
      throw usage_error(std::string("instance document missing field '") + field + "'");
    return *it;
  };

  const Json& jm = require("m");
  if (!jm.is_number_integer() || jm.get<int>() < 1)
    throw usage_error("field 'm' must be a positive integer");
  int m = jm.get<int>();

  const Json& jtheta = require("theta");
  if (!jtheta.is_string())
    throw usage_error("field 'theta' must be a rational string \"p/q\"");
  Rational theta = Rational::parse(jtheta.get<std::string>());

  CompositeSystem sys(m, theta);

  const Json& jel = require("elements");
  if (!jel.is_array()) throw usage_error("field 'elements' must be an array");
  for (const auto& e : jel) {
    if (!e.is_object() || !e.contains("coord") || !e.contains("index"))
      throw usage_error("field 'elements': entries need 'coord' and 'index'");
    int coord = e.at("coord").get<int>();
    int index = e.at("index").get<int>();
    ElementId got = sys.add_element(coord);
    if (got.index != index)
      throw usage_error("field 'elements': indices must be dense per coordinate, got " +
                        got.label() + " vs declared index " + std::to_string(index));
  }
  sys.seal();

  if (doc.contains("act")) {
    const Json& ja = doc.at("act");
    if (!ja.is_array()) throw usage_error("field 'act' must be an array of pairs");
    std::vector<std::pair<Gid, Gid>> listed;
    for (const auto& p : ja) {
      if (!p.is_array() || p.size() != 2)
        throw usage_error("field 'act': entries must be element-id pairs");
      Gid a = sys.gid(id_from_json(p[0]));
      Gid b = sys.gid(id_from_json(p[1]));
      listed.emplace_back(a, b);
    }
    std::vector<bool> seen(size_t(sys.total()) * size_t(sys.total()), false);
    for (auto [a, b] : listed) seen[size_t(a) * sys.total() + size_t(b)] = true;
    for (auto [a, b] : listed) {
      if (!seen[size_t(b) * sys.total() + size_t(a)]) {
        std::string msg = "asymmetric act: " + sys.id(a).label() + " lists " +
                          sys.id(b).label() + " but not conversely";
        if (opt.strict) throw usage_error(msg);
        if (outcome) outcome->warnings.push_back(msg + " (symmetric closure applied)");
      }
      sys.set_active(a, b);
    }
  }

  if (doc.contains("dpi")) {
    const Json& jd = doc.at("dpi");
    if (!jd.is_array()) throw usage_error("field 'dpi' must be an array");
    struct Entry {
      Gid y, x, z;
      Rational v;
    };
    std::vector<Entry> entries;
    std::set<std::tuple<Gid, Gid, Gid>> keys;
    for (const auto& e : jd) {
      if (!e.is_object() || !e.contains("y") || !e.contains("x") || !e.contains("z") ||
          !e.contains("value"))
        throw usage_error("field 'dpi': entries need y, x, z, value");
      Gid y = sys.gid(id_from_json(e.at("y")));
      Gid x = sys.gid(id_from_json(e.at("x")));
      Gid z = sys.gid(id_from_json(e.at("z")));
      if (!e.at("value").is_string())
        throw usage_error("field 'dpi': value must be a rational string");
      Rational v = Rational::parse(e.at("value").get<std::string>());
      if (v < Rational(0)) throw usage_error("field 'dpi': negative distance");
      if (x == y || z == y)
        throw usage_error("field 'dpi': viewpoint used as argument at " +
                          sys.id(y).label());
      if (!sys.active(y, x) || !sys.active(y, z))
        throw usage_error("field 'dpi': entry for inactive pair at " +
                          sys.id(y).label() + " over " + sys.id(x).label() + "," +
                          sys.id(z).label());
      entries.push_back({y, x, z, v});
      keys.insert({y, x, z});
    }
    // mirror an entry unless its transpose is separately declared, so that
    // deliberately asymmetric tables reach the checker intact
    for (const auto& e : entries) {
      sys.set_dpi(e.y, e.x, e.z, e.v);
      if (!keys.count({e.y, e.z, e.x})) sys.set_dpi(e.y, e.z, e.x, e.v);
    }
  }

  if (doc.contains("boundary")) {
    for (const auto& b : doc.at("boundary")) sys.flag_boundary(sys.gid(id_from_json(b)));
  }
  return sys;
}

CompositeSystem load_system_file(const std::string& path, const LoadOptions& opt,
                                 LoadOutcome* outcome) {
  std::string text = read_text_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw usage_error("cannot parse '" + path + "': " + e.what());
  }
  return load_system_json(doc, opt, outcome);
}

Json system_json(const CompositeSystem& sys) {
  Json elements = Json::array();
  for (Gid g = 0; g < sys.total(); ++g) {
    auto id = sys.id(g);
    elements.push_back(Json{{"coord", id.coord}, {"index", id.index}});
  }
  Json act = Json::array();
  for (Gid a = 0; a < sys.total(); ++a)
    for (Gid b = a + 1; b < sys.total(); ++b)
      if (sys.active(a, b) && sys.coord_of(a) != sys.coord_of(b)) {
        act.push_back(Json::array({id_json(sys.id(a)), id_json(sys.id(b))}));
        act.push_back(Json::array({id_json(sys.id(b)), id_json(sys.id(a))}));
      }
  Json dpi = Json::array();
  for (Gid y = 0; y < sys.total(); ++y)
    for (Gid x = 0; x < sys.total(); ++x)
      for (Gid z = x; z < sys.total(); ++z) {
        if (x == y || z == y) continue;
        auto v = sys.dpi(y, x, z);
        if (!v) continue;
        dpi.push_back(Json{{"y", id_json(sys.id(y))},
                           {"x", id_json(sys.id(x))},
                           {"z", id_json(sys.id(z))},
                           {"value", v->str()}});
      }
  Json boundary = Json::array();
  for (Gid g = 0; g < sys.total(); ++g)
    if (sys.boundary(g)) boundary.push_back(id_json(sys.id(g)));
  Json doc{{"m", sys.m()},
           {"theta", sys.theta().str()},
           {"elements", elements},
           {"act", act},
           {"dpi", dpi}};
  if (!boundary.empty()) doc["boundary"] = boundary;
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  // write-then-rename keeps partially written reports off disk
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw usage_error("cannot write '" + path + "'");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw usage_error("cannot move report into place at '" + path + "'");
}

}  // namespace compro
