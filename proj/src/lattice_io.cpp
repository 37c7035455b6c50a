#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gcolex/colex.hpp"

namespace gcolex {

using nlohmann::json;

namespace {

constexpr int kVersion = 1;

void require_fields(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw std::invalid_argument(what + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw std::invalid_argument("unknown field '" + k + "' in " + what);
  for (const auto& k : allowed)
    if (!j.contains(k)) throw std::invalid_argument("missing field '" + k + "' in " + what);
}

int sign_field(const json& j, const char* key) {
  int x = j.at(key).get<int>();
  if (x != 1 && x != -1) throw std::invalid_argument(std::string(key) + " must be +1 or -1");
  return x;
}

Site site_field(const json& j) {
  if (!j.is_number_unsigned()) throw std::invalid_argument("vertex index must be a non-negative integer");
  return j.get<Site>();
}

Color color_field(const json& j) {
  auto s = j.get<std::string>();
  if (s.size() != 1) throw std::invalid_argument("color must be one of R, G, B");
  return color_from_letter(s[0]);
}

}  // namespace

std::string to_json(const Colex2& c) {
  json j;
  j["version"] = kVersion;
  j["boundary_spec"] = boundary_name(c.boundary);
  j["degenerate"] = c.degenerate;
  j["vertices"] = json::array();
  for (const auto& v : c.vertices) j["vertices"].push_back({{"chirality", v.chirality}, {"parity", v.parity}});
  j["edges"] = json::array();
  for (const auto& e : c.edges)
    j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"color", std::string(1, color_letter(e.color))}});
  j["plaquettes"] = json::array();
  for (const auto& p : c.plaquettes)
    j["plaquettes"].push_back({{"color", std::string(1, color_letter(p.color))}, {"vertices", p.vertices}});
  j["red_links"] = json::array();
  for (const auto& l : c.red_links) j["red_links"].push_back({{"edge", l.edge}, {"up", l.up}, {"down", l.down}});
  j["corner_C_sites"] = c.corner_c_sites;
  return j.dump(1) + "\n";
}

Colex2 colex_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed lattice file: ") + e.what());
  }
  try {
    require_fields(j, {"version", "boundary_spec", "degenerate", "vertices", "edges", "plaquettes", "red_links",
                       "corner_C_sites"},
                   "lattice");
    if (j.at("version").get<int>() != kVersion) throw std::invalid_argument("unsupported lattice version");
    Colex2 c;
    c.boundary = boundary_from_name(j.at("boundary_spec").get<std::string>());
    c.degenerate = j.at("degenerate").get<bool>();
    for (const auto& v : j.at("vertices")) {
      require_fields(v, {"chirality", "parity"}, "vertex");
      c.vertices.push_back({sign_field(v, "chirality"), sign_field(v, "parity")});
    }
    for (const auto& e : j.at("edges")) {
      require_fields(e, {"u", "v", "color"}, "edge");
      c.edges.push_back({site_field(e.at("u")), site_field(e.at("v")), color_field(e.at("color"))});
    }
    for (const auto& p : j.at("plaquettes")) {
      require_fields(p, {"color", "vertices"}, "plaquette");
      Plaquette pl;
      pl.color = color_field(p.at("color"));
      for (const auto& v : p.at("vertices")) pl.vertices.push_back(site_field(v));
      c.plaquettes.push_back(std::move(pl));
    }
    for (const auto& l : j.at("red_links")) {
      require_fields(l, {"edge", "up", "down"}, "red link");
      c.red_links.push_back({site_field(l.at("edge")), site_field(l.at("up")), site_field(l.at("down"))});
    }
    for (const auto& s : j.at("corner_C_sites")) c.corner_c_sites.push_back(site_field(s));
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad lattice file: ") + e.what());
  }
}

Colex2 load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return colex_from_json(ss.str());
}

void save_lattice(const Colex2& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(c);
}

}  // namespace gcolex
