#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gcolex {

using Site = std::uint32_t;

enum class Color : std::uint8_t { Red = 0, Green = 1, Blue = 2 };
enum class BoundarySpec { Torus, Triangular, RectBlueGreen, RectBlueRed };

char color_letter(Color c);
Color color_from_letter(char c);
std::string boundary_name(BoundarySpec b);
BoundarySpec boundary_from_name(const std::string& s);

struct VertexRec {
  int chirality = 1;  // +1 iff plaquette colors read clockwise are (r,g,b)
  int parity = 1;
  friend bool operator==(const VertexRec&, const VertexRec&) = default;
};

struct Edge {
  Site u = 0, v = 0;
  Color color = Color::Red;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Plaquette {
  Color color = Color::Red;
  std::vector<Site> vertices;  // clockwise
  friend bool operator==(const Plaquette&, const Plaquette&) = default;
};

// Walking down -> up keeps the blue plaquette on the left; up has chirality +1.
struct RedLink {
  std::uint32_t edge = 0;
  Site up = 0, down = 0;
  friend bool operator==(const RedLink&, const RedLink&) = default;
};

struct Colex2 {
  BoundarySpec boundary = BoundarySpec::Torus;
  bool degenerate = false;
  std::vector<VertexRec> vertices;
  std::vector<Edge> edges;
  std::vector<Plaquette> plaquettes;
  std::vector<RedLink> red_links;
  std::vector<Site> corner_c_sites;

  std::size_t num_vertices() const { return vertices.size(); }
  bool planar() const { return boundary != BoundarySpec::Torus; }
  friend bool operator==(const Colex2&, const Colex2&) = default;
};

struct Violation {
  std::string kind;
  std::string location;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> failures;
  bool ok() const { return failures.empty(); }
};

ValidationReport validate(const Colex2& c);
Colex2 apply_parity_flip(const Colex2& c, Site site);
std::string export_dot(const Colex2& c);

// Plaquettes containing each vertex.
std::vector<std::vector<std::uint32_t>> vertex_plaquettes(const Colex2& c);

Colex2 build_hex_torus(int n);
Colex2 build_squareoct_torus(int n);
Colex2 build_triangular(int d);
enum class RectScheme { BlueGreen, BlueRed };
Colex2 build_rect(int w, int h, RectScheme scheme);
// "hex-torus:N", "squareoct-torus:N", "triangular:D", "rect-bg:WxH", "rect-br:WxH"
Colex2 build_from_spec(const std::string& spec);

// Geometry of the 4.8.8 torus needed by the encoding map.
enum class SquareTag { H, V };
struct GreenSquare {
  std::uint32_t plaquette = 0;
  SquareTag tag = SquareTag::H;
  std::array<Site, 4> sites{};  // sites 1..4 clockwise; site 1 is top-left (H) or top-right (V)
};
struct Octagon {
  std::uint32_t plaquette = 0;
  Color color = Color::Red;
  std::array<std::uint32_t, 4> squares{};  // neighbouring green squares up, right, down, left (indices into squares)
};
struct SquareOctLayout {
  Colex2 lattice;
  std::vector<GreenSquare> squares;
  std::vector<Octagon> octagons;
};
SquareOctLayout build_squareoct_layout(int n);

std::string to_json(const Colex2& c);
Colex2 colex_from_json(const std::string& text);  // throws std::invalid_argument
Colex2 load_lattice(const std::string& path);
void save_lattice(const Colex2& c, const std::string& path);

}  // namespace gcolex
