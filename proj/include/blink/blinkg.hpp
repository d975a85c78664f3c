#pragma once
// Blinks: plane graphs with black/gray edge coloring, kept up to plane
// isotopy. Isolated vertices are legal (stored as marks). Built on PlaneMap;
// deco[d] is the color of the edge of d (equal on both darts).

#include <array>
#include <iosfwd>
#include <optional>

#include "blink/planemap.hpp"

namespace blink {

enum Color : uint8_t { kBlack = 0, kGray = 1 };

struct RawComponent {
  std::vector<std::vector<Dart>> rot;          // per vertex: ccw dart cycle (global ids)
  std::vector<std::array<Dart, 2>> edges;      // dart pair per edge (global ids)
  std::vector<std::string> colors;             // per edge: "black" | "gray"
  int outer_face = 0;                          // local face index (faces by min dart)
  bool isolated = false;                       // degree-0 vertex component
};

struct RawNest {
  int parent_comp = -1;  // -1: the plane
  int parent_face = 0;   // local face of parent_comp
};

struct RawBlink {
  std::vector<RawComponent> comps;
  std::vector<RawNest> nesting;  // one per component
};

struct Blink {
  PlaneMap m;

  bool operator==(const Blink& o) const;  // canonical-code equality

  int edge_count() const { return m.arc_count(); }
  Code code() const { return canonical_code(m); }

  // local faces of the piece containing dart d, sorted by min dart
  std::vector<std::vector<Dart>> piece_faces(Dart d) const;
};

// Checks every blink invariant; throws map_error (NonPlanar, BadNesting,
// BadColor, BadMap) on failure.
Blink validate_raw(const RawBlink& raw);

void validate(const Blink& b);  // re-check an assembled blink

Blink empty_blink();

// the four one-edge blinks of the introduction: loop/link-edge x black/gray
Blink loop_blink(Color c);       // one vertex, one loop edge
Blink link_edge_blink(Color c);  // two vertices joined by one edge
Blink isolated_vertex_blink();

Blink color_swap(const Blink& b);

// Plane dual: one vertex per region of the arrangement, one edge per edge,
// colors carried over; always connected (plus one mark per input mark). The
// outer face is fixed by a canonical-labeling convention; see the module
// notes in the README.
Blink dual(const Blink& b);

// region id -> boundary dart cycles (merged across nesting); region 0 first
std::vector<std::pair<int, std::vector<std::vector<Dart>>>> faces(const Blink& b);

Blink relabel_blink(const Blink& b, uint64_t seed);

// --- brute-force isotopy oracle (independent of canonical codes) ----------
bool isomorphic_bruteforce(const Blink& a, const Blink& b);

// --- .blink text format ----------------------------------------------------
std::string write_blink(const Blink& b);
Blink read_blink(const std::string& text);  // throws map_error("ParseError") etc.

}  // namespace blink
