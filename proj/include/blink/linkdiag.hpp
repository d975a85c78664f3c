#pragma once
// Decorated general-position link projections (4-valent plane maps with
// over/under data) and flinks (diagrams with a residual fraction per
// component). Crossing-free components are ovals.
//
// Crossing conventions: a crossing is a sigma-orbit of length 4; the two
// opposite dart pairs are its strands; deco[d] == 1 iff d belongs to the
// strand that passes over. Sign convention (fixed once, used everywhere):
// a crossing is positive iff sigma(over_out) == under_out, where *_out are
// the outgoing darts for the components' forward orientations.

#include <gmpxx.h>

#include "blink/blinkg.hpp"
#include "blink/fraction.hpp"
#include "blink/planemap.hpp"

namespace blink {

struct Diagram {
  PlaneMap m;
};

struct Flink {
  Diagram d;
  std::vector<Fraction> fracs;  // canonical component order

  Code code() const;
};

void validate_diagram(const Diagram& d);
void validate_flink(const Flink& f);

struct LinkComponent {
  std::vector<Dart> darts;  // sorted; empty for an oval
  int oval = -1;
};

// strand components sorted by minimal dart, then ovals by index
std::vector<LinkComponent> link_components(const Diagram& d);
std::vector<int> component_of_dart(const Diagram& d);  // dart -> component index

// forward orientation: dart is a departure of the walk that starts at the
// component's minimal dart
std::vector<uint8_t> forward_darts(const Diagram& d);

// crossings as sigma-orbits keyed by minimal dart
std::vector<Dart> crossings(const Diagram& d);
std::array<Dart, 4> crossing_cycle(const Diagram& d, Dart c);  // [c, s c, s^2 c, s^3 c]

int crossing_sign(const Diagram& d, Dart c, const std::vector<uint8_t>& fwd);

// checkerboard coloring per region id: 0 white, 1 gray; infinite face white
std::vector<int> checkerboard(const Diagram& d);

mpz_class self_writhe(const Flink& f, int comp);
mpz_class linking_number(const Flink& f, int c1, int c2);  // throws SameComponent
Fraction surgery_coefficient(const Flink& f, int comp);

Flink zero_flink(Diagram d);  // all residual fractions 0

// medial correspondence (Fig. "from 0-flink to blink and back")
Flink blink_to_flink(const Blink& b);
Blink flink_to_blink(const Flink& f);  // throws NonZeroFraction

// medial dart bookkeeping: the crossing of blink edge k uses diagram darts
// 4k..4k+3 in ccw order; see medial.cpp for the slot geometry
inline Dart medial_slot(int edge_index, int slot) { return 4 * edge_index + slot; }

// re-embed making region r the unbounded one (pure region relabeling)
Diagram reroot(const Diagram& d, int r);
Flink reroot(const Flink& f, int r);

// .flink text format
std::string write_flink(const Flink& f);
Flink read_flink(const std::string& text);

// small builders (tests, generators)
Diagram empty_diagram();
Diagram oval_diagram();                   // one crossing-free unknot
Flink curl_flink(int sign, int lobe);     // one-crossing unknot; see diagmoves

}  // namespace blink
