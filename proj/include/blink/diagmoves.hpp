#pragma once
// Diagram-level calculus on flinks: regular isotopy (r2, r3), the ribbon
// move, curls, blow-ups/downs of ranks 0..2, cable engulfing, crossing
// switching, Rolfsen twists, infinity components, and the rational-to-
// integer surgery pipeline. Every operation returns a fresh value and
// validates it; residual fractions ride along per the calculus rules.

#include <optional>

#include "blink/linkdiag.hpp"

namespace blink {

// One side of a curve: either the side of the arc of `dart` bounded by
// face(dart), or one side of an oval.
struct EdgeSide {
  Dart dart = kNoDart;
  int oval = -1;
  bool oval_inside = false;

  static EdgeSide of(Dart d) { return {d, -1, false}; }
  static EdgeSide of_oval(int o, bool in = false) { return {kNoDart, o, in}; }
  int region(const PlaneMap& m) const;
};

struct TraceStep {
  std::string kind;
  std::vector<long> args;
};
using Trace = std::vector<TraceStep>;

std::string write_trace(const Trace& t);
Trace read_trace(const std::string& text);

// --- primitives ------------------------------------------------------------

// insert two crossings where side x pokes across side y within their common
// region; x_over_* pick the strand on top at the two new crossings. Equal
// bits give a Reidemeister-2 poke, opposite bits a piercing (meridian-like).
// out_darts receives cL slots 0..3 then cR slots 0..3.
Flink double_cross(const Flink& f, EdgeSide x, EdgeSide y, bool x_over_l, bool x_over_r,
                   std::array<Dart, 8>* out_darts = nullptr);

inline Flink r2_plus(const Flink& f, EdgeSide x, EdgeSide y, bool x_over,
                     std::array<Dart, 8>* out = nullptr) {
  return double_cross(f, x, y, x_over, x_over, out);
}

// remove an empty 2-gon face whose two crossings carry a consistent strand
Flink r2_minus(const Flink& f, Dart bigon_dart);

// slide across an empty triangle face; the strand of arc(tri_dart) must
// cross its two triangle crossings at a consistent level
Flink r3_move(const Flink& f, Dart tri_dart);

// flip a curl to the other side of its strand keeping the crossing sign;
// lobe_dart is the dart x of the lobe arc with alpha(x) == sigma(x)
Flink ribbon_move(const Flink& f, Dart lobe_dart);

// add a curl on a side; lobe_first selects the mirror form, over_lobe the
// decoration. new_cross receives the minimal dart of the new crossing.
Flink curl_insert(const Flink& f, EdgeSide s, bool lobe_first, bool over_lobe,
                  Dart* new_cross = nullptr);

Flink create_oval_comp(const Flink& f, int region, const Fraction& fr);

// delete a component outright, reconnecting other strands through its
// crossings (sound for +-infinity fillings; used by cancel_infty)
Flink erase_comp(const Flink& f, int comp);

// --- derived moves -----------------------------------------------------------

// one-crossing unknot component (medial of the one-edge blinks)
Flink blowup0(const Flink& f, int region, int eps, bool lobe_first = false);

// matchable blow-down data for a +-1-framed curl circle around a cable
struct BlowdownSite {
  int comp = -1;
  Dart curl = kNoDart;                  // the curl crossing (min dart)
  int eps = 0;                          // framing sign
  std::vector<Dart> pierce;             // crossings with cable strands, in cable order
  std::vector<Dart> inner_sides;        // a side dart of each cable segment inside
};
std::optional<BlowdownSite> match_blowdown(const Flink& f, int comp);

Flink blowdown(const Flink& f, int comp);                       // rank = #pierced strands
Flink blowup(const Flink& f, const std::vector<EdgeSide>& cable, int eps);

// 2-/3-cable engulfing: blow the circle down and leave a spare curl circle
// of the same sign next to the cable (pinched-coin form)
Flink cable_engulf(const Flink& f, int comp);

// switch one crossing at the cost of one new unknotted component and curls
Flink switch_crossing(const Flink& f, Dart crossing, Trace* trace = nullptr);

// first-passage-over rule along the component
bool descending(const Flink& f, int comp);
Flink unknot_component(const Flink& f, int comp, Trace* trace = nullptr);

Flink curl_adjust(const Flink& f, int comp, const mpz_class& target_writhe);

// full +-t twist through an unknotted round component's disk (Lemma 2.1)
Flink rolfsen_twist(const Flink& f, int comp, long t);

Flink create_infty(const Flink& f, int region, int sign);
Flink cancel_infty(const Flink& f, int comp);

// cancel an adjacent opposite-sign opposite-side curl pair; the returned
// trace is a regular-isotopy factorization found by bounded search
Flink whitney_cancel(const Flink& f, Dart curl1, Dart curl2, Trace* trace = nullptr);

// interchange the infinite region with an adjacent region g (Lemma 4.1);
// returns the re-rooted flink and a regular-isotopy + one-ribbon trace when
// the bounded factorization search succeeds
struct ExternalFaceResult {
  Flink f;
  Trace trace;
  bool trace_found = false;
};
ExternalFaceResult change_external_face(const Flink& f, int g);

// inverse slam-dunk: peel the residual fraction of comp onto a fresh round
// meridian; comp keeps an integer coefficient realized by curls
Flink inverse_slam_dunk(const Flink& f, int comp, Dart* meridian_min_dart = nullptr);

struct IntegerizeReport {
  int chain_components = 0;
  int twists = 0;                          // literal twist-descent steps
  std::vector<int> twists_per_component;   // indexed like the input components
  Trace trace;
};
Flink integerize(const Flink& f, IntegerizeReport* report = nullptr);

// --- generic dispatch --------------------------------------------------------

struct DiagramMove {
  std::string kind;        // r2+, r2-, r3, ribbon, blowdown0..2, blowup0..2,
                           // a3, a4, switch, create_inf, cancel_inf, ...
  std::vector<long> args;  // kind-specific site data
};

Flink apply_diagram_move(const Flink& f, const DiagramMove& mv);

}  // namespace blink
