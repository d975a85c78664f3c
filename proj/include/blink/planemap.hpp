#pragma once
// Combinatorial plane maps: rotation system + edge involution per connected
// piece, plus an explicit arrangement of regions for disconnected pieces.
//
// Dart conventions:
//   sigma[d] = next dart counterclockwise around the vertex of d
//   alpha[d] = other end of the arc/edge of d
//   face permutation phi(d) = sigma[alpha[d]]; faces are phi-orbits.
//
// Regions are the faces of the whole arrangement (merged across nesting).
// Region 0 is always the unbounded one. Every dart knows the region its
// face orbit bounds; an oval (crossing-free closed curve) knows the regions
// on its two sides; a mark (degree-0 vertex) knows the region it sits in.
// Nesting is implicit: the region/piece incidence graph must form a tree
// rooted at region 0.

#include <cstdint>
#include <string>
#include <vector>

namespace blink {

using Dart = int32_t;
inline constexpr Dart kNoDart = -1;

struct MapError {
  std::string code;  // NonPlanar, BadNesting, BadColor, ...
  std::string detail;
};

class map_error : public std::exception {
 public:
  explicit map_error(std::string code, std::string detail = "")
      : err_{std::move(code), std::move(detail)} {
    what_ = err_.code + (err_.detail.empty() ? "" : ": " + err_.detail);
  }
  const char* what() const noexcept override { return what_.c_str(); }
  const MapError& err() const { return err_; }

 private:
  MapError err_;
  std::string what_;
};

struct Oval {
  int outside = 0;   // region on the unbounded side of the curve
  int inside = 0;    // region bounded by the curve
  bool alive = true;
};

struct Mark {
  int region = 0;
  bool alive = true;
};

// One face orbit of one piece, as a dart cycle in phi order.
struct FaceOrbit {
  std::vector<Dart> darts;  // starts at the minimal dart of the orbit
  int region = -1;
};

// A connected map piece: set of darts closed under sigma and alpha.
struct Piece {
  std::vector<Dart> darts;       // ascending
  std::vector<FaceOrbit> faces;  // sorted by minimal dart
  int vertices = 0;
  int parent_region = -1;        // region the piece floats in
  int outer_face = -1;           // index into faces: the face bounding parent_region
};

class PlaneMap {
 public:
  std::vector<Dart> sigma;
  std::vector<Dart> alpha;
  std::vector<uint8_t> alive;
  std::vector<uint8_t> deco;  // payload: blink edge color / diagram over flag
  std::vector<int> region_of; // per dart
  std::vector<Oval> ovals;
  std::vector<Mark> marks;
  int nregions = 1;           // region ids are 0..nregions-1, possibly with gaps

  int dart_count() const;
  Dart new_dart();            // alive, with deco 0, region -1
  void kill_dart(Dart d);
  bool empty() const;

  Dart phi(Dart d) const { return sigma[alpha[d]]; }

  // Face orbit through d, in phi order starting at the minimal dart.
  std::vector<Dart> face_orbit(Dart d) const;

  // Connected pieces (via sigma/alpha), with faces and nesting data filled
  // in from region_of. Sorted by minimal dart.
  std::vector<Piece> pieces() const;

  // Structural validation: permutations, per-piece Euler characteristic
  // (throws NonPlanar), region consistency and tree-ness (throws BadNesting).
  void validate() const;

  // Recompute region_of after local surgery. 'touched' lists darts whose
  // sigma/alpha changed plus all newborn darts; 'hints' may seed regions of
  // orbits that contain no surviving dart. Regions referenced by nobody
  // afterwards die; a dying region still hosting marks or ovals throws.
  // old_region must hold the pre-surgery region_of values for old darts.
  // Returns the resolution map old region id -> surviving id (identity for
  // untouched regions, representative for merged ones).
  std::vector<int> recompute_regions(const std::vector<int>& old_region,
                                     const std::vector<Dart>& touched,
                                     const std::vector<std::pair<Dart, int>>& hints = {});

  int fresh_region() { return nregions++; }

  // Renumber darts (arc by arc) and regions (BFS from the outer region)
  // into a dense deterministic form.
  void normalize();

  // Total number of arcs/edges.
  int arc_count() const;

  bool is_four_valent() const;
};

// --- canonical codes -----------------------------------------------------
//
// Code of a piece rooted at dart r: BFS labels from r via sigma then alpha;
// emits (sigma, alpha, deco) per dart in label order, then the outer-face
// marker, then per-face child codes. Whole-map code assembles the nesting
// tree with sorted child lists, so equal codes == orientation-preserving,
// deco-preserving, nesting-preserving isomorphism.

using Code = std::vector<int32_t>;

struct PieceCodeExtra {
  // Extra per-piece payload appended after the dart table; receives the
  // dart relabeling (label[d] = position). Used for diagram fractions.
  virtual Code encode(const PlaneMap& m, const std::vector<Dart>& order,
                      const std::vector<int32_t>& label) const = 0;
  virtual Code encode_oval(const PlaneMap&, int /*oval_index*/) const { return {}; }
  virtual ~PieceCodeExtra() = default;
};

Code canonical_code(const PlaneMap& m, const PieceCodeExtra* extra = nullptr);

struct CanonicalResult {
  Code code;
  // canonical root per piece, keyed by the piece's minimal dart; roots tied
  // by automorphism resolve to the first in dart order
  std::vector<std::pair<Dart, Dart>> piece_root;
};
CanonicalResult canonical_code_ex(const PlaneMap& m, const PieceCodeExtra* extra = nullptr);

// BFS labeling of one piece from a root: order[i] = dart with label i.
void piece_labeling(const PlaneMap& m, Dart root, std::vector<Dart>& order,
                    std::vector<int32_t>& label);

std::string code_to_string(const Code& c);

// Deterministic uniform relabeling (tests use it to check invariance).
PlaneMap relabel(const PlaneMap& m, uint64_t seed);

}  // namespace blink
