// The medial correspondence between blinks and 0-flinks.
//
// For blink edge e with darts (a, b), a < b, drawn from vertex(a) to
// vertex(b), the medial crossing occupies the edge midpoint. Its four darts
// in ccw order are the ends of the corner arcs
//
//   slot0 = c(a)   slot1 = c(sigma^-1 a)   slot2 = c(b)   slot3 = c(sigma^-1 b)
//
// where c(d) is the angular sector swept ccw from dart d to sigma(d).
// The corner arc c(d) runs inside the blink face of alpha(d) and joins the
// crossings of edge(d) and edge(sigma(d)); its end at edge(d) borders that
// face (white side), its end at edge(sigma d) hugs the shared vertex (gray
// side). Hence slot0/slot2 lie on white medial faces and slot1/slot3 on the
// gray face of vertex(a)/vertex(b).
//
// Over/under from colors: a black edge has the even diagonal {slot0, slot2}
// on top, a gray edge the odd diagonal {slot1, slot3} (the figure's rule
// "gray iff the upper strand runs northwest to southeast" with the edge
// drawn south to north).

#include <algorithm>
#include <map>
#include <set>

#include "blink/linkdiag.hpp"

namespace blink {

namespace {

struct EdgeInfo {
  Dart a, b;  // a < b
};

std::vector<EdgeInfo> blink_edges(const PlaneMap& m) {
  std::vector<EdgeInfo> edges;
  for (Dart d = 0; d < (Dart)m.sigma.size(); ++d) {
    if (!m.alive[d] || d > m.alpha[d]) continue;
    edges.push_back({d, m.alpha[d]});
  }
  return edges;
}

}  // namespace

Flink blink_to_flink(const Blink& b) {
  const PlaneMap& m = b.m;
  auto edges = blink_edges(m);
  std::map<Dart, int> edge_index;   // min dart -> index
  std::map<Dart, int> slot0_of;     // blink dart -> medial dart on its white side
  for (size_t k = 0; k < edges.size(); ++k) {
    edge_index[edges[k].a] = (int)k;
    slot0_of[edges[k].a] = medial_slot((int)k, 0);
    slot0_of[edges[k].b] = medial_slot((int)k, 2);
  }
  auto slot1_of = [&](Dart d) {  // gray-side medial dart at vertex(d)
    Dart mn = std::min(d, m.alpha[d]);
    int k = edge_index[mn];
    return medial_slot(k, d == mn ? 1 : 3);
  };

  Diagram dg;
  dg.m.nregions = m.nregions;
  for (size_t k = 0; k < edges.size(); ++k)
    for (int s = 0; s < 4; ++s) dg.m.new_dart();
  // sigma: ccw cycles per crossing
  for (size_t k = 0; k < edges.size(); ++k)
    for (int s = 0; s < 4; ++s)
      dg.m.sigma[medial_slot((int)k, s)] = medial_slot((int)k, (s + 1) % 4);
  // corner arcs: c(d) joins slot(edge d, white end of d) to the gray-side
  // slot at the shared vertex, which belongs to edge(sigma d)
  for (Dart d = 0; d < (Dart)m.sigma.size(); ++d) {
    if (!m.alive[d]) continue;
    Dart x = slot0_of[d];
    Dart y = slot1_of(m.sigma[d]);
    dg.m.alpha[x] = y;
    dg.m.alpha[y] = x;
  }
  // over decoration from colors
  for (size_t k = 0; k < edges.size(); ++k) {
    bool black = m.deco[edges[k].a] == kBlack;
    for (int s = 0; s < 4; ++s)
      dg.m.deco[medial_slot((int)k, s)] = black ? (s % 2 == 0) : (s % 2 == 1);
  }
  // regions: whites reuse blink region ids, one fresh gray region per vertex
  std::map<Dart, int> gray_of_vertex;  // vertex min dart -> region
  std::vector<uint8_t> seen(m.sigma.size(), 0);
  for (Dart d = 0; d < (Dart)m.sigma.size(); ++d) {
    if (!m.alive[d] || seen[d]) continue;
    Dart mn = d, x = d;
    do {
      seen[x] = 1;
      mn = std::min(mn, x);
      x = m.sigma[x];
    } while (x != d);
    gray_of_vertex[mn] = dg.m.fresh_region();
  }
  auto vertex_min = [&](Dart d) {
    Dart mn = d, x = d;
    do {
      mn = std::min(mn, x);
      x = m.sigma[x];
    } while (x != d);
    return mn;
  };
  for (size_t k = 0; k < edges.size(); ++k) {
    Dart a = edges[k].a, bb = edges[k].b;
    dg.m.region_of[medial_slot((int)k, 0)] = m.region_of[m.alpha[a]];
    dg.m.region_of[medial_slot((int)k, 2)] = m.region_of[m.alpha[bb]];
    dg.m.region_of[medial_slot((int)k, 1)] = gray_of_vertex[vertex_min(a)];
    dg.m.region_of[medial_slot((int)k, 3)] = gray_of_vertex[vertex_min(bb)];
  }
  // isolated vertices become ovals with a gray inside
  for (const auto& mk : m.marks)
    if (mk.alive) dg.m.ovals.push_back(Oval{mk.region, dg.m.fresh_region(), true});

  validate_diagram(dg);
  return zero_flink(std::move(dg));
}

Blink flink_to_blink(const Flink& f_in) {
  for (const auto& fr : f_in.fracs)
    if (!fr.is_zero()) throw map_error("NonZeroFraction", "flink_to_blink needs a 0-flink");

  // normalize placement: split ovals whose inside is white float up to the
  // outer region (sound for flinks; keeps the diagram in blink position)
  Flink f = f_in;
  for (int pass = 0; pass < 64; ++pass) {
    auto col = checkerboard(f.d);
    int moved = 0;
    for (auto& o : f.d.m.ovals) {
      if (!o.alive) continue;
      if (col[o.inside] == 0 && o.outside != 0) {
        o.outside = 0;
        moved++;
      }
    }
    if (!moved) break;
    if (pass == 63) throw map_error("BadNesting", "oval normalization diverged");
  }
  validate_diagram(f.d);

  const PlaneMap& dm = f.d.m;
  auto col = checkerboard(f.d);

  // crossing table: by minimal dart; gray-side darts define the blink edge
  auto cs = crossings(f.d);
  std::map<Dart, int> crossing_index;
  for (size_t k = 0; k < cs.size(); ++k) crossing_index[cs[k]] = (int)k;
  std::map<Dart, Dart> crossing_min;
  for (Dart c : cs) {
    auto cyc = crossing_cycle(f.d, c);
    for (Dart x : cyc) crossing_min[x] = c;
  }

  Blink out;
  for (size_t k = 0; k < cs.size(); ++k) {
    out.m.new_dart();
    out.m.new_dart();
    out.m.alpha[2 * k] = (Dart)(2 * k + 1);
    out.m.alpha[2 * k + 1] = (Dart)(2 * k);
  }

  // per crossing: gray-side darts (one opposite pair) and edge color
  std::map<Dart, Dart> blink_dart_of;  // gray-side medial dart -> blink dart
  for (size_t k = 0; k < cs.size(); ++k) {
    auto cyc = crossing_cycle(f.d, cs[k]);
    std::vector<Dart> gray;
    for (Dart x : cyc)
      if (col[dm.region_of[x]] == 1) gray.push_back(x);
    if (gray.size() != 2 || dm.sigma[dm.sigma[gray[0]]] != gray[1])
      throw map_error("NotBipartiteFaces", "crossing without opposite gray pair");
    blink_dart_of[gray[0]] = (Dart)(2 * k);
    blink_dart_of[gray[1]] = (Dart)(2 * k + 1);
    // color: black iff the over darts have a gray sector immediately ccw,
    // i.e. the face of alpha(x) is gray for over darts x
    Dart over = dm.deco[cyc[0]] ? cyc[0] : cyc[1];
    bool black = col[dm.region_of[dm.alpha[over]]] == 1;
    uint8_t cv = black ? kBlack : kGray;
    out.m.deco[2 * k] = out.m.deco[2 * k + 1] = cv;
  }

  // gray regions -> vertices; rotation from the boundary walks
  std::map<int, std::vector<std::vector<Dart>>> gray_walks;  // region -> walks (blink darts)
  std::vector<uint8_t> seen(dm.sigma.size(), 0);
  for (Dart x0 = 0; x0 < (Dart)dm.sigma.size(); ++x0) {
    if (!dm.alive[x0] || seen[x0]) continue;
    int r = dm.region_of[x0];
    auto orb = f.d.m.face_orbit(x0);
    for (Dart x : orb) seen[x] = 1;
    if (col[r] != 1) continue;
    std::vector<Dart> walk;
    for (Dart x : orb) {
      auto it = blink_dart_of.find(x);
      if (it == blink_dart_of.end())
        throw map_error("NotBipartiteFaces", "gray walk visits a white-side dart");
      walk.push_back(it->second);
    }
    gray_walks[r].push_back(std::move(walk));
  }
  // ovals with gray inside become marks; their inside must be empty
  std::set<int> oval_gray_insides;
  for (const auto& o : dm.ovals) {
    if (!o.alive) continue;
    if (col[o.inside] == 1) {
      if (gray_walks.count(o.inside))
        throw map_error("NotBlinkPositioned", "oval encloses diagram pieces in a gray region");
      oval_gray_insides.insert(o.inside);
      out.m.marks.push_back(Mark{o.outside, true});
    } else {
      throw map_error("NotBlinkPositioned", "oval with white inside below the outer region");
    }
  }
  // a gray region hosting marks/ovals beyond the walks cannot be a vertex
  for (const auto& [r, walks] : gray_walks) {
    (void)walks;
    for (const auto& o : dm.ovals)
      if (o.alive && (o.outside == r))
        throw map_error("NotBlinkPositioned", "oval floats in a gray region");
  }

  // assemble vertex rotations: walks in deterministic block order, each
  // block in face-walk order
  for (auto& [r, walks] : gray_walks) {
    (void)r;
    std::stable_sort(walks.begin(), walks.end(),
                     [](const std::vector<Dart>& a, const std::vector<Dart>& b) {
                       return *std::min_element(a.begin(), a.end()) <
                              *std::min_element(b.begin(), b.end());
                     });
    std::vector<Dart> cyc;
    for (auto& w : walks) cyc.insert(cyc.end(), w.begin(), w.end());
    for (size_t i = 0; i < cyc.size(); ++i)
      out.m.sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }

  // blink regions = white regions (ids reused)
  for (size_t k = 0; k < cs.size(); ++k) {
    auto cyc = crossing_cycle(f.d, cs[k]);
    for (Dart x : cyc) {
      if (col[dm.region_of[x]] != 0) continue;
      // x is a white-side dart; in the slot geometry the white end of the
      // corner arc c(d) sits one ccw step before the gray end of c(sigma d),
      // so the blink face along x is the alpha-side face of the blink dart
      // of sigma(x).
      Dart gray_dart = dm.sigma[x];
      Dart bd = blink_dart_of.at(gray_dart);
      out.m.region_of[out.m.alpha[bd]] = dm.region_of[x];
    }
  }
  out.m.nregions = dm.nregions;
  out.m.normalize();
  validate(out);
  return out;
}

}  // namespace blink
