#include "blink/blinkg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace blink {

bool Blink::operator==(const Blink& o) const { return code() == o.code(); }

std::vector<std::vector<Dart>> Blink::piece_faces(Dart d) const {
  for (const auto& p : m.pieces()) {
    if (std::binary_search(p.darts.begin(), p.darts.end(), d)) {
      std::vector<std::vector<Dart>> out;
      for (const auto& f : p.faces) out.push_back(f.darts);
      return out;
    }
  }
  return {};
}

void validate(const Blink& b) {
  b.m.validate();
  if (!b.m.ovals.empty())
    for (const auto& o : b.m.ovals)
      if (o.alive) throw map_error("BadMap", "blink with oval");
  for (Dart d = 0; d < (Dart)b.m.sigma.size(); ++d) {
    if (!b.m.alive[d]) continue;
    if (b.m.deco[d] > 1) throw map_error("BadColor", "color out of range");
    if (b.m.deco[d] != b.m.deco[b.m.alpha[d]])
      throw map_error("BadColor", "edge ends disagree");
  }
}

Blink validate_raw(const RawBlink& raw) {
  if (raw.nesting.size() != raw.comps.size())
    throw map_error("BadNesting", "nesting list length mismatch");

  // count darts, check they form 0..2E-1 once each
  int ndarts = 0;
  for (const auto& c : raw.comps) {
    ndarts += 2 * (int)c.edges.size();
    if (c.isolated && (!c.edges.empty() || c.rot.size() != 1 || !c.rot[0].empty()))
      throw map_error("BadMap", "isolated component with darts");
    (void)c;
  }
  if (ndarts % 2 != 0) throw map_error("BadMap", "odd dart count");

  Blink b;
  for (int i = 0; i < ndarts; ++i) b.m.new_dart();

  std::vector<int> seen_rot(ndarts, 0), seen_edge(ndarts, 0);
  std::vector<int> comp_of_dart(ndarts, -1);
  for (size_t ci = 0; ci < raw.comps.size(); ++ci) {
    const auto& c = raw.comps[ci];
    for (const auto& cycle : c.rot) {
      for (size_t k = 0; k < cycle.size(); ++k) {
        Dart d = cycle[k], nd = cycle[(k + 1) % cycle.size()];
        if (d < 0 || d >= ndarts) throw map_error("BadMap", "rot dart out of range");
        if (seen_rot[d]++) throw map_error("BadMap", "rotation not a permutation");
        b.m.sigma[d] = nd;
        comp_of_dart[d] = (int)ci;
      }
    }
    if (c.colors.size() != c.edges.size())
      throw map_error("BadColor", "color list length mismatch");
    for (size_t k = 0; k < c.edges.size(); ++k) {
      Dart x = c.edges[k][0], y = c.edges[k][1];
      if (x < 0 || x >= ndarts || y < 0 || y >= ndarts || x == y)
        throw map_error("BadMap", "edge dart out of range");
      if (seen_edge[x]++ || seen_edge[y]++) throw map_error("BadMap", "dart on two edges");
      b.m.alpha[x] = y;
      b.m.alpha[y] = x;
      uint8_t col;
      if (c.colors[k] == "black")
        col = kBlack;
      else if (c.colors[k] == "gray")
        col = kGray;
      else
        throw map_error("BadColor", "unknown color '" + c.colors[k] + "'");
      b.m.deco[x] = b.m.deco[y] = col;
    }
  }
  for (int d = 0; d < ndarts; ++d) {
    if (!seen_rot[d]) throw map_error("BadMap", "dart missing from rotation");
    if (!seen_edge[d]) throw map_error("BadMap", "dart missing from edges");
    if (comp_of_dart[d] != comp_of_dart[b.m.alpha[d]] ||
        comp_of_dart[d] != comp_of_dart[b.m.sigma[d]])
      throw map_error("BadNesting", "component not closed under the map");
  }

  // per-component faces (local ids by min dart); Euler check per component
  std::vector<std::vector<std::vector<Dart>>> comp_faces(raw.comps.size());
  for (size_t ci = 0; ci < raw.comps.size(); ++ci) {
    const auto& c = raw.comps[ci];
    if (c.isolated) continue;
    std::set<Dart> left;
    for (const auto& e : c.edges) {
      left.insert(e[0]);
      left.insert(e[1]);
    }
    if (left.empty()) throw map_error("BadMap", "empty non-isolated component");
    // connectivity within the declared component
    std::vector<Dart> stack{*left.begin()};
    std::set<Dart> vis{*left.begin()};
    while (!stack.empty()) {
      Dart d = stack.back();
      stack.pop_back();
      for (Dart nb : {b.m.sigma[d], b.m.alpha[d]})
        if (!vis.count(nb)) {
          vis.insert(nb);
          stack.push_back(nb);
        }
    }
    if (vis.size() != left.size())
      throw map_error("BadNesting", "declared component is not connected");
    while (!left.empty()) {
      Dart d0 = *left.begin();
      auto orb = b.m.face_orbit(d0);
      for (Dart x : orb) left.erase(x);
      comp_faces[ci].push_back(std::move(orb));
    }
    std::sort(comp_faces[ci].begin(), comp_faces[ci].end());
    int V = (int)c.rot.size(), E = (int)c.edges.size(), F = (int)comp_faces[ci].size();
    if (V - E + F != 2)
      throw map_error("NonPlanar", "component " + std::to_string(ci) +
                                       ": V-E+F=" + std::to_string(V - E + F));
    if (c.outer_face < 0 || c.outer_face >= F)
      throw map_error("BadNesting", "outer face out of range");
  }

  // regions: plane = 0, one per non-outer face of each component
  std::vector<std::vector<int>> face_region(raw.comps.size());
  for (size_t ci = 0; ci < raw.comps.size(); ++ci) {
    face_region[ci].assign(std::max<size_t>(comp_faces[ci].size(), 1), -1);
    if (raw.comps[ci].isolated) continue;
    for (size_t f = 0; f < comp_faces[ci].size(); ++f)
      if ((int)f != raw.comps[ci].outer_face) face_region[ci][f] = b.m.fresh_region();
  }
  auto slot_region = [&](const RawNest& nst) {
    if (nst.parent_comp < 0) return 0;
    if (nst.parent_comp >= (int)raw.comps.size())
      throw map_error("BadNesting", "dangling parent component");
    if (raw.comps[nst.parent_comp].isolated)
      throw map_error("BadNesting", "nesting under an isolated vertex");
    if (nst.parent_face < 0 || nst.parent_face >= (int)comp_faces[nst.parent_comp].size())
      throw map_error("BadNesting", "dangling parent face");
    int r = face_region[nst.parent_comp][nst.parent_face];
    if (r < 0) throw map_error("BadNesting", "nesting into the parent's outer face");
    return r;
  };
  for (size_t ci = 0; ci < raw.comps.size(); ++ci) {
    const auto& c = raw.comps[ci];
    int parent = slot_region(raw.nesting[ci]);
    if (c.isolated) {
      b.m.marks.push_back(Mark{parent, true});
      continue;
    }
    for (size_t f = 0; f < comp_faces[ci].size(); ++f) {
      int r = ((int)f == c.outer_face) ? parent : face_region[ci][f];
      for (Dart d : comp_faces[ci][f]) b.m.region_of[d] = r;
    }
  }
  validate(b);
  return b;
}

Blink empty_blink() { return Blink{}; }

Blink isolated_vertex_blink() {
  Blink b;
  b.m.marks.push_back(Mark{0, true});
  return b;
}

Blink loop_blink(Color c) {
  RawBlink raw;
  RawComponent comp;
  comp.rot = {{0, 1}};
  comp.edges = {{0, 1}};
  comp.colors = {c == kBlack ? "black" : "gray"};
  comp.outer_face = 0;  // faces by min dart: {0} then {1}; outer = {0}
  raw.comps.push_back(comp);
  raw.nesting.push_back({});
  return validate_raw(raw);
}

Blink link_edge_blink(Color c) {
  RawBlink raw;
  RawComponent comp;
  comp.rot = {{0}, {1}};
  comp.edges = {{0, 1}};
  comp.colors = {c == kBlack ? "black" : "gray"};
  comp.outer_face = 0;
  raw.comps.push_back(comp);
  raw.nesting.push_back({});
  return validate_raw(raw);
}

Blink color_swap(const Blink& b) {
  Blink out = b;
  for (Dart d = 0; d < (Dart)out.m.sigma.size(); ++d)
    if (out.m.alive[d]) out.m.deco[d] ^= 1;
  return out;
}

std::vector<std::pair<int, std::vector<std::vector<Dart>>>> faces(const Blink& b) {
  std::map<int, std::vector<std::vector<Dart>>> acc;
  acc[0];
  std::vector<uint8_t> seen(b.m.sigma.size(), 0);
  for (Dart d = 0; d < (Dart)b.m.sigma.size(); ++d) {
    if (!b.m.alive[d] || seen[d]) continue;
    auto orb = b.m.face_orbit(d);
    for (Dart x : orb) seen[x] = 1;
    acc[b.m.region_of[d]].push_back(orb);
  }
  std::vector<std::pair<int, std::vector<std::vector<Dart>>>> out(acc.begin(), acc.end());
  return out;
}

Blink dual(const Blink& b) {
  // vertices of the dual = regions of the arrangement; edges carried over.
  // Each region's boundary walks concatenate into the dual rotation: the
  // owning face's walk first, then child walks ordered by node code, each
  // walk phased at its canonically-least dart.
  const PlaneMap& m = b.m;
  auto ps = m.pieces();
  auto canon = canonical_code_ex(m);
  std::map<Dart, Dart> root_of;  // piece min dart -> canonical root
  for (auto& [md, r] : canon.piece_root) root_of[md] = r;

  // canonical label per dart (within its piece)
  std::vector<int32_t> clabel(m.sigma.size(), -1);
  std::map<Dart, Code> piece_code;  // piece min dart -> node code (for sibling order)
  for (const auto& p : ps) {
    std::vector<Dart> order;
    std::vector<int32_t> label;
    piece_labeling(m, root_of[p.darts[0]], order, label);
    for (Dart d : p.darts) clabel[d] = label[d];
    // per-piece code for deterministic sibling ordering: reuse whole-map code
    // of the piece alone is overkill; the base code from the canonical root
    // is enough to sort automorphism-inequivalent siblings deterministically.
    Code c;
    for (Dart d : order) {
      c.push_back(label[m.sigma[d]]);
      c.push_back(label[m.alpha[d]]);
      c.push_back(m.deco[d]);
    }
    piece_code[p.darts[0]] = std::move(c);
  }

  auto phased = [&](const std::vector<Dart>& orbit) {
    // rotate the phi-cycle to start at its canonically-least dart
    size_t best = 0;
    for (size_t i = 1; i < orbit.size(); ++i)
      if (clabel[orbit[i]] < clabel[orbit[best]]) best = i;
    std::vector<Dart> out(orbit.begin() + best, orbit.end());
    out.insert(out.end(), orbit.begin(), orbit.begin() + best);
    return out;
  };

  // region -> walks
  struct Walk {
    std::vector<Dart> darts;
    bool host;
    Code key;
  };
  std::map<int, std::vector<Walk>> walks;
  for (const auto& p : ps) {
    for (size_t fi = 0; fi < p.faces.size(); ++fi) {
      Walk w;
      w.darts = phased(p.faces[fi].darts);
      w.host = ((int)fi != p.outer_face);
      w.key = piece_code[p.darts[0]];
      walks[p.faces[fi].region].push_back(std::move(w));
    }
  }
  for (auto& [r, ws] : walks) {
    (void)r;
    std::stable_sort(ws.begin(), ws.end(), [](const Walk& a, const Walk& b2) {
      if (a.host != b2.host) return a.host;
      return a.key < b2.key;
    });
  }

  Blink out;
  out.m.sigma.assign(m.sigma.size(), kNoDart);
  out.m.alpha = m.alpha;
  out.m.alive = m.alive;
  out.m.deco = m.deco;
  out.m.region_of.assign(m.sigma.size(), -1);
  for (auto& [r, ws] : walks) {
    (void)r;
    std::vector<Dart> cyc;
    for (const auto& w : ws) cyc.insert(cyc.end(), w.darts.begin(), w.darts.end());
    for (size_t i = 0; i < cyc.size(); ++i)
      out.m.sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }

  if (b.m.dart_count() == 0) {
    // no edges at all: dual of k marks in the plane is k marks
    Blink res;
    for (const auto& mk : m.marks)
      if (mk.alive) res.m.marks.push_back(Mark{0, true});
    return res;
  }

  // regions of the dual: compute its faces, pick the outer by convention
  // (the dual face containing the first boundary dart of region 0), assign
  // fresh regions elsewhere. The dual is connected, so the arrangement is a
  // star around one piece.
  std::vector<std::vector<Dart>> dfaces;
  {
    std::vector<uint8_t> seen(out.m.sigma.size(), 0);
    for (Dart d = 0; d < (Dart)out.m.sigma.size(); ++d) {
      if (!out.m.alive[d] || seen[d]) continue;
      std::vector<Dart> orb;
      Dart x = d;
      do {
        orb.push_back(x);
        seen[x] = 1;
        x = out.m.sigma[out.m.alpha[x]];
      } while (x != d);
      dfaces.push_back(std::move(orb));
    }
  }
  Dart pivot = walks[0].front().darts.front();
  int outer_idx = -1;
  for (size_t i = 0; i < dfaces.size(); ++i)
    for (Dart d : dfaces[i])
      if (d == pivot) outer_idx = (int)i;
  out.m.nregions = 1;
  for (size_t i = 0; i < dfaces.size(); ++i) {
    int r = ((int)i == outer_idx) ? 0 : out.m.fresh_region();
    for (Dart d : dfaces[i]) out.m.region_of[d] = r;
  }
  // marks: one per original mark, placed in the dual face that contains the
  // first dart of the walk of the region the mark lived in
  for (const auto& mk : m.marks) {
    if (!mk.alive) continue;
    int r = 0;
    if (!walks[mk.region].empty()) {
      Dart d = walks[mk.region].front().darts.front();
      r = out.m.region_of[d];
    }
    out.m.marks.push_back(Mark{r, true});
  }
  validate(out);
  return out;
}

Blink relabel_blink(const Blink& b, uint64_t seed) {
  Blink out;
  out.m = relabel(b.m, seed);
  return out;
}

// --- brute-force isotopy oracle --------------------------------------------

namespace {

struct OracleCtx {
  const PlaneMap* A;
  const PlaneMap* B;
};

// try mapping piece of A rooted at ra onto piece of B rooted at rb; the map
// extends uniquely through sigma/alpha; returns dart map or empty
bool try_piece_map(const PlaneMap& A, const PlaneMap& B, Dart ra, Dart rb,
                   std::map<Dart, Dart>& out) {
  std::vector<Dart> orderA;
  std::vector<int32_t> labelA;
  piece_labeling(A, ra, orderA, labelA);
  std::vector<Dart> stack{ra};
  out.clear();
  out[ra] = rb;
  std::vector<Dart> ord{ra};
  for (size_t i = 0; i < ord.size(); ++i) {
    Dart a = ord[i], img = out[a];
    if (A.deco[a] != B.deco[img]) return false;
    for (int k = 0; k < 2; ++k) {
      Dart na = k ? A.alpha[a] : A.sigma[a];
      Dart nb = k ? B.alpha[img] : B.sigma[img];
      auto it = out.find(na);
      if (it == out.end()) {
        out[na] = nb;
        ord.push_back(na);
      } else if (it->second != nb) {
        return false;
      }
    }
  }
  return true;
}

struct NodeRef {
  int kind;  // 0 piece, 1 mark
  int idx;
};

bool match_regions(const PlaneMap& A, const PlaneMap& B, int ra, int rb,
                   const std::vector<Piece>& pa, const std::vector<Piece>& pb);

// does the dart map send the slot structure of piece ia consistently, i.e.
// per non-outer face of A-piece, matched region subtrees are isomorphic
bool match_piece_children(const PlaneMap& A, const PlaneMap& B, const Piece& Pa,
                          const Piece& Pb, const std::map<Dart, Dart>& dmap,
                          const std::vector<Piece>& pa, const std::vector<Piece>& pb) {
  // outer face must map to outer face
  for (size_t fa = 0; fa < Pa.faces.size(); ++fa) {
    Dart a0 = Pa.faces[fa].darts[0];
    Dart b0 = dmap.at(a0);
    // find B face containing b0
    int fb = -1;
    for (size_t j = 0; j < Pb.faces.size(); ++j)
      for (Dart d : Pb.faces[j].darts)
        if (d == b0) fb = (int)j;
    bool a_outer = ((int)fa == Pa.outer_face), b_outer = (fb == Pb.outer_face);
    if (a_outer != b_outer) return false;
    if (!a_outer) {
      if (!match_regions(A, B, Pa.faces[fa].region, Pb.faces[fb].region, pa, pb))
        return false;
    }
  }
  return true;
}

bool match_regions(const PlaneMap& A, const PlaneMap& B, int ra, int rb,
                   const std::vector<Piece>& pa, const std::vector<Piece>& pb) {
  // children of ra in A vs rb in B: pieces parented there + marks
  std::vector<int> ca, cb;
  for (size_t i = 0; i < pa.size(); ++i)
    if (pa[i].parent_region == ra) ca.push_back((int)i);
  for (size_t i = 0; i < pb.size(); ++i)
    if (pb[i].parent_region == rb) cb.push_back((int)i);
  int ma = 0, mb = 0;
  for (const auto& mk : A.marks)
    if (mk.alive && mk.region == ra) ma++;
  for (const auto& mk : B.marks)
    if (mk.alive && mk.region == rb) mb++;
  if (ma != mb || ca.size() != cb.size()) return false;
  // match pieces by backtracking over bijections
  std::vector<int> rem(cb.begin(), cb.end());
  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == ca.size()) return true;
    const Piece& Pa = pa[ca[i]];
    for (size_t j = 0; j < rem.size(); ++j) {
      if (rem[j] < 0) continue;
      const Piece& Pb = pb[rem[j]];
      if (Pa.darts.size() != Pb.darts.size()) continue;
      // roots: map Pa outer-face min dart to any dart on Pb's outer face
      Dart ra0 = Pa.faces[Pa.outer_face].darts[0];
      for (Dart rb0 : Pb.faces[Pb.outer_face].darts) {
        std::map<Dart, Dart> dmap;
        if (!try_piece_map(A, B, ra0, rb0, dmap)) continue;
        if (!match_piece_children(A, B, Pa, Pb, dmap, pa, pb)) continue;
        int saved = rem[j];
        rem[j] = -1;
        if (go(i + 1)) return true;
        rem[j] = saved;
      }
    }
    return false;
  };
  return go(0);
}

}  // namespace

bool isomorphic_bruteforce(const Blink& a, const Blink& b) {
  auto pa = a.m.pieces();
  auto pb = b.m.pieces();
  if (pa.size() != pb.size()) return false;
  if (a.m.dart_count() != b.m.dart_count()) return false;
  return match_regions(a.m, b.m, 0, 0, pa, pb);
}

}  // namespace blink
