#include "blink/planemap.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace blink {

int PlaneMap::dart_count() const {
  int n = 0;
  for (size_t d = 0; d < alive.size(); ++d) n += alive[d] ? 1 : 0;
  return n;
}

Dart PlaneMap::new_dart() {
  sigma.push_back(kNoDart);
  alpha.push_back(kNoDart);
  alive.push_back(1);
  deco.push_back(0);
  region_of.push_back(-1);
  return static_cast<Dart>(sigma.size()) - 1;
}

void PlaneMap::kill_dart(Dart d) {
  alive[d] = 0;
  sigma[d] = alpha[d] = kNoDart;
  region_of[d] = -1;
}

bool PlaneMap::empty() const {
  if (dart_count() > 0) return false;
  for (const auto& o : ovals)
    if (o.alive) return false;
  for (const auto& mk : marks)
    if (mk.alive) return false;
  return true;
}

std::vector<Dart> PlaneMap::face_orbit(Dart d) const {
  std::vector<Dart> orb;
  Dart x = d;
  do {
    orb.push_back(x);
    x = phi(x);
  } while (x != d);
  auto it = std::min_element(orb.begin(), orb.end());
  std::rotate(orb.begin(), it, orb.end());
  return orb;
}

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<Dart>> all_face_orbits(const PlaneMap& m) {
  std::vector<std::vector<Dart>> out;
  std::vector<uint8_t> seen(m.sigma.size(), 0);
  for (Dart d = 0; d < (Dart)m.sigma.size(); ++d) {
    if (!m.alive[d] || seen[d]) continue;
    auto orb = m.face_orbit(d);
    for (Dart x : orb) seen[x] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace

std::vector<Piece> PlaneMap::pieces() const {
  const int n = static_cast<int>(sigma.size());
  UF uf(n);
  for (Dart d = 0; d < n; ++d) {
    if (!alive[d]) continue;
    uf.unite(d, sigma[d]);
    uf.unite(d, alpha[d]);
  }
  std::map<int, Piece> by_root;
  for (Dart d = 0; d < n; ++d)
    if (alive[d]) by_root[uf.find(d)].darts.push_back(d);

  std::vector<Piece> out;
  for (auto& [root, p] : by_root) {
    (void)root;
    // faces
    std::set<Dart> left(p.darts.begin(), p.darts.end());
    while (!left.empty()) {
      auto orb = face_orbit(*left.begin());
      for (Dart x : orb) left.erase(x);
      FaceOrbit f;
      f.region = region_of[orb[0]];
      f.darts = std::move(orb);
      p.faces.push_back(std::move(f));
    }
    std::sort(p.faces.begin(), p.faces.end(),
              [](const FaceOrbit& a, const FaceOrbit& b) { return a.darts[0] < b.darts[0]; });
    // vertices
    std::set<Dart> vleft(p.darts.begin(), p.darts.end());
    while (!vleft.empty()) {
      Dart d0 = *vleft.begin();
      Dart x = d0;
      do {
        vleft.erase(x);
        x = sigma[x];
      } while (x != d0);
      p.vertices++;
    }
    out.push_back(std::move(p));
  }
  // nesting: BFS over the region/piece incidence graph from region 0
  std::map<int, std::vector<int>> pieces_of_region;  // region -> piece indices
  for (size_t i = 0; i < out.size(); ++i)
    for (const auto& f : out[i].faces) pieces_of_region[f.region].push_back((int)i);
  std::map<int, std::vector<int>> ovals_of_region;
  for (size_t i = 0; i < ovals.size(); ++i) {
    if (!ovals[i].alive) continue;
    ovals_of_region[ovals[i].outside].push_back((int)i);
    ovals_of_region[ovals[i].inside].push_back((int)i);
  }
  std::vector<int> frontier{0};
  std::set<int> seen_regions{0};
  std::vector<uint8_t> piece_done(out.size(), 0), oval_done(ovals.size(), 0);
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int r : frontier) {
      for (int pi : pieces_of_region[r]) {
        if (piece_done[pi]) continue;
        piece_done[pi] = 1;
        out[pi].parent_region = r;
        for (size_t fi = 0; fi < out[pi].faces.size(); ++fi) {
          int fr = out[pi].faces[fi].region;
          if (fr == r) out[pi].outer_face = (int)fi;
          if (!seen_regions.count(fr)) {
            seen_regions.insert(fr);
            next.push_back(fr);
          }
        }
      }
      for (int oi : ovals_of_region[r]) {
        if (oval_done[oi]) continue;
        oval_done[oi] = 1;
        int other = (ovals[oi].outside == r) ? ovals[oi].inside : ovals[oi].outside;
        if (!seen_regions.count(other)) {
          seen_regions.insert(other);
          next.push_back(other);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

void PlaneMap::validate() const {
  const int n = static_cast<int>(sigma.size());
  // permutation sanity
  std::vector<int> sig_seen(n, 0), alp_seen(n, 0);
  for (Dart d = 0; d < n; ++d) {
    if (!alive[d]) continue;
    Dart s = sigma[d], a = alpha[d];
    if (s < 0 || s >= n || !alive[s] || a < 0 || a >= n || !alive[a])
      throw map_error("BadMap", "dangling dart " + std::to_string(d));
    sig_seen[s]++;
    alp_seen[a]++;
    if (alpha[a] != d) throw map_error("BadMap", "alpha not an involution");
    if (a == d) throw map_error("BadMap", "alpha fixes dart " + std::to_string(d));
    if (region_of[d] < 0 || region_of[d] >= nregions)
      throw map_error("BadNesting", "dart without region");
  }
  for (Dart d = 0; d < n; ++d)
    if (alive[d] && sig_seen[d] != 1) throw map_error("BadMap", "sigma not a permutation");

  // region consistency along each face orbit
  for (const auto& orb : all_face_orbits(*this)) {
    for (Dart x : orb)
      if (region_of[x] != region_of[orb[0]])
        throw map_error("BadNesting", "face orbit with mixed regions");
  }

  auto ps = pieces();
  // Euler per piece, distinct face regions per piece
  for (const auto& p : ps) {
    int V = p.vertices, E = (int)p.darts.size() / 2, F = (int)p.faces.size();
    if (V - E + F != 2)
      throw map_error("NonPlanar", "V-E+F=" + std::to_string(V - E + F) +
                                       " at dart " + std::to_string(p.darts[0]));
    std::set<int> rs;
    for (const auto& f : p.faces) rs.insert(f.region);
    if ((int)rs.size() != F) throw map_error("BadNesting", "piece touches a region twice");
    if (p.parent_region < 0 || p.outer_face < 0)
      throw map_error("BadNesting", "piece unreachable from the outer region");
  }
  for (const auto& o : ovals) {
    if (!o.alive) continue;
    if (o.inside == o.outside) throw map_error("BadNesting", "oval with equal sides");
    if (o.inside < 0 || o.inside >= nregions || o.outside < 0 || o.outside >= nregions)
      throw map_error("BadNesting", "oval region out of range");
  }
  // tree check: every region referenced must be reached exactly once; redo the
  // BFS of pieces() once more, over regions, and verify no cycles / no orphans.
  std::set<int> referenced{0};
  for (Dart d = 0; d < n; ++d)
    if (alive[d]) referenced.insert(region_of[d]);
  for (const auto& o : ovals)
    if (o.alive) {
      referenced.insert(o.inside);
      referenced.insert(o.outside);
    }
  for (const auto& mk : marks)
    if (mk.alive) {
      if (mk.region < 0 || mk.region >= nregions)
        throw map_error("BadNesting", "mark region out of range");
      referenced.insert(mk.region);
    }

  // reachability: regions reached via the piece/oval tree
  std::set<int> reached{0};
  std::vector<uint8_t> pdone(ps.size(), 0), odone(ovals.size(), 0);
  std::vector<int> frontier{0};
  int guard = 0;
  while (!frontier.empty() && guard++ < 1000000) {
    std::vector<int> next;
    for (int r : frontier) {
      for (size_t pi = 0; pi < ps.size(); ++pi) {
        if (pdone[pi]) continue;
        bool inc = false;
        for (const auto& f : ps[pi].faces) inc = inc || f.region == r;
        if (!inc) continue;
        pdone[pi] = 1;
        for (const auto& f : ps[pi].faces) {
          if (f.region == r) continue;
          if (reached.count(f.region))
            throw map_error("BadNesting", "cycle in nesting");
          reached.insert(f.region);
          next.push_back(f.region);
        }
      }
      for (size_t oi = 0; oi < ovals.size(); ++oi) {
        if (odone[oi] || !ovals[oi].alive) continue;
        const auto& o = ovals[oi];
        if (o.outside != r && o.inside != r) continue;
        odone[oi] = 1;
        int other = (o.outside == r) ? o.inside : o.outside;
        if (reached.count(other)) throw map_error("BadNesting", "cycle in nesting");
        reached.insert(other);
        next.push_back(other);
      }
    }
    frontier = std::move(next);
  }
  for (size_t pi = 0; pi < ps.size(); ++pi)
    if (!pdone[pi]) throw map_error("BadNesting", "piece not attached to the plane");
  for (size_t oi = 0; oi < ovals.size(); ++oi)
    if (ovals[oi].alive && !odone[oi])
      throw map_error("BadNesting", "oval not attached to the plane");
  for (int r : referenced)
    if (!reached.count(r)) throw map_error("BadNesting", "region unreachable");
}

std::vector<int> PlaneMap::recompute_regions(const std::vector<int>& old_region,
                                             const std::vector<Dart>& touched,
                                             const std::vector<std::pair<Dart, int>>& hints) {
  std::vector<uint8_t> dirty(sigma.size(), 0);
  for (Dart d : touched)
    if (d >= 0 && d < (Dart)sigma.size()) dirty[d] = 1;
  std::map<Dart, int> hint_of;
  for (auto& [d, r] : hints) hint_of[d] = r;

  auto orbits = all_face_orbits(*this);
  UF uf(nregions);

  struct OrbInfo {
    std::set<int> inherited;
    bool is_dirty = false;
  };
  std::vector<OrbInfo> info(orbits.size());
  for (size_t i = 0; i < orbits.size(); ++i) {
    for (Dart d : orbits[i]) {
      if (d < (Dart)old_region.size() && old_region[d] >= 0)
        info[i].inherited.insert(old_region[d]);
      if (dirty[d]) info[i].is_dirty = true;
      auto it = hint_of.find(d);
      if (it != hint_of.end()) info[i].inherited.insert(it->second);
    }
    int first = -1;
    for (int r : info[i].inherited) {
      if (first < 0)
        first = r;
      else
        uf.unite(first, r);
    }
  }

  // claim representatives: dirty orbits in min-dart order; first of a class
  // keeps the class id, later ones get fresh regions
  std::map<int, bool> claimed;
  std::vector<int> assignment(orbits.size(), -1);
  for (size_t i = 0; i < orbits.size(); ++i) {
    if (info[i].inherited.empty()) {
      assignment[i] = fresh_region();
      continue;
    }
    int rep = uf.find(*info[i].inherited.begin());
    if (!info[i].is_dirty) {
      assignment[i] = rep;  // follow
    } else if (!claimed[rep]) {
      claimed[rep] = true;
      assignment[i] = rep;
    } else {
      assignment[i] = fresh_region();
    }
  }
  for (size_t i = 0; i < orbits.size(); ++i)
    for (Dart d : orbits[i]) region_of[d] = assignment[i];

  // ovals and marks follow their class representative
  std::set<int> referenced{0};
  for (int a : assignment) referenced.insert(a);
  for (auto& o : ovals) {
    if (!o.alive) continue;
    if (o.outside < (int)uf.p.size()) o.outside = uf.find(o.outside);
    if (o.inside < (int)uf.p.size()) o.inside = uf.find(o.inside);
    referenced.insert(o.outside);
    referenced.insert(o.inside);
  }
  for (auto& mk : marks) {
    if (!mk.alive) continue;
    if (mk.region < (int)uf.p.size()) mk.region = uf.find(mk.region);
    if (!referenced.count(mk.region))
      throw map_error("BadNesting", "move strands a mark");
  }
  for (const auto& o : ovals) {
    if (!o.alive) continue;
    // an oval side must survive as a region someone else also bounds, or be
    // its own private inside; actual tree-ness is checked by validate()
    if (o.inside == o.outside) throw map_error("BadNesting", "move strands an oval");
  }

  std::vector<int> resolve(uf.p.size());
  for (size_t r = 0; r < uf.p.size(); ++r) resolve[r] = uf.find((int)r);
  return resolve;
}

void PlaneMap::normalize() {
  const int n = static_cast<int>(sigma.size());
  // darts: arcs in min-dart order
  std::vector<Dart> remap(n, kNoDart);
  int next = 0;
  for (Dart d = 0; d < n; ++d) {
    if (!alive[d] || remap[d] != kNoDart) continue;
    remap[d] = next++;
    remap[alpha[d]] = next++;
  }
  PlaneMap out;
  out.sigma.assign(next, kNoDart);
  out.alpha.assign(next, kNoDart);
  out.alive.assign(next, 1);
  out.deco.assign(next, 0);
  out.region_of.assign(next, -1);
  for (Dart d = 0; d < n; ++d) {
    if (!alive[d]) continue;
    out.sigma[remap[d]] = remap[sigma[d]];
    out.alpha[remap[d]] = remap[alpha[d]];
    out.deco[remap[d]] = deco[d];
    out.region_of[remap[d]] = region_of[d];
  }
  for (const auto& o : ovals)
    if (o.alive) out.ovals.push_back(o);
  for (const auto& mk : marks)
    if (mk.alive) out.marks.push_back(mk);
  out.nregions = nregions;

  // regions: renumber in deterministic scan order
  std::vector<int> rmap(std::max(nregions, 1), -1);
  int rnext = 0;
  rmap[0] = rnext++;
  auto touch = [&](int r) {
    if (rmap[r] < 0) rmap[r] = rnext++;
  };
  for (Dart d = 0; d < next; ++d) touch(out.region_of[d]);
  for (const auto& o : out.ovals) {
    touch(o.outside);
    touch(o.inside);
  }
  for (const auto& mk : out.marks) touch(mk.region);
  for (Dart d = 0; d < next; ++d) out.region_of[d] = rmap[out.region_of[d]];
  for (auto& o : out.ovals) {
    o.outside = rmap[o.outside];
    o.inside = rmap[o.inside];
  }
  for (auto& mk : out.marks) mk.region = rmap[mk.region];
  out.nregions = rnext;
  *this = std::move(out);
}

int PlaneMap::arc_count() const { return dart_count() / 2; }

bool PlaneMap::is_four_valent() const {
  std::vector<uint8_t> seen(sigma.size(), 0);
  for (Dart d = 0; d < (Dart)sigma.size(); ++d) {
    if (!alive[d] || seen[d]) continue;
    int len = 0;
    Dart x = d;
    do {
      seen[x] = 1;
      len++;
      x = sigma[x];
    } while (x != d);
    if (len != 4) return false;
  }
  return true;
}

// --- canonical code --------------------------------------------------------

namespace {

constexpr int32_t OPEN = -1, CLOSE = -2, MARK_TAG = -3, OVAL_TAG = -4,
                  PIECE_TAG = -5, SEP = -6;

struct TreeNode {
  int kind;  // 0 piece, 1 oval, 2 mark
  int index; // into pieces / ovals / marks
  Code code;
  Dart best_root = kNoDart;
};

}  // namespace

void piece_labeling(const PlaneMap& m, Dart root, std::vector<Dart>& order,
                    std::vector<int32_t>& label) {
  order.clear();
  label.assign(m.sigma.size(), -1);
  order.push_back(root);
  label[root] = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    Dart d = order[i];
    for (Dart nb : {m.sigma[d], m.alpha[d]}) {
      if (label[nb] < 0) {
        label[nb] = (int32_t)order.size();
        order.push_back(nb);
      }
    }
  }
}

namespace {

Code piece_base_code(const PlaneMap& m, Dart root, std::vector<Dart>& order,
                     std::vector<int32_t>& label) {
  piece_labeling(m, root, order, label);
  Code c;
  c.reserve(order.size() * 3 + 2);
  c.push_back((int32_t)order.size());
  for (Dart d : order) {
    c.push_back(label[m.sigma[d]]);
    c.push_back(label[m.alpha[d]]);
    c.push_back((int32_t)m.deco[d]);
  }
  return c;
}

}  // namespace

Code canonical_code(const PlaneMap& m, const PieceCodeExtra* extra) {
  return canonical_code_ex(m, extra).code;
}

CanonicalResult canonical_code_ex(const PlaneMap& m, const PieceCodeExtra* extra) {
  auto ps = m.pieces();

  // children per region
  std::map<int, std::vector<TreeNode*>> kids;
  std::vector<TreeNode> nodes;
  nodes.reserve(ps.size() + m.ovals.size() + m.marks.size());
  for (size_t i = 0; i < ps.size(); ++i) nodes.push_back({0, (int)i, {}});
  for (size_t i = 0; i < m.ovals.size(); ++i)
    if (m.ovals[i].alive) nodes.push_back({1, (int)i, {}});
  for (size_t i = 0; i < m.marks.size(); ++i)
    if (m.marks[i].alive) nodes.push_back({2, (int)i, {}});

  for (auto& nd : nodes) {
    int parent = 0;
    if (nd.kind == 0) parent = ps[nd.index].parent_region;
    if (nd.kind == 1) parent = m.ovals[nd.index].outside;
    if (nd.kind == 2) parent = m.marks[nd.index].region;
    kids[parent].push_back(&nd);
  }

  // order nodes so children are coded before parents: repeat passes
  auto node_ready = [&](const TreeNode& nd) {
    std::vector<int> child_regions;
    if (nd.kind == 0) {
      for (const auto& f : ps[nd.index].faces)
        if ((int)(&f - ps[nd.index].faces.data()) != ps[nd.index].outer_face)
          child_regions.push_back(f.region);
    } else if (nd.kind == 1) {
      child_regions.push_back(m.ovals[nd.index].inside);
    }
    for (int r : child_regions)
      for (auto* c : kids[r])
        if (c->code.empty()) return false;
    return true;
  };

  auto encode_node = [&](TreeNode& nd) {
    if (nd.kind == 2) {
      nd.code = {MARK_TAG};
      return;
    }
    if (nd.kind == 1) {
      Code c{OVAL_TAG};
      if (extra) {
        Code e = extra->encode_oval(m, nd.index);
        c.insert(c.end(), e.begin(), e.end());
      }
      c.push_back(OPEN);
      std::vector<Code> cc;
      for (auto* ch : kids[m.ovals[nd.index].inside]) cc.push_back(ch->code);
      std::sort(cc.begin(), cc.end());
      for (auto& x : cc) c.insert(c.end(), x.begin(), x.end());
      c.push_back(CLOSE);
      nd.code = std::move(c);
      return;
    }
    const Piece& p = ps[nd.index];
    Code best;
    std::vector<Dart> order;
    std::vector<int32_t> label;
    for (Dart root : p.darts) {
      Code cand = piece_base_code(m, root, order, label);
      cand.insert(cand.begin(), PIECE_TAG);
      // outer-face marker: minimal label over the outer orbit
      int32_t om = INT32_MAX;
      for (Dart d : p.faces[p.outer_face].darts) om = std::min(om, label[d]);
      cand.push_back(SEP);
      cand.push_back(om);
      // faces in min-label order, skipping outer
      std::vector<std::pair<int32_t, int>> forder;
      for (size_t fi = 0; fi < p.faces.size(); ++fi) {
        if ((int)fi == p.outer_face) continue;
        int32_t fm = INT32_MAX;
        for (Dart d : p.faces[fi].darts) fm = std::min(fm, label[d]);
        forder.push_back({fm, (int)fi});
      }
      std::sort(forder.begin(), forder.end());
      for (auto& [fm, fi] : forder) {
        cand.push_back(OPEN);
        cand.push_back(fm);
        std::vector<Code> cc;
        for (auto* ch : kids[p.faces[fi].region]) cc.push_back(ch->code);
        std::sort(cc.begin(), cc.end());
        for (auto& x : cc) cand.insert(cand.end(), x.begin(), x.end());
        cand.push_back(CLOSE);
      }
      if (extra) {
        Code e = extra->encode(m, order, label);
        cand.push_back(SEP);
        cand.insert(cand.end(), e.begin(), e.end());
      }
      if (best.empty() || cand < best) {
        best = std::move(cand);
        nd.best_root = root;
      }
    }
    nd.code = std::move(best);
  };

  size_t done = 0;
  while (done < nodes.size()) {
    bool progress = false;
    for (auto& nd : nodes) {
      if (!nd.code.empty()) continue;
      if (!node_ready(nd)) continue;
      encode_node(nd);
      if (nd.code.empty()) nd.code = {SEP};  // guard, should not happen
      done++;
      progress = true;
    }
    if (!progress) throw map_error("BadNesting", "cyclic nesting in code");
  }

  Code top;
  std::vector<Code> cc;
  for (auto* ch : kids[0]) cc.push_back(ch->code);
  std::sort(cc.begin(), cc.end());
  top.push_back((int32_t)cc.size());
  for (auto& x : cc) top.insert(top.end(), x.begin(), x.end());

  CanonicalResult res;
  res.code = std::move(top);
  for (auto& nd : nodes)
    if (nd.kind == 0) res.piece_root.push_back({ps[nd.index].darts[0], nd.best_root});
  return res;
}

std::string code_to_string(const Code& c) {
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

PlaneMap relabel(const PlaneMap& m, uint64_t seed) {
  auto rnd = [&]() {
    seed ^= seed << 13;
    seed ^= seed >> 7;
    seed ^= seed << 17;
    return seed;
  };
  const int n = static_cast<int>(m.sigma.size());
  std::vector<Dart> live;
  for (Dart d = 0; d < n; ++d)
    if (m.alive[d]) live.push_back(d);
  std::vector<Dart> perm = live;
  for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rnd() % i]);
  std::vector<Dart> remap(n, kNoDart);
  for (size_t i = 0; i < live.size(); ++i) remap[live[i]] = perm[i] - 0;
  // perm holds target ids drawn from the same live set; compact afterwards
  std::map<Dart, Dart> dense;
  {
    std::vector<Dart> sorted = live;
    for (size_t i = 0; i < sorted.size(); ++i) dense[sorted[i]] = (Dart)i;
  }
  PlaneMap out;
  out.sigma.assign(live.size(), kNoDart);
  out.alpha.assign(live.size(), kNoDart);
  out.alive.assign(live.size(), 1);
  out.deco.assign(live.size(), 0);
  out.region_of.assign(live.size(), -1);
  auto nd = [&](Dart d) { return dense[remap[d]]; };
  for (Dart d : live) {
    out.sigma[nd(d)] = nd(m.sigma[d]);
    out.alpha[nd(d)] = nd(m.alpha[d]);
    out.deco[nd(d)] = m.deco[d];
    out.region_of[nd(d)] = m.region_of[d];
  }
  out.ovals = m.ovals;
  out.marks = m.marks;
  out.nregions = m.nregions;
  // permute region ids other than 0
  if (m.nregions > 1) {
    std::vector<int> rperm(m.nregions);
    std::iota(rperm.begin(), rperm.end(), 0);
    for (size_t i = rperm.size(); i > 2; --i) std::swap(rperm[i - 1], rperm[1 + rnd() % (i - 1)]);
    for (auto& r : out.region_of) r = rperm[r];
    for (auto& o : out.ovals)
      if (o.alive) {
        o.outside = rperm[o.outside];
        o.inside = rperm[o.inside];
      }
    for (auto& mk : out.marks)
      if (mk.alive) mk.region = rperm[mk.region];
  }
  return out;
}

}  // namespace blink
