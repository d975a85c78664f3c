#include "blink/linkdiag.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace blink {

void validate_diagram(const Diagram& d) {
  d.m.validate();
  if (!d.m.marks.empty())
    for (const auto& mk : d.m.marks)
      if (mk.alive) throw map_error("BadMap", "diagram with mark");
  if (!d.m.is_four_valent()) throw map_error("BadMap", "crossing not 4-valent");
  // over decoration: exactly one opposite pair flagged per crossing
  for (Dart c : crossings(d)) {
    auto cyc = crossing_cycle(d, c);
    if (d.m.deco[cyc[0]] != d.m.deco[cyc[2]] || d.m.deco[cyc[1]] != d.m.deco[cyc[3]] ||
        d.m.deco[cyc[0]] == d.m.deco[cyc[1]])
      throw map_error("BadMap", "over decoration must flag one diagonal");
  }
  checkerboard(d);  // throws NotBipartiteFaces on inconsistency
}

void validate_flink(const Flink& f) {
  validate_diagram(f.d);
  auto comps = link_components(f.d);
  if (comps.size() != f.fracs.size())
    throw map_error("BadFraction", "fraction count != component count");
  for (const auto& fr : f.fracs)
    if (!is_residual(fr)) throw map_error("BadFraction", "not in residual form: " + fr.str());
}

std::vector<LinkComponent> link_components(const Diagram& d) {
  const int n = (int)d.m.sigma.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (Dart x = 0; x < n; ++x) {
    if (!d.m.alive[x]) continue;
    unite(x, d.m.alpha[x]);
    unite(x, d.m.sigma[d.m.sigma[x]]);
  }
  std::map<int, LinkComponent> acc;
  for (Dart x = 0; x < n; ++x)
    if (d.m.alive[x]) acc[find(x)].darts.push_back(x);
  std::vector<LinkComponent> out;
  for (auto& [r, c] : acc) {
    (void)r;
    out.push_back(std::move(c));
  }
  for (size_t i = 0; i < d.m.ovals.size(); ++i)
    if (d.m.ovals[i].alive) {
      LinkComponent c;
      c.oval = (int)i;
      out.push_back(std::move(c));
    }
  return out;
}

std::vector<int> component_of_dart(const Diagram& d) {
  auto comps = link_components(d);
  std::vector<int> out(d.m.sigma.size(), -1);
  for (size_t i = 0; i < comps.size(); ++i)
    for (Dart x : comps[i].darts) out[x] = (int)i;
  return out;
}

std::vector<uint8_t> forward_darts(const Diagram& d) {
  std::vector<uint8_t> fwd(d.m.sigma.size(), 0);
  auto comps = link_components(d);
  for (const auto& c : comps) {
    if (c.darts.empty()) continue;
    Dart start = c.darts[0];
    Dart x = start;
    do {
      fwd[x] = 1;
      x = d.m.sigma[d.m.sigma[d.m.alpha[x]]];
    } while (x != start);
  }
  return fwd;
}

std::vector<Dart> crossings(const Diagram& d) {
  std::vector<Dart> out;
  std::vector<uint8_t> seen(d.m.sigma.size(), 0);
  for (Dart x = 0; x < (Dart)d.m.sigma.size(); ++x) {
    if (!d.m.alive[x] || seen[x]) continue;
    Dart y = x;
    do {
      seen[y] = 1;
      y = d.m.sigma[y];
    } while (y != x);
    out.push_back(x);
  }
  return out;
}

std::array<Dart, 4> crossing_cycle(const Diagram& d, Dart c) {
  std::array<Dart, 4> cyc;
  cyc[0] = c;
  for (int i = 1; i < 4; ++i) cyc[i] = d.m.sigma[cyc[i - 1]];
  return cyc;
}

int crossing_sign(const Diagram& d, Dart c, const std::vector<uint8_t>& fwd) {
  auto cyc = crossing_cycle(d, c);
  Dart over_out = kNoDart, under_out = kNoDart;
  for (Dart x : cyc) {
    if (!fwd[x]) continue;
    if (d.m.deco[x])
      over_out = x;
    else
      under_out = x;
  }
  if (over_out == kNoDart || under_out == kNoDart)
    throw map_error("BadMap", "crossing without forward darts");
  return d.m.sigma[over_out] == under_out ? +1 : -1;
}

std::vector<int> checkerboard(const Diagram& d) {
  std::vector<int> col(d.m.nregions, -1);
  col[0] = 0;
  // adjacency edges: across each arc, across each oval
  std::vector<std::pair<int, int>> adj;
  std::vector<uint8_t> seen(d.m.sigma.size(), 0);
  for (Dart x = 0; x < (Dart)d.m.sigma.size(); ++x) {
    if (!d.m.alive[x] || seen[x]) continue;
    seen[x] = seen[d.m.alpha[x]] = 1;
    adj.push_back({d.m.region_of[x], d.m.region_of[d.m.alpha[x]]});
  }
  for (const auto& o : d.m.ovals)
    if (o.alive) adj.push_back({o.outside, o.inside});
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [a, b] : adj) {
      if (col[a] >= 0 && col[b] < 0) {
        col[b] = 1 - col[a];
        changed = true;
      } else if (col[b] >= 0 && col[a] < 0) {
        col[a] = 1 - col[b];
        changed = true;
      } else if (col[a] >= 0 && col[b] >= 0 && col[a] == col[b]) {
        throw map_error("NotBipartiteFaces", "checkerboard conflict");
      }
    }
  }
  return col;
}

mpz_class self_writhe(const Flink& f, int comp) {
  auto cof = component_of_dart(f.d);
  auto fwd = forward_darts(f.d);
  mpz_class w = 0;
  for (Dart c : crossings(f.d)) {
    auto cyc = crossing_cycle(f.d, c);
    if (cof[cyc[0]] == comp && cof[cyc[1]] == comp)
      w += crossing_sign(f.d, c, fwd);
  }
  return w;
}

mpz_class linking_number(const Flink& f, int c1, int c2) {
  if (c1 == c2) throw map_error("SameComponent", "linking number needs two components");
  auto cof = component_of_dart(f.d);
  auto fwd = forward_darts(f.d);
  mpz_class s = 0;
  for (Dart c : crossings(f.d)) {
    auto cyc = crossing_cycle(f.d, c);
    int a = cof[cyc[0]], b = cof[cyc[1]];
    if ((a == c1 && b == c2) || (a == c2 && b == c1)) s += crossing_sign(f.d, c, fwd);
  }
  if (s % 2 != 0) throw map_error("BadMap", "odd inter-crossing sign sum");
  return s / 2;
}

Fraction surgery_coefficient(const Flink& f, int comp) {
  const Fraction& r = f.fracs[comp];
  if (r.is_infinite()) return r;
  mpz_class w = self_writhe(f, comp);
  return Fraction(w * r.q + r.p, r.q);
}

Flink zero_flink(Diagram d) {
  Flink f;
  f.d = std::move(d);
  f.fracs.assign(link_components(f.d).size(), frac_zero());
  return f;
}

Diagram empty_diagram() { return {}; }

Diagram oval_diagram() {
  Diagram d;
  d.m.ovals.push_back(Oval{0, d.m.fresh_region(), true});
  return d;
}

Diagram reroot(const Diagram& d, int r) {
  if (r == 0) return d;
  Diagram out = d;
  for (auto& x : out.m.region_of)
    if (x == 0)
      x = r;
    else if (x == r)
      x = 0;
  for (auto& o : out.m.ovals) {
    if (!o.alive) continue;
    if (o.outside == 0)
      o.outside = r;
    else if (o.outside == r)
      o.outside = 0;
    if (o.inside == 0)
      o.inside = r;
    else if (o.inside == r)
      o.inside = 0;
  }
  return out;
}

Flink reroot(const Flink& f, int r) {
  Flink out = f;
  out.d = reroot(f.d, r);
  return out;
}

// --- canonical code with fractions ------------------------------------------

namespace {

struct FlinkExtra : PieceCodeExtra {
  const Flink* f;
  std::vector<int> cof;

  explicit FlinkExtra(const Flink& fl) : f(&fl), cof(component_of_dart(fl.d)) {}

  static void push_fraction(Code& c, const Fraction& fr) {
    if (!fr.p.fits_sint_p() || !fr.q.fits_sint_p())
      throw map_error("BadFraction", "fraction too large for coding");
    c.push_back((int32_t)fr.p.get_si());
    c.push_back((int32_t)fr.q.get_si());
  }

  Code encode(const PlaneMap&, const std::vector<Dart>& order,
              const std::vector<int32_t>& label) const override {
    // strands of this piece keyed by their minimal label
    std::map<int32_t, int> strands;  // min label -> component index
    for (Dart d : order) {
      int comp = cof[d];
      auto it = strands.begin();
      bool found = false;
      for (it = strands.begin(); it != strands.end(); ++it)
        if (it->second == comp) found = true;
      if (!found) strands[label[d]] = comp;
    }
    Code c;
    for (auto& [lab, comp] : strands) {
      c.push_back(lab);
      push_fraction(c, f->fracs[comp]);
    }
    return c;
  }

  Code encode_oval(const PlaneMap&, int oval_index) const override {
    // locate the component index of this oval
    auto comps = link_components(f->d);
    Code c;
    for (size_t i = 0; i < comps.size(); ++i)
      if (comps[i].oval == oval_index) push_fraction(c, f->fracs[i]);
    return c;
  }
};

}  // namespace

Code Flink::code() const {
  FlinkExtra extra(*this);
  return canonical_code(d.m, &extra);
}

}  // namespace blink
