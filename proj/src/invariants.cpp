#include "blink/invariants.hpp"

#include <algorithm>

#include "blink/fraction.hpp"
#include "blink/linkdiag.hpp"

namespace blink {

std::string AbelianGroup::str() const {
  if (trivial()) return "trivial";
  std::string s;
  if (free_rank == 1) s = "Z";
  if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (const auto& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  return s;
}

namespace {

ZMatrix identity(size_t n) {
  ZMatrix I(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

}  // namespace

ZMatrix mat_mul(const ZMatrix& a, const ZMatrix& b) {
  size_t n = a.size(), k = b.size(), m2 = k ? b[0].size() : 0;
  ZMatrix c(n, std::vector<mpz_class>(m2, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m2; ++j) {
      mpz_class s = 0;
      for (size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
      c[i][j] = s;
    }
  return c;
}

mpz_class mat_det(ZMatrix a) {
  // fraction-free Gaussian elimination (Bareiss)
  size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

SNFResult smith_normal_form(const ZMatrix& m_in) {
  SNFResult r;
  r.d = m_in;
  size_t rows = r.d.size(), cols = rows ? r.d[0].size() : 0;
  r.u = identity(rows);
  r.v = identity(cols);
  auto& d = r.d;
  auto& u = r.u;
  auto& v = r.v;

  auto row_add = [&](size_t dst, size_t src, const mpz_class& c) {
    for (size_t j = 0; j < cols; ++j) d[dst][j] += c * d[src][j];
    for (size_t j = 0; j < rows; ++j) u[dst][j] += c * u[src][j];
  };
  auto col_add = [&](size_t dst, size_t src, const mpz_class& c) {
    for (size_t i = 0; i < rows; ++i) d[i][dst] += c * d[i][src];
    for (size_t i = 0; i < cols; ++i) v[i][dst] += c * v[i][src];
  };
  auto row_swap = [&](size_t a, size_t b) {
    std::swap(d[a], d[b]);
    std::swap(u[a], u[b]);
  };
  auto col_swap = [&](size_t a, size_t b) {
    for (size_t i = 0; i < rows; ++i) std::swap(d[i][a], d[i][b]);
    for (size_t i = 0; i < cols; ++i) std::swap(v[i][a], v[i][b]);
  };
  auto row_neg = [&](size_t a) {
    for (size_t j = 0; j < cols; ++j) d[a][j] = -d[a][j];
    for (size_t j = 0; j < rows; ++j) u[a][j] = -u[a][j];
  };

  size_t t = std::min(rows, cols);
  for (size_t k = 0; k < t; ++k) {
    // find a nonzero pivot with minimal absolute value
    bool found = false;
    size_t pi = k, pj = k;
    mpz_class best;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j) {
        if (d[i][j] == 0) continue;
        mpz_class a = abs(d[i][j]);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    if (pi != k) row_swap(pi, k);
    if (pj != k) col_swap(pj, k);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = k + 1; i < rows; ++i) {
        if (d[i][k] == 0) continue;
        mpz_class qz;
        mpz_fdiv_q(qz.get_mpz_t(), d[i][k].get_mpz_t(), d[k][k].get_mpz_t());
        row_add(i, k, -qz);
        if (d[i][k] != 0) {
          row_swap(i, k);
          clean = false;
        }
      }
      for (size_t j = k + 1; j < cols; ++j) {
        if (d[k][j] == 0) continue;
        mpz_class qz;
        mpz_fdiv_q(qz.get_mpz_t(), d[k][j].get_mpz_t(), d[k][k].get_mpz_t());
        col_add(j, k, -qz);
        if (d[k][j] != 0) {
          col_swap(j, k);
          clean = false;
        }
      }
    }
    // divisibility: fold in any entry the pivot does not divide
    bool redo = true;
    while (redo) {
      redo = false;
      for (size_t i = k + 1; i < rows && !redo; ++i)
        for (size_t j = k + 1; j < cols && !redo; ++j) {
          if (d[i][j] % d[k][k] != 0) {
            row_add(k, i, 1);
            // re-clean the row
            bool c2 = false;
            while (!c2) {
              c2 = true;
              for (size_t j2 = k + 1; j2 < cols; ++j2) {
                if (d[k][j2] == 0) continue;
                mpz_class qz;
                mpz_fdiv_q(qz.get_mpz_t(), d[k][j2].get_mpz_t(), d[k][k].get_mpz_t());
                col_add(j2, k, -qz);
                if (d[k][j2] != 0) {
                  col_swap(j2, k);
                  c2 = false;
                }
              }
              for (size_t i2 = k + 1; i2 < rows; ++i2) {
                if (d[i2][k] == 0) continue;
                mpz_class qz;
                mpz_fdiv_q(qz.get_mpz_t(), d[i2][k].get_mpz_t(), d[k][k].get_mpz_t());
                row_add(i2, k, -qz);
                if (d[i2][k] != 0) {
                  row_swap(i2, k);
                  c2 = false;
                }
              }
            }
            redo = true;
          }
        }
    }
    if (d[k][k] < 0) row_neg(k);
  }
  return r;
}

AbelianGroup cokernel(const ZMatrix& m) {
  AbelianGroup g;
  if (m.empty()) return g;
  auto snf = smith_normal_form(m);
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i) {
    mpz_class di = (i < snf.d[i].size()) ? snf.d[i][i] : mpz_class(0);
    if (di == 0)
      g.free_rank++;
    else if (di > 1)
      g.torsion.push_back(di);
  }
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

PresentationMatrix presentation_matrix(const Flink& f) {
  auto comps = link_components(f.d);
  std::vector<int> keep;
  for (size_t i = 0; i < comps.size(); ++i)
    if (!f.fracs[i].is_infinite()) keep.push_back((int)i);
  size_t n = keep.size();
  PresentationMatrix pm;
  pm.m.assign(n, std::vector<mpz_class>(n, 0));
  pm.dens.assign(n, 1);
  for (size_t a = 0; a < n; ++a) {
    int i = keep[a];
    mpz_class w = self_writhe(f, i);
    const Fraction& r = f.fracs[i];
    pm.m[a][a] = w * r.q + r.p;  // p' = w q + p
    pm.dens[a] = r.q;
    for (size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      int j = keep[b];
      pm.m[a][b] = r.q * linking_number(f, i, j);
    }
  }
  return pm;
}

AbelianGroup h1(const Flink& f) { return cokernel(presentation_matrix(f).m); }

}  // namespace blink
