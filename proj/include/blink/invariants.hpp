#pragma once
// First-homology invariants: integer/rational surgery presentation matrices
// and their cokernels via Smith normal form. Exact arithmetic throughout.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace blink {

struct Flink;

using ZMatrix = std::vector<std::vector<mpz_class>>;

struct PresentationMatrix {
  ZMatrix m;                    // n x n; rational mode: m[i][j] = q_i*lk for i!=j, p'_i on diag
  std::vector<mpz_class> dens;  // q_i per component (all 1 for a 0-flink)
};

struct AbelianGroup {
  int free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors d1 | d2 | ..., each >= 2

  bool operator==(const AbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;  // e.g. "Z^2 + Z/2 + Z/4", "trivial"
};

struct SNFResult {
  ZMatrix d, u, v;  // u*m*v = d, u,v unimodular, d diagonal with d1|d2|...
};

SNFResult smith_normal_form(const ZMatrix& m);

AbelianGroup cokernel(const ZMatrix& m);

// infinite-fraction components are dropped (trivial filling)
PresentationMatrix presentation_matrix(const Flink& f);

AbelianGroup h1(const Flink& f);

ZMatrix mat_mul(const ZMatrix& a, const ZMatrix& b);
mpz_class mat_det(ZMatrix a);

}  // namespace blink
