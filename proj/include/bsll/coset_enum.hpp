#pragma once

#include <vector>

#include "bsll/pcgroup.hpp"

namespace bsll {

// A finite presentation over num_gens generators. Relator letters encode
// generator g as 2g and its inverse as 2g+1.
struct Presentation {
  int num_gens = 0;
  std::vector<std::vector<int>> relators;
};

struct CosetEnumOptions {
  int max_cosets = 0; // total cosets ever defined, dead ones included
};

struct CosetEnumResult {
  int order = 0;
  // Regular action of the letters on the surviving cosets, renumbered
  // 0..order-1 in ascending table order; coset 0 is the identity coset.
  std::vector<std::vector<int>> action;
};

// Coset enumeration over the trivial subgroup: the number of cosets of the
// closed table is the group order. Coset-table-based strategy: a new coset
// is defined only when no relator consequence is pending, which keeps the
// table small on collapsing presentations. Throws OracleInconclusive when
// the limit is hit. Deterministic.
CosetEnumResult enumerate_cosets(const Presentation& pres, const CosetEnumOptions& opts);

// Independent order oracle for the presentation attached to a matrix, with
// the fixed coset limit 2*p^(k+1). Shares nothing with collect.
int order_oracle(const MatrixA& a);
int order_oracle(const MatrixA& a, int max_cosets);

Presentation presentation_of(const MatrixA& a);

} // namespace bsll
