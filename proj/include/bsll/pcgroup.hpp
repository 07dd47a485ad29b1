#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsll/group.hpp"

namespace bsll {

// Lower-triangular exponent matrix behind the commutator relations: the
// distance-d commutator [g_i, g_{i+d}] reads row d-1, so row s (1-based)
// has s entries a_{s,1}..a_{s,s}, all reduced mod p.
class MatrixA {
public:
  MatrixA(int p, int k, std::vector<std::vector<int>> rows);

  int p() const { return p_; }
  int k() const { return k_; }
  // a_{s,t} with 1 <= t <= s <= k-1.
  int entry(int s, int t) const;
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  int free_entries() const { return k_ * (k_ - 1) / 2; }
  bool last_row_zero() const;
  bool operator==(const MatrixA& o) const;
  std::string to_string() const;

private:
  int p_;
  int k_;
  std::vector<std::vector<int>> rows_;
};

// Exponent-vector normal form g_0^{e0} ... g_k^{ek}, entries in 0..p-1.
struct NormalWord {
  std::vector<int> exps;

  // Lexicographic rank with exps[0] most significant; the identity is 0.
  int rank(int p) const;
  static NormalWord unrank(int id, int p, int k);
  std::vector<std::pair<int, int>> letters() const; // nonzero (index, exp) pairs
};

// (generator index, exponent); exponents may be any integer.
using Letter = std::pair<int, int>;

struct CollectOptions {
  long long max_rewrites = 1'000'000;
};

// Rewrite a word in the generators to its normal form: repeatedly take the
// leftmost adjacent inversion g_b g_a (b > a), replace it by
// w^{-1} g_a g_b with w the prescribed commutator word, merge equal
// adjacent indices and reduce exponents mod p. Deterministic; throws
// NonTermination when the rewrite budget runs out.
NormalWord collect(const std::vector<Letter>& word, const MatrixA& a,
                   const CollectOptions& opts = {});

// The presentation's relators as (index, exponent) words: g_i^p for all i,
// and [g_i, g_{i+d}] * w_d^{-1} for d = 1..k and all valid i.
std::vector<std::vector<Letter>> relator_words(const MatrixA& a);

struct GAGroup {
  MatrixA matrix;
  GroupPtr table;        // null when collection failed to terminate or the
                         // collected products do not form a group
  std::vector<int> gens; // ids of g_0..g_k (when table is present)
  bool consistent = false;
  std::string failure;   // first defect found; empty when consistent
};

struct BuildOptions {
  int max_order = 512;
  CollectOptions collect;
};

// Multiply out all p^{k+1} normal forms with mul(u,v) = collect(u v) and
// decide consistency: every collection terminates, the table satisfies the
// group axioms on all triples, and every relator evaluates to the identity.
// A consistent table is the group presented by the matrix, of order exactly
// p^{k+1}.
GAGroup build_group(const MatrixA& a, const BuildOptions& opts = {});

struct ShiftData {
  GAGroup group;
  Subgroup g1;    // normal words with e_k = 0
  Subgroup g2;    // normal words with e_0 = 0
  GroupHom shift; // g1 -> g2 by exponent shift; verified isomorphism
};

// Extract and verify the shifted-subgroup data of a consistent build:
// G1, G2 are index-p subgroups and the exponent shift is an isomorphism
// between them. Throws StructureError with a counterexample otherwise.
ShiftData shift_data(const GAGroup& g);

} // namespace bsll
