#pragma once

#include <optional>

#include "bsll/gog.hpp"
#include "bsll/pcgroup.hpp"

namespace bsll {

// Normalized data of a p^k-sheeted covering of the loop base by a loop:
// vertex group H with index-p subgroups G1, G2, the edge isomorphism
// phi: G1 -> G2 (edge group G1 included on one side, mapped by phi on the
// other), and the image u in H of the base vertex-group generator. The
// twisting elements of the general definition are normalized away.
struct LoopCovering {
  int p;
  GroupPtr h;
  Subgroup g1;
  Subgroup g2;
  GroupHom phi;
  int u;
  std::optional<MatrixA> provenance;
};

LoopCovering from_shift(const ShiftData& s, int u);

// Empty iff all invariants hold: indices p, phi an isomorphism, u of order
// p with its powers a transversal of G1 and of G2, and the target loop
// faithful.
std::vector<Violation> validate(const LoopCovering& c);

// |H|/p, cross-checked against the edge formula |G1| and against the exact
// covolume ratio of base and target; throws StructureError on mismatch.
long long sheets(const LoopCovering& c);

GraphOfGroups target_loop(const LoopCovering& c);

struct IsoWitness {
  GroupHom psi;                  // H -> H'
  bool flipped;                  // the loop orientation is reversed
  std::optional<int> conjugator; // z in H' with z u' z^-1 = psi(u)
};

// Sufficient predicate: a witness is a group isomorphism psi with
//   unflipped: psi(G1)=G1', psi(G2)=G2', psi phi = phi' psi on G1, psi(u)=u'
//   flipped:   psi(G1)=G2', psi(G2)=G1', psi phi = phi'^-1 psi on G1, psi(u)=u'
// Such a psi assembles to a genuine covering isomorphism, so a witness
// implies the coverings are isomorphic.
std::optional<IsoWitness> iso_sufficient(const LoopCovering& a, const LoopCovering& b);

// Necessary predicate: as above with the u-condition relaxed to
// psi(u) conjugate to u'. Every true covering isomorphism induces such a
// psi, so absence of a witness proves non-isomorphism.
std::optional<IsoWitness> iso_necessary(const LoopCovering& a, const LoopCovering& b);

// Replay a stored witness against its defining predicate.
bool witness_valid(const LoopCovering& a, const LoopCovering& b, const IsoWitness& w,
                   bool necessary);

} // namespace bsll
