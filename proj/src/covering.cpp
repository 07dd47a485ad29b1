#include "bsll/covering.hpp"

#include <algorithm>

namespace bsll {

LoopCovering from_shift(const ShiftData& s, int u) {
  return LoopCovering{s.group.matrix.p(), s.group.table, s.g1, s.g2, s.shift, u,
                      s.group.matrix};
}

std::vector<Violation> validate(const LoopCovering& c) {
  std::vector<Violation> out;
  const GroupPtr& h = c.h;
  if (!h) return {{"h", "missing vertex group"}};
  if (c.g1.parent() != h || c.g2.parent() != h)
    return {{"g1/g2", "subgroups do not live in h"}};
  if (!is_prime(c.p)) out.push_back({"p", "not prime"});
  if (c.g1.index() != c.p)
    out.push_back({"g1", "index is " + std::to_string(c.g1.index()) + ", want p"});
  if (c.g2.index() != c.p)
    out.push_back({"g2", "index is " + std::to_string(c.g2.index()) + ", want p"});
  bool phi_ok = true;
  if (!(c.phi.source() == c.g1) || !(c.phi.target() == c.g2)) {
    out.push_back({"phi", "not a map g1 -> g2"});
    phi_ok = false;
  } else if (!c.phi.is_mono() || !c.phi.is_onto_target()) {
    out.push_back({"phi", "not an isomorphism onto g2"});
    phi_ok = false;
  }
  if (c.u < 0 || c.u >= h->order()) {
    out.push_back({"u", "id out of range"});
    return out;
  }

  const int ord = element_order(*h, c.u);
  if (ord != c.p)
    out.push_back({"u", "order(u) = " + std::to_string(ord) + ", want p"});
  if (c.g1.contains(c.u)) out.push_back({"u", "u lies in g1"});
  if (c.g2.contains(c.u)) out.push_back({"u", "u lies in g2"});
  if (ord == c.p) {
    // Bijectivity of the coset maps at both edge directions: the p powers
    // of u must form a transversal of G1 and of G2.
    int power = c.u;
    for (int j = 1; j < c.p; ++j) {
      if (c.g1.contains(power))
        out.push_back({"u", "u^" + std::to_string(j) + " lies in g1: coset map not bijective"});
      if (c.g2.contains(power))
        out.push_back({"u", "u^" + std::to_string(j) + " lies in g2: coset map not bijective"});
      power = h->mul(power, c.u);
    }
  }
  if (phi_ok) {
    const auto faith = is_faithful_loop(h, c.g1, c.g2, c.phi);
    if (!faith.faithful) out.push_back({"target", "target loop is not faithful"});
  }
  return out;
}

GraphOfGroups target_loop(const LoopCovering& c) {
  return assemble_loop(c.h, c.g1, c.g2, c.phi);
}

long long sheets(const LoopCovering& c) {
  const long long via_vertex = c.h->order() / c.p;
  if (via_vertex * c.p != c.h->order())
    throw StructureError("sheets: p does not divide |H|");
  const long long via_edge = c.g1.order(); // |H_f| / |G_e| with trivial base edge group
  const Rational ratio = covolume(make_loop_base(c.p)) / covolume(target_loop(c));
  if (rat_den(ratio) != 1)
    throw StructureError("sheets: covolume ratio is not an integer");
  const BigInt via_volume = rat_num(ratio);
  if (via_vertex != via_edge || via_volume != via_vertex)
    throw StructureError("sheets: the three formulas disagree");
  return via_vertex;
}

namespace {

std::optional<IsoWitness> search_witness(const LoopCovering& a, const LoopCovering& b,
                                         int u_target, bool flipped) {
  IsoConstraints cons;
  if (!flipped) {
    cons.subgroup_images = {{a.g1, b.g1}, {a.g2, b.g2}};
    cons.intertwine = {{a.phi, b.phi}};
  } else {
    cons.subgroup_images = {{a.g1, b.g2}, {a.g2, b.g1}};
    cons.intertwine = {{a.phi, b.phi.inverse()}};
  }
  cons.element_images = {{a.u, u_target}};
  auto found = iso_search(a.h, b.h, cons, 1);
  if (found.empty()) return std::nullopt;
  return IsoWitness{std::move(found[0]), flipped, std::nullopt};
}

void check_pair(const LoopCovering& a, const LoopCovering& b) {
  if (a.p != b.p) throw std::invalid_argument("coverings have different p");
  if (a.h->order() != b.h->order())
    throw std::invalid_argument("coverings have different |H|");
}

} // namespace

std::optional<IsoWitness> iso_sufficient(const LoopCovering& a, const LoopCovering& b) {
  check_pair(a, b);
  for (bool flipped : {false, true})
    if (auto w = search_witness(a, b, b.u, flipped)) return w;
  return std::nullopt;
}

std::optional<IsoWitness> iso_necessary(const LoopCovering& a, const LoopCovering& b) {
  check_pair(a, b);
  const auto targets = conjugacy_class(*b.h, b.u);
  for (bool flipped : {false, true})
    for (int w : targets)
      if (auto res = search_witness(a, b, w, flipped)) {
        // Record a conjugator z with z u' z^-1 = psi(u).
        const int got = res->psi(a.u);
        for (int z = 0; z < b.h->order(); ++z)
          if (b.h->mul(b.h->mul(z, b.u), b.h->inv(z)) == got) {
            res->conjugator = z;
            break;
          }
        return res;
      }
  return std::nullopt;
}

bool witness_valid(const LoopCovering& a, const LoopCovering& b, const IsoWitness& w,
                   bool necessary) {
  const GroupHom& psi = w.psi;
  if (psi.source().parent() != a.h || psi.target().parent() != b.h) return false;
  if (psi.source().order() != a.h->order() || !psi.is_mono() || !psi.is_onto_target())
    return false;

  auto image_of = [&](const Subgroup& s) {
    std::vector<int> out;
    for (int x : s.elements()) out.push_back(psi(x));
    std::sort(out.begin(), out.end());
    return out;
  };
  const Subgroup& want1 = w.flipped ? b.g2 : b.g1;
  const Subgroup& want2 = w.flipped ? b.g1 : b.g2;
  if (image_of(a.g1) != want1.elements()) return false;
  if (image_of(a.g2) != want2.elements()) return false;

  std::optional<GroupHom> phi_inv;
  if (w.flipped) phi_inv = b.phi.inverse();
  for (int x : a.g1.elements()) {
    const int lhs = psi(a.phi(x));
    const int rhs = w.flipped ? (*phi_inv)(psi(x)) : b.phi(psi(x));
    if (lhs != rhs) return false;
  }

  const int got = psi(a.u);
  if (!necessary) return got == b.u;
  const int z = w.conjugator.value_or(GroupTable::identity);
  return b.h->mul(b.h->mul(z, b.u), b.h->inv(z)) == got;
}

} // namespace bsll
