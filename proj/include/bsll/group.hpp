#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsll/errors.hpp"

namespace bsll {

// A finite group as an explicit multiplication table. Element ids are
// 0..order-1 and the identity is id 0. Construction verifies all group
// axioms exhaustively and throws StructureError on the first violation,
// so a live GroupTable is always a group.
class GroupTable {
public:
  static constexpr int identity = 0;

  GroupTable(int order, std::vector<int> mul_row_major,
             std::vector<std::string> labels = {});

  int order() const { return order_; }
  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }

  // Order of the element, precomputed at construction.
  int element_order(int a) const { return elem_order_[a]; }

  // Irredundant generating set chosen greedily by ascending id, precomputed.
  const std::vector<int>& generating_set() const { return greedy_gens_; }

  // a^e for any integer exponent.
  int pow(int a, long long e) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(int a) const { return labels_[a]; }

  const std::vector<int>& raw_mul() const { return mul_; }

  // Axiom check without construction; returns a description of the first
  // violation, or nullopt when the table is a group with identity 0.
  static std::optional<std::string> verify(int order, const std::vector<int>& mul);

private:
  int order_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> elem_order_;
  std::vector<int> greedy_gens_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

GroupPtr cyclic_group(int n);
GroupPtr elementary_abelian(int p, int m); // (Z/p)^m
GroupPtr trivial_group();

// A subgroup of a concrete parent, stored as its sorted element set plus a
// generating set witnessing closure. Construction re-verifies closedness
// and that the generators actually span.
class Subgroup {
public:
  Subgroup(GroupPtr parent, std::vector<int> elements, std::vector<int> generators);

  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  const std::vector<int>& generators() const { return generators_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int index() const { return parent_->order() / order(); }
  bool contains(int a) const { return member_[a] != 0; }
  const std::vector<char>& membership() const { return member_; }

  // Same parent table and same element set.
  bool operator==(const Subgroup& o) const;

private:
  GroupPtr parent_;
  std::vector<int> elements_;
  std::vector<int> generators_;
  std::vector<char> member_;
};

// Smallest subgroup of parent containing gens (empty gens -> trivial).
Subgroup closure(GroupPtr parent, const std::vector<int>& gens);

bool is_normal(const Subgroup& sub);

// Every subgroup of parent, each exactly once, sorted by order then by
// element set. Throws CapExceeded above the desk-scale cap.
std::vector<Subgroup> subgroups_all(GroupPtr parent, int max_order = 512);

// Subgroups of parent whose elements lie inside `within`, which must itself
// be a closed subgroup element set. Same ordering as subgroups_all.
std::vector<Subgroup> subgroups_within(GroupPtr parent, const std::vector<int>& within);

int element_order(const GroupTable& g, int a);

std::vector<int> conjugacy_class(const GroupTable& g, int a); // sorted

// A homomorphism between subgroups of concrete groups, stored as an image
// map indexed by the source parent's element ids (-1 off the source).
// Construction verifies the homomorphism property on every source pair and,
// when require_mono is set, injectivity.
class GroupHom {
public:
  GroupHom(Subgroup source, Subgroup target, std::vector<int> image, bool require_mono);

  static GroupHom identity_on(const Subgroup& s);

  const Subgroup& source() const { return source_; }
  const Subgroup& target() const { return target_; }
  bool is_mono() const { return mono_; }

  bool defined(int a) const { return image_[a] >= 0; }
  int operator()(int a) const;

  const std::vector<int>& image_map() const { return image_; }
  std::vector<int> image_elements() const; // sorted image set
  bool is_onto_target() const;

  // Requires the hom to be bijective onto its target.
  GroupHom inverse() const;

private:
  Subgroup source_;
  Subgroup target_;
  std::vector<int> image_;
  bool mono_;
};

// Constraints for iso_search. Subgroup pairs demand psi(S) = T setwise,
// element pairs demand psi(a) = b exactly, intertwine pairs (f, f')
// demand psi(f(x)) = f'(psi(x)) for every x in f's source.
struct IsoConstraints {
  std::vector<std::pair<Subgroup, Subgroup>> subgroup_images;
  std::vector<std::pair<int, int>> element_images;
  std::vector<std::pair<GroupHom, GroupHom>> intertwine;
};

// All isomorphisms src -> dst satisfying the constraints, found by
// backtracking over images of a greedily chosen generating set; candidate
// images are tried in ascending id order, which fixes the result order.
// max_results = 0 means all.
std::vector<GroupHom> iso_search(const GroupPtr& src, const GroupPtr& dst,
                                 const IsoConstraints& constraints,
                                 std::size_t max_results = 0);

// Irredundant generating set picked by repeatedly adding the smallest
// element outside the closure so far.
std::vector<int> greedy_generators(const GroupTable& g);

} // namespace bsll
