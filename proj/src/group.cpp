#include "bsll/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bsll {

std::optional<std::string> GroupTable::verify(int order, const std::vector<int>& mul) {
  if (order <= 0) return "order must be positive";
  if (mul.size() != static_cast<size_t>(order) * order)
    return "mul table has wrong size";
  for (int v : mul)
    if (v < 0 || v >= order) return "mul entry out of range";

  auto at = [&](int a, int b) { return mul[static_cast<size_t>(a) * order + b]; };

  for (int a = 0; a < order; ++a) {
    if (at(0, a) != a)
      return "identity fails on the left at " + std::to_string(a);
    if (at(a, 0) != a)
      return "identity fails on the right at " + std::to_string(a);
  }
  // Inverses: every row must contain the identity, two-sidedly.
  for (int a = 0; a < order; ++a) {
    int inv = -1;
    for (int b = 0; b < order; ++b)
      if (at(a, b) == 0) { inv = b; break; }
    if (inv < 0) return "no right inverse for " + std::to_string(a);
    if (at(inv, a) != 0) return "inverse not two-sided at " + std::to_string(a);
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int ab = at(a, b);
      for (int c = 0; c < order; ++c)
        if (at(ab, c) != at(a, at(b, c)))
          return "associativity fails at (" + std::to_string(a) + "," +
                 std::to_string(b) + "," + std::to_string(c) + ")";
    }
  return std::nullopt;
}

namespace {

// Closure of a seed set under products, as a bitmap + ordered list.
void close_under_mul(const GroupTable& g, std::vector<char>& member,
                     std::vector<int>& elems) {
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      for (int prod : {g.mul(elems[i], elems[j]), g.mul(elems[j], elems[i])}) {
        if (!member[prod]) {
          member[prod] = 1;
          elems.push_back(prod);
        }
      }
    }
}

std::vector<int> closure_elements(const GroupTable& g, const std::vector<int>& gens) {
  std::vector<char> member(g.order(), 0);
  std::vector<int> elems;
  member[GroupTable::identity] = 1;
  elems.push_back(GroupTable::identity);
  for (int s : gens) {
    if (s < 0 || s >= g.order())
      throw std::invalid_argument("generator id out of range");
    if (!member[s]) {
      member[s] = 1;
      elems.push_back(s);
    }
  }
  close_under_mul(g, member, elems);
  std::sort(elems.begin(), elems.end());
  return elems;
}

} // namespace

GroupTable::GroupTable(int order, std::vector<int> mul_row_major,
                       std::vector<std::string> labels)
    : order_(order), mul_(std::move(mul_row_major)), labels_(std::move(labels)) {
  if (auto bad = verify(order_, mul_))
    throw StructureError("not a group table: " + *bad);
  if (!labels_.empty() && labels_.size() != static_cast<size_t>(order_))
    throw StructureError("label vector has wrong size");
  inv_.assign(order_, 0);
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) == identity) { inv_[a] = b; break; }
  elem_order_.assign(order_, 1);
  for (int a = 0; a < order_; ++a) {
    int m = 1, cur = a;
    while (cur != identity) {
      cur = mul(cur, a);
      ++m;
    }
    elem_order_[a] = m;
  }
  // Greedy generating set, reused by every isomorphism search on this table.
  std::vector<int> have = closure_elements(*this, greedy_gens_);
  while (static_cast<int>(have.size()) < order_) {
    int next = -1;
    for (int a = 0; a < order_; ++a)
      if (!std::binary_search(have.begin(), have.end(), a)) { next = a; break; }
    greedy_gens_.push_back(next);
    have = closure_elements(*this, greedy_gens_);
  }
}

int GroupTable::pow(int a, long long e) const {
  int base = a;
  if (e < 0) {
    base = inv(a);
    e = -e;
  }
  int acc = identity;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

GroupPtr cyclic_group(int n) {
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[static_cast<size_t>(a) * n + b] = (a + b) % n;
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a)
    labels[a] = a == 0 ? "1" : (a == 1 ? "v" : "v^" + std::to_string(a));
  return std::make_shared<GroupTable>(n, std::move(mul), std::move(labels));
}

GroupPtr elementary_abelian(int p, int m) {
  int n = 1;
  for (int i = 0; i < m; ++i) n *= p;
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int x = a, y = b, scale = 1, sum = 0;
      for (int i = 0; i < m; ++i) {
        sum += ((x % p) + (y % p)) % p * scale;
        x /= p;
        y /= p;
        scale *= p;
      }
      mul[static_cast<size_t>(a) * n + b] = sum;
    }
  return std::make_shared<GroupTable>(n, std::move(mul));
}

GroupPtr trivial_group() { return cyclic_group(1); }

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements, std::vector<int> generators)
    : parent_(std::move(parent)), elements_(std::move(elements)),
      generators_(std::move(generators)) {
  if (!parent_) throw std::invalid_argument("subgroup needs a parent");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(parent_->order(), 0);
  for (int a : elements_) {
    if (a < 0 || a >= parent_->order())
      throw StructureError("subgroup element out of range");
    member_[a] = 1;
  }
  if (elements_.empty() || !member_[GroupTable::identity])
    throw StructureError("subgroup must contain the identity");
  for (int a : elements_) {
    if (!member_[parent_->inv(a)])
      throw StructureError("subgroup not closed under inverse at " + std::to_string(a));
    for (int b : elements_)
      if (!member_[parent_->mul(a, b)])
        throw StructureError("subgroup not closed under product at (" +
                             std::to_string(a) + "," + std::to_string(b) + ")");
  }
  if (parent_->order() % order() != 0)
    throw StructureError("subgroup order does not divide parent order"); // unreachable for closed sets
  if (closure_elements(*parent_, generators_) != elements_)
    throw StructureError("generators do not span the subgroup");
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<int> all(parent->order());
  for (int i = 0; i < parent->order(); ++i) all[i] = i;
  return Subgroup(parent, all, greedy_generators(*parent));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  return Subgroup(std::move(parent), {GroupTable::identity}, {});
}

bool Subgroup::operator==(const Subgroup& o) const {
  return parent_ == o.parent_ && elements_ == o.elements_;
}

Subgroup closure(GroupPtr parent, const std::vector<int>& gens) {
  auto elems = closure_elements(*parent, gens);
  return Subgroup(std::move(parent), std::move(elems), gens);
}

bool is_normal(const Subgroup& sub) {
  const GroupTable& g = *sub.parent();
  for (int a = 0; a < g.order(); ++a) {
    const int ai = g.inv(a);
    for (int n : sub.elements())
      if (!sub.contains(g.mul(g.mul(a, n), ai))) return false;
  }
  return true;
}

std::vector<Subgroup> subgroups_within(GroupPtr parent, const std::vector<int>& within) {
  const GroupTable& g = *parent;
  // Breadth-first over subgroups: extend each found subgroup by each element
  // of `within` not yet inside and close. Every subgroup arises this way.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  std::vector<int> triv{GroupTable::identity};
  seen.insert(triv);
  queue.push_back(triv);
  std::vector<char> allowed(g.order(), 0);
  for (int a : within) allowed[a] = 1;
  if (!allowed[GroupTable::identity])
    throw std::invalid_argument("within-set must contain the identity");

  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<int> cur = queue[qi];
    std::vector<char> curmem(g.order(), 0);
    for (int a : cur) curmem[a] = 1;
    for (int x : within) {
      if (curmem[x]) continue;
      std::vector<char> member = curmem;
      std::vector<int> elems = cur;
      member[x] = 1;
      elems.push_back(x);
      close_under_mul(g, member, elems);
      bool inside = true;
      for (int e : elems)
        if (!allowed[e]) { inside = false; break; }
      if (!inside) continue;
      std::sort(elems.begin(), elems.end());
      if (seen.insert(elems).second) queue.push_back(std::move(elems));
    }
  }

  std::sort(queue.begin(), queue.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  std::vector<Subgroup> out;
  out.reserve(queue.size());
  for (auto& elems : queue) {
    // Recover a small generating set for the witness field.
    std::vector<int> gens;
    std::vector<int> have{GroupTable::identity};
    while (have.size() < elems.size()) {
      int next = -1;
      for (int e : elems)
        if (!std::binary_search(have.begin(), have.end(), e)) { next = e; break; }
      gens.push_back(next);
      have = closure_elements(g, gens);
    }
    out.emplace_back(parent, std::move(elems), std::move(gens));
  }
  return out;
}

std::vector<Subgroup> subgroups_all(GroupPtr parent, int max_order) {
  if (parent->order() > max_order)
    throw CapExceeded("subgroups_all: order " + std::to_string(parent->order()) +
                      " exceeds cap " + std::to_string(max_order));
  std::vector<int> all(parent->order());
  for (int i = 0; i < parent->order(); ++i) all[i] = i;
  return subgroups_within(std::move(parent), all);
}

int element_order(const GroupTable& g, int a) {
  if (a < 0 || a >= g.order()) throw std::invalid_argument("element id out of range");
  return g.element_order(a);
}

std::vector<int> conjugacy_class(const GroupTable& g, int a) {
  if (a < 0 || a >= g.order()) throw std::invalid_argument("element id out of range");
  std::vector<char> seen(g.order(), 0);
  for (int h = 0; h < g.order(); ++h) seen[g.mul(g.mul(h, a), g.inv(h))] = 1;
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

GroupHom::GroupHom(Subgroup source, Subgroup target, std::vector<int> image,
                   bool require_mono)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)),
      mono_(require_mono) {
  const GroupTable& sg = *source_.parent();
  const GroupTable& tg = *target_.parent();
  if (image_.size() != static_cast<size_t>(sg.order()))
    throw StructureError("hom image map has wrong size");
  for (int a = 0; a < sg.order(); ++a) {
    if (source_.contains(a)) {
      if (image_[a] < 0 || image_[a] >= tg.order() || !target_.contains(image_[a]))
        throw StructureError("hom image of " + std::to_string(a) + " misses the target");
    } else if (image_[a] != -1) {
      throw StructureError("hom image defined off the source at " + std::to_string(a));
    }
  }
  for (int a : source_.elements())
    for (int b : source_.elements())
      if (image_[sg.mul(a, b)] != tg.mul(image_[a], image_[b]))
        throw StructureError("not a homomorphism: fails at pair (" +
                             std::to_string(a) + "," + std::to_string(b) + ")");
  if (require_mono) {
    std::vector<char> hit(tg.order(), 0);
    for (int a : source_.elements()) {
      if (hit[image_[a]])
        throw StructureError("hom is not injective: value " +
                             std::to_string(image_[a]) + " repeats");
      hit[image_[a]] = 1;
    }
  }
}

GroupHom GroupHom::identity_on(const Subgroup& s) {
  std::vector<int> img(s.parent()->order(), -1);
  for (int a : s.elements()) img[a] = a;
  return GroupHom(s, s, std::move(img), true);
}

int GroupHom::operator()(int a) const {
  if (a < 0 || a >= static_cast<int>(image_.size()) || image_[a] < 0)
    throw std::invalid_argument("hom applied outside its source");
  return image_[a];
}

std::vector<int> GroupHom::image_elements() const {
  std::vector<int> out;
  for (int a : source_.elements()) out.push_back(image_[a]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool GroupHom::is_onto_target() const { return image_elements() == target_.elements(); }

GroupHom GroupHom::inverse() const {
  if (!mono_ || !is_onto_target())
    throw StructureError("inverse of a non-bijective hom");
  std::vector<int> img(target_.parent()->order(), -1);
  for (int a : source_.elements()) img[image_[a]] = a;
  return GroupHom(target_, source_, std::move(img), true);
}

std::vector<int> greedy_generators(const GroupTable& g) { return g.generating_set(); }

} // namespace bsll
