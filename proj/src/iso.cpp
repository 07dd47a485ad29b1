#include "bsll/group.hpp"

#include <algorithm>
#include <deque>

namespace bsll {

namespace {

struct Search {
  const GroupTable& src;
  const GroupTable& dst;
  const IsoConstraints& cons;
  std::size_t max_results;

  std::vector<int> src_order, dst_order;
  std::vector<int> img;     // src id -> dst id, -1 undefined
  std::vector<int> pre;     // dst id -> src id, -1 undefined
  std::vector<int> defined; // src ids in assignment order; closed once queue drains
  std::vector<int> gens;

  // preprocessed intertwine data: f_inv[a] = x when f(x) = a (f mono), else -1
  struct Twine {
    const GroupHom* f;
    const GroupHom* fp;
    std::vector<int> f_inv;
    std::vector<int> fp_inv; // empty when fp is not injective
  };
  std::vector<Twine> twines;

  std::vector<GroupHom> out;

  bool propagate(std::deque<std::pair<int, int>>& queue, std::vector<int>& trail) {
    while (!queue.empty()) {
      auto [a, b] = queue.front();
      queue.pop_front();
      if (img[a] != -1) {
        if (img[a] != b) return false;
        continue;
      }
      if (pre[b] != -1) return false; // injectivity
      if (src_order[a] != dst_order[b]) return false;
      for (const auto& [s, t] : cons.subgroup_images)
        if (s.contains(a) != t.contains(b)) return false;
      for (const auto& tw : twines) {
        if (tw.f->defined(a)) {
          if (!tw.fp->defined(b)) return false;
          queue.emplace_back((*tw.f)(a), (*tw.fp)(b));
        }
        if (tw.f_inv[a] != -1) {
          const int x = tw.f_inv[a];
          if (!tw.fp_inv.empty()) {
            const int y = tw.fp_inv[b];
            if (y == -1) return false; // b must be an fp-value once x gets an image
            queue.emplace_back(x, y);
          } else if (img[x] != -1) {
            if (!tw.fp->defined(img[x]) || (*tw.fp)(img[x]) != b) return false;
          }
        }
      }
      img[a] = b;
      pre[b] = a;
      trail.push_back(a);
      defined.push_back(a);
      for (int d : defined) {
        queue.emplace_back(src.mul(a, d), dst.mul(b, img[d]));
        queue.emplace_back(src.mul(d, a), dst.mul(img[d], b));
      }
    }
    return true;
  }

  void undo(std::vector<int>& trail, size_t mark) {
    while (trail.size() > mark) {
      const int a = trail.back();
      trail.pop_back();
      pre[img[a]] = -1;
      img[a] = -1;
      defined.pop_back();
    }
  }

  void emit() {
    GroupHom hom(Subgroup::whole(cons_src_whole), Subgroup::whole(cons_dst_whole), img, true);
    // Belt and braces: re-verify every constraint on the finished map.
    for (const auto& [s, t] : cons.subgroup_images) {
      std::vector<int> mapped;
      for (int a : s.elements()) mapped.push_back(img[a]);
      std::sort(mapped.begin(), mapped.end());
      if (mapped != t.elements()) throw StructureError("iso_search produced a bad subgroup image");
    }
    for (const auto& [a, b] : cons.element_images)
      if (img[a] != b) throw StructureError("iso_search violated an element constraint");
    for (const auto& [f, fp] : cons.intertwine)
      for (int x : f.source().elements())
        if (fp(img[x]) != img[f(x)])
          throw StructureError("iso_search violated an intertwining constraint");
    out.push_back(std::move(hom));
  }

  GroupPtr cons_src_whole, cons_dst_whole;

  void rec(size_t gi, std::vector<int>& trail) {
    if (max_results && out.size() >= max_results) return;
    while (gi < gens.size() && img[gens[gi]] != -1) ++gi;
    if (defined.size() == static_cast<size_t>(src.order())) {
      emit();
      return;
    }
    if (gi >= gens.size()) return; // cannot happen: gens span src
    const int g = gens[gi];
    for (int b = 0; b < dst.order(); ++b) {
      if (pre[b] != -1 || dst_order[b] != src_order[g]) continue;
      const size_t mark = trail.size();
      std::deque<std::pair<int, int>> queue{{g, b}};
      if (propagate(queue, trail)) rec(gi + 1, trail);
      undo(trail, mark);
      if (max_results && out.size() >= max_results) return;
    }
  }
};

std::vector<int> order_histogram(const GroupTable& g, const std::vector<int>& elems) {
  std::vector<int> h;
  for (int a : elems) h.push_back(element_order(g, a));
  std::sort(h.begin(), h.end());
  return h;
}

} // namespace

std::vector<GroupHom> iso_search(const GroupPtr& src, const GroupPtr& dst,
                                 const IsoConstraints& constraints,
                                 std::size_t max_results) {
  if (src->order() != dst->order())
    throw std::invalid_argument("iso_search: orders differ");
  for (const auto& [s, t] : constraints.subgroup_images)
    if (s.parent() != src || t.parent() != dst)
      throw std::invalid_argument("iso_search: subgroup constraint on wrong groups");
  for (const auto& [a, b] : constraints.element_images)
    if (a < 0 || a >= src->order() || b < 0 || b >= dst->order())
      throw std::invalid_argument("iso_search: element constraint out of range");
  for (const auto& [f, fp] : constraints.intertwine)
    if (f.source().parent() != src || fp.source().parent() != dst ||
        f.target().parent() != src || fp.target().parent() != dst)
      throw std::invalid_argument("iso_search: intertwine constraint on wrong groups");

  Search s{*src, *dst, constraints, max_results};
  s.cons_src_whole = src;
  s.cons_dst_whole = dst;
  s.src_order.resize(src->order());
  s.dst_order.resize(dst->order());
  for (int a = 0; a < src->order(); ++a) s.src_order[a] = src->element_order(a);
  for (int b = 0; b < dst->order(); ++b) s.dst_order[b] = dst->element_order(b);

  // Cheap sound rejects before any backtracking.
  {
    auto hs = s.src_order, hd = s.dst_order;
    std::sort(hs.begin(), hs.end());
    std::sort(hd.begin(), hd.end());
    if (hs != hd) return {};
  }
  for (const auto& [sub, tub] : constraints.subgroup_images) {
    if (sub.order() != tub.order()) return {};
    if (order_histogram(*src, sub.elements()) != order_histogram(*dst, tub.elements()))
      return {};
  }

  for (const auto& [f, fp] : constraints.intertwine) {
    Search::Twine tw{&f, &fp, std::vector<int>(src->order(), -1), {}};
    bool f_injective = true;
    for (int x : f.source().elements()) {
      if (tw.f_inv[f(x)] != -1) f_injective = false;
      tw.f_inv[f(x)] = x;
    }
    if (!f_injective) std::fill(tw.f_inv.begin(), tw.f_inv.end(), -1);
    if (fp.is_mono()) {
      tw.fp_inv.assign(dst->order(), -1);
      for (int y : fp.source().elements()) tw.fp_inv[fp(y)] = y;
    }
    s.twines.push_back(std::move(tw));
  }

  s.img.assign(src->order(), -1);
  s.pre.assign(dst->order(), -1);
  s.gens = greedy_generators(*src);

  std::vector<int> trail;
  std::deque<std::pair<int, int>> seed{{GroupTable::identity, GroupTable::identity}};
  for (const auto& [a, b] : constraints.element_images) seed.emplace_back(a, b);
  if (!s.propagate(seed, trail)) return {};
  s.rec(0, trail);
  return std::move(s.out);
}

} // namespace bsll
