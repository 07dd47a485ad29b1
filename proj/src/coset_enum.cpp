#include "bsll/coset_enum.hpp"

#include <deque>

#include "bsll/errors.hpp"

namespace bsll {

namespace {

class CosetTable {
public:
  CosetTable(int ncols, int max_cosets) : ncols_(ncols), max_(max_cosets) {
    new_coset();
  }

  int find(int a) {
    while (rep_[a] != a) {
      rep_[a] = rep_[rep_[a]];
      a = rep_[a];
    }
    return a;
  }

  bool is_live(int a) { return find(a) == a; }

  // Entry lookup through the union-find, -1 when undefined.
  int at(int a, int x) {
    const int v = tab_[find(a)][x];
    return v < 0 ? -1 : find(v);
  }

  void define(int a, int x) {
    if (total_ >= max_)
      throw OracleInconclusive("coset limit " + std::to_string(max_) + " exceeded");
    const int b = new_coset();
    a = find(a);
    tab_[a][x] = b;
    tab_[b][x ^ 1] = a;
    ++version_;
  }

  // Record tab[a][x] = b (and the inverse entry), merging if contradicted.
  void deduce(int a, int x, int b) {
    a = find(a);
    b = find(b);
    const int cur = at(a, x);
    if (cur >= 0) {
      coincidence(cur, b);
      return;
    }
    const int back = at(b, x ^ 1);
    if (back >= 0) {
      coincidence(back, a);
      return;
    }
    tab_[a][x] = b;
    tab_[b][x ^ 1] = a;
    ++version_;
  }

  void coincidence(int a, int b) {
    std::deque<int> q;
    merge(a, b, q);
    while (!q.empty()) {
      const int dead = q.front();
      q.pop_front();
      for (int x = 0; x < ncols_; ++x) {
        const int d = tab_[dead][x];
        if (d < 0) continue;
        tab_[d][x ^ 1] = -1;
        const int mu = find(dead);
        const int nu = find(d);
        if (tab_[mu][x] >= 0)
          merge(nu, find(tab_[mu][x]), q);
        else if (tab_[nu][x ^ 1] >= 0)
          merge(mu, find(tab_[nu][x ^ 1]), q);
        else {
          tab_[mu][x] = nu;
          tab_[nu][x ^ 1] = mu;
          ++version_;
        }
      }
    }
  }

  int size() const { return static_cast<int>(tab_.size()); }
  int live() const { return live_; }
  long long version() const { return version_; }

private:
  int new_coset() {
    tab_.emplace_back(ncols_, -1);
    rep_.push_back(static_cast<int>(rep_.size()));
    ++live_;
    ++total_;
    return static_cast<int>(tab_.size()) - 1;
  }

  void merge(int a, int b, std::deque<int>& q) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    rep_[b] = a;
    --live_;
    ++version_;
    q.push_back(b);
  }

  int ncols_;
  int max_;
  int live_ = 0;
  int total_ = 0;
  long long version_ = 0;
  std::vector<std::vector<int>> tab_;
  std::vector<int> rep_;
};

} // namespace

CosetEnumResult enumerate_cosets(const Presentation& pres, const CosetEnumOptions& opts) {
  if (pres.num_gens <= 0) throw std::invalid_argument("presentation needs generators");
  if (opts.max_cosets <= 0) throw std::invalid_argument("coset limit must be positive");
  const int ncols = 2 * pres.num_gens;
  for (const auto& r : pres.relators)
    for (int l : r)
      if (l < 0 || l >= ncols) throw std::invalid_argument("relator letter out of range");

  CosetTable ct(ncols, opts.max_cosets);

  // Scan relator r at coset c: trace forward, then backward with inverse
  // letters; a full overlap forces a coincidence, a gap of one is a
  // deduction, a wider gap is left for a later define.
  auto scan = [&](int c, const std::vector<int>& r) {
    int f = ct.find(c);
    size_t i = 0;
    while (i < r.size()) {
      const int nxt = ct.at(f, r[i]);
      if (nxt < 0) break;
      f = nxt;
      ++i;
    }
    if (i == r.size()) {
      if (f != ct.find(c)) ct.coincidence(f, ct.find(c));
      return;
    }
    int b = ct.find(c);
    size_t j = r.size();
    while (j > i + 1) {
      const int nxt = ct.at(b, r[j - 1] ^ 1);
      if (nxt < 0) break;
      b = nxt;
      --j;
    }
    if (j == i + 1) ct.deduce(f, r[i], b);
  };

  for (;;) {
    // Propagate relator consequences to a fixed point before defining a
    // new coset.
    long long before;
    do {
      before = ct.version();
      for (int c = 0; c < ct.size(); ++c) {
        if (!ct.is_live(c)) continue;
        for (const auto& r : pres.relators) scan(c, r);
      }
    } while (ct.version() != before);

    int c_def = -1, x_def = -1;
    for (int c = 0; c < ct.size() && c_def < 0; ++c) {
      if (!ct.is_live(c)) continue;
      for (int x = 0; x < ncols; ++x)
        if (ct.at(c, x) < 0) {
          c_def = c;
          x_def = x;
          break;
        }
    }
    if (c_def < 0) break;
    ct.define(c_def, x_def);
  }

  CosetEnumResult res;
  res.order = ct.live();
  std::vector<int> renumber(ct.size(), -1);
  int next_id = 0;
  for (int c = 0; c < ct.size(); ++c)
    if (ct.is_live(c)) renumber[c] = next_id++;
  res.action.assign(res.order, std::vector<int>(ncols, -1));
  for (int c = 0; c < ct.size(); ++c) {
    if (!ct.is_live(c)) continue;
    for (int x = 0; x < ncols; ++x) res.action[renumber[c]][x] = renumber[ct.at(c, x)];
  }
  return res;
}

Presentation presentation_of(const MatrixA& a) {
  Presentation pres;
  pres.num_gens = a.k() + 1;
  for (const auto& word : relator_words(a)) {
    std::vector<int> r;
    for (auto [i, e] : word) {
      const int letter = e >= 0 ? 2 * i : 2 * i + 1;
      int reps = e >= 0 ? e : -e;
      // Exponents here are at most p in magnitude; expand literally.
      while (reps-- > 0) r.push_back(letter);
    }
    pres.relators.push_back(std::move(r));
  }
  return pres;
}

int order_oracle(const MatrixA& a, int max_cosets) {
  return enumerate_cosets(presentation_of(a), CosetEnumOptions{max_cosets}).order;
}

int order_oracle(const MatrixA& a) {
  int limit = 2;
  for (int i = 0; i <= a.k(); ++i) limit *= a.p();
  return order_oracle(a, limit);
}

} // namespace bsll
